#pragma once

#include <optional>

#include "omega/scalar.hpp"

namespace omega {

// Result of a Gamma evaluation: either a finite value or a pole report.
struct GammaValue {
    Cx value{};
    std::optional<int> at_pole{}; // pole at s = -n
    bool is_pole() const { return at_pole.has_value(); }
};

// Complex Gamma function. Rational (Lanczos-type) core with reflection for
// Re s < 1/2; relative error below 1e-12 for |s| <= 50 at distance >= 1e-6
// from the poles. Arguments within 1e-8 of a nonpositive integer are
// reported as poles instead of values.
GammaValue gamma(Cx s);

// sin(pi s) computed with exact integer reduction of Re s (accurate near
// integers, where the naive product pi*s loses the small residual).
Cx sin_pi(Cx s);

} // namespace omega
