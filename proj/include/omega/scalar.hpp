#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace omega {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(Cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Complex literal grammar shared by the CLI, the potential text format and
// batch files: "re", "re+imi", "re-imi"; a pure imaginary "imi" is also
// accepted. Returns nullopt on any syntax error or non-finite value.
std::optional<Cx> parse_complex(std::string_view text);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);
std::string format_complex(Cx v);

} // namespace omega
