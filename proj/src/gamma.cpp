#include "omega/gamma.hpp"

#include <cmath>

namespace omega {

namespace {

// Rational approximation of Lanczos type, g = 607/128, 15 terms
// (coefficients as tabulated by Godfrey; ~15 significant digits on the
// right half plane).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kPoleTol = 1e-8;

Cx lanczos_right(Cx s) {
    // valid for Re s >= 0.5
    const Cx z = s - 1.0;
    Cx acc(kLanczosCoeff[0]);
    for (int k = 1; k < 15; ++k) acc += kLanczosCoeff[k] / (z + static_cast<double>(k));
    const Cx t = z + (kLanczosG + 0.5);
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * acc;
}

} // namespace

Cx sin_pi(Cx s) {
    const double m = std::nearbyint(s.real());
    const Cx delta = s - m;
    Cx v = std::sin(kPi * delta);
    if (std::fmod(std::fabs(m), 2.0) == 1.0) v = -v;
    return v;
}

GammaValue gamma(Cx s) {
    const long long n = std::llround(-s.real());
    if (n >= 0 && std::abs(s + static_cast<double>(n)) < kPoleTol)
        return GammaValue{Cx(0.0), static_cast<int>(n)};

    if (s.real() >= 0.5) return GammaValue{lanczos_right(s)};
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return GammaValue{kPi / (sin_pi(s) * lanczos_right(1.0 - s))};
}

} // namespace omega
