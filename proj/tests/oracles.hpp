// Shared test oracles: independent routes (series products, closed forms,
// direct quadrature in ray coordinates) used to freeze expected values.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "omega/evaluator.hpp"
#include "omega/poly.hpp"
#include "omega/potential.hpp"
#include "omega/quadrature.hpp"

namespace oracles {

using omega::Cx;

inline double rel_err(Cx got, Cx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline bool near_abs(Cx got, Cx want, double tol) { return std::abs(got - want) <= tol; }

inline bool near_rel(Cx got, Cx want, double tol) { return rel_err(got, want) <= tol; }

inline Cx rand_cx(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return Cx(u(rng), u(rng));
}

inline omega::Potential rand_potential(std::mt19937_64& rng, int d, double radius = 0.5) {
    std::vector<Cx> a;
    for (int k = 1; k < d; ++k) a.push_back(rand_cx(rng, radius));
    return omega::Potential(d, std::move(a));
}

inline omega::Potential rand_real_potential(std::mt19937_64& rng, int d, double radius = 0.5) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Cx> a;
    for (int k = 1; k < d; ++k) a.push_back(Cx(u(rng), 0.0));
    return omega::Potential(d, std::move(a));
}

// Re s uniform in [re_lo, re_hi], Im s uniform in [-im_max, im_max],
// at distance >= gap from every nonpositive integer.
inline Cx rand_off_pole(std::mt19937_64& rng, double re_lo, double re_hi, double im_max,
                        double gap = 0.1) {
    std::uniform_real_distribution<double> ur(re_lo, re_hi), ui(-im_max, im_max);
    for (;;) {
        const Cx s(ur(rng), ui(rng));
        const double n = std::round(-s.real());
        if (n >= 0 && std::abs(s + n) < gap) continue;
        return s;
    }
}

// Taylor coefficients of exp(P) by multiplying the exponential series of
// each monomial a_k t^k -- independent of the production recurrence.
inline std::vector<Cx> exp_series_by_product(const omega::Potential& p, int order) {
    std::vector<Cx> acc(static_cast<std::size_t>(order) + 1, Cx(0.0));
    acc[0] = Cx(1.0);
    for (int k = 1; k <= p.degree(); ++k) {
        const Cx ak = p.a(k);
        if (ak == Cx(0.0)) continue;
        std::vector<Cx> factor(static_cast<std::size_t>(order) + 1, Cx(0.0));
        Cx pw(1.0);
        double fact = 1.0;
        for (int m = 0; m * k <= order; ++m) {
            factor[static_cast<std::size_t>(m * k)] = pw / fact;
            pw *= ak;
            fact *= (m + 1.0);
        }
        std::vector<Cx> next(static_cast<std::size_t>(order) + 1, Cx(0.0));
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j)
                next[static_cast<std::size_t>(i + j)] +=
                    acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
        acc = std::move(next);
    }
    return acc;
}

// Direct quadrature of int_0^{inf w_k} t^{w} q(t) e^{P} dt in ray
// coordinates t = w_k u (branch arg t = 2 pi k / d): the [0,1] piece through
// the endpoint-flattening substitution, the [1, R] piece directly.
inline Cx ray_integral_quad(const omega::Potential& p, const omega::QuadConfig& cfg, int k, Cx w,
                            const omega::Poly& q) {
    const Cx wk = p.omega_root(k);
    // rotate the polynomial: q(w_k u) as a polynomial in u
    std::vector<Cx> rot;
    Cx pw(1.0);
    for (const Cx& c : q.coeffs()) {
        rot.push_back(c * pw);
        pw *= wk;
    }
    const omega::Poly q_rot{rot};

    // u in (0, 1]: substitution u = v^{1/(Re w + 1)}
    const double pwr = w.real() + 1.0;
    const Cx expo = (w + 1.0) / pwr - 1.0;
    auto f0 = [&](double v) {
        const double u = std::pow(v, 1.0 / pwr);
        return std::exp(expo * std::log(v) + p(wk * u)) * q_rot(Cx(u));
    };
    const Cx inner0 = omega::integrate_param(f0, 0.0, 1.0, cfg).value / pwr;

    // u in [1, R]
    auto f1 = [&](double u) { return std::exp(w * std::log(u) + p(wk * u)) * q_rot(Cx(u)); };
    const Cx inner1 = omega::integrate_ray(f1, k, p, w.real() + static_cast<double>(q.degree()), cfg).value;

    // t^w dt picks up w_k^{w+1} = e^{2 pi i k (w+1)/d}
    return p.ray_power(k, w + 1.0) * (inner0 + inner1);
}

} // namespace oracles
