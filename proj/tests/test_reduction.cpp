#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omega/reduction.hpp"
#include "oracles.hpp"

using omega::BivarPoly;
using omega::Cx;
using omega::eval_reduction;
using omega::OmegaEvaluator;
using omega::PeriodReduction;
using omega::Poly;
using omega::Potential;
using omega::reduce_mixed;
using omega::reduce_ray_limit;
using omega::reduce_tpoly;
using omega::SPoly;

namespace {
const SPoly kSigma{Cx(0.0), Cx(1.0)};

// int_0^z t^s Q(t) e^P dt by direct quadrature (the independent route).
Cx lhs_quad(const Potential& p, const omega::QuadConfig& cfg, const Poly& q, Cx s, Cx z) {
    return omega::incomplete_power_quad(p, cfg, s, z, &q).value;
}
} // namespace

TEST_CASE("low-degree polynomials map straight into the window") {
    const Potential p(3);
    const PeriodReduction red = reduce_tpoly(p, Poly{Cx(1.0)});
    CHECK(red.boundary.empty());
    REQUIRE(red.c.size() == 3);
    CHECK(red.c[0].is_zero());
    CHECK(red.c[1] == SPoly{Cx(1.0)});
    CHECK(red.c[2].is_zero());
    CHECK(red.sigma_shift == 1);

    // evaluates to the incomplete function itself
    const OmegaEvaluator ev{p};
    const Cx s(1.2, 0.3), z(0.7, -0.2);
    CHECK(oracles::near_rel(eval_reduction(red, ev, s, z).value, ev.incomplete(s + 1.0, z).value,
                            1e-12));
}

TEST_CASE("single division step for the quadratic potential") {
    const Potential p(2);
    const PeriodReduction red = reduce_tpoly(p, Poly{Cx(0.0), Cx(1.0)}); // Q = t
    REQUIRE(red.c.size() == 2);
    CHECK(red.c[0] == kSigma);
    CHECK(red.c[1].is_zero());
    REQUIRE(red.boundary.terms().size() == 1);
    const auto& [key, coeff] = *red.boundary.terms().begin();
    CHECK(key == omega::ExpPolyExpr::Key{0, 1});
    CHECK(coeff == SPoly{Cx(-1.0)});

    // identity at s=1, z=1: the integral is int_0^1 t^2 e^{-t^2/2} dt;
    // frozen from the series oracle sum_m (-1)^m / (2^m m! (2m+3)):
    const OmegaEvaluator ev{p};
    const Cx direct = lhs_quad(p, ev.config(), Poly{Cx(0.0), Cx(1.0)}, Cx(1.0), Cx(1.0));
    CHECK(oracles::near_abs(direct, Cx(0.2490937324), 1e-9));
    CHECK(oracles::near_rel(eval_reduction(red, ev, Cx(1.0), Cx(1.0)).value, direct, 1e-9));
}

TEST_CASE("repeated parts for the linear potential") {
    const Potential p(1);
    const PeriodReduction red = reduce_tpoly(p, Poly{Cx(0.0), Cx(1.0)}); // Q = t
    REQUIRE(red.c.size() == 1);
    CHECK(red.c[0] == kSigma * SPoly{Cx(1.0), Cx(1.0)}); // s(s+1)
    // boundary -(z^{s+1} + (s+1) z^s) e^{-z}
    REQUIRE(red.boundary.terms().size() == 2);
    CHECK(red.boundary.terms().at({1, 1}) == SPoly{Cx(-1.0)});
    CHECK(red.boundary.terms().at({0, 1}) == SPoly{Cx(-1.0), Cx(-1.0)});

    // antiderivative oracle at s=1, z=2: int_0^2 t^2 e^{-t} dt = 2 - 10 e^{-2}
    const OmegaEvaluator ev{p};
    const Cx want(2.0 - 10.0 * std::exp(-2.0));
    CHECK(oracles::near_rel(eval_reduction(red, ev, Cx(1.0), Cx(2.0)).value, want, 1e-9));
}

TEST_CASE("reduction identity against quadrature on random instances") {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 12; ++it) {
        std::uniform_int_distribution<int> ud(1, 4), uq(0, 6);
        const int d = ud(rng);
        const Potential p = oracles::rand_potential(rng, d);
        std::vector<Cx> qc;
        const int degq = uq(rng);
        for (int j = 0; j <= degq; ++j) qc.push_back(oracles::rand_cx(rng, 1.0));
        const Poly q(qc);
        if (q.is_zero()) continue;
        const PeriodReduction red = reduce_tpoly(p, q);
        const OmegaEvaluator ev{p};
        for (int rep = 0; rep < 3; ++rep) {
            const Cx s = oracles::rand_off_pole(rng, 0.5, 3.0, 1.0);
            Cx z = oracles::rand_cx(rng, 1.4);
            if (std::abs(z) < 0.3) z += Cx(0.8, 0.0);
            const Cx lhs = lhs_quad(p, ev.config(), q, s, z);
            const Cx rhs = eval_reduction(red, ev, s, z).value;
            CHECK(std::abs(lhs - rhs) <= 1e-7 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("reduction is linear in the integrand") {
    std::mt19937_64 rng(52);
    const Potential p = oracles::rand_potential(rng, 3);
    std::vector<Cx> c1, c2;
    for (int j = 0; j <= 5; ++j) c1.push_back(oracles::rand_cx(rng, 1.0));
    for (int j = 0; j <= 3; ++j) c2.push_back(oracles::rand_cx(rng, 1.0));
    const Poly q1(c1), q2(c2);
    const PeriodReduction sum = reduce_tpoly(p, q1 + q2);
    const PeriodReduction r1 = reduce_tpoly(p, q1);
    const PeriodReduction r2 = reduce_tpoly(p, q2);
    for (std::size_t k = 0; k < sum.c.size(); ++k) CHECK(sum.c[k] == r1.c[k] + r2.c[k]);
    for (const auto& [key, coeff] : sum.boundary.terms()) {
        SPoly expect;
        if (auto it = r1.boundary.terms().find(key); it != r1.boundary.terms().end()) expect += it->second;
        if (auto it = r2.boundary.terms().find(key); it != r2.boundary.terms().end()) expect += it->second;
        CHECK(coeff == expect);
    }
}

TEST_CASE("degree bookkeeping of the window coefficients") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 20; ++it) {
        std::uniform_int_distribution<int> ud(2, 4), uq(0, 6);
        const int d = ud(rng);
        const int degq = uq(rng);
        std::vector<Cx> qc;
        for (int j = 0; j <= degq; ++j) qc.push_back(oracles::rand_cx(rng, 1.0));
        const Poly q(qc);
        if (q.is_zero()) continue;
        const PeriodReduction red = reduce_tpoly(oracles::rand_potential(rng, d), q);
        int total = -1;
        for (const auto& c : red.c) total = std::max(total, c.degree());
        const int bound = (degq + 1 + d - 2) / (d - 1) + 1; // ceil((deg Q + 1)/(d-1)) + 1
        CHECK(total <= bound);
    }
}

TEST_CASE("mixed integrands split by powers of t^s") {
    { // Q = T alone: one group, lands at the shifted window slot
        const Potential p(3);
        const auto reds = reduce_mixed(p, BivarPoly::var_y());
        REQUIRE(reds.size() == 1);
        CHECK(reds[0].sigma_shift == 1);
        CHECK(reds[0].c[1] == SPoly{Cx(1.0)});
        // equals the incomplete function at s+1
        const OmegaEvaluator ev{p};
        const Cx s(0.9, 0.2), z(1.1, 0.4);
        CHECK(oracles::near_rel(eval_reduction(reds[0], ev, s, z).value,
                                ev.incomplete(s + 1.0, z).value, 1e-12));
    }
    { // Q = t + T t over d=2: both groups share the Q=t reduction
        const Potential p(2);
        BivarPoly q = BivarPoly::var_t();
        q += BivarPoly::var_y() * BivarPoly::var_t();
        const auto reds = reduce_mixed(p, q);
        REQUIRE(reds.size() == 2);
        CHECK(reds[0].sigma_shift == 0);
        CHECK(reds[1].sigma_shift == 1);
        for (const auto& red : reds) {
            CHECK(red.c[0] == kSigma);
            CHECK(red.boundary.terms().at({0, 1}) == SPoly{Cx(-1.0)});
        }

        // group 0 at formal exponent 0: int_0^z t e^{-t^2/2} dt = 1 - e^{-z^2/2}
        const OmegaEvaluator ev{p};
        const Cx z(1.3, 0.2);
        const Cx want = 1.0 - std::exp(-0.5 * z * z);
        CHECK(oracles::near_rel(eval_reduction(reds[0], ev, Cx(1.7), z).value, want, 1e-9));

        // group 1 at the caller's s: equals the plain reduction route
        const Cx s(1.4, -0.3);
        const Cx via_plain = eval_reduction(reduce_tpoly(p, Poly{Cx(0.0), Cx(1.0)}), ev, s, z).value;
        CHECK(oracles::near_rel(eval_reduction(reds[1], ev, s, z).value, via_plain, 1e-10));
    }
    CHECK(reduce_mixed(Potential(2), BivarPoly{}).empty());
}

TEST_CASE("window rewrite of shifted incomplete values") {
    { // d=2: O(s+2, z) = s O(s, z) - z^s e^{-z^2/2}
        const Potential p(2);
        const auto rw = omega::rewrite_shift(p, 2);
        CHECK(rw.c[0] == kSigma);
        CHECK(rw.c[1].is_zero());
        CHECK(rw.boundary.terms().at({0, 1}) == SPoly{Cx(-1.0)});

        const OmegaEvaluator ev{p};
        const Cx s(0.8, 0.1), z(1.2, -0.5);
        const Cx lhs = ev.incomplete(s + 2.0, z).value;
        const Cx zs = std::exp(s * std::log(z));
        const Cx rhs = s * ev.incomplete(s, z).value - zs * std::exp(p(z));
        CHECK(oracles::near_rel(lhs, rhs, 1e-9));
    }
    { // d=1: classical lower-incomplete recurrence
        const Potential p(1);
        const auto rw = omega::rewrite_shift(p, 1);
        CHECK(rw.c[0] == kSigma);
        CHECK(rw.boundary.terms().at({0, 1}) == SPoly{Cx(-1.0)});
    }
    { // longer shift stays consistent numerically
        const Potential p(2, {Cx(0.3, 0.1)});
        const auto rw = omega::rewrite_shift(p, 4);
        const OmegaEvaluator ev{p};
        const Cx s(0.7, 0.2), z(0.9, 0.3);
        Cx rhs = rw.boundary.eval(s, z, std::exp(s * std::log(z))) * std::exp(p(z));
        for (int j = 0; j < 2; ++j) rhs += rw.c[static_cast<std::size_t>(j)](s) * ev.incomplete(s + static_cast<double>(j), z).value;
        CHECK(oracles::near_rel(ev.incomplete(s + 4.0, z).value, rhs, 1e-8));
    }
    CHECK_THROWS_AS(omega::rewrite_shift(Potential(3), 2), std::invalid_argument);
}

TEST_CASE("ray limits of reductions") {
    { // d=2, Q=t, k=0: s * Omega_0(s); gaussian moment at s=1
        const Potential p(2);
        const PeriodReduction red = reduce_tpoly(p, Poly{Cx(0.0), Cx(1.0)});
        const auto c = reduce_ray_limit(red, 0);
        CHECK(c[0] == kSigma);
        const OmegaEvaluator ev{p};
        const Cx via_basis = c[0](Cx(1.0)) * ev.omega(0, Cx(1.0)).value;
        const Cx direct = oracles::ray_integral_quad(p, ev.config(), 0, Cx(1.0), Poly{Cx(0.0), Cx(1.0)});
        CHECK(oracles::near_rel(via_basis, direct, 1e-8));
        CHECK(oracles::near_rel(via_basis, Cx(std::sqrt(omega::kPi / 2.0)), 1e-9));
    }
    { // d=1, Q=1: s Gamma(s) = Gamma(s+1)
        const Potential p(1);
        const PeriodReduction red = reduce_tpoly(p, Poly{Cx(1.0)});
        const auto c = reduce_ray_limit(red, 0);
        CHECK(c[0] == kSigma);
        const OmegaEvaluator ev{p};
        const Cx s(1.7, 0.4);
        CHECK(oracles::near_rel(c[0](s) * ev.omega(0, s).value, ev.omega(0, s + 1.0).value, 1e-8));
    }
    { // shifted groups leave the window basis
        PeriodReduction red;
        red.sigma_shift = 2;
        CHECK_THROWS_AS(reduce_ray_limit(red, 0), std::invalid_argument);
    }
}

TEST_CASE("window coefficients depend polynomially on the potential coefficients") {
    // Entries of c_k as functions of a_1 (d = 3, Q = t^3): a polynomial of
    // degree <= deg Q interpolated from deg Q + 1 samples must predict a
    // fresh sample.
    const Poly q = Poly::monomial(3);
    const Cx s_star(1.3, 0.2);
    auto coeff_at = [&](double a1) {
        const Potential p(3, {Cx(a1), Cx(0.25)});
        const PeriodReduction red = reduce_tpoly(p, q);
        return red.c[0](s_star);
    };
    const double xs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    Cx ys[5];
    for (int i = 0; i < 5; ++i) ys[i] = coeff_at(xs[i]);
    // Lagrange through the first 4 points, evaluated at xs[4]
    Cx predict(0.0);
    for (int i = 0; i < 4; ++i) {
        Cx term = ys[i];
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            term *= (xs[4] - xs[j]) / (xs[i] - xs[j]);
        }
        predict += term;
    }
    CHECK(oracles::near_abs(predict, ys[4], 1e-8 * (1.0 + std::abs(ys[4]))));
}

TEST_CASE("ray limits against direct ray quadrature on random instances") {
    std::mt19937_64 rng(54);
    for (int it = 0; it < 8; ++it) {
        std::uniform_int_distribution<int> ud(1, 3), uq(0, 4);
        const int d = ud(rng);
        const Potential p = oracles::rand_potential(rng, d, 0.4);
        std::uniform_int_distribution<int> ukd(0, d - 1);
        const int k = ukd(rng);
        std::vector<Cx> qc;
        const int degq = uq(rng);
        for (int j = 0; j <= degq; ++j) qc.push_back(oracles::rand_cx(rng, 1.0));
        const Poly q(qc);
        if (q.is_zero()) continue;

        const OmegaEvaluator ev{p};
        const auto c = reduce_ray_limit(reduce_tpoly(p, q), k);
        const Cx s = oracles::rand_off_pole(rng, 0.6, 2.5, 1.0);
        Cx via_basis(0.0);
        for (int j = 0; j < d; ++j) via_basis += c[static_cast<std::size_t>(j)](s) * ev.omega(k, s + static_cast<double>(j)).value;
        const Cx direct = oracles::ray_integral_quad(p, ev.config(), k, s, q);
        CHECK(std::abs(via_basis - direct) <= 1e-7 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("expression grammar for integrands") {
    const BivarPoly q = omega::parse_q_expression("t^3 - 2*t*T + (0.5+1i)");
    CHECK(q.terms().at({3, 0}) == Cx(1.0));
    CHECK(q.terms().at({1, 1}) == Cx(-2.0));
    CHECK(q.terms().at({0, 0}) == Cx(0.5, 1.0));
    CHECK(q.max_y_power() == 1);
    CHECK(q.t_slice(0) == Poly{Cx(0.5, 1.0), Cx(0.0), Cx(0.0), Cx(1.0)});
    CHECK(q.t_slice(1) == Poly{Cx(0.0), Cx(-2.0)});

    CHECK(omega::parse_q_expression("2t").terms().at({1, 0}) == Cx(2.0));
    CHECK(omega::parse_q_expression("(t+T)^2").terms().at({1, 1}) == Cx(2.0));
    CHECK_THROWS_AS(omega::parse_q_expression("t +"), std::invalid_argument);
    CHECK_THROWS_AS(omega::parse_q_expression("t^-1"), std::invalid_argument);
    CHECK_THROWS_AS(omega::parse_q_expression("x"), std::invalid_argument);
    CHECK_THROWS_AS(omega::parse_q_expression(""), std::invalid_argument);
}
