#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "omega/poly.hpp"
#include "omega/potential.hpp"
#include "oracles.hpp"

using omega::Cx;
using omega::Poly;
using omega::Potential;

TEST_CASE("poly evaluation") {
    const Poly p{Cx(1.0), Cx(0.0), Cx(1.0)}; // 1 + t^2
    CHECK(oracles::near_abs(p(Cx(2.0)), Cx(5.0), 1e-15));

    const Poly zero;
    CHECK(zero(Cx(7.0, 3.0)) == Cx(0.0));

    const Poly cubic{Cx(0.0), Cx(0.0), Cx(0.0), Cx(-1.0 / 3.0)}; // -t^3/3
    CHECK(oracles::near_abs(cubic(Cx(1.0)), Cx(-1.0 / 3.0), 1e-15));
}

TEST_CASE("poly derivative") {
    CHECK(Poly{Cx(0.0), Cx(0.0), Cx(-0.5)}.derivative() == Poly{Cx(0.0), Cx(-1.0)});
    CHECK(Poly{Cx(4.0)}.derivative().is_zero());
    const Cx a1(0.7, -0.1);
    const Poly p{Cx(0.0), a1, Cx(0.0), Cx(-1.0 / 3.0)};
    CHECK(p.derivative() == Poly{a1, Cx(0.0), Cx(-1.0)});
}

TEST_CASE("poly divmod") {
    {
        auto [q, r] = Poly::divmod(Poly{Cx(0.0), Cx(0.0), Cx(1.0)}, Poly{Cx(0.0), Cx(0.0), Cx(-1.0)});
        CHECK(q == Poly{Cx(-1.0)});
        CHECK(r.is_zero());
    }
    {
        auto [q, r] = Poly::divmod(Poly{Cx(0.0), Cx(1.0)}, Poly{Cx(0.0), Cx(-1.0)});
        CHECK(q == Poly{Cx(-1.0)});
        CHECK(r.is_zero());
    }
    {
        // long division by hand: t^3 + 1 = (t - 1)(t^2 + t + 1) + 2
        auto [q, r] = Poly::divmod(Poly{Cx(1.0), Cx(0.0), Cx(0.0), Cx(1.0)}, Poly{Cx(-1.0), Cx(1.0)});
        CHECK(q == Poly{Cx(1.0), Cx(1.0), Cx(1.0)});
        CHECK(r == Poly{Cx(2.0)});
    }
    CHECK_THROWS_AS(Poly::divmod(Poly{Cx(1.0)}, Poly{}), std::invalid_argument);
}

TEST_CASE("poly divmod roundtrip on random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(0, 12);
    for (int it = 0; it < 200; ++it) {
        std::vector<Cx> nc, dc;
        const int dn = deg(rng), dd = deg(rng);
        for (int i = 0; i <= dn; ++i) nc.push_back(oracles::rand_cx(rng, 2.0));
        for (int i = 0; i <= dd; ++i) dc.push_back(oracles::rand_cx(rng, 2.0));
        const Poly num(nc), den(dc);
        if (den.is_zero()) continue;
        auto [q, r] = Poly::divmod(num, den);
        CHECK(r.degree() < den.degree());
        const Poly back = q * den + r;
        double worst = 0.0;
        for (int i = 0; i <= std::max(num.degree(), back.degree()); ++i)
            worst = std::max(worst, std::abs(back.coeff(i) - num.coeff(i)));
        CHECK(worst <= 1e-12 * std::max(num.max_abs_coeff(), 1e-300));
    }
}

TEST_CASE("exp series for the linear potential is the alternating factorial series") {
    const auto es = omega::exp_series(Potential(1), 8);
    CHECK(oracles::near_abs(es.lambda(0), Cx(1.0), 1e-15));
    CHECK(oracles::near_abs(es.lambda(3), Cx(-1.0 / 6.0), 1e-15));
    double fact = 1.0;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;
        CHECK(oracles::near_abs(es.lambda(n), Cx((n % 2 ? -1.0 : 1.0) / fact), 1e-15));
    }
}

TEST_CASE("exp series for the pure quadratic potential") {
    const auto es = omega::exp_series(Potential(2), 4);
    CHECK(es.lambda(0) == Cx(1.0));
    CHECK(es.lambda(1) == Cx(0.0));
    CHECK(oracles::near_abs(es.lambda(2), Cx(-0.5), 1e-15));
    CHECK(es.lambda(3) == Cx(0.0));
    CHECK(oracles::near_abs(es.lambda(4), Cx(0.125), 1e-15));
}

TEST_CASE("lambda_0 is 1 for every potential") {
    std::mt19937_64 rng(12);
    for (int d = 1; d <= 5; ++d) {
        const auto es = omega::exp_series(oracles::rand_potential(rng, d, 1.0), 0);
        CHECK(es.lambda(0) == Cx(1.0));
    }
}

TEST_CASE("exp series recurrence matches the product of exponential factors") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 40; ++it) {
        std::uniform_int_distribution<int> ud(1, 5);
        const Potential p = oracles::rand_potential(rng, ud(rng), 1.0);
        const auto es = omega::exp_series(p, 40);
        const auto ref = oracles::exp_series_by_product(p, 40);
        double scale = 0.0;
        for (const Cx& v : ref) scale = std::max(scale, std::abs(v));
        for (int n = 0; n <= 40; ++n)
            CHECK(std::abs(es.lambda(n) - ref[static_cast<std::size_t>(n)]) <= 1e-12 * scale);
    }
}

TEST_CASE("divisibility: sparse potentials have sparse exp series") {
    std::mt19937_64 rng(14);
    for (const int n0 : {2, 3}) {
        // only powers divisible by n0 carry nonzero coefficients
        std::vector<Cx> a(5, Cx(0.0)); // d = 6
        for (int k = n0; k <= 5; k += n0) a[static_cast<std::size_t>(k - 1)] = oracles::rand_cx(rng, 0.8);
        const int d = 6; // 6 is divisible by both 2 and 3, so a_d qualifies too
        const auto es = omega::exp_series(Potential(d, a), 30);
        double scale = 0.0;
        for (int n = 0; n <= 30; ++n) scale = std::max(scale, std::abs(es.lambda(n)));
        for (int n = 0; n <= 30; ++n)
            if (n % n0 != 0) CHECK(std::abs(es.lambda(n)) <= 1e-14 * scale);
    }
}

TEST_CASE("extending the series never changes earlier entries") {
    std::mt19937_64 rng(15);
    auto es = omega::exp_series(oracles::rand_potential(rng, 4, 1.0), 10);
    std::vector<Cx> before(es.coeffs().begin(), es.coeffs().end());
    es.extend(50);
    for (int n = 0; n <= 10; ++n) CHECK(es.lambda(n) == before[static_cast<std::size_t>(n)]);
}

TEST_CASE("potential accessors and parsing") {
    const Potential p = Potential::parse("d=3;a1=0.5-0.25i;a2=1");
    CHECK(p.degree() == 3);
    CHECK(p.a(1) == Cx(0.5, -0.25));
    CHECK(p.a(2) == Cx(1.0));
    CHECK(p.a(0) == Cx(0.0));
    CHECK(oracles::near_abs(p.a(3), Cx(-1.0 / 3.0), 1e-16));
    CHECK(oracles::near_abs(p.alpha(2), Cx(-2.0), 1e-16));
    CHECK(p.alpha(3) == Cx(1.0));
    CHECK(oracles::near_abs(p.omega_root(3), Cx(1.0), 1e-15));
    CHECK(oracles::near_abs(p.omega_root(1), Cx(-0.5, std::sqrt(3.0) / 2.0), 1e-15));

    // omitted coefficients default to zero
    CHECK(Potential::parse("d=4") == Potential(4));
    CHECK(Potential::parse("d=4;a2=1") == Potential(4, {Cx(0.0), Cx(1.0), Cx(0.0)}));

    CHECK(Potential::parse(p.to_string()) == p);

    CHECK_THROWS_AS(Potential::parse("d=0"), std::invalid_argument);
    CHECK_THROWS_AS(Potential::parse("a1=1"), std::invalid_argument);
    CHECK_THROWS_AS(Potential::parse("d=2;a2=1"), std::invalid_argument); // a_d is fixed
    CHECK_THROWS_AS(Potential::parse("d=2;a1=bogus"), std::invalid_argument);
}

TEST_CASE("potential evaluation agrees with its Poly form") {
    std::mt19937_64 rng(16);
    for (int d = 1; d <= 5; ++d) {
        const Potential p = oracles::rand_potential(rng, d, 1.0);
        const Poly q = p.poly();
        for (int i = 0; i < 5; ++i) {
            const Cx t = oracles::rand_cx(rng, 2.0);
            CHECK(oracles::near_abs(p(t), q(t), 1e-13 * (1.0 + std::abs(q(t)))));
        }
    }
}

TEST_CASE("normalize_dfe examples") {
    {
        const Cx alpha[] = {Cx(1.0)};
        const auto n = omega::normalize_dfe(alpha);
        CHECK(n.scale == Cx(1.0));
        CHECK(n.potential == Potential(1));
    }
    {
        const Cx alpha[] = {Cx(2.0)};
        const auto n = omega::normalize_dfe(alpha);
        CHECK(oracles::near_abs(n.scale, Cx(0.5), 1e-15));
        // canonical coefficient alpha_1 * c^1 must be exactly 1: s h(s) = h(s+1)
        CHECK(oracles::near_abs(Cx(2.0) * n.scale, Cx(1.0), 1e-15));
    }
    {
        const Cx alpha[] = {Cx(0.0), Cx(1.0)};
        const auto n = omega::normalize_dfe(alpha);
        CHECK(n.scale == Cx(1.0));
        CHECK(n.potential == Potential(2));
    }
    const Cx bad[] = {Cx(1.0), Cx(0.0)};
    CHECK_THROWS_AS(omega::normalize_dfe(bad), std::invalid_argument);
}

TEST_CASE("normalize_dfe roundtrip: canonical equation has unit leading coefficient") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 50; ++it) {
        std::uniform_int_distribution<int> ud(1, 5);
        const int d = ud(rng);
        std::vector<Cx> alpha;
        for (int l = 1; l <= d; ++l) alpha.push_back(oracles::rand_cx(rng, 2.0));
        if (std::abs(alpha.back()) < 1e-3) alpha.back() = Cx(1.5, 0.5);
        const auto n = omega::normalize_dfe(alpha);

        Cx cpow(1.0);
        for (int l = 1; l <= d; ++l) {
            cpow *= n.scale;
            const Cx canonical = alpha[static_cast<std::size_t>(l - 1)] * cpow;
            CHECK(oracles::near_abs(canonical, n.potential.alpha(l), 1e-13 * (1.0 + std::abs(canonical))));
        }
    }
}

TEST_CASE("complex literal grammar") {
    using omega::parse_complex;
    CHECK(*parse_complex("1.5") == Cx(1.5, 0.0));
    CHECK(*parse_complex("0.5-0.25i") == Cx(0.5, -0.25));
    CHECK(*parse_complex("1e-3+2e-4i") == Cx(1e-3, 2e-4));
    CHECK(*parse_complex("2i") == Cx(0.0, 2.0));
    CHECK(*parse_complex("-i") == Cx(0.0, -1.0));
    CHECK(!parse_complex(""));
    CHECK(!parse_complex("1+2j"));
    CHECK(!parse_complex("nan"));

    std::mt19937_64 rng(18);
    for (int it = 0; it < 200; ++it) {
        const Cx v = oracles::rand_cx(rng, 1e3);
        CHECK(*parse_complex(omega::format_complex(v)) == v);
    }
}
