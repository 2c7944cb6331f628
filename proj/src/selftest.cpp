#include <cmath>
#include <ostream>
#include <random>

#include "omega/basis.hpp"
#include "omega/cli.hpp"
#include "omega/evaluator.hpp"
#include "omega/gamma.hpp"
#include "omega/reduction.hpp"

namespace omega::cli {

namespace {

struct Check {
    std::ostream& log;
    int failures = 0;

    void report(const char* name, bool ok, double worst) {
        log << (ok ? "[ ok ] " : "[FAIL] ") << name << " (worst " << worst << ")\n";
        if (!ok) ++failures;
    }
};

Cx rand_cx(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return Cx(u(rng), u(rng));
}

Potential rand_potential(std::mt19937_64& rng, int d, double radius = 0.5) {
    std::vector<Cx> a;
    for (int k = 1; k < d; ++k) a.push_back(rand_cx(rng, radius));
    return Potential(d, std::move(a));
}

// Taylor coefficients of exp(P) by multiplying the exp series of each
// monomial a_k t^k; independent of the recurrence.
std::vector<Cx> exp_series_by_product(const Potential& p, int order) {
    std::vector<Cx> acc(static_cast<std::size_t>(order) + 1, Cx(0.0));
    acc[0] = Cx(1.0);
    for (int k = 1; k <= p.degree(); ++k) {
        const Cx ak = p.a(k);
        if (ak == Cx(0.0)) continue;
        std::vector<Cx> factor(static_cast<std::size_t>(order) + 1, Cx(0.0));
        Cx pow(1.0);
        double fact = 1.0;
        for (int m = 0; m * k <= order; ++m) {
            factor[static_cast<std::size_t>(m * k)] = pow / fact;
            pow *= ak;
            fact *= (m + 1.0);
        }
        std::vector<Cx> next(static_cast<std::size_t>(order) + 1, Cx(0.0));
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j) next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
        acc = std::move(next);
    }
    return acc;
}

Cx rand_off_pole(std::mt19937_64& rng, double re_lo, double re_hi, double im_max) {
    std::uniform_real_distribution<double> ur(re_lo, re_hi), ui(-im_max, im_max);
    for (;;) {
        const Cx s(ur(rng), ui(rng));
        const double n = std::round(-s.real());
        if (n >= 0 && std::abs(s + n) < 0.1) continue;
        return s;
    }
}

} // namespace

int selftest(std::ostream& log) {
    Check chk{log};
    std::mt19937_64 rng(0x5eed5eedULL);

    { // gamma spot values and recurrence
        double worst = std::abs(gamma(Cx(1.0)).value - 1.0);
        worst = std::max(worst, std::abs(gamma(Cx(0.5)).value - std::sqrt(kPi)));
        for (int i = 0; i < 10; ++i) {
            const Cx s = rand_off_pole(rng, -8.0, 8.0, 10.0);
            const Cx lhs = gamma(s + 1.0).value;
            const Cx rhs = s * gamma(s).value;
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
        }
        chk.report("gamma values and recurrence", worst < 1e-11, worst);
    }

    { // exp-series recurrence vs direct product
        double worst = 0.0;
        for (int d = 1; d <= 4; ++d) {
            const Potential p = rand_potential(rng, d);
            const ExpSeries es = exp_series(p, 30);
            const auto ref = exp_series_by_product(p, 30);
            double scale = 0.0;
            for (const Cx& r : ref) scale = std::max(scale, std::abs(r));
            for (int n = 0; n <= 30; ++n)
                worst = std::max(worst, std::abs(es.lambda(n) - ref[static_cast<std::size_t>(n)]) / scale);
        }
        chk.report("exp-series recurrence", worst < 1e-12, worst);
    }

    { // functional equation residual
        double worst = 0.0;
        for (int d = 1; d <= 3; ++d) {
            const OmegaEvaluator ev(rand_potential(rng, d));
            for (int i = 0; i < 5; ++i) {
                const Cx s = rand_off_pole(rng, -2.0, 4.0, 3.0);
                std::uniform_int_distribution<int> uk(0, d - 1);
                worst = std::max(worst, ev.functional_residual(uk(rng), s));
            }
        }
        chk.report("functional equation residual", worst < 1e-8, worst);
    }

    { // residues by extraction, all rays agree
        const OmegaEvaluator ev(Potential(2));
        double worst = 0.0;
        const double h = 1e-4;
        for (int n = 0; n <= 4; ++n) {
            const Cx lam = ev.residue(n);
            for (int k = 0; k < 2; ++k) {
                const Cx r1 = h * ev.omega(k, Cx(-n + h)).value;
                const Cx r2 = (h / 2) * ev.omega(k, Cx(-n + h / 2)).value;
                const Cx extr = 2.0 * r2 - r1;
                worst = std::max(worst, std::abs(extr - lam) / (1.0 + std::abs(lam)));
            }
        }
        chk.report("residue extraction", worst < 1e-5, worst);
    }

    { // Mittag-Leffler route agrees with direct evaluation
        const OmegaEvaluator ev(rand_potential(rng, 2));
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Cx s = rand_off_pole(rng, -1.5, 4.0, 3.0);
            for (int k = 0; k < 2; ++k) {
                const Cx a = ev.mittag_leffler(k, s).value;
                const Cx b = ev.omega(k, s).value;
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
        chk.report("mittag-leffler consistency", worst < 2e-9, worst);
    }

    { // conjugation symmetry for real potentials
        const Potential p(3, {Cx(0.3), Cx(-0.2)});
        const OmegaEvaluator ev(p);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            const Cx s = rand_off_pole(rng, 0.4, 4.0, 3.0);
            for (int k = 0; k < 3; ++k) {
                const Cx lhs = std::conj(ev.omega(k, std::conj(s)).value);
                const Cx rhs = ev.omega((3 - k) % 3, s).value;
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
            }
        }
        chk.report("conjugation symmetry", worst < 1e-9, worst);
    }

    { // determinant closed form at zero coefficients
        double worst = 0.0;
        for (int d = 1; d <= 3; ++d) {
            const OmegaEvaluator ev(Potential(d));
            for (const Cx s0 : {Cx(1.0), Cx(0.3)}) {
                const DetReport rep = delta(ev, s0);
                worst = std::max(worst,
                                 std::abs(rep.value - *rep.closed_form_monomial) / std::abs(rep.value));
            }
        }
        chk.report("determinant closed form", worst < 1e-8, worst);
    }

    { // non-vanishing and no common zero
        bool ok = true;
        double worst = 1e300;
        for (int i = 0; i < 10; ++i) {
            std::uniform_int_distribution<int> ud(1, 3);
            const int d = ud(rng);
            const OmegaEvaluator ev(rand_potential(rng, d));
            const Cx s0 = rand_off_pole(rng, -2.0, 3.0, 2.0);
            const OmegaMatrix m = omega_matrix(ev, s0);
            const Cx det = lu_determinant(m.entries, m.d);
            const double floor = 1e-10 * std::pow(m.max_abs_entry(), d);
            worst = std::min(worst, std::abs(det) / std::max(floor, 1e-300));
            ok = ok && std::abs(det) > floor;
            const double gap = common_zero_gap(ev, rand_off_pole(rng, -2.0, 3.0, 2.0));
            ok = ok && gap > 0.0;
        }
        chk.report("determinant non-vanishing and common-zero gap", ok, worst);
    }

    { // reduction identity vs direct quadrature
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            std::uniform_int_distribution<int> ud(1, 3), uq(0, 4);
            const int d = ud(rng);
            const Potential p = rand_potential(rng, d);
            const OmegaEvaluator ev(p);
            std::vector<Cx> qc;
            const int degq = uq(rng);
            for (int j = 0; j <= degq; ++j) qc.push_back(rand_cx(rng, 1.0));
            const Poly q(qc);
            const PeriodReduction red = reduce_tpoly(p, q);
            const Cx s = rand_off_pole(rng, 0.5, 2.5, 1.0);
            const Cx z = rand_cx(rng, 1.5) + Cx(0.5, 0.0);
            const Cx lhs = incomplete_power_quad(p, ev.config(), s, z, &q).value;
            const Cx rhs = eval_reduction(red, ev, s, z).value;
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
        chk.report("reduction identity vs quadrature", worst < 1e-7, worst);
    }

    { // solve-from-samples roundtrip
        const OmegaEvaluator ev(rand_potential(rng, 2));
        std::vector<Cx> target{rand_cx(rng, 1.0), rand_cx(rng, 1.0)};
        const SolutionSpec truth{target, Cx(1.0)};
        const Cx s0(0.25, 0.1);
        std::vector<Cx> v;
        for (int l = 1; l <= 2; ++l) v.push_back(eval_solution(truth, ev, s0 + static_cast<double>(l)).value);
        const SolveReport rep = solve_samples(ev, s0, v);
        double worst = 0.0;
        for (int k = 0; k < 2; ++k)
            worst = std::max(worst, std::abs(rep.spec.c[static_cast<std::size_t>(k)] - target[static_cast<std::size_t>(k)]));
        chk.report("solver roundtrip", worst < 1e-6, worst);
    }

    log << (chk.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return chk.failures;
}

} // namespace omega::cli
