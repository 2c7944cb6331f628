#include "omega/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "omega/gamma.hpp"

namespace omega {

double OmegaMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const Cx& e : entries) m = std::max(m, std::abs(e));
    return m;
}

Cx lu_determinant(std::vector<Cx> m, int n) {
    Cx det(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(col * n + col)]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r * n + col)]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return Cx(0.0);
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<std::size_t>(piv * n + c)], m[static_cast<std::size_t>(col * n + c)]);
            det = -det;
        }
        const Cx p = m[static_cast<std::size_t>(col * n + col)];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const Cx f = m[static_cast<std::size_t>(r * n + col)] / p;
            if (f == Cx(0.0)) continue;
            for (int c = col; c < n; ++c)
                m[static_cast<std::size_t>(r * n + c)] -= f * m[static_cast<std::size_t>(col * n + c)];
        }
    }
    return det;
}

std::vector<Cx> lu_solve(std::vector<Cx> m, int n, std::vector<Cx> rhs) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(col * n + col)]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r * n + col)]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<std::size_t>(piv * n + c)], m[static_cast<std::size_t>(col * n + c)]);
            std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        }
        const Cx p = m[static_cast<std::size_t>(col * n + col)];
        for (int r = col + 1; r < n; ++r) {
            const Cx f = m[static_cast<std::size_t>(r * n + col)] / p;
            if (f == Cx(0.0)) continue;
            for (int c = col; c < n; ++c)
                m[static_cast<std::size_t>(r * n + c)] -= f * m[static_cast<std::size_t>(col * n + c)];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::vector<Cx> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        Cx acc = rhs[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) acc -= m[static_cast<std::size_t>(r * n + c)] * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = acc / m[static_cast<std::size_t>(r * n + r)];
    }
    return x;
}

OmegaMatrix omega_matrix(const OmegaEvaluator& ev, Cx s0) {
    const int d = ev.potential().degree();
    for (int l = 1; l <= d; ++l) {
        if (auto n = ev.near_pole(s0 + static_cast<double>(l)))
            throw PoleProximityError(*n, "omega_matrix: column at s0+" + std::to_string(l) +
                                             " sits on the pole at -" + std::to_string(*n));
    }
    OmegaMatrix m;
    m.s0 = s0;
    m.d = d;
    m.entries.resize(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            m.entries[static_cast<std::size_t>(k * d + l)] = ev.omega(k, s0 + static_cast<double>(l + 1)).value;
    return m;
}

Cx delta_closed_monomial(int d, Cx s0) {
    const GammaValue g = gamma(s0 + 1.0);
    if (g.is_pole()) throw PoleProximityError(*g.at_pole, "delta_closed_monomial: Gamma(s0+1) pole");

    // D_d = det[w^{kl}], k = 0..d-1, l = 1..d, computed once per degree.
    static std::map<int, Cx> cache;
    static std::mutex mu;
    Cx dd;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(d);
        if (it == cache.end()) {
            std::vector<Cx> m(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
            for (int k = 0; k < d; ++k)
                for (int l = 1; l <= d; ++l)
                    m[static_cast<std::size_t>(k * d + l - 1)] =
                        std::exp(Cx(0.0, kTwoPi * k * l / d));
            it = cache.emplace(d, lu_determinant(std::move(m), d)).first;
        }
        dd = it->second;
    }

    const Cx root_phase = std::exp(Cx(0.0, kPi * (d - 1)) * s0); // w^{d(d-1)s0/2}
    return root_phase * std::pow(2.0 * kPi, 0.5 * (d - 1)) * std::pow(static_cast<double>(d), -0.5 * d) *
           dd * g.value;
}

namespace {

Cx reference_delta_formula(int d, Cx s0) {
    // (2 pi d)^{d/2} / sqrt(2 pi) * w^{d(d-1)s0/2} * s0 Gamma(s0),
    // written through Gamma(s0+1) so it stays finite at s0 = 0.
    const GammaValue g = gamma(s0 + 1.0);
    if (g.is_pole()) throw PoleProximityError(*g.at_pole, "reference delta formula: Gamma pole");
    const Cx root_phase = std::exp(Cx(0.0, kPi * (d - 1)) * s0);
    return std::pow(2.0 * kPi * d, 0.5 * d) / std::sqrt(2.0 * kPi) * root_phase * g.value;
}

} // namespace

DetReport delta(const OmegaEvaluator& ev, Cx s0) {
    const OmegaMatrix m = omega_matrix(ev, s0);
    DetReport rep;
    rep.value = lu_determinant(m.entries, m.d);
    if (ev.potential().coeff_abs_sum() == 0.0) {
        rep.closed_form_monomial = delta_closed_monomial(m.d, s0);
        rep.reference_formula_value = reference_delta_formula(m.d, s0);
    }
    return rep;
}

Cx root_product_vandermonde(const Poly& q, std::span<const Cx> roots) {
    const Poly dq = q.derivative();
    Cx acc(1.0);
    for (const Cx& r : roots) acc *= dq(r);
    return acc;
}

SolveReport solve_samples(const OmegaEvaluator& ev, Cx s0, std::span<const Cx> v) {
    const int d = ev.potential().degree();
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("solve_samples: expected exactly d sample values");
    const OmegaMatrix m = omega_matrix(ev, s0);

    // Row l of the system is sum_k c_k Omega_k(s0+l+1) = v_l, i.e. M^T c = v.
    std::vector<Cx> a(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) a[static_cast<std::size_t>(l * d + k)] = m.at(k, l);

    std::vector<Cx> rhs(v.begin(), v.end());
    std::vector<Cx> c = lu_solve(a, d, rhs);

    SolveReport rep;
    rep.spec = SolutionSpec{c, Cx(1.0)};

    double res = 0.0;
    double vmax = 1.0;
    for (int l = 0; l < d; ++l) {
        Cx acc(0.0);
        for (int k = 0; k < d; ++k) acc += a[static_cast<std::size_t>(l * d + k)] * c[static_cast<std::size_t>(k)];
        res = std::max(res, std::abs(acc - v[static_cast<std::size_t>(l)]));
        vmax = std::max(vmax, std::abs(v[static_cast<std::size_t>(l)]));
    }
    rep.residual = res / vmax;

    // infinity-norm condition estimate via the explicit inverse (d is tiny)
    double norm_a = 0.0, norm_inv = 0.0;
    std::vector<Cx> inv_col;
    std::vector<double> inv_row_sum(static_cast<std::size_t>(d), 0.0);
    for (int l = 0; l < d; ++l) {
        double row = 0.0;
        for (int k = 0; k < d; ++k) row += std::abs(a[static_cast<std::size_t>(l * d + k)]);
        norm_a = std::max(norm_a, row);
    }
    for (int j = 0; j < d; ++j) {
        std::vector<Cx> e(static_cast<std::size_t>(d), Cx(0.0));
        e[static_cast<std::size_t>(j)] = Cx(1.0);
        inv_col = lu_solve(a, d, std::move(e));
        for (int r = 0; r < d; ++r) inv_row_sum[static_cast<std::size_t>(r)] += std::abs(inv_col[static_cast<std::size_t>(r)]);
    }
    for (double r : inv_row_sum) norm_inv = std::max(norm_inv, r);
    rep.condition = norm_a * norm_inv;
    rep.ill_conditioned = rep.condition > 1e8;
    return rep;
}

EvalResult eval_solution(const SolutionSpec& spec, const OmegaEvaluator& ev, Cx s) {
    if (auto n = ev.near_pole(s))
        throw PoleProximityError(*n, "eval_solution: argument within pole_tol of a pole");
    const int d = ev.potential().degree();
    if (static_cast<int>(spec.c.size()) != d)
        throw std::invalid_argument("eval_solution: coefficient count does not match degree");
    if (spec.scale == Cx(0.0)) throw std::invalid_argument("eval_solution: zero scale");

    Cx acc(0.0);
    double err = 0.0;
    bool conv = true;
    for (int k = 0; k < d; ++k) {
        if (spec.c[static_cast<std::size_t>(k)] == Cx(0.0)) continue;
        const EvalResult e = ev.omega(k, s);
        acc += spec.c[static_cast<std::size_t>(k)] * e.value;
        err += std::abs(spec.c[static_cast<std::size_t>(k)]) * e.achieved_error * std::abs(e.value);
        conv = conv && e.converged;
    }
    const Cx scale_pow = (spec.scale == Cx(1.0)) ? Cx(1.0) : std::exp(s * std::log(spec.scale));

    EvalResult r;
    r.value = scale_pow * acc;
    r.achieved_error = err / std::max(std::abs(acc), 1e-300);
    r.converged = conv;
    return r;
}

double common_zero_gap(const OmegaEvaluator& ev, Cx s) {
    if (auto n = ev.near_pole(s))
        throw PoleProximityError(*n, "common_zero_gap: argument within pole_tol of a pole");
    const int d = ev.potential().degree();
    double gap = 0.0;
    for (int k = 0; k < d; ++k) gap = std::max(gap, std::abs(ev.omega(k, s).value));
    return gap;
}

} // namespace omega
