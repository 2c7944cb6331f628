#include "omega/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omega {

namespace {
constexpr double kTiny = 1e-300;
}

QuadResult incomplete_power_quad(const Potential& p, const QuadConfig& cfg, Cx w, Cx z,
                                 const Poly* factor) {
    const double pw = w.real() + 1.0;
    if (!(pw > 0.1))
        throw std::invalid_argument("incomplete_power_quad: exponent too singular at 0 (Re w + 1 <= 0.1)");
    if (z == Cx(0.0)) throw std::invalid_argument("incomplete_power_quad: z must be nonzero");

    const Cx scale = std::exp((w + 1.0) * std::log(z)) / pw; // z^{w+1}/pw, principal branch
    const Cx expo = (w + 1.0) / pw - 1.0;                    // purely imaginary
    auto f = [&](double v) {
        const Cx t = z * std::pow(v, 1.0 / pw);
        Cx val = std::exp(expo * std::log(v) + p(t));
        if (factor) val *= (*factor)(t);
        return val;
    };
    QuadResult q = integrate_param(f, 0.0, 1.0, cfg);
    q.value *= scale;
    q.abs_error *= std::abs(scale);
    return q;
}

OmegaEvaluator::OmegaEvaluator(Potential pot, QuadConfig cfg) : pot_(std::move(pot)), cfg_(cfg) {
    if (!(cfg_.tol > 0.0 && cfg_.tol < 1.0))
        throw std::invalid_argument("OmegaEvaluator: tol must be in (0, 1)");
    auto init = std::make_shared<std::vector<Cx>>();
    extend_exp_series(pot_, *init, 127);
    lam_ = std::move(init);
}

std::shared_ptr<const std::vector<Cx>> OmegaEvaluator::lambdas(std::size_t count) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (lam_->size() < count) {
        auto next = std::make_shared<std::vector<Cx>>(*lam_);
        const std::size_t target = std::max(count, lam_->size() * 2);
        extend_exp_series(pot_, *next, static_cast<int>(target) - 1);
        lam_ = next;
    }
    return lam_;
}

Cx OmegaEvaluator::residue(int n) const {
    if (n < 0) throw std::invalid_argument("residue: n must be >= 0");
    return (*lambdas(static_cast<std::size_t>(n) + 1))[static_cast<std::size_t>(n)];
}

std::optional<int> OmegaEvaluator::near_pole(Cx s) const {
    const long long n = std::llround(-s.real());
    if (n >= 0 && std::abs(s + static_cast<double>(n)) < cfg_.pole_tol) return static_cast<int>(n);
    return std::nullopt;
}

void OmegaEvaluator::check_ray(int k) const {
    if (k < 0 || k >= pot_.degree())
        throw std::invalid_argument("ray index out of range for degree " + std::to_string(pot_.degree()));
}

OmegaEvaluator::SeriesSum OmegaEvaluator::power_series_sum(Cx zeta, Cx s) const {
    auto lam = lambdas(128);
    Cx zpow(1.0);
    Cx sum(0.0);
    double last = 0.0;
    int consecutive = 0;
    for (int n = 0; n <= cfg_.series_max; ++n) {
        if (n >= static_cast<int>(lam->size())) lam = lambdas(lam->size() * 2);
        const Cx term = (*lam)[static_cast<std::size_t>(n)] * zpow / (s + static_cast<double>(n));
        sum += term;
        last = std::abs(term);
        if (last <= cfg_.tol * std::max(std::abs(sum), kTiny)) {
            if (++consecutive >= 10) return SeriesSum{sum, 2.0 * std::max(last, cfg_.tol * std::abs(sum)), true};
        } else {
            consecutive = 0;
        }
        zpow *= zeta;
    }
    return SeriesSum{sum, std::max(last, cfg_.tol * std::abs(sum)), false};
}

EvalResult OmegaEvaluator::omega_pos(int k, Cx s) const {
    check_ray(k);
    if (!(s.real() > 0.0)) throw std::invalid_argument("omega_pos: requires Re s > 0");

    const Cx wk = pot_.omega_root(k);
    const SeriesSum ser = power_series_sum(wk, s);
    auto ray_f = [&](double u) { return std::exp((s - 1.0) * std::log(u) + pot_(wk * u)); };
    const QuadResult q = integrate_ray(ray_f, k, pot_, s.real(), cfg_);

    const Cx inner = ser.value + q.value;
    const double abs_err = ser.tail_abs + q.abs_error;

    EvalResult r;
    r.value = pot_.ray_power(k, s) * inner;
    r.achieved_error = abs_err / std::max(std::abs(inner), kTiny);
    r.converged = ser.converged && q.converged;
    return r;
}

EvalResult OmegaEvaluator::omega(int k, Cx s) const {
    check_ray(k);
    if (auto n = near_pole(s)) {
        EvalResult r;
        r.pole = PoleInfo{*n, residue(*n)};
        return r;
    }
    if (s.real() > 0.0) return omega_pos(k, s);

    const int d = pot_.degree();
    const int m0 = static_cast<int>(std::floor(-s.real())) + 1; // Re(s + m0) in (0, 1]
    std::vector<Cx> val(static_cast<std::size_t>(m0 + d));
    std::vector<double> aerr(static_cast<std::size_t>(m0 + d));
    bool conv = true;
    for (int m = m0; m < m0 + d; ++m) {
        const EvalResult e = omega_pos(k, s + static_cast<double>(m));
        val[static_cast<std::size_t>(m)] = e.value;
        aerr[static_cast<std::size_t>(m)] = e.achieved_error * std::abs(e.value);
        conv = conv && e.converged;
    }
    for (int m = m0 - 1; m >= 0; --m) {
        Cx acc = val[static_cast<std::size_t>(m + d)];
        double err = aerr[static_cast<std::size_t>(m + d)];
        for (int l = 1; l <= d - 1; ++l) {
            const Cx al = pot_.alpha(l);
            acc += al * val[static_cast<std::size_t>(m + l)];
            err += std::abs(al) * aerr[static_cast<std::size_t>(m + l)];
        }
        const Cx sm = s + static_cast<double>(m);
        val[static_cast<std::size_t>(m)] = acc / sm;
        aerr[static_cast<std::size_t>(m)] =
            (err + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(acc)) / std::abs(sm);
    }

    EvalResult r;
    r.value = val[0];
    r.achieved_error = aerr[0] / std::max(std::abs(val[0]), kTiny);
    r.converged = conv;
    return r;
}

EvalResult OmegaEvaluator::mittag_leffler(int k, Cx s, int n_terms) const {
    check_ray(k);
    if (auto n = near_pole(s)) {
        EvalResult r;
        r.pole = PoleInfo{*n, residue(*n)};
        return r;
    }

    SeriesSum rat;
    if (n_terms < 0) {
        rat = power_series_sum(Cx(1.0), s);
    } else {
        auto lam = lambdas(static_cast<std::size_t>(n_terms) + 1);
        Cx sum(0.0);
        for (int n = 0; n <= n_terms; ++n) sum += (*lam)[static_cast<std::size_t>(n)] / (s + static_cast<double>(n));
        const double last =
            (n_terms >= 0) ? std::abs((*lam)[static_cast<std::size_t>(n_terms)] / (s + static_cast<double>(n_terms))) : 0.0;
        rat = SeriesSum{sum, last, true};
    }

    const PathSpec path = PathSpec::unit_tail(pot_, k, s.real(), cfg_.tol / 10.0);
    const QuadResult tail = integrate_power_path(path, s, pot_, 0.0, cfg_);

    EvalResult r;
    r.value = rat.value + tail.value;
    r.achieved_error = (rat.tail_abs + tail.abs_error) / std::max(std::abs(r.value), kTiny);
    r.converged = rat.converged && tail.converged;
    return r;
}

EvalResult OmegaEvaluator::omega_diff(int k, int l, Cx s) const {
    check_ray(k);
    check_ray(l);
    if (k == l) throw std::invalid_argument("omega_diff: ray indices must differ");

    // The principal parts carry the same residues lambda_n for both rays and
    // cancel termwise, so only the two entire tail integrals remain.
    const PathSpec pk = PathSpec::unit_tail(pot_, k, s.real(), cfg_.tol / 10.0);
    const PathSpec pl = PathSpec::unit_tail(pot_, l, s.real(), cfg_.tol / 10.0);
    const QuadResult qk = integrate_power_path(pk, s, pot_, 0.0, cfg_);
    const QuadResult ql = integrate_power_path(pl, s, pot_, 0.0, cfg_);

    EvalResult r;
    r.value = qk.value - ql.value;
    r.achieved_error = (qk.abs_error + ql.abs_error) / std::max(std::abs(r.value), kTiny);
    r.converged = qk.converged && ql.converged;
    return r;
}

EvalResult OmegaEvaluator::incomplete(Cx s, Cx z) const {
    if (!(s.real() > 0.0)) throw std::invalid_argument("incomplete: requires Re s > 0");
    if (z == Cx(0.0)) throw std::invalid_argument("incomplete: z must be nonzero");

    const SeriesSum ser = power_series_sum(z, s);
    const Cx zs = std::exp(s * std::log(z)); // principal branch

    EvalResult r;
    r.value = zs * ser.value;
    r.achieved_error = ser.tail_abs / std::max(std::abs(ser.value), kTiny);
    r.converged = ser.converged;
    return r;
}

EvalResult OmegaEvaluator::incomplete_quad(Cx s, Cx z) const {
    if (!(s.real() > 0.1)) throw std::invalid_argument("incomplete_quad: requires Re s > 0.1");
    const QuadResult q = incomplete_power_quad(pot_, cfg_, s - 1.0, z);
    EvalResult r;
    r.value = q.value;
    r.achieved_error = q.rel_error();
    r.converged = q.converged;
    return r;
}

double OmegaEvaluator::functional_residual(int k, Cx s) const {
    check_ray(k);
    if (auto n = near_pole(s))
        throw PoleProximityError(*n, "functional_residual: argument within pole_tol of a pole");

    const int d = pot_.degree();
    Cx lhs = omega(k, s + static_cast<double>(d)).value;
    for (int l = 1; l <= d - 1; ++l) lhs += pot_.alpha(l) * omega(k, s + static_cast<double>(l)).value;
    const Cx rhs = s * omega(k, s).value;
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

} // namespace omega
