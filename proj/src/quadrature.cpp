#include "omega/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omega {

double QuadResult::rel_error() const {
    const double scale = std::max(std::abs(value), std::numeric_limits<double>::min());
    return abs_error / scale;
}

namespace {

struct GlRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

GlRule make_gl(int n) {
    GlRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n and P_n' by recurrence
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[static_cast<std::size_t>(i)] = -x;
        r.x[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[static_cast<std::size_t>(i)] = w;
        r.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

const GlRule& gl15() {
    static const GlRule r = make_gl(15);
    return r;
}
const GlRule& gl30() {
    static const GlRule r = make_gl(30);
    return r;
}

struct Panel {
    Cx value;
    double err;
    double abs_sum; // int |f| estimate, for scale selection
};

Panel eval_panel(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Cx v15(0.0), v30(0.0);
    double asum = 0.0;
    const auto& r15 = gl15();
    for (int i = 0; i < 15; ++i) v15 += r15.w[static_cast<std::size_t>(i)] * f(mid + half * r15.x[static_cast<std::size_t>(i)]);
    const auto& r30 = gl30();
    for (int i = 0; i < 30; ++i) {
        const Cx fv = f(mid + half * r30.x[static_cast<std::size_t>(i)]);
        v30 += r30.w[static_cast<std::size_t>(i)] * fv;
        asum += r30.w[static_cast<std::size_t>(i)] * std::abs(fv);
    }
    v15 *= half;
    v30 *= half;
    return Panel{v30, std::abs(v30 - v15), asum * std::fabs(half)};
}

struct Accum {
    Cx value{};
    double err = 0.0;
    bool converged = true;
};

void adapt(const Integrand& f, double a, double b, double abs_tol, int depth, const QuadConfig& cfg,
           Accum& acc) {
    const Panel p = eval_panel(f, a, b);
    if (p.err <= abs_tol || depth >= cfg.max_depth) {
        acc.value += p.value;
        acc.err += p.err;
        if (p.err > abs_tol) acc.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * abs_tol, depth + 1, cfg, acc);
    adapt(f, mid, b, 0.5 * abs_tol, depth + 1, cfg, acc);
}

} // namespace

QuadResult integrate_param(const Integrand& f, double a, double b, const QuadConfig& cfg) {
    if (a == b) return QuadResult{Cx(0.0), 0.0, true};
    const Panel whole = eval_panel(f, a, b);
    const double scale =
        std::max({std::abs(whole.value), 1e-3 * whole.abs_sum, std::numeric_limits<double>::min()});
    const double abs_tol = cfg.tol * scale;
    Accum acc;
    if (whole.err <= abs_tol) {
        acc.value = whole.value;
        acc.err = whole.err;
    } else {
        const double mid = 0.5 * (a + b);
        adapt(f, a, mid, 0.5 * abs_tol, 1, cfg, acc);
        adapt(f, mid, b, 0.5 * abs_tol, 1, cfg, acc);
    }
    // converged means the estimate met the tolerance relative to the final value
    const double final_scale = std::max(std::abs(acc.value), scale);
    return QuadResult{acc.value, acc.err, acc.converged && acc.err <= 4.0 * cfg.tol * final_scale};
}

QuadResult integrate_segment(const ComplexIntegrand& f, Cx a, Cx b, const QuadConfig& cfg) {
    const Cx dir = b - a;
    return integrate_param([&](double x) { return f(a + x * dir) * dir; }, 0.0, 1.0, cfg);
}

namespace {

// Upper bound for int_x^inf v^{q-1} e^{-v} dv, valid for x >= max(0, 2(q-1)):
// v^{q-1} e^{-v} <= x^{q-1} e^{-x} e^{-(v-x)/2} there, giving <= 2 x^{q-1} e^{-x}
// (factor 1 suffices for q <= 1).
double upper_gamma_bound(double q, double x) {
    const double kappa = (q > 1.0) ? 2.0 : 1.0;
    return kappa * std::exp((q - 1.0) * std::log(x) - x);
}

} // namespace

double truncation_radius(const Potential& p, int k, double sigma, double eps) {
    if (k < 0 || k >= p.degree()) throw std::invalid_argument("truncation_radius: ray index out of range");
    if (!(eps > 0.0)) throw std::invalid_argument("truncation_radius: eps must be positive");
    const int d = p.degree();
    const double theta = (d == 1) ? 1.0 : 2.0; // decay rate u^d/(theta d)
    const double r0 = (d == 1) ? 1.0 : std::max(1.0, 2.0 * d * p.coeff_abs_sum());
    const double q = sigma / d;
    const double coef = std::pow(theta * d, q) / d; // tail = coef * int_x^inf v^{q-1} e^{-v} dv

    double xlo = std::max({1e-10, 2.0 * (q - 1.0), std::pow(r0, d) / (theta * d)});
    auto bound = [&](double x) { return coef * upper_gamma_bound(q, x); };
    if (bound(xlo) > eps) {
        double xhi = std::max(2.0 * xlo, 1.0);
        while (bound(xhi) > eps && xhi < 1e300) xhi *= 2.0;
        for (int it = 0; it < 200 && (xhi - xlo) > 1e-9 * xhi; ++it) {
            const double mid = 0.5 * (xlo + xhi);
            (bound(mid) > eps ? xlo : xhi) = mid;
        }
        xlo = xhi;
    }
    const double r = std::pow(theta * d * xlo, 1.0 / d);
    return std::max({r, r0, 1.0});
}

QuadResult integrate_ray(const Integrand& f, int k, const Potential& p, double sigma,
                         const QuadConfig& cfg) {
    const double eps = cfg.tol / 10.0;
    const double r = truncation_radius(p, k, sigma, eps);
    QuadResult q = integrate_param(f, 1.0, r, cfg);
    q.abs_error += eps;
    return q;
}

PathSpec PathSpec::unit_tail(const Potential& p, int k, double sigma, double eps) {
    if (k < 0 || k >= p.degree())
        throw std::invalid_argument("PathSpec::unit_tail: ray index out of range");
    PathSpec path;
    const double angle = kTwoPi * k / p.degree();
    const int chords = std::max(1, static_cast<int>(std::ceil(angle / (kPi / 3.0))));
    Cx prev(1.0);
    for (int j = 1; j <= chords && angle > 0.0; ++j) {
        const double th = angle * j / chords;
        const Cx next(std::cos(th), std::sin(th));
        path.segments.push_back(Segment{prev, next});
        prev = next;
    }
    path.ray = Ray{k, truncation_radius(p, k, sigma, eps)};
    return path;
}

QuadResult integrate_power_path(const PathSpec& path, Cx s, const Potential& p, double theta0,
                                const QuadConfig& cfg, const Poly* factor) {
    Cx total(0.0);
    double err = 0.0;
    bool converged = true;
    double theta = theta0;

    for (const auto& seg : path.segments) {
        const Cx t_start = seg.start;
        const double theta_at_start = theta;
        auto f = [&](Cx t) {
            const double arg = theta_at_start + std::arg(t / t_start);
            const Cx log_t(std::log(std::abs(t)), arg);
            Cx v = std::exp((s - 1.0) * log_t + p(t));
            if (factor) v *= (*factor)(t);
            return v;
        };
        const QuadResult q = integrate_segment(f, seg.start, seg.end, cfg);
        total += q.value;
        err += q.abs_error;
        converged = converged && q.converged;
        theta += std::arg(seg.end / seg.start);
    }

    if (path.ray) {
        const int k = path.ray->k;
        const Cx wk = p.omega_root(k);
        const Cx phase = std::exp(Cx(0.0, theta) * s); // t = e^{i theta} u on the ray
        auto f = [&](double u) {
            Cx v = std::exp((s - 1.0) * std::log(u) + p(wk * u));
            if (factor) v *= (*factor)(wk * u);
            return v;
        };
        QuadResult q = integrate_param(f, 1.0, path.ray->radius, cfg);
        total += phase * q.value;
        err += q.abs_error + cfg.tol / 10.0; // truncation tail certified by the radius choice
        converged = converged && q.converged;
    }
    return QuadResult{total, err, converged};
}

} // namespace omega
