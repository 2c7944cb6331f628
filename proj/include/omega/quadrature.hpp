#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "omega/poly.hpp"
#include "omega/potential.hpp"
#include "omega/scalar.hpp"

namespace omega {

struct QuadConfig {
    double tol = 1e-10;     // target relative error
    int max_depth = 40;     // panel bisection depth limit
    double pole_tol = 1e-8; // pole-proximity radius used by evaluators
    int series_max = 10000; // series truncation hard cap
};

struct QuadResult {
    Cx value{};
    double abs_error = 0.0; // estimated
    bool converged = true;
    double rel_error() const;
};

using Integrand = std::function<Cx(double)>;       // real parameter
using ComplexIntegrand = std::function<Cx(Cx)>;    // point on a segment

// Adaptive bisection with fixed Gauss-Legendre nodes per panel; the error
// estimate per panel comes from doubling the node count (15 vs 30 points).
QuadResult integrate_param(const Integrand& f, double a, double b, const QuadConfig& cfg);

// Straight segment [a, b] in the plane.
QuadResult integrate_segment(const ComplexIntegrand& f, Cx a, Cx b, const QuadConfig& cfg);

// Smallest radius R >= 1 such that the discarded ray tail
// int_R^inf u^{sigma-1} |e^{P(w_k u)}| du is certified <= eps. The decay
// bound Re P(w_k u) <= -u^d/(2d) holds for u >= R0 = max(1, 2d sum|a_j|)
// (exact rate -u ford = 1, where no subleading coefficients exist); the
// tail is then bounded analytically through the substitution v = u^d/(2d)
// and R is located by doubling plus bisection.
double truncation_radius(const Potential& p, int k, double sigma, double eps);

// Integrates f over u in [1, R] where f is the ray integrand parameterized
// on the positive real axis (u |-> u^{s-1} e^{P(w_k u)} [* factor]); R is
// truncation_radius(p, k, sigma, cfg.tol/10) and the certified truncation
// tail is folded into the error estimate.
QuadResult integrate_ray(const Integrand& f, int k, const Potential& p, double sigma,
                         const QuadConfig& cfg);

// Piecewise path: straight segments sharing endpoints, optionally closed by
// a ray in direction w_k truncated at |t| = radius.
struct PathSpec {
    struct Segment {
        Cx start, end;
    };
    struct Ray {
        int k = 0;
        double radius = 1.0;
    };
    std::vector<Segment> segments;
    std::optional<Ray> ray;

    // Path from t = 1 to w_k along chords of the unit circle (each
    // subtending at most 60 degrees, so it stays away from 0), then the ray
    // out to the truncation radius for exponent sigma at tolerance eps.
    static PathSpec unit_tail(const Potential& p, int k, double sigma, double eps);
};

// int t^{s-1} e^{P(t)} [* factor(t)] dt over the path, with the branch of
// t^{s-1} continued from arg t = theta0 at the first vertex (argument
// unwrapped chord by chord, each chord turning less than pi).
QuadResult integrate_power_path(const PathSpec& path, Cx s, const Potential& p, double theta0,
                                const QuadConfig& cfg, const Poly* factor = nullptr);

} // namespace omega
