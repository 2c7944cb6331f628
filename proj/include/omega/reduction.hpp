#pragma once

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "omega/evaluator.hpp"
#include "omega/poly.hpp"
#include "omega/potential.hpp"

namespace omega {

// Polynomial in the exponent variable s.
using SPoly = Poly;

// Finite sum  sum_{(i,m)} p_{im}(s) z^i (z^s)^m; multiplies e^{P(z)} in a
// period reduction. For results produced here m is always 0 or 1 (one z^s
// factor per boundary term); the key is kept general for serialization.
class ExpPolyExpr {
public:
    using Key = std::pair<int, int>; // (power of z, power of z^s)

    void add(int z_pow, int zs_pow, const SPoly& p);
    const std::map<Key, SPoly>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Value at (s, z) with z^s supplied by the caller (fixes the branch).
    Cx eval(Cx s, Cx z, Cx z_to_s) const;

private:
    std::map<Key, SPoly> terms_;
};

// Symbolic identity
//   int_0^z t^sigma Q(t) e^{P(t)} dt
//     = boundary(sigma, z, z^sigma) e^{P(z)} + sum_k c_k(sigma) O(sigma+k, z)
// where O(w, z) is the incomplete function. sigma_shift records how the
// formal exponent relates to the caller's s: sigma = sigma_shift * s (1 for
// a plain t-polynomial reduction, the t^s-power m for a mixed group).
struct PeriodReduction {
    ExpPolyExpr boundary;
    std::vector<SPoly> c; // c_0..c_{d-1}
    int sigma_shift = 1;
};

// Reduction of int_0^z t^sigma Q(t) e^{P} dt. Exact symbolic identity for
// every Q and every degree; d = 1 runs the explicit repeated
// integration-by-parts loop, d >= 2 the Euclidean-division descent.
PeriodReduction reduce_tpoly(const Potential& p, const Poly& q);

// Bivariate polynomial in (t, y) with y standing for t^s.
class BivarPoly {
public:
    using Key = std::pair<int, int>; // (power of t, power of y)

    static BivarPoly constant(Cx v);
    static BivarPoly var_t();
    static BivarPoly var_y();

    void add(int t_pow, int y_pow, Cx v);
    const std::map<Key, Cx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_y_power() const;
    Poly t_slice(int y_pow) const; // coefficient polynomial of y^y_pow

    BivarPoly& operator+=(const BivarPoly& o);
    BivarPoly& operator-=(const BivarPoly& o);
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    BivarPoly pow(int e) const;

private:
    std::map<Key, Cx> terms_;
};

// Integrand Q(t, t^s) e^{P(t)}: one reduction per t^s-power m, the group
// y^m Q_m(t) reduced at formal exponent sigma = m s and tagged
// sigma_shift = m. Groups m = 0, 1 stay in the window basis; m >= 2 live in
// the shifted basis O(m s + k, z).
std::vector<PeriodReduction> reduce_mixed(const Potential& p, const BivarPoly& q);

// O(s+k, z) rewritten in the window basis {O(s+j, z)}_{j<d} plus a boundary
// term, by repeated use of
//   O(s+d, z) = s O(s, z) - z^s e^{P(z)} - sum_l alpha_l O(s+l, z).
// Requires k >= d.
struct ShiftRewrite {
    std::vector<SPoly> c; // window coefficients, indices 0..d-1
    ExpPolyExpr boundary;
};
ShiftRewrite rewrite_shift(const Potential& p, int k);

// Numeric value of the reduction at (s, z): the formal exponent is
// sigma = sigma_shift * s. Basis terms whose index sits on a nonpositive
// integer are resolved as limits c_k'(sigma) * lambda_n when the coefficient
// vanishes there (it does by construction for the sigma = 0 group);
// otherwise pole proximity is an error.
EvalResult eval_reduction(const PeriodReduction& red, const OmegaEvaluator& ev, Cx s, Cx z);

// Coefficients of O_k(sigma+j) in the ray limit z -> inf * w_k: the
// boundary term decays and only the window coefficients survive. Requires
// sigma_shift in {0, 1} (larger shifts leave the window basis).
std::vector<SPoly> reduce_ray_limit(const PeriodReduction& red, int k);

// Expression grammar for CLI input: polynomial in `t` and `T` (T = t^s),
// operators + - * ^, parentheses, complex literals like 0.5-0.25i.
// Throws std::invalid_argument on syntax errors.
BivarPoly parse_q_expression(std::string_view text);

} // namespace omega
