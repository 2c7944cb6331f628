#pragma once

#include <optional>
#include <span>
#include <vector>

#include "omega/evaluator.hpp"
#include "omega/poly.hpp"

namespace omega {

// d x d matrix of shifted Omega values, entry(k, l) = Omega_k(s0 + l + 1)
// (columns at s0+1 .. s0+d).
struct OmegaMatrix {
    Cx s0{};
    int d = 0;
    std::vector<Cx> entries; // row-major
    Cx at(int k, int l) const { return entries[static_cast<std::size_t>(k * d + l)]; }
    double max_abs_entry() const;
};

struct DetReport {
    Cx value{};
    // Monomial-potential closed form, populated when all a_k vanish:
    //   w^{d(d-1)s0/2} (2 pi)^{(d-1)/2} d^{-d/2} D_d Gamma(s0+1),
    // D_d = det[w^{kl}], k = 0..d-1, l = 1..d.
    std::optional<Cx> closed_form_monomial{};
    // Alternative printed constant (2 pi d)^{d/2}/sqrt(2 pi) w^{d(d-1)s0/2}
    // s0 Gamma(s0), carried for cross-checking; differs from the monomial
    // form by a factor of modulus d^{d/2} for d >= 2.
    std::optional<Cx> reference_formula_value{};
};

// Coordinates of a solution f(s) = scale^s * sum_k c_k Omega_k(s).
struct SolutionSpec {
    std::vector<Cx> c;
    Cx scale = Cx(1.0);
};

struct SolveReport {
    SolutionSpec spec;
    double residual = 0.0;  // max row residual of the linear system
    double condition = 0.0; // infinity-norm condition estimate
    bool ill_conditioned = false;
};

// Throws PoleProximityError naming the offending column when any of
// s0+1..s0+d sits within pole_tol of a nonpositive integer.
OmegaMatrix omega_matrix(const OmegaEvaluator& ev, Cx s0);

// Determinant by partial-pivot elimination; the closed-form fields are
// filled for monomial potentials (all a_k = 0).
DetReport delta(const OmegaEvaluator& ev, Cx s0);

// The monomial closed form above, from the Gamma function alone.
Cx delta_closed_monomial(int d, Cx s0);

// prod_i Q'(xi_i) over the supplied roots of monic Q; equals the
// double product prod_{i != j}(xi_i - xi_j).
Cx root_product_vandermonde(const Poly& q, std::span<const Cx> roots);

// Solves sum_k c_k Omega_k(s0 + l + 1) = v_l, l = 0..d-1.
SolveReport solve_samples(const OmegaEvaluator& ev, Cx s0, std::span<const Cx> v);

// scale^s * sum_k c_k Omega_k(s); pole-adjacent s is an error (residues of
// the combination need not cancel).
EvalResult eval_solution(const SolutionSpec& spec, const OmegaEvaluator& ev, Cx s);

// max_k |Omega_k(s)|; strictly positive off the poles.
double common_zero_gap(const OmegaEvaluator& ev, Cx s);

// In-place LU determinant/solve helpers for the tiny dense systems here.
Cx lu_determinant(std::vector<Cx> m, int n);
std::vector<Cx> lu_solve(std::vector<Cx> m, int n, std::vector<Cx> rhs);

} // namespace omega
