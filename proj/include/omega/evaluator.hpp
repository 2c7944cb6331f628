#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "omega/potential.hpp"
#include "omega/quadrature.hpp"
#include "omega/scalar.hpp"

namespace omega {

// Simple pole at s = -n with residue lambda_n (the same for every ray).
struct PoleInfo {
    int n = 0;
    Cx residue{};
};

struct EvalResult {
    Cx value{};
    std::optional<PoleInfo> pole{};
    double achieved_error = 0.0; // estimated relative error
    bool converged = true;
    bool is_pole() const { return pole.has_value(); }
};

// Thrown by operations whose precondition excludes pole-adjacent arguments
// (matrix columns, solver grids, residual checks).
struct PoleProximityError : std::runtime_error {
    int n;
    PoleProximityError(int n_, const std::string& what) : std::runtime_error(what), n(n_) {}
};

// int_0^z t^{w} factor(t) e^{P(t)} dt by direct quadrature on the segment
// (principal branch, arg t = arg z). The substitution t = z v^{1/(Re w + 1)}
// flattens the endpoint at 0; requires Re w + 1 > 0.1 and z != 0.
QuadResult incomplete_power_quad(const Potential& p, const QuadConfig& cfg, Cx w, Cx z,
                                 const Poly* factor = nullptr);

// Evaluation bundle for the Omega functions of one potential: direct region,
// continuation through the difference equation, residues, entire
// differences, and the incomplete variant. Immutable after construction and
// safe to share across threads; the series cache extends append-only behind
// a lock and readers hold stable snapshots.
class OmegaEvaluator {
public:
    explicit OmegaEvaluator(Potential pot, QuadConfig cfg = {});

    const Potential& potential() const { return pot_; }
    const QuadConfig& config() const { return cfg_; }

    // Snapshot of the exp-series coefficients with at least `count` entries.
    std::shared_ptr<const std::vector<Cx>> lambdas(std::size_t count) const;
    // lambda_n = residue of Omega_k at s = -n, identical for every k.
    Cx residue(int n) const;

    // Index of the nonpositive-integer pole within cfg.pole_tol of s, if any.
    std::optional<int> near_pole(Cx s) const;

    // Omega_k(s) for Re s > 0: ray branch arg t = 2 pi k/d, series on [0,1]
    // plus truncated ray quadrature.
    EvalResult omega_pos(int k, Cx s) const;

    // Omega_k(s) anywhere: recursion through the difference equation brings
    // the argument into the convergent half plane; arguments within pole_tol
    // of a nonpositive integer come back as PoleInfo.
    EvalResult omega(int k, Cx s) const;

    // Principal parts up to n_terms (adaptive when negative) plus the entire
    // tail integral from t = 1 out along the k-th ray.
    EvalResult mittag_leffler(int k, Cx s, int n_terms = -1) const;

    // Omega_k(s) - Omega_l(s), an entire function: the rational parts share
    // every residue and cancel identically, leaving the two tail integrals.
    EvalResult omega_diff(int k, int l, Cx s) const;

    // Incomplete function int_0^z t^{s-1} e^{P} dt via termwise integration
    // (arg t = principal arg z); Re s > 0, z != 0.
    EvalResult incomplete(Cx s, Cx z) const;

    // Independent quadrature route for incomplete(); Re s > 0.1.
    EvalResult incomplete_quad(Cx s, Cx z) const;

    // |LHS - RHS| / max(|LHS|, |RHS|, 1) of the difference equation at s.
    double functional_residual(int k, Cx s) const;

private:
    struct SeriesSum {
        Cx value{};
        double tail_abs = 0.0;
        bool converged = true;
    };
    // sum_n lambda_n zeta^n / (s + n), truncated when 10 consecutive terms
    // drop below tol * |partial sum|.
    SeriesSum power_series_sum(Cx zeta, Cx s) const;

    void check_ray(int k) const;

    Potential pot_;
    QuadConfig cfg_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const std::vector<Cx>> lam_;
};

} // namespace omega
