#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omega/poly.hpp"
#include "omega/scalar.hpp"

namespace omega {

// Normalized degree-d potential  P(t) = -t^d/d + sum_{k=1}^{d-1} a_k t^k,
// the single source of truth for d, the ray directions w_k = e^{2 pi i k/d}
// and the difference-equation coefficients alpha_l = -l a_l (alpha_d = 1).
class Potential {
public:
    explicit Potential(int d, std::vector<Cx> a = {});

    int degree() const { return d_; }
    // Coefficient a_k for 0 <= k <= d (a_0 = 0, a_d = -1/d).
    Cx a(int k) const;
    // alpha_l = -l a_l for l < d, alpha_d = 1.
    Cx alpha(int l) const;
    std::span<const Cx> free_coeffs() const { return a_; } // a_1..a_{d-1}

    Cx omega_root(int k = 1) const; // e^{2 pi i k / d}
    // w_k^s with the ray branch arg t = 2 pi k / d, i.e. exp(2 pi i k s / d).
    Cx ray_power(int k, Cx s) const;

    Poly poly() const;       // P as a Poly
    Poly derivative() const; // P'
    Cx operator()(Cx t) const;

    bool is_real() const;
    double coeff_abs_sum() const; // sum_{k=1}^{d-1} |a_k|

    std::string to_string() const; // "d=3;a1=...;a2=..."
    // Parses "d=<int>;a1=<cplx>;..." (omitted a_k are zero).
    // Throws std::invalid_argument on malformed input.
    static Potential parse(std::string_view text);

    bool operator==(const Potential&) const = default;

private:
    int d_;
    std::vector<Cx> a_; // a_[k-1] = a_k, k = 1..d-1
};

// Extends lam (Taylor coefficients of exp(P)) in place up to index `order`
// via the first-order recurrence n*lam_n = sum_k k a_k lam_{n-k}. Existing
// entries are never modified.
void extend_exp_series(const Potential& p, std::vector<Cx>& lam, int order);

// Taylor coefficients lambda_0..lambda_N of exp(P(t)); lambda_n is also the
// residue of every Omega_k at s = -n.
class ExpSeries {
public:
    ExpSeries(Potential p, int order);
    void extend(int order); // appends only
    int order() const { return static_cast<int>(lam_.size()) - 1; }
    Cx lambda(int n) const;
    std::span<const Cx> coeffs() const { return lam_; }
    const Potential& potential() const { return pot_; }

private:
    Potential pot_;
    std::vector<Cx> lam_;
};

ExpSeries exp_series(const Potential& p, int order);

// Canonical form of a raw difference equation
//   s f(s) = sum_{k=1}^d alpha_k^{raw} f(s+k),  alpha_d^{raw} != 0:
// f solves the raw equation iff h(s) = scale^{-s} f(s) solves the canonical
// equation of `potential` (leading coefficient 1).
struct NormalizedDFE {
    Potential potential;
    Cx scale; // c = (alpha_d^{raw})^{-1/d}, principal branch
};

// alpha[k-1] is the raw coefficient of f(s+k), k = 1..d.
// Throws std::invalid_argument when alpha_d = 0 or alpha is empty.
NormalizedDFE normalize_dfe(std::span<const Cx> alpha);

} // namespace omega
