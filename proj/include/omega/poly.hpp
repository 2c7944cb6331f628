#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "omega/scalar.hpp"

namespace omega {

// Dense complex polynomial, coefficients indexed by power. The zero
// polynomial is the empty coefficient vector; otherwise the stored leading
// coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Cx> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<Cx> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(int power, Cx coeff = Cx(1.0));

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    Cx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Cx(0.0);
    }
    std::span<const Cx> coeffs() const { return c_; }

    Cx operator()(Cx t) const; // Horner evaluation
    Poly derivative() const;

    // (p - p(0)) / t; requires coeff(0) to be dropped exactly.
    Poly shifted_down() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(Cx a);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Cx a, Poly p) { return p *= a; }
    friend Poly operator*(Poly p, Cx a) { return p *= a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(Poly p);
    bool operator==(const Poly&) const = default;

    double max_abs_coeff() const;

    // Euclidean division: num = q*den + r with deg r < deg den.
    // Throws std::invalid_argument when den is the zero polynomial.
    static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);

private:
    void trim() {
        while (!c_.empty() && c_.back() == Cx(0.0)) c_.pop_back();
    }
    std::vector<Cx> c_;
};

} // namespace omega
