#include "omega/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omega {

Poly Poly::monomial(int power, Cx coeff) {
    if (coeff == Cx(0.0) || power < 0) return Poly{};
    std::vector<Cx> c(static_cast<std::size_t>(power) + 1, Cx(0.0));
    c.back() = coeff;
    return Poly(std::move(c));
}

Cx Poly::operator()(Cx t) const {
    Cx acc(0.0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly{};
    std::vector<Cx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::shifted_down() const {
    if (c_.size() <= 1) return Poly{};
    return Poly(std::vector<Cx>(c_.begin() + 1, c_.end()));
}

Poly& Poly::operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Cx(0.0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Cx(0.0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(Cx a) {
    if (a == Cx(0.0)) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= a;
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Cx> c(a.c_.size() + b.c_.size() - 1, Cx(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly operator-(Poly p) {
    for (auto& c : p.c_) c = -c;
    return p;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::invalid_argument("Poly::divmod: division by zero polynomial");
    if (num.degree() < den.degree()) return {Poly{}, num};

    std::vector<Cx> rem(num.c_.begin(), num.c_.end());
    const int dq = num.degree() - den.degree();
    std::vector<Cx> quot(static_cast<std::size_t>(dq) + 1, Cx(0.0));
    const Cx lead = den.c_.back();
    for (int k = dq; k >= 0; --k) {
        const Cx f = rem[static_cast<std::size_t>(k + den.degree())] / lead;
        quot[static_cast<std::size_t>(k)] = f;
        if (f == Cx(0.0)) continue;
        for (int j = 0; j <= den.degree(); ++j)
            rem[static_cast<std::size_t>(k + j)] -= f * den.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(std::max(den.degree(), 0)));
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

} // namespace omega
