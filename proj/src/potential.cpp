#include "omega/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace omega {

Potential::Potential(int d, std::vector<Cx> a) : d_(d), a_(std::move(a)) {
    if (d_ < 1) throw std::invalid_argument("Potential: degree must be >= 1");
    if (static_cast<int>(a_.size()) > d_ - 1)
        throw std::invalid_argument("Potential: too many coefficients for degree");
    a_.resize(static_cast<std::size_t>(d_ - 1), Cx(0.0));
    for (const auto& c : a_)
        if (!is_finite(c)) throw std::invalid_argument("Potential: non-finite coefficient");
}

Cx Potential::a(int k) const {
    if (k <= 0 || k > d_) return Cx(0.0);
    if (k == d_) return Cx(-1.0 / d_);
    return a_[static_cast<std::size_t>(k - 1)];
}

Cx Potential::alpha(int l) const {
    if (l == d_) return Cx(1.0);
    return -static_cast<double>(l) * a(l);
}

Cx Potential::omega_root(int k) const {
    const double th = kTwoPi * k / d_;
    return Cx(std::cos(th), std::sin(th));
}

Cx Potential::ray_power(int k, Cx s) const {
    return std::exp(Cx(0.0, kTwoPi * k / d_) * s);
}

Poly Potential::poly() const {
    std::vector<Cx> c(static_cast<std::size_t>(d_) + 1, Cx(0.0));
    for (int k = 1; k <= d_; ++k) c[static_cast<std::size_t>(k)] = a(k);
    return Poly(std::move(c));
}

Poly Potential::derivative() const { return poly().derivative(); }

Cx Potential::operator()(Cx t) const {
    Cx acc = Cx(-1.0 / d_);
    for (int k = d_ - 1; k >= 1; --k) acc = acc * t + a(k);
    return acc * t; // P(0) = 0
}

bool Potential::is_real() const {
    for (const auto& c : a_)
        if (c.imag() != 0.0) return false;
    return true;
}

double Potential::coeff_abs_sum() const {
    double s = 0.0;
    for (const auto& c : a_) s += std::abs(c);
    return s;
}

std::string Potential::to_string() const {
    std::string out = "d=" + std::to_string(d_);
    for (int k = 1; k < d_; ++k) {
        const Cx c = a(k);
        if (c == Cx(0.0)) continue;
        out += ";a" + std::to_string(k) + "=" + format_complex(c);
    }
    return out;
}

Potential Potential::parse(std::string_view text) {
    int d = 0;
    std::vector<std::pair<int, Cx>> coeffs;
    std::size_t pos = 0;
    bool saw_d = false;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        std::string_view tok = text.substr(pos, semi - pos);
        pos = semi + 1;
        // trim
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
        if (tok.empty()) {
            if (semi == text.size()) break;
            continue;
        }
        const std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("Potential::parse: expected key=value, got '" + std::string(tok) + "'");
        std::string_view key = tok.substr(0, eq);
        std::string_view val = tok.substr(eq + 1);
        if (key == "d") {
            try {
                d = std::stoi(std::string(val));
            } catch (...) {
                throw std::invalid_argument("Potential::parse: bad degree '" + std::string(val) + "'");
            }
            saw_d = true;
        } else if (key.size() >= 2 && key[0] == 'a') {
            int idx = 0;
            try {
                idx = std::stoi(std::string(key.substr(1)));
            } catch (...) {
                throw std::invalid_argument("Potential::parse: bad coefficient key '" + std::string(key) + "'");
            }
            auto v = parse_complex(val);
            if (!v) throw std::invalid_argument("Potential::parse: bad complex '" + std::string(val) + "'");
            coeffs.emplace_back(idx, *v);
        } else {
            throw std::invalid_argument("Potential::parse: unknown key '" + std::string(key) + "'");
        }
        if (semi == text.size()) break;
    }
    if (!saw_d) throw std::invalid_argument("Potential::parse: missing d=<int>");
    if (d < 1) throw std::invalid_argument("Potential::parse: degree must be >= 1");
    std::vector<Cx> a(static_cast<std::size_t>(d - 1), Cx(0.0));
    for (const auto& [idx, v] : coeffs) {
        if (idx < 1 || idx > d - 1)
            throw std::invalid_argument("Potential::parse: coefficient index a" + std::to_string(idx) +
                                        " out of range for d=" + std::to_string(d));
        a[static_cast<std::size_t>(idx - 1)] = v;
    }
    return Potential(d, std::move(a));
}

void extend_exp_series(const Potential& p, std::vector<Cx>& lam, int order) {
    if (lam.empty()) lam.push_back(Cx(1.0)); // lambda_0 = e^{P(0)} = 1
    const int d = p.degree();
    for (int n = static_cast<int>(lam.size()); n <= order; ++n) {
        Cx acc(0.0);
        const int kmax = std::min(d, n);
        for (int k = 1; k <= kmax; ++k)
            acc += static_cast<double>(k) * p.a(k) * lam[static_cast<std::size_t>(n - k)];
        lam.push_back(acc / static_cast<double>(n));
    }
}

ExpSeries::ExpSeries(Potential p, int order) : pot_(std::move(p)) {
    if (order < 0) throw std::invalid_argument("ExpSeries: order must be >= 0");
    extend_exp_series(pot_, lam_, order);
}

void ExpSeries::extend(int order) { extend_exp_series(pot_, lam_, order); }

Cx ExpSeries::lambda(int n) const {
    if (n < 0 || n >= static_cast<int>(lam_.size()))
        throw std::out_of_range("ExpSeries::lambda: index beyond truncation order");
    return lam_[static_cast<std::size_t>(n)];
}

ExpSeries exp_series(const Potential& p, int order) { return ExpSeries(p, order); }

NormalizedDFE normalize_dfe(std::span<const Cx> alpha) {
    if (alpha.empty()) throw std::invalid_argument("normalize_dfe: no coefficients");
    const int d = static_cast<int>(alpha.size());
    const Cx lead = alpha[static_cast<std::size_t>(d - 1)];
    if (lead == Cx(0.0)) throw std::invalid_argument("normalize_dfe: leading coefficient is zero");

    const Cx scale = (lead == Cx(1.0)) ? Cx(1.0) : std::exp(-std::log(lead) / static_cast<double>(d));
    std::vector<Cx> a(static_cast<std::size_t>(d - 1), Cx(0.0));
    Cx cpow = scale;
    for (int l = 1; l < d; ++l) {
        a[static_cast<std::size_t>(l - 1)] = -alpha[static_cast<std::size_t>(l - 1)] * cpow / static_cast<double>(l);
        cpow *= scale;
    }
    return NormalizedDFE{Potential(d, std::move(a)), scale};
}

} // namespace omega
