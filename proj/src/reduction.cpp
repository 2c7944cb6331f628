#include "omega/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace omega {

void ExpPolyExpr::add(int z_pow, int zs_pow, const SPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{z_pow, zs_pow}, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Cx ExpPolyExpr::eval(Cx s, Cx z, Cx z_to_s) const {
    Cx acc(0.0);
    for (const auto& [key, p] : terms_) {
        Cx term = p(s);
        for (int i = 0; i < key.first; ++i) term *= z;
        for (int m = 0; m < key.second; ++m) term *= z_to_s;
        acc += term;
    }
    return acc;
}

namespace {

// Polynomial in t whose coefficients are polynomials in the exponent.
struct TPoly {
    std::vector<SPoly> c;

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

TPoly lift(const Poly& q) {
    TPoly r;
    for (const Cx& v : q.coeffs()) r.c.push_back(SPoly{v});
    r.trim();
    return r;
}

TPoly derivative_t(const TPoly& q) {
    TPoly r;
    for (std::size_t k = 1; k < q.c.size(); ++k) r.c.push_back(Cx(static_cast<double>(k)) * q.c[k]);
    r.trim();
    return r;
}

TPoly shift_down(const TPoly& q) { // (q - q(0)) / t
    TPoly r;
    if (q.c.size() > 1) r.c.assign(q.c.begin() + 1, q.c.end());
    r.trim();
    return r;
}

TPoly scale(const TPoly& q, const SPoly& f) {
    TPoly r;
    for (const auto& ck : q.c) r.c.push_back(f * ck);
    r.trim();
    return r;
}

// Euclidean division by a plain complex-coefficient divisor.
std::pair<TPoly, TPoly> tpoly_divmod(TPoly num, const Poly& den) {
    const int dd = den.degree();
    if (num.degree() < dd) return {TPoly{}, std::move(num)};
    TPoly quot;
    quot.c.assign(static_cast<std::size_t>(num.degree() - dd) + 1, SPoly{});
    const Cx lead = den.coeff(dd);
    for (int k = num.degree() - dd; k >= 0; --k) {
        SPoly f = (1.0 / lead) * num.c[static_cast<std::size_t>(k + dd)];
        quot.c[static_cast<std::size_t>(k)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            num.c[static_cast<std::size_t>(k + j)] -= den.coeff(j) * f;
    }
    num.c.resize(static_cast<std::size_t>(std::max(dd, 0)));
    num.trim();
    quot.trim();
    return {std::move(quot), std::move(num)};
}

const SPoly kSigma = SPoly{Cx(0.0), Cx(1.0)}; // the exponent variable itself

// Contributes int_0^z t^sigma q(t) e^{P} dt for d >= 2 by descending
// induction: split off the Euclidean remainder (degree <= d-2, lands in the
// window directly), integrate the quotient part by parts, recurse on the
// two strictly lower-degree remnants.
void reduce_rec(const Potential& p, const Poly& pprime, TPoly q, PeriodReduction& out) {
    q.trim();
    if (q.is_zero()) return;
    const int d = p.degree();
    if (q.degree() <= d - 2) {
        for (int j = 0; j <= q.degree(); ++j) out.c[static_cast<std::size_t>(j + 1)] += q.c[static_cast<std::size_t>(j)];
        return;
    }
    auto [a1, b1] = tpoly_divmod(std::move(q), pprime);
    reduce_rec(p, pprime, std::move(b1), out);

    // int t^sigma a1 P' e^P = [t^sigma a1 e^P]_0^z
    //                        - sigma int t^{sigma-1} a1 e^P - int t^sigma a1' e^P
    for (int i = 0; i <= a1.degree(); ++i) out.boundary.add(i, 1, a1.c[static_cast<std::size_t>(i)]);
    reduce_rec(p, pprime, scale(derivative_t(a1), SPoly{Cx(-1.0)}), out);
    if (!a1.c.empty() && !a1.c[0].is_zero()) out.c[0] -= kSigma * a1.c[0];
    reduce_rec(p, pprime, scale(shift_down(a1), Cx(-1.0) * kSigma), out);
}

// d = 1: unrolled integration by parts for each monomial t^n,
//   int_0^z t^{sigma+n} e^{-t} dt
//     = -e^{-z} sum_{i=0}^{n} prod_{j=i+1}^{n}(sigma+j) z^{sigma+i}
//       + sigma prod_{j=1}^{n}(sigma+j) O(sigma, z).
void reduce_linear(const Poly& q, PeriodReduction& out) {
    for (int n = 0; n <= q.degree(); ++n) {
        const Cx qn = q.coeff(n);
        if (qn == Cx(0.0)) continue;
        SPoly prod{Cx(1.0)}; // prod_{j=i+1}^{n}(sigma+j), built downward from i = n
        for (int i = n; i >= 0; --i) {
            out.boundary.add(i, 1, (-qn) * prod);
            prod = prod * SPoly{Cx(static_cast<double>(i)), Cx(1.0)}; // * (sigma + i)
        }
        out.c[0] += qn * prod; // sigma * prod_{j=1}^{n}(sigma+j) after the loop
    }
}

} // namespace

PeriodReduction reduce_tpoly(const Potential& p, const Poly& q) {
    const int d = p.degree();
    PeriodReduction out;
    out.c.assign(static_cast<std::size_t>(d), SPoly{});
    out.sigma_shift = 1;
    if (q.is_zero()) return out;
    if (d == 1) {
        reduce_linear(q, out);
    } else {
        reduce_rec(p, p.derivative(), lift(q), out);
    }
    return out;
}

BivarPoly BivarPoly::constant(Cx v) {
    BivarPoly r;
    r.add(0, 0, v);
    return r;
}
BivarPoly BivarPoly::var_t() {
    BivarPoly r;
    r.add(1, 0, Cx(1.0));
    return r;
}
BivarPoly BivarPoly::var_y() {
    BivarPoly r;
    r.add(0, 1, Cx(1.0));
    return r;
}

void BivarPoly::add(int t_pow, int y_pow, Cx v) {
    if (v == Cx(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(Key{t_pow, y_pow}, v);
    if (!inserted) {
        it->second += v;
        if (it->second == Cx(0.0)) terms_.erase(it);
    }
}

int BivarPoly::max_y_power() const {
    int m = -1;
    for (const auto& [key, v] : terms_) m = std::max(m, key.second);
    return m;
}

Poly BivarPoly::t_slice(int y_pow) const {
    std::vector<Cx> c;
    for (const auto& [key, v] : terms_) {
        if (key.second != y_pow) continue;
        if (static_cast<int>(c.size()) <= key.first) c.resize(static_cast<std::size_t>(key.first) + 1, Cx(0.0));
        c[static_cast<std::size_t>(key.first)] = v;
    }
    return Poly(std::move(c));
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
    for (const auto& [key, v] : o.terms_) add(key.first, key.second, v);
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
    for (const auto& [key, v] : o.terms_) add(key.first, key.second, -v);
    return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ka, va] : a.terms_)
        for (const auto& [kb, vb] : b.terms_) r.add(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
}

BivarPoly BivarPoly::pow(int e) const {
    BivarPoly r = BivarPoly::constant(Cx(1.0));
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

std::vector<PeriodReduction> reduce_mixed(const Potential& p, const BivarPoly& q) {
    std::vector<PeriodReduction> out;
    for (int m = 0; m <= q.max_y_power(); ++m) {
        const Poly qm = q.t_slice(m);
        if (qm.is_zero()) continue;
        PeriodReduction red = reduce_tpoly(p, qm);
        red.sigma_shift = m;
        out.push_back(std::move(red));
    }
    return out;
}

ShiftRewrite rewrite_shift(const Potential& p, int k) {
    const int d = p.degree();
    if (k < d) throw std::invalid_argument("rewrite_shift: requires k >= d");

    // coefficients over indices 0..k, rewritten top-down
    std::vector<SPoly> coef(static_cast<std::size_t>(k) + 1);
    coef[static_cast<std::size_t>(k)] = SPoly{Cx(1.0)};
    ShiftRewrite out;
    for (int top = k; top >= d; --top) {
        SPoly c = coef[static_cast<std::size_t>(top)];
        if (c.is_zero()) continue;
        coef[static_cast<std::size_t>(top)] = SPoly{};
        const int base = top - d; // O(sigma+top) = (sigma+base) O(sigma+base) - ... - z^{sigma+base} e^P
        coef[static_cast<std::size_t>(base)] += c * SPoly{Cx(static_cast<double>(base)), Cx(1.0)};
        for (int l = 1; l <= d - 1; ++l) {
            const Cx al = p.alpha(l);
            if (al != Cx(0.0)) coef[static_cast<std::size_t>(base + l)] -= al * c;
        }
        out.boundary.add(base, 1, Cx(-1.0) * c);
    }
    out.c.assign(coef.begin(), coef.begin() + d);
    return out;
}

EvalResult eval_reduction(const PeriodReduction& red, const OmegaEvaluator& ev, Cx s, Cx z) {
    if (z == Cx(0.0)) throw std::invalid_argument("eval_reduction: z must be nonzero");
    const Cx sigma = static_cast<double>(red.sigma_shift) * s;
    const double pole_tol = ev.config().pole_tol;

    const Cx log_z = std::log(z);
    const Cx z_to_sigma = std::exp(sigma * log_z);
    Cx total = red.boundary.eval(sigma, z, z_to_sigma) * std::exp(ev.potential()(z));
    double abs_err = 0.0;
    bool converged = true;

    for (std::size_t j = 0; j < red.c.size(); ++j) {
        const SPoly& cj = red.c[j];
        if (cj.is_zero()) continue;
        const Cx w = sigma + static_cast<double>(j);
        const long long n = std::llround(-w.real());
        if (n >= 0 && std::abs(w + static_cast<double>(n)) < pole_tol) {
            // Basis index on a pole of the incomplete function: admissible
            // only when the coefficient vanishes there, the term then
            // contributes its limit c_j'(sigma) * lambda_n.
            const Cx cval = cj(sigma);
            const Cx cder = cj.derivative()(sigma);
            if (std::abs(cval) > 1e4 * pole_tol * (1.0 + std::abs(cder)))
                throw PoleProximityError(static_cast<int>(n),
                                         "eval_reduction: basis index on a pole with nonvanishing coefficient");
            total += cder * ev.residue(static_cast<int>(n));
            continue;
        }
        const EvalResult inc = ev.incomplete(w, z);
        total += cj(sigma) * inc.value;
        abs_err += std::abs(cj(sigma)) * inc.achieved_error * std::abs(inc.value);
        converged = converged && inc.converged;
    }

    EvalResult r;
    r.value = total;
    r.achieved_error = abs_err / std::max(std::abs(total), 1e-300);
    r.converged = converged;
    return r;
}

std::vector<SPoly> reduce_ray_limit(const PeriodReduction& red, int k) {
    (void)k; // the window coefficients are ray-independent; k is validated by callers
    if (red.sigma_shift < 0 || red.sigma_shift > 1)
        throw std::invalid_argument(
            "reduce_ray_limit: only sigma_shift 0 or 1 stays in the window basis");
    return red.c;
}

namespace {

struct QParser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("Q expression: " + msg + " at position " + std::to_string(pos));
    }

    BivarPoly parse_expr() {
        BivarPoly acc;
        bool neg = accept('-');
        if (!neg) accept('+');
        acc = parse_term();
        if (neg) {
            BivarPoly zero;
            zero -= acc;
            acc = zero;
        }
        for (;;) {
            if (accept('+')) {
                acc += parse_term();
            } else if (accept('-')) {
                acc -= parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    BivarPoly parse_term() {
        BivarPoly acc = parse_factor();
        for (;;) {
            const char c = peek();
            if (accept('*')) {
                acc = acc * parse_factor();
            } else if (c == 't' || c == 'T' || c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                       c == '.') {
                acc = acc * parse_factor(); // implicit multiplication, e.g. "2t"
            } else {
                break;
            }
        }
        return acc;
    }

    BivarPoly parse_factor() {
        BivarPoly base = parse_base();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (pos == start) fail("expected nonnegative integer exponent");
            const int e = std::stoi(std::string(src.substr(start, pos - start)));
            base = base.pow(e);
        }
        return base;
    }

    BivarPoly parse_base() {
        const char c = peek();
        if (accept('(')) {
            BivarPoly inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 't') {
            ++pos;
            return BivarPoly::var_t();
        }
        if (c == 'T') {
            ++pos;
            return BivarPoly::var_y();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        fail("expected t, T, number or '('");
    }

    BivarPoly parse_number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size()) {
            const char ch = src[pos];
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
                ++pos;
            } else if ((ch == 'e' || ch == 'E') && pos + 1 < src.size() &&
                       (std::isdigit(static_cast<unsigned char>(src[pos + 1])) || src[pos + 1] == '+' ||
                        src[pos + 1] == '-')) {
                pos += 2;
            } else {
                break;
            }
        }
        bool imaginary = false;
        if (pos < src.size() && src[pos] == 'i') {
            imaginary = true;
            ++pos;
        }
        const auto lit = parse_complex(src.substr(start, pos - start));
        if (!lit) fail("bad numeric literal '" + std::string(src.substr(start, pos - start)) + "'");
        (void)imaginary;
        return BivarPoly::constant(*lit);
    }
};

} // namespace

BivarPoly parse_q_expression(std::string_view text) {
    QParser p{text};
    if (p.eof()) throw std::invalid_argument("Q expression: empty input");
    BivarPoly q = p.parse_expr();
    if (!p.eof()) p.fail("unexpected trailing input");
    return q;
}

} // namespace omega
