#include "omega/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

namespace omega {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

// Index of the sign that splits "re+imi" / "re-imi", or npos. Signs that are
// part of an exponent ("1e-3") or lead the mantissa do not split.
std::size_t split_sign(std::string_view s) {
    for (std::size_t i = s.size(); i-- > 1;) {
        const char c = s[i];
        if (c != '+' && c != '-') continue;
        const char prev = s[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        return i;
    }
    return std::string_view::npos;
}

} // namespace

std::optional<Cx> parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) return std::nullopt;

    double re = 0.0;
    if (parse_real(s, re)) return Cx(re, 0.0);

    if (s.back() != 'i') return std::nullopt;
    std::string_view body = s.substr(0, s.size() - 1);
    if (body.empty()) return Cx(0.0, 1.0);
    if (body == "+") return Cx(0.0, 1.0);
    if (body == "-") return Cx(0.0, -1.0);

    const std::size_t cut = split_sign(body);
    if (cut == std::string_view::npos) {
        double im = 0.0;
        if (!parse_real(body, im)) return std::nullopt;
        return Cx(0.0, im);
    }

    std::string_view re_part = body.substr(0, cut);
    std::string_view im_part = body.substr(cut); // includes the sign
    if (!parse_real(re_part, re)) return std::nullopt;
    double im = 0.0;
    if (im_part == "+") {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else if (!parse_real(im_part, im)) {
        return std::nullopt;
    }
    return Cx(re, im);
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex(Cx v) {
    if (v.imag() == 0.0 && !std::signbit(v.imag())) return format_double(v.real());
    std::string out = format_double(v.real());
    if (!std::signbit(v.imag())) out += '+';
    out += format_double(v.imag());
    out += 'i';
    return out;
}

} // namespace omega
