// rational.cpp - Parsing and formatting of exact rationals.
#include "mcfifo/rational.hpp"

#include <cctype>
#include <cstdio>

namespace mcfifo {

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rat::decimal(int significand_digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significand_digits, to_double());
    return buf;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// "123" or "12.5" or ".5" or "7." -> exact rational; nullopt if malformed.
std::optional<Rat> parse_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        if (!all_digits(s)) return std::nullopt;
        return Rat(mpz_class(s), mpz_class(1));
    }
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    mpz_class num = whole.empty() ? mpz_class(0) : mpz_class(whole);
    mpz_class den(1);
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rat(num, den);
}

std::optional<Rat> parse_impl(const std::string& text, bool allow_scale) {
    std::string s = text;
    // Trim surrounding whitespace.
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::nullopt;
    size_t e = s.find_last_not_of(" \t");
    s = s.substr(b, e - b + 1);

    long scale = 1;
    if (allow_scale && !s.empty()) {
        switch (s.back()) {
            case 'k':
            case 'K': scale = 1000L; break;
            case 'M': scale = 1000000L; break;
            case 'G': scale = 1000000000L; break;
            default: break;
        }
        if (scale != 1) s.pop_back();
    }

    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) return std::nullopt;

    std::optional<Rat> r;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        r = Rat(mpz_class(num), d);
    } else {
        r = parse_decimal(s);
    }
    if (!r) return std::nullopt;
    Rat v = *r * Rat(scale);
    return negative ? -v : v;
}

}  // namespace

std::optional<Rat> Rat::parse(const std::string& text) { return parse_impl(text, false); }

std::optional<Rat> Rat::parse_quantity(const std::string& text) { return parse_impl(text, true); }

Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a.sign() < 0 || b.sign() < 0) throw std::invalid_argument("rat_gcd of negative value");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    mpz_class x = a.num() * b.den();
    mpz_class y = b.num() * a.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Rat(g, a.den() * b.den());
}

}  // namespace mcfifo
