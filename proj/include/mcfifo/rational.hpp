// rational.hpp - Exact rational numbers for times, rates, and bit counts.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace mcfifo {

// Exact rational value. Thin wrapper over GMP's mpq_class that keeps every
// value canonical (reduced, positive denominator) and adds the parsing and
// formatting used by the toolkit's file formats. There is deliberately no
// construction from floating point: quantities enter as integers or as
// exact decimal/fraction strings and stay exact from then on.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(int n) : q_(n) {}
    Rat(long n) : q_(n) {}
    Rat(long num, long den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    Rat(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    const mpq_class& raw() const { return q_; }
    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    double to_double() const { return q_.get_d(); }

    // Largest integer <= value.
    mpz_class floor() const {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return r;
    }
    // Smallest integer >= value.
    mpz_class ceil() const {
        mpz_class r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
        return r;
    }

    Rat abs() const { Rat r; r.q_ = ::abs(q_); return r; }

    Rat operator-() const { Rat r; r.q_ = -q_; return r; }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::invalid_argument("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return ::cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = ::cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // "p" for integers, "p/q" otherwise. Round-trips through parse().
    std::string str() const;
    // Approximate decimal rendering for human-facing output.
    std::string decimal(int significand_digits = 6) const;

    // Parses "p", "p/q", or a plain decimal such as "3.25" / ".5" / "-2".
    // Returns nullopt on malformed input. Exact: no floating point involved.
    static std::optional<Rat> parse(const std::string& text);
    // Like parse() but also accepts a trailing k/K (1e3), M (1e6), or G (1e9)
    // unit scale, e.g. "0.4M" -> 400000. Used for config-file quantities.
    static std::optional<Rat> parse_quantity(const std::string& text);

private:
    mpq_class q_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Smallest multiple of 1/grid_den that is >= t.
inline Rat ceil_to_grid(const Rat& t, long grid_den) {
    mpz_class scaled_num = t.num() * grid_den;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), t.den().get_mpz_t());
    return Rat(q, mpz_class(grid_den));
}

// gcd of two non-negative rationals: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d).
// gcd(x, 0) = x. Useful for deriving a common evaluation grid.
Rat rat_gcd(const Rat& a, const Rat& b);

// Rational extended with +infinity. Curve evaluation and deviation measures
// can be unbounded; this keeps that case explicit instead of using sentinels.
class ExtRat {
public:
    ExtRat() : inf_(false), v_() {}
    ExtRat(Rat v) : inf_(false), v_(std::move(v)) {}
    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    // Value of a finite ExtRat; throws if infinite.
    const Rat& finite() const {
        if (inf_) throw std::logic_error("finite() on infinite value");
        return v_;
    }

    friend ExtRat operator+(const ExtRat& a, const Rat& b) {
        return a.inf_ ? a : ExtRat(a.v_ + b);
    }
    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        return (a.inf_ || b.inf_) ? infinity() : ExtRat(a.v_ + b.v_);
    }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
        if (a.inf_) return b.inf_ ? std::strong_ordering::equal : std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        return a.v_ <=> b.v_;
    }

    std::string str() const { return inf_ ? "inf" : v_.str(); }

private:
    bool inf_;
    Rat v_;
};

inline const ExtRat& min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
inline const ExtRat& max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace mcfifo
