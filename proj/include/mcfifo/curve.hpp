// curve.hpp - Piecewise-linear curves and their min-plus algebra.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcfifo/rational.hpp"

namespace mcfifo {

// One linear piece: the curve passes through (t, v) and continues at the
// given slope until the next breakpoint (or forever on the last piece).
struct CurvePoint {
    Rat t;
    Rat v;
    Rat slope;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Thrown when an operation does not cover the shape of its inputs. The
// implemented algebra covers the convex / concave / impulse families that
// the bound constructions produce; anything outside fails loudly instead
// of returning an approximation.
class unsupported_shape_error : public std::runtime_error {
public:
    explicit unsupported_shape_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-decreasing piecewise-linear curve on [0, inf), with an optional jump
// to +infinity after a finite time (`inf_from`): the value at `inf_from`
// itself is still finite. Breakpoints are exact rationals; the first
// breakpoint is always at t = 0, times are strictly increasing, slopes are
// non-negative, and consecutive pieces are value-continuous. Instances are
// kept canonical (adjacent pieces with equal slope merged), so structural
// equality is semantic equality.
class Curve {
public:
    // The curve that is 0 everywhere.
    static Curve zero();
    // burst + rate * t with value `burst` already at t = 0.
    static Curve token_bucket(const Rat& rate, const Rat& burst);
    // rate * max(0, t - latency).
    static Curve rate_latency(const Rat& rate, const Rat& latency);
    // 0 up to and including `deadline`, +infinity after it.
    static Curve impulse(const Rat& deadline);
    // General constructor; validates all invariants listed above and
    // throws std::invalid_argument if they do not hold.
    static Curve from_points(std::vector<CurvePoint> pts, std::optional<Rat> inf_from = {});

    const std::vector<CurvePoint>& points() const { return pts_; }
    const std::optional<Rat>& inf_from() const { return inf_from_; }

    // Value at time t >= 0 (throws std::invalid_argument for t < 0).
    ExtRat eval(const Rat& t) const;

    Rat value_at_0() const { return pts_.front().v; }
    // Slope of the last finite piece.
    Rat final_slope() const { return pts_.back().slope; }

    bool has_tail() const { return inf_from_.has_value(); }
    // True if the finite part is identically zero (e.g. an impulse).
    bool finite_part_is_zero() const;
    bool is_zero() const { return finite_part_is_zero() && !has_tail(); }
    // Shape tests over the finite part; a curve with a tail is treated as
    // convex (the jump to +infinity preserves convexity) but never concave.
    bool is_convex() const;
    bool is_concave() const;

    // Same curve delayed by `delay` >= 0: value_at_0 held on [0, delay],
    // then the curve translated right (tail moves with it).
    Curve shifted(const Rat& delay) const;
    // Pointwise addition of a constant c >= -value floor; values must stay
    // non-negative for the curve families used here, so c is required >= 0
    // by the bound constructions but not enforced beyond non-decreasingness.
    Curve plus_constant(const Rat& c) const;

    friend bool operator==(const Curve& a, const Curve& b) = default;

    // Compact single-line rendering, e.g. "{(0, 100000, 400000)}" or
    // "{(0, 0, 0), (3/250, 0, 1000000)}+inf@11/100".
    std::string str() const;

private:
    Curve() = default;
    void canonicalize();

    std::vector<CurvePoint> pts_;
    std::optional<Rat> inf_from_;
};

// Min-plus convolution (f \otimes g)(t) = inf over 0 <= s <= t of
// f(s) + g(t - s). Supported operand shapes: an impulse with either
// operand; convex with convex; concave with concave; concave with convex.
// Anything else throws unsupported_shape_error.
Curve min_plus_conv(const Curve& f, const Curve& g);

// Pointwise minimum. Throws unsupported_shape_error if exactly one operand
// has a tail and the result would jump discontinuously at that tail.
Curve pointwise_min(const Curve& f, const Curve& g);

// Pointwise sum of two finite curves (no tails).
Curve pointwise_sum(const Curve& f, const Curve& g);

// True if f(t) >= g(t) for every t >= 0 (infinity counts as >= everything).
bool dominates(const Curve& f, const Curve& g);

// Deviation measure between an arrival curve alpha (concave, no tail) and
// a service curve beta (convex, possibly with a tail / an impulse).
struct Deviation {
    enum class Kind { horizontal, vertical };
    Kind kind;
    ExtRat value;  // >= 0 when finite
};

// sup over t >= 0 of inf{ tau >= 0 : alpha(t) <= beta(t + tau) }: the
// largest time shift needed for beta to catch up with alpha (delay view).
Deviation horizontal_deviation(const Curve& alpha, const Curve& beta);

// sup over t >= 0 of alpha(t) - beta(t), clamped at 0 (backlog view).
Deviation vertical_deviation(const Curve& alpha, const Curve& beta);

}  // namespace mcfifo
