// curve.cpp - Piecewise-linear curve algebra: construction, min-plus
// convolution, deviations, and domination.
#include "mcfifo/curve.hpp"

#include <algorithm>
#include <cassert>

namespace mcfifo {

namespace {

// Finite-part evaluation: ignores any tail, so t may lie past inf_from.
Rat eval_finite(const Curve& c, const Rat& t) {
    const auto& pts = c.points();
    size_t lo = 0, hi = pts.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (pts[mid].t <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return pts[lo].v + pts[lo].slope * (t - pts[lo].t);
}

// Slope of the piece that applies immediately after time t.
Rat slope_after(const Curve& c, const Rat& t) {
    const auto& pts = c.points();
    size_t lo = 0, hi = pts.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (pts[mid].t <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return pts[lo].slope;
}

// Smallest x >= 0 with finite_part(c)(x) >= y; nullopt if never reached.
std::optional<Rat> inverse_at_least(const Curve& c, const Rat& y) {
    const auto& pts = c.points();
    if (pts.front().v >= y) return Rat(0);
    for (size_t k = 0; k + 1 < pts.size(); k++) {
        if (pts[k + 1].v >= y) {
            // Crossed inside piece k; continuity means slope > 0 here.
            return pts[k].t + (y - pts[k].v) / pts[k].slope;
        }
    }
    const auto& last = pts.back();
    if (last.slope.is_zero()) return std::nullopt;
    return last.t + (y - last.v) / last.slope;
}

}  // namespace

void Curve::canonicalize() {
    assert(!pts_.empty());
    // A piece whose slope can never act (it starts exactly where the curve
    // jumps to infinity) is normalized to slope 0 so equal curves compare equal.
    if (inf_from_ && pts_.back().t == *inf_from_) pts_.back().slope = Rat(0);
    std::vector<CurvePoint> merged;
    merged.reserve(pts_.size());
    for (auto& p : pts_) {
        if (!merged.empty() && merged.back().slope == p.slope) continue;
        merged.push_back(std::move(p));
    }
    pts_ = std::move(merged);
}

Curve Curve::from_points(std::vector<CurvePoint> pts, std::optional<Rat> inf_from) {
    if (pts.empty()) throw std::invalid_argument("curve needs at least one breakpoint");
    if (!pts.front().t.is_zero()) throw std::invalid_argument("curve must start at t = 0");
    if (pts.front().v.sign() < 0) throw std::invalid_argument("curve value must be non-negative");
    for (size_t k = 0; k < pts.size(); k++) {
        if (pts[k].slope.sign() < 0) throw std::invalid_argument("curve slope must be non-negative");
        if (k + 1 < pts.size()) {
            if (pts[k + 1].t <= pts[k].t)
                throw std::invalid_argument("curve breakpoint times must be strictly increasing");
            Rat expect = pts[k].v + pts[k].slope * (pts[k + 1].t - pts[k].t);
            if (pts[k + 1].v != expect)
                throw std::invalid_argument("curve pieces must be value-continuous");
        }
    }
    if (inf_from) {
        if (inf_from->sign() < 0) throw std::invalid_argument("inf_from must be non-negative");
        if (*inf_from < pts.back().t)
            throw std::invalid_argument("curve has breakpoints past inf_from");
    }
    Curve c;
    c.pts_ = std::move(pts);
    c.inf_from_ = std::move(inf_from);
    c.canonicalize();
    return c;
}

Curve Curve::zero() { return from_points({{Rat(0), Rat(0), Rat(0)}}); }

Curve Curve::token_bucket(const Rat& rate, const Rat& burst) {
    if (rate.sign() < 0 || burst.sign() < 0)
        throw std::invalid_argument("token bucket needs rate >= 0 and burst >= 0");
    return from_points({{Rat(0), burst, rate}});
}

Curve Curve::rate_latency(const Rat& rate, const Rat& latency) {
    if (rate.sign() < 0 || latency.sign() < 0)
        throw std::invalid_argument("rate-latency needs rate >= 0 and latency >= 0");
    if (latency.is_zero()) return from_points({{Rat(0), Rat(0), rate}});
    return from_points({{Rat(0), Rat(0), Rat(0)}, {latency, Rat(0), rate}});
}

Curve Curve::impulse(const Rat& deadline) {
    if (deadline.sign() < 0) throw std::invalid_argument("impulse needs deadline >= 0");
    return from_points({{Rat(0), Rat(0), Rat(0)}}, deadline);
}

ExtRat Curve::eval(const Rat& t) const {
    if (t.sign() < 0) throw std::invalid_argument("curve evaluated at negative time");
    if (inf_from_ && t > *inf_from_) return ExtRat::infinity();
    return ExtRat(eval_finite(*this, t));
}

bool Curve::finite_part_is_zero() const {
    for (const auto& p : pts_)
        if (!p.v.is_zero() || !p.slope.is_zero()) return false;
    return true;
}

bool Curve::is_convex() const {
    for (size_t k = 0; k + 1 < pts_.size(); k++)
        if (pts_[k + 1].slope < pts_[k].slope) return false;
    return true;
}

bool Curve::is_concave() const {
    if (inf_from_) return false;
    for (size_t k = 0; k + 1 < pts_.size(); k++)
        if (pts_[k + 1].slope > pts_[k].slope) return false;
    return true;
}

Curve Curve::shifted(const Rat& delay) const {
    if (delay.sign() < 0) throw std::invalid_argument("shift by negative delay");
    if (delay.is_zero()) return *this;
    std::vector<CurvePoint> pts;
    pts.reserve(pts_.size() + 1);
    pts.push_back({Rat(0), value_at_0(), Rat(0)});
    for (const auto& p : pts_) pts.push_back({p.t + delay, p.v, p.slope});
    std::optional<Rat> tail;
    if (inf_from_) tail = *inf_from_ + delay;
    return from_points(std::move(pts), std::move(tail));
}

Curve Curve::plus_constant(const Rat& c) const {
    std::vector<CurvePoint> pts = pts_;
    for (auto& p : pts) p.v += c;
    return from_points(std::move(pts), inf_from_);
}

std::string Curve::str() const {
    std::string s = "{";
    for (size_t k = 0; k < pts_.size(); k++) {
        if (k) s += ", ";
        s += "(" + pts_[k].t.str() + ", " + pts_[k].v.str() + ", " + pts_[k].slope.str() + ")";
    }
    s += "}";
    if (inf_from_) s += "+inf@" + inf_from_->str();
    return s;
}

namespace {

// Min-plus convolution of two convex finite curves: concatenate all pieces
// in order of increasing slope, starting from f(0) + g(0). Pieces at least
// as steep as the flatter of the two final slopes are never reached.
Curve conv_convex(const Curve& f, const Curve& g) {
    Rat fin_slope = min(f.final_slope(), g.final_slope());
    std::vector<std::pair<Rat, Rat>> segs;  // (slope, length), finite pieces only
    for (const Curve* c : {&f, &g}) {
        const auto& pts = c->points();
        for (size_t k = 0; k + 1 < pts.size(); k++)
            if (pts[k].slope < fin_slope)
                segs.emplace_back(pts[k].slope, pts[k + 1].t - pts[k].t);
    }
    std::sort(segs.begin(), segs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CurvePoint> pts;
    Rat t(0), v = f.value_at_0() + g.value_at_0();
    for (const auto& [slope, len] : segs) {
        pts.push_back({t, v, slope});
        t += len;
        v += slope * len;
    }
    pts.push_back({t, v, fin_slope});
    return Curve::from_points(std::move(pts));
}

// line(t) = intercept + slope * t convolved with a convex finite curve g:
// follow g while it is flatter than the line, then continue at the line's
// slope forever.
Curve conv_line_convex(const Rat& intercept, const Rat& slope, const Curve& g) {
    std::vector<CurvePoint> pts;
    for (const auto& p : g.points()) {
        if (p.slope < slope) {
            pts.push_back(p);
        } else {
            pts.push_back({p.t, p.v, slope});
            break;
        }
    }
    if (pts.empty() || pts.back().slope < slope) {
        // Every piece of g is flatter than the line; g itself is the result.
        pts = g.points();
    }
    Curve base = Curve::from_points(std::move(pts));
    return intercept.is_zero() ? base : base.plus_constant(intercept);
}

// Concave (finite) with convex (finite): write the concave curve as the
// pointwise minimum of its extended pieces, convolve each line with g, and
// take the pointwise minimum of the results. Convolution distributes over
// pointwise minima, so this is exact.
Curve conv_concave_convex(const Curve& f, const Curve& g) {
    std::optional<Curve> acc;
    for (const auto& p : f.points()) {
        Rat intercept = p.v - p.slope * p.t;
        Curve piece = conv_line_convex(intercept, p.slope, g);
        acc = acc ? pointwise_min(*acc, piece) : piece;
    }
    return *acc;
}

}  // namespace

Curve min_plus_conv(const Curve& f, const Curve& g) {
    // An impulse delays the other operand; a zero curve flattens it.
    if (f.finite_part_is_zero() && f.has_tail()) return g.shifted(*f.inf_from());
    if (g.finite_part_is_zero() && g.has_tail()) return f.shifted(*g.inf_from());
    if (f.is_zero() || g.is_zero())
        return Curve::from_points({{Rat(0), f.value_at_0() + g.value_at_0(), Rat(0)}});
    if (f.has_tail() || g.has_tail())
        throw unsupported_shape_error(
            "min-plus convolution supports a tail only on an impulse: " + f.str() + " (x) " +
            g.str());
    bool fx = f.is_convex(), fc = f.is_concave();
    bool gx = g.is_convex(), gc = g.is_concave();
    if (fx && gx) return conv_convex(f, g);
    if (fc && gc)
        // For concave operands the infimum is attained at s = 0 or s = t.
        return pointwise_min(f.plus_constant(g.value_at_0()), g.plus_constant(f.value_at_0()));
    if (fc && gx) return conv_concave_convex(f, g);
    if (gc && fx) return conv_concave_convex(g, f);
    throw unsupported_shape_error("min-plus convolution of unsupported shapes: " + f.str() +
                                  " (x) " + g.str());
}

Curve pointwise_sum(const Curve& f, const Curve& g) {
    if (f.has_tail() || g.has_tail())
        throw unsupported_shape_error("pointwise sum of curves with tails");
    std::vector<Rat> ts;
    for (const auto& p : f.points()) ts.push_back(p.t);
    for (const auto& p : g.points()) ts.push_back(p.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<CurvePoint> pts;
    for (const auto& t : ts)
        pts.push_back({t, eval_finite(f, t) + eval_finite(g, t),
                       slope_after(f, t) + slope_after(g, t)});
    return Curve::from_points(std::move(pts));
}

Curve pointwise_min(const Curve& f, const Curve& g) {
    // Region where both curves are finite: [0, R], or unbounded if no tails.
    std::optional<Rat> R;
    if (f.has_tail()) R = *f.inf_from();
    if (g.has_tail()) R = R ? min(*R, *g.inf_from()) : *g.inf_from();

    std::vector<Rat> ts;
    auto add = [&](const Rat& t) {
        if (!R || t <= *R) ts.push_back(t);
    };
    for (const auto& p : f.points()) add(p.t);
    for (const auto& p : g.points()) add(p.t);
    if (R) ts.push_back(*R);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<CurvePoint> out;
    for (size_t i = 0; i < ts.size(); i++) {
        const Rat& t = ts[i];
        Rat vf = eval_finite(f, t), vg = eval_finite(g, t);
        Rat sf = slope_after(f, t), sg = slope_after(g, t);
        Rat v = min(vf, vg);
        Rat s = vf < vg ? sf : vg < vf ? sg : min(sf, sg);
        out.push_back({t, v, s});
        if (i + 1 < ts.size()) {
            // Insert the crossing point if the curves swap order inside
            // the piece (both are affine between consecutive candidates).
            const Rat& t2 = ts[i + 1];
            Rat d1 = vf - vg;
            Rat d2 = eval_finite(f, t2) - eval_finite(g, t2);
            if (d1.sign() != 0 && d2.sign() != 0 && d1.sign() != d2.sign()) {
                Rat tx = t + (vg - vf) / (sf - sg);
                Rat vx = vf + sf * (tx - t);
                out.push_back({tx, vx, d1.sign() < 0 ? sg : sf});
            }
        }
    }

    std::optional<Rat> tail;
    if (!R) {
        // Unbounded: the curves may still swap order once past the last
        // candidate, where both are affine forever.
        const Rat& t = ts.back();
        Rat vf = eval_finite(f, t), vg = eval_finite(g, t);
        Rat sf = slope_after(f, t), sg = slope_after(g, t);
        if (vf < vg && sf > sg) {
            Rat tx = t + (vg - vf) / (sf - sg);
            out.push_back({tx, vf + sf * (tx - t), sg});
        } else if (vg < vf && sg > sf) {
            Rat tx = t + (vf - vg) / (sg - sf);
            out.push_back({tx, vg + sg * (tx - t), sf});
        }
    } else {
        bool f_jumps = f.has_tail() && *f.inf_from() == *R;
        bool g_jumps = g.has_tail() && *g.inf_from() == *R;
        if (f_jumps && g_jumps) {
            tail = *R;
        } else {
            // Exactly one operand jumps at R; the minimum continues along
            // the other. That is only a valid (continuous) curve if the
            // continuing operand was not above the jumping one at R.
            const Curve& cont = f_jumps ? g : f;
            const Curve& stop = f_jumps ? f : g;
            if (eval_finite(stop, *R) < eval_finite(cont, *R))
                throw unsupported_shape_error(
                    "pointwise minimum would jump where one operand becomes infinite: " + f.str() +
                    " min " + g.str());
            out.back().slope = slope_after(cont, *R);
            for (const auto& p : cont.points())
                if (p.t > *R) out.push_back(p);
            tail = cont.inf_from();
        }
    }
    return Curve::from_points(std::move(out), std::move(tail));
}

bool dominates(const Curve& f, const Curve& g) {
    // Where g is infinite, f must be infinite too.
    if (g.has_tail() && (!f.has_tail() || *f.inf_from() > *g.inf_from())) return false;
    // Past f's own jump f is infinite, so only [0, U] needs value checks,
    // where U is the earliest jump of either curve.
    std::optional<Rat> U;
    if (f.has_tail()) U = *f.inf_from();
    if (g.has_tail()) U = U ? min(*U, *g.inf_from()) : *g.inf_from();

    std::vector<Rat> ts;
    auto add = [&](const Rat& t) {
        if (!U || t <= *U) ts.push_back(t);
    };
    for (const auto& p : f.points()) add(p.t);
    for (const auto& p : g.points()) add(p.t);
    if (U) ts.push_back(*U);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    for (const auto& t : ts)
        if (eval_finite(f, t) < eval_finite(g, t)) return false;
    // Between candidates both curves are affine, so endpoint checks cover
    // the interior; beyond the last candidate the slopes decide.
    if (!U && f.final_slope() < g.final_slope()) return false;
    return true;
}

namespace {

void require_arrival_shape(const Curve& alpha, const char* op) {
    if (alpha.has_tail() || !alpha.is_concave())
        throw unsupported_shape_error(std::string(op) +
                                      " needs a concave arrival curve without a tail: " +
                                      alpha.str());
}

void require_service_shape(const Curve& beta, const char* op) {
    if (!beta.is_convex())
        throw unsupported_shape_error(std::string(op) + " needs a convex service curve: " +
                                      beta.str());
}

// First t with alpha(t) >= w, for non-decreasing alpha.
std::optional<Rat> first_reach(const Curve& alpha, const Rat& w) {
    return inverse_at_least(alpha, w);
}

}  // namespace

Deviation horizontal_deviation(const Curve& alpha, const Curve& beta) {
    require_arrival_shape(alpha, "horizontal deviation");
    require_service_shape(beta, "horizontal deviation");
    if (alpha.finite_part_is_zero()) return {Deviation::Kind::horizontal, ExtRat(Rat(0))};
    if (beta.finite_part_is_zero() && beta.has_tail())
        // Pure impulse: every positive arrival value waits until the jump.
        return {Deviation::Kind::horizontal, ExtRat(*beta.inf_from())};
    if (!beta.has_tail() && alpha.final_slope() > beta.final_slope())
        return {Deviation::Kind::horizontal, ExtRat::infinity()};

    // The shift tau(t) = inf{tau : alpha(t) <= beta(t + tau)} is piecewise
    // linear in t with kinks only where alpha has a breakpoint or where
    // alpha(t) passes a breakpoint value of beta (or beta's value at its
    // jump). Past the last kink tau cannot increase (the slope checks
    // above rule that out), so the supremum is attained at a candidate.
    std::vector<Rat> cand;
    cand.push_back(Rat(0));
    for (const auto& p : alpha.points()) cand.push_back(p.t);
    auto add_value_crossing = [&](const Rat& w) {
        if (auto t = first_reach(alpha, w)) cand.push_back(*t);
    };
    for (const auto& p : beta.points()) add_value_crossing(p.v);
    if (beta.has_tail()) add_value_crossing(eval_finite(beta, *beta.inf_from()));

    Rat best(0);
    for (const auto& t : cand) {
        Rat y = eval_finite(alpha, t);
        std::optional<Rat> x = inverse_at_least(beta, y);
        Rat reach;
        if (beta.has_tail())
            reach = x ? min(*x, *beta.inf_from()) : *beta.inf_from();
        else if (x)
            reach = *x;
        else
            return {Deviation::Kind::horizontal, ExtRat::infinity()};
        Rat tau = reach - t;
        if (tau > best) best = tau;
    }
    return {Deviation::Kind::horizontal, ExtRat(best)};
}

Deviation vertical_deviation(const Curve& alpha, const Curve& beta) {
    require_arrival_shape(alpha, "vertical deviation");
    require_service_shape(beta, "vertical deviation");
    if (!beta.has_tail() && alpha.final_slope() > beta.final_slope())
        return {Deviation::Kind::vertical, ExtRat::infinity()};

    // alpha - beta is concave on the region where beta is finite, so the
    // supremum sits on a breakpoint of either curve (or at beta's jump).
    std::vector<Rat> ts;
    auto add = [&](const Rat& t) {
        if (!beta.has_tail() || t <= *beta.inf_from()) ts.push_back(t);
    };
    for (const auto& p : alpha.points()) add(p.t);
    for (const auto& p : beta.points()) add(p.t);
    if (beta.has_tail()) ts.push_back(*beta.inf_from());

    Rat best(0);
    for (const auto& t : ts) {
        Rat d = eval_finite(alpha, t) - eval_finite(beta, t);
        if (d > best) best = d;
    }
    return {Deviation::Kind::vertical, ExtRat(best)};
}

}  // namespace mcfifo
