#include "ringkit/circle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ringkit {

Rational cyclic_gap(const CirclePoint& a, const CirclePoint& b) {
    return (b.value() - a.value()).frac();
}

bool cyclic_between(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
    if (a == c) return false;
    if (a.value() < c.value()) return a.value() < b.value() && b.value() < c.value();
    return b.value() > a.value() || b.value() < c.value();
}

bool cyclically_ordered(std::span<const CirclePoint> points) {
    if (points.size() < 2) return true;
    Rational total(0);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Rational step = cyclic_gap(points[i], points[i + 1]);
        if (step == Rational(0)) return false;
        total += step;
    }
    return total < Rational(1);
}

bool cyclically_ordered_weak(std::span<const CirclePoint> points) {
    if (points.size() < 2) return true;
    Rational total(0);
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        total += cyclic_gap(points[i], points[i + 1]);
    return total < Rational(1);
}

CyclicInterval::CyclicInterval(const CirclePoint& lower, const CirclePoint& upper)
    : lo_(lower), hi_(upper) {
    if (lo_ == hi_) throw std::invalid_argument("degenerate cyclic interval");
}

CyclicInterval CyclicInterval::punctured_circle(const CirclePoint& p) {
    return CyclicInterval(p, p, Unchecked{});
}

CyclicInterval CyclicInterval::make(const CirclePoint& lower, const CirclePoint& upper) {
    if (lower == upper) return punctured_circle(lower);
    return CyclicInterval(lower, upper);
}

bool CyclicInterval::contains(const CirclePoint& p) const {
    if (is_punctured_circle()) return p != lo_;
    return cyclic_between(lo_, p, hi_);
}

Rational CyclicInterval::length() const {
    if (is_punctured_circle()) return Rational(1);
    return cyclic_gap(lo_, hi_);
}

CirclePoint CyclicInterval::midpoint() const {
    if (is_punctured_circle()) return lo_.rotated(Rational(1, 2));
    return lo_.rotated(length() / Rational(2));
}

IntervalSet IntervalSet::full_circle() {
    IntervalSet s;
    s.full_ = true;
    return s;
}

IntervalSet IntervalSet::of_arc(const CyclicInterval& arc) { return of_arcs({arc}); }

bool IntervalSet::contains(const CirclePoint& p) const {
    if (full_) return true;
    for (const auto& a : arcs_)
        if (a.contains(p)) return true;
    return false;
}

Rational IntervalSet::measure() const {
    if (full_) return Rational(1);
    Rational m(0);
    for (const auto& a : arcs_) m += a.length();
    return m;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.full_ == b.full_ && a.arcs_ == b.arcs_;
}

namespace {

enum Op { kUnion = 0, kIntersection = 1, kDifference = 2 };

bool apply_op(int op, bool in_a, bool in_b) {
    switch (op) {
        case kUnion: return in_a || in_b;
        case kIntersection: return in_a && in_b;
        default: return in_a && !in_b;
    }
}

}  // namespace

// Exact boundary sweep. Membership of the result is constant on the open
// segments between consecutive boundary points, and is evaluated at exact
// segment midpoints plus at the boundary points themselves. A boundary point
// joins its two neighboring segments only when it is itself in the result and
// both segments are; this single rule also takes the interior automatically,
// which is what keeps set_difference inside the open-arc world.
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, int op) {
    std::vector<CirclePoint> pts;
    for (const auto& arc : a.arcs_) {
        pts.push_back(arc.lower());
        pts.push_back(arc.upper());
    }
    for (const auto& arc : b.arcs_) {
        pts.push_back(arc.lower());
        pts.push_back(arc.upper());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.empty()) {
        // Both operands are trivial (empty or full).
        return apply_op(op, a.is_full(), b.is_full()) ? IntervalSet::full_circle()
                                                      : IntervalSet::empty();
    }

    const std::size_t k = pts.size();
    std::vector<bool> seg_in(k), pt_in(k);
    for (std::size_t i = 0; i < k; ++i) {
        const CirclePoint mid = CyclicInterval::make(pts[i], pts[(i + 1) % k]).midpoint();
        seg_in[i] = apply_op(op, a.contains(mid), b.contains(mid));
        pt_in[i] = apply_op(op, a.contains(pts[i]), b.contains(pts[i]));
    }

    bool everything = true;
    for (std::size_t i = 0; i < k; ++i) everything = everything && seg_in[i] && pt_in[i];
    if (everything) return IntervalSet::full_circle();

    // glue[i]: boundary point i lies in the interior of the result.
    std::vector<bool> glue(k);
    for (std::size_t i = 0; i < k; ++i)
        glue[i] = pt_in[i] && seg_in[(i + k - 1) % k] && seg_in[i];

    IntervalSet out;
    for (std::size_t i = 0; i < k; ++i) {
        if (!seg_in[i] || glue[i]) continue;  // segment absent, or continues an earlier run
        std::size_t e = (i + 1) % k;
        while (glue[e]) e = (e + 1) % k;  // glue implies the next segment is present
        out.arcs_.push_back(CyclicInterval::make(pts[i], pts[e]));
    }
    std::sort(out.arcs_.begin(), out.arcs_.end(),
              [](const CyclicInterval& x, const CyclicInterval& y) { return x.lower() < y.lower(); });
    return out;
}

IntervalSet IntervalSet::of_arcs(const std::vector<CyclicInterval>& arcs) {
    IntervalSet acc;
    IntervalSet one;
    for (const auto& arc : arcs) {
        one.arcs_.assign(1, arc);
        acc = combine(acc, one, kUnion);
    }
    return acc;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) { return combine(a, b, kUnion); }
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b) {
    return combine(a, b, kIntersection);
}
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) {
    return combine(a, b, kDifference);
}
IntervalSet set_complement(const IntervalSet& a) {
    return set_difference(IntervalSet::full_circle(), a);
}

bool disjoint(const IntervalSet& a, const IntervalSet& b) {
    return set_intersection(a, b).is_empty();
}

bool compactly_contained(const IntervalSet& a, const IntervalSet& b) {
    if (a.is_empty()) return true;
    if (b.is_full()) return true;
    if (a.is_full()) return false;
    for (const auto& arc : a.arcs()) {
        bool found = false;
        for (const auto& host : b.arcs()) {
            if (host.is_punctured_circle()) {
                // Need the puncture point to avoid the closed arc entirely.
                const CirclePoint& p = host.lower();
                const bool inside = !arc.is_punctured_circle() && arc.lower() != p &&
                                    arc.upper() != p && !arc.contains(p);
                if (inside) { found = true; break; }
                continue;
            }
            if (arc.is_punctured_circle()) continue;
            if (!host.contains(arc.lower()) || !host.contains(arc.upper())) continue;
            // Both endpoints are interior to host; the arc stays inside iff it
            // does not lap past host's upper end.
            if (cyclic_gap(host.lower(), arc.lower()) <= cyclic_gap(host.lower(), arc.upper())) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace ringkit
