#pragma once

#include <span>
#include <vector>

#include "ringkit/rational.hpp"

namespace ringkit {

/// A point of S^1 = [0,1]/{0=1}. The representative is always in [0,1);
/// in particular 1 is stored as 0.
class CirclePoint {
public:
    CirclePoint() : v_(0) {}
    explicit CirclePoint(const Rational& r) : v_(r.frac()) {}

    const Rational& value() const { return v_; }

    /// Rotation by a rational offset (mod 1).
    CirclePoint rotated(const Rational& by) const { return CirclePoint(v_ + by); }

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.v_ == b.v_; }
    friend bool operator!=(const CirclePoint& a, const CirclePoint& b) { return a.v_ != b.v_; }
    /// Basepoint-anchored total order; use cyclic_between for geometry.
    friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.v_ < b.v_; }

private:
    Rational v_;
};

/// Forward arc length from a to b, in [0, 1).
Rational cyclic_gap(const CirclePoint& a, const CirclePoint& b);

/// True iff b lies strictly inside the arc from a to c in the fixed
/// orientation. Requires a != b != c for truth; when a == c there is no
/// strict arc and the result is false.
bool cyclic_between(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c);

/// True iff the points are pairwise distinct and appear in this cyclic order:
/// walking forward from points[0] visits each in turn within one revolution.
bool cyclically_ordered(std::span<const CirclePoint> points);

/// Like cyclically_ordered but consecutive points may coincide.
bool cyclically_ordered_weak(std::span<const CirclePoint> points);

/// Open arc (lower, upper) in the fixed orientation; may wrap through the
/// basepoint. Degenerate arcs (lower == upper) are rejected by the public
/// constructor. The one open set that tuple arcs cannot spell, the circle
/// minus a single point, is constructed explicitly via punctured_circle(p)
/// and stored with lower == upper == p; it arises as the support of maps
/// whose only fixed point is p (e.g. the x-generators, which fix 0 alone).
class CyclicInterval {
public:
    CyclicInterval(const CirclePoint& lower, const CirclePoint& upper);

    /// S^1 minus the single point p.
    static CyclicInterval punctured_circle(const CirclePoint& p);
    /// (lower, upper) when distinct, otherwise the punctured circle at lower.
    static CyclicInterval make(const CirclePoint& lower, const CirclePoint& upper);

    const CirclePoint& lower() const { return lo_; }
    const CirclePoint& upper() const { return hi_; }
    bool is_punctured_circle() const { return lo_ == hi_; }

    bool contains(const CirclePoint& p) const;
    Rational length() const;
    /// True iff the basepoint 0 is an interior point of the arc.
    bool wraps() const { return contains(CirclePoint()); }

    /// Strict midpoint of the arc (the antipode of p for a punctured circle).
    CirclePoint midpoint() const;

    friend bool operator==(const CyclicInterval& a, const CyclicInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }
    friend bool operator!=(const CyclicInterval& a, const CyclicInterval& b) { return !(a == b); }

private:
    struct Unchecked {};
    CyclicInterval(const CirclePoint& lower, const CirclePoint& upper, Unchecked)
        : lo_(lower), hi_(upper) {}
    CirclePoint lo_, hi_;
};

/// Finite union of disjoint open arcs of S^1, or the full circle, in a unique
/// canonical form: the arcs are the connected components of the underlying
/// open set, sorted by lower endpoint from the basepoint. Two components may
/// share a boundary point (the shared point belongs to neither component);
/// such arcs are distinct components and are never merged.
class IntervalSet {
public:
    IntervalSet() = default;  // empty set

    static IntervalSet empty() { return IntervalSet(); }
    static IntervalSet full_circle();
    static IntervalSet of_arc(const CyclicInterval& arc);
    /// Union of the given arcs, canonicalized.
    static IntervalSet of_arcs(const std::vector<CyclicInterval>& arcs);

    bool is_empty() const { return !full_ && arcs_.empty(); }
    bool is_full() const { return full_; }
    const std::vector<CyclicInterval>& arcs() const { return arcs_; }

    bool contains(const CirclePoint& p) const;
    /// Total arc length.
    Rational measure() const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b);
    friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

private:
    bool full_ = false;
    std::vector<CyclicInterval> arcs_;
    friend IntervalSet combine(const IntervalSet&, const IntervalSet&, int op);
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b);
/// Interior of the set difference a \ b, so the result is again a finite
/// union of open arcs.
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_complement(const IntervalSet& a);
bool disjoint(const IntervalSet& a, const IntervalSet& b);

/// True iff the closure of every component of a is contained in a single
/// component of b (or b is the full circle).
bool compactly_contained(const IntervalSet& a, const IntervalSet& b);

}  // namespace ringkit
