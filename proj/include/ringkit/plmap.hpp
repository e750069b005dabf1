#pragma once

#include <vector>

#include "ringkit/circle.hpp"

namespace ringkit {

enum class MapKind { interval, circle };
enum class Side { left, right };

/// One breakpoint of the lift graph.
struct MapNode {
    Rational t, v;
    friend bool operator==(const MapNode& a, const MapNode& b) = default;
};

/// Orientation-preserving piecewise-affine homeomorphism of [0,1] or of
/// S^1 = [0,1]/{0=1}, with rational breakpoints, values and slopes.
///
/// A circle map is stored as its canonical lift: nodes (t_i, v_i) with
/// 0 = t_0 < ... < t_k = 1, v strictly increasing, v_k = v_0 + 1 and
/// v_0 in [0,1). Composition and inversion happen in the lift, which keeps
/// monotonicity a single global invariant with no case split at the
/// basepoint. Interval homeomorphisms are exactly the circle maps whose lift
/// fixes 0, so the kind is derived from v_0 rather than stored.
///
/// Canonical form: no interior node has equal slopes on both sides. Equality
/// of PLMaps is equality of canonical node lists.
class PLMap {
public:
    static PLMap identity();
    static PLMap rotation(const Rational& offset);

    /// Validates strict monotonicity, t_0 = 0, t_k = 1, v_k = v_0 + 1; then
    /// shifts v_0 into [0,1) and removes redundant nodes.
    static PLMap from_nodes(std::vector<MapNode> nodes);

    MapKind kind() const { return nodes_.front().v == Rational(0) ? MapKind::interval : MapKind::circle; }
    const std::vector<MapNode>& nodes() const { return nodes_; }
    bool is_identity() const;

    /// The lift evaluated at an arbitrary rational, via γ(x+1) = γ(x)+1.
    Rational lift_eval(const Rational& x) const;
    Rational lift_eval_inverse(const Rational& y) const;

    CirclePoint operator()(const CirclePoint& t) const;

    friend bool operator==(const PLMap& a, const PLMap& b) { return a.nodes_ == b.nodes_; }
    friend bool operator!=(const PLMap& a, const PLMap& b) { return !(a == b); }

private:
    explicit PLMap(std::vector<MapNode> nodes) : nodes_(std::move(nodes)) {}
    std::vector<MapNode> nodes_;
};

/// compose(f, g) = f ∘ g: g is applied first. This order is fixed
/// system-wide and certificates rely on it.
PLMap compose(const PLMap& f, const PLMap& g);
PLMap inverse(const PLMap& f);
/// f^n; negative n is power(inverse(f), -n), n = 0 the identity.
PLMap power(const PLMap& f, long n);
/// conjugate(g, f) = g f g^{-1}.
PLMap conjugate(const PLMap& g, const PLMap& f);

/// The open set {t : f(t) != t}, from exact per-segment solution of the
/// fixed-point equation in the lift. Full circle iff f is fixed-point free.
IntervalSet support(const PLMap& f);

/// Exact image of an interval set; orientation-preserving, so arcs map to
/// arcs endpoint-by-endpoint.
IntervalSet map_image(const PLMap& f, const IntervalSet& s);

/// One-sided affine behavior at a point.
struct Germ {
    CirclePoint point;
    Side side;
    Rational slope;
    bool fixed;  // whether f fixes the point itself
};
Germ germ_at(const PLMap& f, const CirclePoint& t, Side side);

/// True iff f restricts to the identity on a two-sided neighborhood of t.
bool is_identity_near(const PLMap& f, const CirclePoint& t);

enum class GroupName { Fn, Tn };

/// Membership test for the Higman-Thompson groups: every breakpoint and
/// value n-adic, every slope an integer power of n. F_n additionally
/// requires that the basepoint is fixed (interval kind).
bool member_of(const PLMap& f, GroupName group, long n);

}  // namespace ringkit
