#include "ringkit/plmap.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ringkit {

namespace {

Rational slope_of(const MapNode& a, const MapNode& b) { return (b.v - a.v) / (b.t - a.t); }

// True iff z == n^k for some k >= 0.
bool is_pure_power(mpz_class z, long n) {
    if (z <= 0) return false;
    const mpz_class base(n);
    while (z != 1) {
        if (!mpz_divisible_p(z.get_mpz_t(), base.get_mpz_t())) return false;
        z /= base;
    }
    return true;
}

bool slope_is_power_of(const Rational& s, long n) {
    if (s.num() == 1) return is_pure_power(s.den(), n);
    if (s.den() == 1) return is_pure_power(s.num(), n);
    return false;
}

}  // namespace

PLMap PLMap::identity() {
    return PLMap({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
}

PLMap PLMap::rotation(const Rational& offset) {
    const Rational c = offset.frac();
    return PLMap({{Rational(0), c}, {Rational(1), c + Rational(1)}});
}

PLMap PLMap::from_nodes(std::vector<MapNode> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("PLMap needs at least two nodes");
    if (nodes.front().t != Rational(0) || nodes.back().t != Rational(1))
        throw std::invalid_argument("PLMap nodes must span [0,1]");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i].t < nodes[i + 1].t) || !(nodes[i].v < nodes[i + 1].v))
            throw std::invalid_argument("PLMap nodes must be strictly increasing");
    }
    if (nodes.back().v != nodes.front().v + Rational(1))
        throw std::invalid_argument("PLMap lift must satisfy v(1) = v(0) + 1");

    const Rational shift = nodes.front().v.floor();
    if (shift != Rational(0))
        for (auto& n : nodes) n.v -= shift;

    std::vector<MapNode> out;
    out.reserve(nodes.size());
    out.push_back(nodes.front());
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        if (slope_of(out.back(), nodes[i]) == slope_of(nodes[i], nodes[i + 1])) continue;
        out.push_back(nodes[i]);
    }
    out.push_back(nodes.back());
    return PLMap(std::move(out));
}

bool PLMap::is_identity() const {
    return nodes_.size() == 2 && nodes_[0].v == Rational(0);
}

Rational PLMap::lift_eval(const Rational& x) const {
    const Rational m = x.floor();
    const Rational xr = x - m;  // in [0,1)
    // Last node with t <= xr.
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (nodes_[mid].t <= xr) lo = mid; else hi = mid;
    }
    const MapNode& a = nodes_[lo];
    const MapNode& b = nodes_[lo + 1];
    return a.v + (xr - a.t) * slope_of(a, b) + m;
}

Rational PLMap::lift_eval_inverse(const Rational& y) const {
    const Rational v0 = nodes_.front().v;
    const Rational m = (y - v0).floor();
    const Rational yr = y - m;  // in [v0, v0 + 1)
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (nodes_[mid].v <= yr) lo = mid; else hi = mid;
    }
    const MapNode& a = nodes_[lo];
    const MapNode& b = nodes_[lo + 1];
    return a.t + (yr - a.v) / slope_of(a, b) + m;
}

CirclePoint PLMap::operator()(const CirclePoint& t) const {
    return CirclePoint(lift_eval(t.value()));
}

PLMap compose(const PLMap& f, const PLMap& g) {
    std::vector<Rational> xs;
    xs.push_back(Rational(0));
    for (std::size_t i = 0; i + 1 < g.nodes().size(); ++i) xs.push_back(g.nodes()[i].t);
    for (std::size_t j = 0; j + 1 < f.nodes().size(); ++j)
        xs.push_back(g.lift_eval_inverse(f.nodes()[j].t).frac());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs.push_back(Rational(1));

    std::vector<MapNode> nodes;
    nodes.reserve(xs.size());
    for (const Rational& x : xs) nodes.push_back({x, f.lift_eval(g.lift_eval(x))});
    return PLMap::from_nodes(std::move(nodes));
}

PLMap inverse(const PLMap& f) {
    std::vector<Rational> xs;
    xs.push_back(Rational(0));
    for (std::size_t i = 0; i + 1 < f.nodes().size(); ++i) xs.push_back(f.nodes()[i].v.frac());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs.push_back(Rational(1));

    std::vector<MapNode> nodes;
    nodes.reserve(xs.size());
    for (const Rational& x : xs) nodes.push_back({x, f.lift_eval_inverse(x)});
    return PLMap::from_nodes(std::move(nodes));
}

PLMap power(const PLMap& f, long n) {
    if (n < 0) return power(inverse(f), -n);
    PLMap acc = PLMap::identity();
    for (long i = 0; i < n; ++i) acc = compose(acc, f);
    return acc;
}

PLMap conjugate(const PLMap& g, const PLMap& f) { return compose(compose(g, f), inverse(g)); }

namespace {

// A closed arc [lower -> upper] of fixed points; lower == upper is a single
// point, and a whole-circle fixed set is handled separately.
struct ClosedArc {
    CirclePoint lower, upper;
};

}  // namespace

IntervalSet support(const PLMap& f) {
    // Fixed set in [0,1] line coordinates, as closed fragments [p, q].
    std::vector<std::pair<Rational, Rational>> frags;
    const auto& nodes = f.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const MapNode& a = nodes[i];
        const MapNode& b = nodes[i + 1];
        const Rational s = slope_of(a, b);
        if (s == Rational(1)) {
            const Rational d = a.v - a.t;  // constant displacement on the segment
            if (d == Rational(0) || d == Rational(1)) frags.emplace_back(a.t, b.t);
            continue;
        }
        for (long k = 0; k <= 1; ++k) {
            // Solve a.v + (t - a.t) s = t + k on [a.t, b.t].
            const Rational t = (Rational(k) - a.v + a.t * s) / (s - Rational(1));
            if (a.t <= t && t <= b.t) frags.emplace_back(t, t);
        }
    }
    std::sort(frags.begin(), frags.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    // Merge touching or overlapping fragments in line coordinates.
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& fr : frags) {
        if (!merged.empty() && fr.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, fr.second);
        else
            merged.push_back(fr);
    }

    if (merged.empty()) return IntervalSet::full_circle();
    if (merged.size() == 1 && merged[0].first == Rational(0) && merged[0].second == Rational(1))
        return IntervalSet::empty();

    // Transfer to the circle: 0 and 1 are the same point, and they are fixed
    // together or not at all, so touching the two ends means one wrap arc.
    std::vector<ClosedArc> closed;
    const bool wrap = merged.front().first == Rational(0) && merged.back().second == Rational(1) &&
                      merged.size() >= 2;
    std::size_t begin = 0, end = merged.size();
    if (wrap) {
        closed.push_back({CirclePoint(merged.back().first), CirclePoint(merged.front().second)});
        begin = 1;
        end = merged.size() - 1;
    }
    for (std::size_t i = begin; i < end; ++i)
        closed.push_back({CirclePoint(merged[i].first), CirclePoint(merged[i].second)});

    // Support = complement of the closed fixed set: one open arc between each
    // pair of consecutive fragments.
    std::sort(closed.begin(), closed.end(),
              [](const ClosedArc& x, const ClosedArc& y) { return x.lower < y.lower; });
    std::vector<CyclicInterval> arcs;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        const ClosedArc& cur = closed[i];
        const ClosedArc& nxt = closed[(i + 1) % closed.size()];
        arcs.push_back(CyclicInterval::make(cur.upper, nxt.lower));
    }
    return IntervalSet::of_arcs(arcs);
}

IntervalSet map_image(const PLMap& f, const IntervalSet& s) {
    if (s.is_full()) return s;
    std::vector<CyclicInterval> arcs;
    arcs.reserve(s.arcs().size());
    for (const auto& a : s.arcs()) {
        if (a.is_punctured_circle())
            arcs.push_back(CyclicInterval::punctured_circle(f(a.lower())));
        else
            arcs.push_back(CyclicInterval(f(a.lower()), f(a.upper())));
    }
    return IntervalSet::of_arcs(arcs);
}

Germ germ_at(const PLMap& f, const CirclePoint& t, Side side) {
    const auto& nodes = f.nodes();
    const Rational x = t.value();
    Rational s;
    if (side == Side::right) {
        std::size_t i = 0;
        while (i + 2 < nodes.size() && nodes[i + 1].t <= x) ++i;
        s = slope_of(nodes[i], nodes[i + 1]);
    } else {
        // Left side of the basepoint wraps to the last segment.
        if (x == Rational(0)) {
            s = slope_of(nodes[nodes.size() - 2], nodes.back());
        } else {
            std::size_t i = 0;
            while (i + 2 < nodes.size() && nodes[i + 1].t < x) ++i;
            s = slope_of(nodes[i], nodes[i + 1]);
        }
    }
    return Germ{t, side, s, f(t) == t};
}

bool is_identity_near(const PLMap& f, const CirclePoint& t) {
    if (f(t) != t) return false;
    return germ_at(f, t, Side::left).slope == Rational(1) &&
           germ_at(f, t, Side::right).slope == Rational(1);
}

bool member_of(const PLMap& f, GroupName group, long n) {
    if (n < 2) throw std::domain_error("member_of requires n >= 2");
    if (group == GroupName::Fn && f.kind() != MapKind::interval) return false;
    const auto& nodes = f.nodes();
    for (const auto& node : nodes) {
        if (!nadic_check(node.t, n)) return false;
        if (!nadic_check(node.v.frac(), n)) return false;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!slope_is_power_of(slope_of(nodes[i], nodes[i + 1]), n)) return false;
    return true;
}

}  // namespace ringkit
