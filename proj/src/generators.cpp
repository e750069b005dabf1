#include "ringkit/generators.hpp"

#include <stdexcept>

namespace ringkit {

namespace {

Rational pw(long n, long k) { return rational_pow(n, k); }

// Builds a map from breakpoint samples, dropping repeated points (which arise
// when a formula branch degenerates to zero width at small n). Conflicting
// duplicates mean the branch data is not a function; that is an error.
PLMap map_from_points(std::vector<MapNode> pts) {
    std::vector<MapNode> nodes;
    for (auto& p : pts) {
        if (!nodes.empty() && nodes.back().t == p.t) {
            if (nodes.back().v != p.v)
                throw std::domain_error("inconsistent branch data for generator map");
            continue;
        }
        nodes.push_back(std::move(p));
    }
    return PLMap::from_nodes(std::move(nodes));
}

// Replaces the child on the given path (indices into successive children)
// with a caret.
NaryTree caret_at(const NaryTree& t, const std::vector<long>& path, long arity,
                  std::size_t depth = 0) {
    if (depth == path.size()) {
        if (!t.is_leaf()) throw std::domain_error("caret_at target is not a leaf");
        return NaryTree::caret(arity);
    }
    std::vector<NaryTree> kids = t.children();
    const long idx = path[depth];
    kids[idx] = caret_at(kids[idx], path, arity, depth + 1);
    return NaryTree(std::move(kids));
}

TreePair x_pair(long n, long i) { return from_plmap(x_generator_map(n, i), n); }

TreePair y_pair(long n) { return TreePair(n, NaryTree::caret(n), NaryTree::caret(n), n - 1); }

TreePair g1_pair(long n) {
    // Right spine of three carets against a left spine of three carets.
    NaryTree dom = NaryTree::caret(n);
    dom = caret_at(dom, {n - 1}, n);
    dom = caret_at(dom, {n - 1, n - 1}, n);
    NaryTree ran = NaryTree::caret(n);
    ran = caret_at(ran, {0}, n);
    ran = caret_at(ran, {0, 0}, n);
    return TreePair(n, dom, ran, 0);
}

TreePair g2_pair(long n) {
    NaryTree dom = NaryTree::caret(n);
    dom = caret_at(dom, {n - 1}, n);
    dom = caret_at(dom, {n - 1, n - 2}, n);
    NaryTree ran = NaryTree::caret(n);
    ran = caret_at(ran, {0}, n);
    ran = caret_at(ran, {n - 1}, n);
    return TreePair(n, dom, ran, 0);
}

TreePair f_pair(long n, long i) {
    if (i >= 1 && i <= n - 1) return multiply(invert(x_pair(n, i + 1)), x_pair(n, i));
    if (i == n) return x_pair(n, n);
    if (i == n + 1) {
        if (n < 3) throw std::domain_error("the f-family index n+1 requires n >= 3");
        const TreePair g2 = g2_pair(n);
        const TreePair yg1 = multiply(y_pair(n), g1_pair(n));
        return multiply(multiply(g2, yg1), invert(g2));
    }
    throw std::domain_error("f-generator index out of range");
}

}  // namespace

PLMap x_generator_map(long n, long i) {
    if (n < 2) throw std::domain_error("x generator requires n >= 2");
    if (i < 1 || i > n) throw std::domain_error("x generator index out of range");
    const Rational one(1);
    if (i < n) {
        const Rational a(i - 1, n);
        return map_from_points({{Rational(0), Rational(0)},
                                {a, a},
                                {Rational(i * (n - 1)) * pw(n, -2), Rational(n - 1, n)},
                                {Rational(i, n), Rational(n - 1, n) + Rational(i) * pw(n, -2)},
                                {one, one}});
    }
    const Rational b = one - Rational(1, n);
    return map_from_points({{Rational(0), Rational(0)},
                            {b, b},
                            {b + pw(n, -2) - pw(n, -3), one - pw(n, -2)},
                            {b + pw(n, -2), one - pw(n, -2) + pw(n, -3)},
                            {one, one}});
}

PLMap y_generator_map(long n) {
    if (n < 2) throw std::domain_error("y generator requires n >= 2");
    return PLMap::rotation(Rational(-1, n));
}

GenName gen_name_from_string(const std::string& s) {
    if (s == "x") return GenName::x;
    if (s == "y") return GenName::y;
    if (s == "g1") return GenName::g1;
    if (s == "g2") return GenName::g2;
    if (s == "f") return GenName::f;
    throw std::invalid_argument("unknown generator name: " + s);
}

TreePair generator(GenName name, long n, long i) {
    if (n < 2) throw std::domain_error("generators require n >= 2");
    switch (name) {
        case GenName::x: return x_pair(n, i);
        case GenName::y: return y_pair(n);
        case GenName::g1: return g1_pair(n);
        case GenName::g2: return g2_pair(n);
        case GenName::f: return f_pair(n, i);
    }
    throw std::domain_error("unknown generator");
}

}  // namespace ringkit
