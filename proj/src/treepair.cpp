#include "ringkit/treepair.hpp"

#include <algorithm>
#include <stdexcept>

namespace ringkit {

long NaryTree::leaf_count() const {
    if (is_leaf()) return 1;
    long total = 0;
    for (const auto& k : kids_) total += k.leaf_count();
    return total;
}

long NaryTree::caret_count() const {
    if (is_leaf()) return 0;
    long total = 1;
    for (const auto& k : kids_) total += k.caret_count();
    return total;
}

bool NaryTree::arity_is(long n) const {
    if (is_leaf()) return true;
    if (static_cast<long>(kids_.size()) != n) return false;
    for (const auto& k : kids_)
        if (!k.arity_is(n)) return false;
    return true;
}

std::string NaryTree::str() const {
    if (is_leaf()) return "L";
    std::string out = "(";
    for (const auto& k : kids_) out += k.str();
    out += ")";
    return out;
}

namespace {

NaryTree parse_tree(const std::string& s, std::size_t& pos, long arity) {
    if (pos >= s.size()) throw std::invalid_argument("truncated tree literal");
    if (s[pos] == 'L') {
        ++pos;
        return NaryTree::leaf();
    }
    if (s[pos] != '(') throw std::invalid_argument("expected 'L' or '(' in tree literal");
    ++pos;
    std::vector<NaryTree> kids;
    while (pos < s.size() && s[pos] != ')') kids.push_back(parse_tree(s, pos, arity));
    if (pos >= s.size()) throw std::invalid_argument("unbalanced tree literal");
    ++pos;  // ')'
    if (static_cast<long>(kids.size()) != arity)
        throw std::invalid_argument("tree node has wrong number of children for arity");
    return NaryTree(std::move(kids));
}

}  // namespace

NaryTree NaryTree::parse(const std::string& text, long arity) {
    std::size_t pos = 0;
    NaryTree t = parse_tree(text, pos, arity);
    if (pos != text.size()) throw std::invalid_argument("trailing characters in tree literal");
    return t;
}

namespace {

void partition_rec(const NaryTree& t, long arity, const Rational& lo, const Rational& hi,
                   std::vector<std::pair<Rational, Rational>>& out) {
    if (t.is_leaf()) {
        out.emplace_back(lo, hi);
        return;
    }
    const Rational step = (hi - lo) / Rational(arity);
    Rational a = lo;
    for (long i = 0; i < arity; ++i) {
        const Rational b = (i + 1 == arity) ? hi : a + step;
        partition_rec(t.children()[i], arity, a, b, out);
        a = b;
    }
}

}  // namespace

std::vector<std::pair<Rational, Rational>> leaf_partition(const NaryTree& tree, long arity) {
    if (arity < 2) throw std::domain_error("arity must be at least 2");
    if (!tree.arity_is(arity)) throw std::domain_error("tree does not have the requested arity");
    std::vector<std::pair<Rational, Rational>> out;
    partition_rec(tree, arity, Rational(0), Rational(1), out);
    return out;
}

TreePair::TreePair(long arity, NaryTree domain, NaryTree range, long shift)
    : n_(arity), dom_(std::move(domain)), ran_(std::move(range)), shift_(shift) {
    if (n_ < 2) throw std::domain_error("arity must be at least 2");
    if (!dom_.arity_is(n_) || !ran_.arity_is(n_))
        throw std::domain_error("tree arity mismatch in TreePair");
    leaves_ = dom_.leaf_count();
    if (leaves_ != ran_.leaf_count())
        throw std::domain_error("domain and range trees must have equal leaf counts");
    if (shift_ < 0 || shift_ >= leaves_) throw std::domain_error("shift out of range");
}

TreePair TreePair::identity(long arity) {
    return TreePair(arity, NaryTree::leaf(), NaryTree::leaf(), 0);
}

PLMap to_plmap(const TreePair& p) {
    const auto dom = leaf_partition(p.domain(), p.arity());
    const auto ran = leaf_partition(p.range(), p.arity());
    const long L = p.leaf_count();
    std::vector<MapNode> nodes;
    nodes.reserve(L + 1);
    for (long k = 0; k < L; ++k) {
        const long img = k + p.shift();
        const long j = img % L;
        const Rational wrap(img >= L ? 1 : 0);
        nodes.push_back({dom[k].first, ran[j].first + wrap});
    }
    nodes.push_back({Rational(1), nodes.front().v + Rational(1)});
    return PLMap::from_nodes(std::move(nodes));
}

namespace {

// Recursive subdivision for from_plmap: the coarsest standard partition on
// which f is affine with a standard n-adic image that does not straddle an
// integer of the lift.
struct LeafImage {
    Rational lo, hi;  // image interval reduced mod 1, within [0,1]
};

bool nodes_inside(const PLMap& f, const Rational& lo, const Rational& hi) {
    for (const auto& n : f.nodes())
        if (lo < n.t && n.t < hi) return true;
    return false;
}

NaryTree subdivide(const PLMap& f, long n, const Rational& lo, const Rational& hi,
                   std::vector<LeafImage>& images, int depth) {
    if (depth > 200) throw std::domain_error("from_plmap recursion depth exceeded");
    if (!nodes_inside(f, lo, hi)) {
        const Rational vlo = f.lift_eval(lo);
        const Rational vhi = f.lift_eval(hi);
        const Rational m = vlo.floor();
        if (vhi <= m + Rational(1)) {
            const Rational w = vhi - vlo;
            if (w <= Rational(1) && ((vlo - m) / w).is_integer()) {
                images.push_back({vlo - m, vhi - m});
                return NaryTree::leaf();
            }
        }
    }
    std::vector<NaryTree> kids;
    kids.reserve(n);
    const Rational step = (hi - lo) / Rational(n);
    Rational a = lo;
    for (long i = 0; i < n; ++i) {
        const Rational b = (i + 1 == n) ? hi : a + step;
        kids.push_back(subdivide(f, n, a, b, images, depth + 1));
        a = b;
    }
    return NaryTree(std::move(kids));
}

NaryTree tree_from_partition(std::vector<std::pair<Rational, Rational>>::const_iterator& it,
                             std::vector<std::pair<Rational, Rational>>::const_iterator end,
                             long n, const Rational& lo, const Rational& hi) {
    if (it == end) throw std::domain_error("range partition underflow");
    if (it->first == lo && it->second == hi) {
        ++it;
        return NaryTree::leaf();
    }
    if (!(it->first == lo) || it->second > hi)
        throw std::domain_error("range partition is not aligned to the n-adic grid");
    std::vector<NaryTree> kids;
    kids.reserve(n);
    const Rational step = (hi - lo) / Rational(n);
    Rational a = lo;
    for (long i = 0; i < n; ++i) {
        const Rational b = (i + 1 == n) ? hi : a + step;
        kids.push_back(tree_from_partition(it, end, n, a, b));
        a = b;
    }
    return NaryTree(std::move(kids));
}

}  // namespace

TreePair from_plmap(const PLMap& f, long arity) {
    if (!member_of(f, GroupName::Tn, arity))
        throw std::domain_error("map is not an n-adic element for the requested arity");
    std::vector<LeafImage> images;
    NaryTree dom = subdivide(f, arity, Rational(0), Rational(1), images, 0);

    // The images tile the circle; sort them to obtain the range partition.
    std::vector<std::pair<Rational, Rational>> sorted;
    sorted.reserve(images.size());
    for (const auto& im : images) sorted.emplace_back(im.lo, im.hi);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    auto it = sorted.cbegin();
    NaryTree ran = tree_from_partition(it, sorted.cend(), arity, Rational(0), Rational(1));
    if (it != sorted.cend()) throw std::domain_error("range partition overflow");

    const auto pos = std::lower_bound(
        sorted.begin(), sorted.end(), std::make_pair(images.front().lo, images.front().hi));
    const long shift = static_cast<long>(pos - sorted.begin());
    return reduce(TreePair(arity, std::move(dom), std::move(ran), shift));
}

namespace {

// Grafts one subtree onto every leaf, left to right.
NaryTree graft_all(const NaryTree& t, const std::vector<NaryTree>& grafts, long& cursor) {
    if (t.is_leaf()) return grafts[cursor++];
    std::vector<NaryTree> kids;
    kids.reserve(t.children().size());
    for (const auto& k : t.children()) kids.push_back(graft_all(k, grafts, cursor));
    return NaryTree(std::move(kids));
}

NaryTree graft_all(const NaryTree& t, const std::vector<NaryTree>& grafts) {
    long cursor = 0;
    return graft_all(t, grafts, cursor);
}

// Smallest common refinement of two subdivision trees.
NaryTree merge_trees(const NaryTree& a, const NaryTree& b) {
    if (a.is_leaf()) return b;
    if (b.is_leaf()) return a;
    std::vector<NaryTree> kids;
    kids.reserve(a.children().size());
    for (std::size_t i = 0; i < a.children().size(); ++i)
        kids.push_back(merge_trees(a.children()[i], b.children()[i]));
    return NaryTree(std::move(kids));
}

// For each leaf of prefix, the subtree of full rooted there. prefix must be a
// prefix of full.
void prefix_grafts(const NaryTree& prefix, const NaryTree& full, std::vector<NaryTree>& out) {
    if (prefix.is_leaf()) {
        out.push_back(full);
        return;
    }
    if (full.is_leaf()) throw std::domain_error("tree is not a refinement of the prefix");
    for (std::size_t i = 0; i < prefix.children().size(); ++i)
        prefix_grafts(prefix.children()[i], full.children()[i], out);
}

// Refines the pair so that its range tree becomes graft_all(range, grafts).
// The domain leaf mapped onto range leaf j receives the same graft, which
// keeps every leaf block affine; the shift is re-derived from the new leaf
// numbering.
TreePair refine_range(const TreePair& p, const std::vector<NaryTree>& grafts) {
    const long L = p.leaf_count();
    std::vector<NaryTree> dom_grafts(L);
    for (long k = 0; k < L; ++k) dom_grafts[k] = grafts[(k + p.shift()) % L];
    NaryTree dom = graft_all(p.domain(), dom_grafts);
    NaryTree ran = graft_all(p.range(), grafts);
    long new_shift = 0;
    for (long j = 0; j < p.shift(); ++j) new_shift += grafts[j].leaf_count();
    return TreePair(p.arity(), std::move(dom), std::move(ran), new_shift);
}

TreePair refine_domain(const TreePair& p, const std::vector<NaryTree>& grafts) {
    return invert(refine_range(invert(p), grafts));
}

// Leaf offsets of the "simple carets" (internal nodes all of whose children
// are leaves).
void simple_carets(const NaryTree& t, long offset, std::vector<long>& out) {
    if (t.is_leaf()) return;
    bool all_leaves = true;
    for (const auto& k : t.children()) all_leaves = all_leaves && k.is_leaf();
    if (all_leaves) {
        out.push_back(offset);
        return;
    }
    long at = offset;
    for (const auto& k : t.children()) {
        simple_carets(k, at, out);
        at += k.leaf_count();
    }
}

// Replaces the simple caret whose first leaf is at the given offset by a leaf.
NaryTree collapse_caret(const NaryTree& t, long offset, bool& done) {
    if (t.is_leaf()) return t;
    bool all_leaves = true;
    for (const auto& k : t.children()) all_leaves = all_leaves && k.is_leaf();
    if (all_leaves && offset == 0) {
        done = true;
        return NaryTree::leaf();
    }
    std::vector<NaryTree> kids;
    kids.reserve(t.children().size());
    long at = 0;
    for (const auto& k : t.children()) {
        const long cnt = k.leaf_count();
        if (!done && offset >= at && offset < at + cnt)
            kids.push_back(collapse_caret(k, offset - at, done));
        else
            kids.push_back(k);
        at += cnt;
    }
    return NaryTree(std::move(kids));
}

}  // namespace

TreePair invert(const TreePair& p) {
    const long L = p.leaf_count();
    return TreePair(p.arity(), p.range(), p.domain(), (L - p.shift()) % L);
}

std::vector<long> reducible_positions(const TreePair& p) {
    const long n = p.arity();
    const long L = p.leaf_count();
    std::vector<long> dom_carets, ran_carets;
    simple_carets(p.domain(), 0, dom_carets);
    simple_carets(p.range(), 0, ran_carets);
    std::vector<long> out;
    for (long k : dom_carets) {
        const long img = (k + p.shift()) % L;
        if (img + n - 1 >= L) continue;  // image block would wrap
        if (std::find(ran_carets.begin(), ran_carets.end(), img) != ran_carets.end())
            out.push_back(k);
    }
    return out;
}

TreePair reduce_at(const TreePair& p, long domain_leaf_offset) {
    const long n = p.arity();
    const long L = p.leaf_count();
    const long img = (domain_leaf_offset + p.shift()) % L;
    bool done_d = false, done_r = false;
    NaryTree dom = collapse_caret(p.domain(), domain_leaf_offset, done_d);
    NaryTree ran = collapse_caret(p.range(), img, done_r);
    if (!done_d || !done_r) throw std::domain_error("no cancellable caret at this offset");
    const long new_leaves = L - n + 1;
    const long new_shift = ((img - domain_leaf_offset) % new_leaves + new_leaves) % new_leaves;
    return TreePair(p.arity(), std::move(dom), std::move(ran), new_shift);
}

TreePair reduce(const TreePair& p) {
    TreePair cur = p;
    for (;;) {
        const auto pos = reducible_positions(cur);
        if (pos.empty()) return cur;
        cur = reduce_at(cur, pos.front());
    }
}

TreePair multiply(const TreePair& p, const TreePair& q) {
    if (p.arity() != q.arity()) throw std::domain_error("arity mismatch in multiply");
    const NaryTree common = merge_trees(q.range(), p.domain());
    std::vector<NaryTree> gq, gp;
    prefix_grafts(q.range(), common, gq);
    prefix_grafts(p.domain(), common, gp);
    const TreePair q2 = refine_range(q, gq);
    const TreePair p2 = refine_domain(p, gp);
    const long L = q2.leaf_count();
    return reduce(TreePair(p.arity(), q2.domain(), p2.range(), (q2.shift() + p2.shift()) % L));
}

}  // namespace ringkit
