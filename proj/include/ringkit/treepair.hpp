#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ringkit/plmap.hpp"

namespace ringkit {

/// Finite rooted n-ary tree: a leaf, or a node with exactly n children.
/// The arity is contextual (validated where a tree is used), not stored.
class NaryTree {
public:
    NaryTree() = default;  // leaf
    explicit NaryTree(std::vector<NaryTree> children) : kids_(std::move(children)) {}

    static NaryTree leaf() { return NaryTree(); }
    static NaryTree caret(long arity) { return NaryTree(std::vector<NaryTree>(arity)); }

    bool is_leaf() const { return kids_.empty(); }
    const std::vector<NaryTree>& children() const { return kids_; }
    long leaf_count() const;
    long caret_count() const;
    bool arity_is(long n) const;

    /// "L" for a leaf, "(c_1...c_n)" for an internal node.
    std::string str() const;
    static NaryTree parse(const std::string& text, long arity);

    friend bool operator==(const NaryTree& a, const NaryTree& b) { return a.kids_ == b.kids_; }
    friend bool operator!=(const NaryTree& a, const NaryTree& b) { return !(a == b); }

private:
    std::vector<NaryTree> kids_;
};

/// Left-to-right leaves of the subdivision tree, as consecutive closed
/// standard n-adic intervals covering [0,1].
std::vector<std::pair<Rational, Rational>> leaf_partition(const NaryTree& tree, long arity);

/// Element of F_n (shift 0) or T_n: two n-ary trees with the same number of
/// leaves plus a cyclic shift. Domain leaf k maps affinely onto range leaf
/// 1 + ((k - 1 + shift) mod leafCount); the shift encodes the basepoint.
class TreePair {
public:
    TreePair(long arity, NaryTree domain, NaryTree range, long shift);

    static TreePair identity(long arity);

    long arity() const { return n_; }
    const NaryTree& domain() const { return dom_; }
    const NaryTree& range() const { return ran_; }
    long shift() const { return shift_; }
    long leaf_count() const { return leaves_; }

    friend bool operator==(const TreePair& a, const TreePair& b) {
        return a.n_ == b.n_ && a.shift_ == b.shift_ && a.dom_ == b.dom_ && a.ran_ == b.ran_;
    }
    friend bool operator!=(const TreePair& a, const TreePair& b) { return !(a == b); }

private:
    long n_;
    NaryTree dom_, ran_;
    long shift_;
    long leaves_;
};

PLMap to_plmap(const TreePair& p);

/// Converts an exact T_n element back to the reduced tree pair. Throws
/// std::domain_error when the map fails member_of(f, T_n, n).
TreePair from_plmap(const PLMap& f, long arity);

/// multiply(p, q) represents the composite "q first": to_plmap(multiply(p,q))
/// equals compose(to_plmap(p), to_plmap(q)). Computed by common refinement of
/// q's range tree with p's domain tree; the result is reduced.
TreePair multiply(const TreePair& p, const TreePair& q);
TreePair invert(const TreePair& p);

/// Fully reduced form: no aligned pair of opposite carets remains.
TreePair reduce(const TreePair& p);

/// Single-step reduction interface, used to exercise confluence: the list of
/// cancellable domain-caret leaf offsets, and the pair with one cancelled.
std::vector<long> reducible_positions(const TreePair& p);
TreePair reduce_at(const TreePair& p, long domain_leaf_offset);

}  // namespace ringkit
