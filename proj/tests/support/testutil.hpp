#pragma once

#include <random>

#include "ringkit/treepair.hpp"

namespace ringkit::testutil {

inline NaryTree expand_leaf(const NaryTree& t, long offset, long arity, bool& done) {
    if (t.is_leaf()) {
        if (offset == 0) {
            done = true;
            return NaryTree::caret(arity);
        }
        return t;
    }
    std::vector<NaryTree> kids;
    long at = 0;
    for (const auto& k : t.children()) {
        const long c = k.leaf_count();
        if (!done && offset >= at && offset < at + c)
            kids.push_back(expand_leaf(k, offset - at, arity, done));
        else
            kids.push_back(k);
        at += c;
    }
    return NaryTree(std::move(kids));
}

inline NaryTree random_tree(std::mt19937& rng, long arity, int carets) {
    NaryTree t;
    for (int c = 0; c < carets; ++c) {
        std::uniform_int_distribution<long> ld(0, t.leaf_count() - 1);
        bool done = false;
        t = expand_leaf(t, ld(rng), arity, done);
    }
    return t;
}

/// Random reduced tree pair with at most max_carets carets per tree.
inline TreePair random_reduced_pair(std::mt19937& rng, long arity, int max_carets) {
    std::uniform_int_distribution<int> cd(0, max_carets);
    const int carets = cd(rng);
    NaryTree dom = random_tree(rng, arity, carets);
    NaryTree ran = random_tree(rng, arity, carets);
    std::uniform_int_distribution<long> sd(0, dom.leaf_count() - 1);
    return reduce(TreePair(arity, std::move(dom), std::move(ran), sd(rng)));
}

}  // namespace ringkit::testutil
