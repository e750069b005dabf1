#pragma once

#include <string>

#include "ringkit/treepair.hpp"

namespace ringkit {

enum class GenName { x, y, g1, g2, f };

GenName gen_name_from_string(const std::string& s);

/// Factory for the named generating elements of F_n and T_n.
///
///   x, i in 1..n   : the standard F_n generators; defined by their analytic
///                    formula (see x_generator_map) and converted to a tree
///                    pair with from_plmap.
///   y              : the -1/n rotation, (caret, caret, shift n-1).
///   g1, g2         : the two auxiliary F_n elements, built directly as tree
///                    pairs (right/left spines for g1; for g2 a caret at the
///                    last child carrying a caret at its (n-1)-th child,
///                    against carets at the first and last children).
///   f, i in 1..n+1 : f_i = x_{i+1}^{-1} x_i for i < n, f_n = x_n, and
///                    f_{n+1} = g2 (y g1) g2^{-1} (needs n >= 3).
///
/// i is ignored for y, g1, g2. Throws std::domain_error for out-of-range
/// indices.
TreePair generator(GenName name, long n, long i = 0);

/// Analytic form of x_{n,i}: identity up to (i-1)/n, slope n up to
/// i(n-1)/n^2, a slope-1 segment up to i/n, slope 1/n to the end (and the
/// i = n variant with its slope-1 segment placed at height 1-1/n^2). The
/// slope-1 segment's offset is the unique one joining its neighbors
/// continuously.
PLMap x_generator_map(long n, long i);

/// The -1/n rotation as a map.
PLMap y_generator_map(long n);

}  // namespace ringkit
