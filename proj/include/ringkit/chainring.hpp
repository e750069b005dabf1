#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringkit/plmap.hpp"

namespace ringkit {

enum class FamilyContext { line, circle };

/// Thrown by the verified word searches when the letter budget runs out;
/// carries the best interval reached so far.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::string what, Rational best_lo, Rational best_hi)
        : std::runtime_error(std::move(what)), best_lo(std::move(best_lo)), best_hi(std::move(best_hi)) {}
    Rational best_lo, best_hi;
};

/// An ordered family of generators whose supports are single open arcs;
/// multi-component supports are rejected at construction. Line context
/// additionally requires every generator to fix the basepoint.
class GeneratingFamily {
public:
    GeneratingFamily(FamilyContext context, std::vector<PLMap> generators);

    FamilyContext context() const { return ctx_; }
    std::size_t size() const { return gens_.size(); }
    const std::vector<PLMap>& generators() const { return gens_; }
    const PLMap& gen(std::size_t i) const { return gens_[i]; }
    const IntervalSet& support(std::size_t i) const { return supports_[i]; }
    const std::vector<IntervalSet>& supports() const { return supports_; }

    /// Support bounds in [0,1] line coordinates (upper endpoint 0 reads as 1).
    /// Throws for an arc that genuinely wraps past the basepoint.
    std::pair<Rational, Rational> line_support(std::size_t i) const;

private:
    FamilyContext ctx_;
    std::vector<PLMap> gens_;
    std::vector<IntervalSet> supports_;
};

/// One syllable of a word: generator index (0-based) and a nonzero exponent.
struct WordLetter {
    std::size_t index;
    long exponent;
    friend bool operator==(const WordLetter&, const WordLetter&) = default;
};
/// A word w_1 w_2 ... w_k denotes the composite w_1 ∘ w_2 ∘ ... ∘ w_k, so the
/// rightmost letter acts first.
using Word = std::vector<WordLetter>;

std::string word_str(const Word& w);
/// Parses whitespace-separated tokens "f3", "f3^-2".
Word word_parse(const std::string& text, std::size_t family_size);
/// Total letter count, counting a syllable f_i^e as |e| letters.
long word_length(const Word& w);
std::vector<long> exponent_sums(const Word& w, std::size_t family_size);
PLMap word_to_map(const GeneratingFamily& fam, const Word& w);

/// Signed exponent sum of the first generator.
long p1(const GeneratingFamily& fam, const Word& w);

struct P1Verdict {
    bool maps_equal;
    long p1_first, p1_second;
    bool consistent;  // maps_equal implies equal p1
};
P1Verdict p1_consistency(const GeneratingFamily& fam, const Word& w1, const Word& w2);

/// Chain / ring predicates on single-arc supports: consecutive members have
/// nonempty differences both ways, and members at index distance >= 2 (for a
/// ring, cyclic distance between 2 and m-2) are disjoint. Throws on a
/// multi-component support.
bool is_chain(const std::vector<IntervalSet>& supports);
bool is_ring(const std::vector<IntervalSet>& supports);

/// Certificate data for the two-generator criterion: supports (a,b), (a',b')
/// with a < a' < b < b' and g(f(a')) >= b certify that <f,g> is isomorphic
/// to F. The criterion is sufficient only, so a failed inequality yields
/// "inconclusive", never "refuted".
struct FPairCert {
    Rational a_prime, b, value;
    bool certified;
    bool pattern_ok = true;  // the supports admitted the linear overlap pattern
    std::optional<PLMap> conjugator;  // applied to both maps before the check
};

/// Direct certification of a pair of line-representable maps. Throws
/// std::domain_error when a support is not a single arc or the overlap
/// pattern a < a' < b < b' fails.
FPairCert certify_F_pair(const PLMap& f, const PLMap& g);

struct RingCert {
    bool ring;
    std::vector<FPairCert> pairs;  // pair i is (f_i, f_{i+1 mod m})
    bool certified;
    std::optional<std::size_t> failing_index;
};

/// Checks is_ring plus the F-criterion for every consecutive pair mod m.
/// Pairs whose supports cross the basepoint are conjugated off it first: by
/// wrap_conjugator when given (y_n^{-1} for the T_n families), otherwise by
/// an automatically chosen rational rotation whose basepoint lands in the
/// complement of the two supports.
RingCert verify_ring_group(const GeneratingFamily& fam,
                           const std::optional<PLMap>& wrap_conjugator = std::nullopt);

struct ChainCert {
    long N;
    bool chain;
    std::vector<FPairCert> pairs;  // m-1 consecutive pairs
    bool certified;
};

struct StabilizeResult {
    bool found = false;
    long N = 0;
    std::optional<ChainCert> cert;
    long largest_tried = 0;
};

/// Smallest N <= Nmax for which the powered family {f_i^N} is a certified
/// chain. Requires a prechain family: single-arc supports forming a chain
/// whose union is (0,1).
StabilizeResult stabilize(const GeneratingFamily& fam, long Nmax);

/// One boundary-point ordering check of the expansion construction. The
/// load-bearing requirement is weak cyclic order (ok); consecutive points can
/// legitimately coincide when supports of the input ring touch at a boundary
/// point, so the strict ordering is recorded separately as information.
struct BoundaryCheck {
    std::string description;
    std::vector<CirclePoint> points;
    bool ok;      // weak cyclic order
    bool strict;  // strict cyclic order
};

struct ExpansionCert {
    long N;
    std::vector<PLMap> new_family;  // m+1 generators
    std::vector<BoundaryCheck> boundary_checks;
    RingCert ring_cert;
    bool certified;
};

struct ExpandResult {
    bool found = false;
    std::optional<ExpansionCert> cert;
    long largest_tried = 0;
};

/// The primed (m+1)-generator family for a given exponent N.
std::vector<PLMap> expanded_generators(const GeneratingFamily& fam, long N);

/// Searches N = 1..Nmax for the first exponent whose primed family passes the
/// boundary-point order checks, is_ring, and full F-certification. Requires
/// m >= 4 and a family that itself verifies as a ring group.
ExpandResult expand_ring(const GeneratingFamily& fam, long Nmax,
                         const std::optional<PLMap>& wrap_conjugator = std::nullopt);

struct ShrinkCert {
    Word word;
    Rational i_lo, i_hi;  // the closed interval I
    Rational j_lo, j_hi;  // the open target J
    std::vector<std::pair<Rational, Rational>> steps;  // image after each syllable, last first
    Rational final_lo, final_hi;
    bool included;
};

/// Finds a word g with zero exponent sum for every generator (hence in the
/// commutator subgroup) such that g(I) is contained in J, where J is an open
/// neighborhood of a support boundary point t. Verified exactly at the
/// endpoints of I. Throws BudgetError when the letter budget is exhausted.
ShrinkCert shrink_into(const GeneratingFamily& fam, const Rational& i_lo, const Rational& i_hi,
                       const Rational& t, const Rational& j_lo, const Rational& j_hi,
                       long budget = 64);

struct DisplaceCert {
    Word word;
    Rational i_lo, i_hi;
    Rational image_lo, image_hi;
    bool disjoint;
};

/// A zero-exponent-sum word g with g(I) disjoint from I, verified exactly.
DisplaceCert displace(const GeneratingFamily& fam, const Rational& i_lo, const Rational& i_hi,
                      long budget = 64);

/// k zero-exponent-sum words whose images of K are pairwise disjoint. The
/// target windows are fixed deterministic neighborhoods of the interior
/// support boundary points, taken in increasing order.
std::vector<Word> disjoint_pushers(const GeneratingFamily& fam, const IntervalSet& K, long k,
                                   long budget = 64);

// Certificate replay: recomputes every stored exact value from the family
// alone and checks it against the certificate bit for bit.
bool replay(const PLMap& f, const PLMap& g, const FPairCert& cert);
bool replay(const GeneratingFamily& fam, const RingCert& cert);
bool replay(const GeneratingFamily& fam, const ChainCert& cert);
bool replay(const GeneratingFamily& fam, const ExpansionCert& cert);
bool replay(const GeneratingFamily& fam, const ShrinkCert& cert);
bool replay(const GeneratingFamily& fam, const DisplaceCert& cert);

}  // namespace ringkit
