#pragma once

#include "ringkit/chainring.hpp"

namespace ringkit {

/// One exact inequality of the ring verification: the composite value at an
/// evaluation point, the bound it must dominate, and (when a closed form is
/// pinned for it) the reference value the computation is compared against.
struct InequalityCheck {
    std::string description;
    Rational point;
    Rational value;
    Rational bound;
    bool holds;
    std::optional<Rational> reference;
    bool matches_reference;  // true when no reference is pinned
};

struct SupportCheck {
    std::string description;
    IntervalSet expected;
    IntervalSet computed;
    bool matches;
};

/// Full verification record for the (n+1)-ring structure of T_n. The report
/// is valid iff every support matches its closed form, the supports form a
/// ring, every inequality holds, and all n+1 consecutive pairs carry an
/// F-certificate. Reference mismatches are recorded in notes and do not
/// invalidate the report; the bounds do.
struct TnRingReport {
    long n;
    std::vector<PLMap> family;
    std::vector<SupportCheck> supports;
    bool ring;
    std::vector<InequalityCheck> inequalities;
    std::vector<SupportCheck> conjugated_supports;
    RingCert ring_cert;
    std::vector<std::string> notes;
    bool valid;
};

/// The generators f_{n,1} ... f_{n,n+1} as a circle family.
GeneratingFamily build_family(long n);

TnRingReport verify_tn_ring(long n);

/// Commutators of consecutive generators have support compactly contained in
/// the union of the two supports, and are the identity near both ends of
/// that union.
struct CommutatorCheck {
    std::size_t index;  // commutator [f_i, f_{i+1}], 0-based i
    IntervalSet commutator_support;
    IntervalSet pair_union;
    bool compact;
    bool identity_at_ends;
};
std::vector<CommutatorCheck> fn_abelianization_sanity(long n);

}  // namespace ringkit
