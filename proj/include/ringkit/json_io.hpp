#pragma once

#include <json.hpp>
#include <variant>

#include "ringkit/tnring.hpp"
#include "ringkit/treepair.hpp"

namespace ringkit {

inline constexpr const char* kFormatTag = "ringkit/1";

nlohmann::json plmap_to_json(const PLMap& f);
PLMap plmap_from_json(const nlohmann::json& j);

nlohmann::json treepair_to_json(const TreePair& p);
TreePair treepair_from_json(const nlohmann::json& j);

nlohmann::json intervalset_to_json(const IntervalSet& s);

nlohmann::json family_to_json(const GeneratingFamily& fam);
GeneratingFamily family_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TnRingReport& rep);

/// A self-contained certificate document: the generating data plus one
/// replayable record.
struct CertificateFile {
    FamilyContext context;
    std::vector<PLMap> family;
    std::variant<FPairCert, RingCert, ChainCert, ExpansionCert, ShrinkCert, DisplaceCert> cert;
};

nlohmann::json certificate_to_json(const CertificateFile& c);
CertificateFile certificate_from_json(const nlohmann::json& j);

/// Recomputes the certificate's claims from its stored family; true iff the
/// record is reproduced exactly.
bool replay_certificate(const CertificateFile& c);
/// True iff the certificate's verdict field is positive (certified, included,
/// disjoint).
bool certificate_positive(const CertificateFile& c);

}  // namespace ringkit
