#include "ringkit/json_io.hpp"

namespace ringkit {

using nlohmann::json;

namespace {

json rat_to_json(const Rational& r) { return r.str(); }

Rational rat_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a string \"p/q\"");
    return Rational::parse(j.get<std::string>());
}

json point_to_json(const CirclePoint& p) { return rat_to_json(p.value()); }

void check_format(const json& j) {
    if (j.contains("format") && j.at("format") != kFormatTag)
        throw std::invalid_argument("unsupported document format");
}

json word_to_json(const Word& w) { return word_str(w); }

Word word_from_json(const json& j, std::size_t family_size) {
    if (!j.is_string()) throw std::invalid_argument("word must be a string");
    return word_parse(j.get<std::string>(), family_size);
}

json interval_pair(const Rational& lo, const Rational& hi) {
    return json::array({rat_to_json(lo), rat_to_json(hi)});
}

std::pair<Rational, Rational> interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [\"p/q\",\"p/q\"]");
    return {rat_from_json(j[0]), rat_from_json(j[1])};
}

json fpair_to_json(const FPairCert& c) {
    json j{{"a_prime", rat_to_json(c.a_prime)},
           {"b", rat_to_json(c.b)},
           {"value", rat_to_json(c.value)},
           {"certified", c.certified},
           {"pattern_ok", c.pattern_ok}};
    if (c.conjugator) j["conjugator"] = plmap_to_json(*c.conjugator);
    return j;
}

FPairCert fpair_from_json(const json& j) {
    FPairCert c{rat_from_json(j.at("a_prime")), rat_from_json(j.at("b")),
                rat_from_json(j.at("value")), j.at("certified").get<bool>(),
                j.at("pattern_ok").get<bool>(), std::nullopt};
    if (j.contains("conjugator")) c.conjugator = plmap_from_json(j.at("conjugator"));
    return c;
}

json ring_to_json(const RingCert& c) {
    json pairs = json::array();
    for (const auto& p : c.pairs) pairs.push_back(fpair_to_json(p));
    json j{{"ring", c.ring}, {"pairs", pairs}, {"certified", c.certified}};
    if (c.failing_index) j["failing_index"] = *c.failing_index;
    return j;
}

RingCert ring_from_json(const json& j) {
    RingCert c;
    c.ring = j.at("ring").get<bool>();
    c.certified = j.at("certified").get<bool>();
    for (const auto& p : j.at("pairs")) c.pairs.push_back(fpair_from_json(p));
    if (j.contains("failing_index")) c.failing_index = j.at("failing_index").get<std::size_t>();
    return c;
}

json chain_to_json(const ChainCert& c) {
    json pairs = json::array();
    for (const auto& p : c.pairs) pairs.push_back(fpair_to_json(p));
    return json{{"N", c.N}, {"chain", c.chain}, {"pairs", pairs}, {"certified", c.certified}};
}

ChainCert chain_from_json(const json& j) {
    ChainCert c;
    c.N = j.at("N").get<long>();
    c.chain = j.at("chain").get<bool>();
    c.certified = j.at("certified").get<bool>();
    for (const auto& p : j.at("pairs")) c.pairs.push_back(fpair_from_json(p));
    return c;
}

json expansion_to_json(const ExpansionCert& c) {
    json maps = json::array();
    for (const auto& m : c.new_family) maps.push_back(plmap_to_json(m));
    json checks = json::array();
    for (const auto& bc : c.boundary_checks) {
        json pts = json::array();
        for (const auto& p : bc.points) pts.push_back(point_to_json(p));
        checks.push_back(json{{"description", bc.description},
                              {"points", pts},
                              {"ok", bc.ok},
                              {"strict", bc.strict}});
    }
    return json{{"N", c.N},
                {"new_family", maps},
                {"boundary_checks", checks},
                {"ring_cert", ring_to_json(c.ring_cert)},
                {"certified", c.certified}};
}

ExpansionCert expansion_from_json(const json& j) {
    ExpansionCert c;
    c.N = j.at("N").get<long>();
    c.certified = j.at("certified").get<bool>();
    for (const auto& m : j.at("new_family")) c.new_family.push_back(plmap_from_json(m));
    for (const auto& bc : j.at("boundary_checks")) {
        BoundaryCheck b{bc.at("description").get<std::string>(), {}, bc.at("ok").get<bool>(),
                        bc.at("strict").get<bool>()};
        for (const auto& p : bc.at("points")) b.points.push_back(CirclePoint(rat_from_json(p)));
        c.boundary_checks.push_back(std::move(b));
    }
    c.ring_cert = ring_from_json(j.at("ring_cert"));
    return c;
}

json shrink_to_json(const ShrinkCert& c) {
    json steps = json::array();
    for (const auto& [lo, hi] : c.steps) steps.push_back(interval_pair(lo, hi));
    return json{{"word", word_to_json(c.word)},
                {"interval", interval_pair(c.i_lo, c.i_hi)},
                {"target", interval_pair(c.j_lo, c.j_hi)},
                {"steps", steps},
                {"final", interval_pair(c.final_lo, c.final_hi)},
                {"included", c.included}};
}

ShrinkCert shrink_from_json(const json& j, std::size_t family_size) {
    ShrinkCert c;
    c.word = word_from_json(j.at("word"), family_size);
    std::tie(c.i_lo, c.i_hi) = interval_from_json(j.at("interval"));
    std::tie(c.j_lo, c.j_hi) = interval_from_json(j.at("target"));
    for (const auto& s : j.at("steps")) c.steps.push_back(interval_from_json(s));
    std::tie(c.final_lo, c.final_hi) = interval_from_json(j.at("final"));
    c.included = j.at("included").get<bool>();
    return c;
}

json displace_to_json(const DisplaceCert& c) {
    return json{{"word", word_to_json(c.word)},
                {"interval", interval_pair(c.i_lo, c.i_hi)},
                {"image", interval_pair(c.image_lo, c.image_hi)},
                {"disjoint", c.disjoint}};
}

DisplaceCert displace_from_json(const json& j, std::size_t family_size) {
    DisplaceCert c;
    c.word = word_from_json(j.at("word"), family_size);
    std::tie(c.i_lo, c.i_hi) = interval_from_json(j.at("interval"));
    std::tie(c.image_lo, c.image_hi) = interval_from_json(j.at("image"));
    c.disjoint = j.at("disjoint").get<bool>();
    return c;
}

}  // namespace

json plmap_to_json(const PLMap& f) {
    json nodes = json::array();
    for (const auto& n : f.nodes())
        nodes.push_back(json{{"t", rat_to_json(n.t)}, {"v", rat_to_json(n.v)}});
    return json{{"kind", f.kind() == MapKind::interval ? "interval" : "circle"}, {"nodes", nodes}};
}

PLMap plmap_from_json(const json& j) {
    check_format(j);
    if (!j.contains("nodes")) throw std::invalid_argument("map document lacks nodes");
    std::vector<MapNode> nodes;
    for (const auto& n : j.at("nodes"))
        nodes.push_back({rat_from_json(n.at("t")), rat_from_json(n.at("v"))});
    PLMap f = PLMap::from_nodes(std::move(nodes));
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "interval" && kind != "circle")
            throw std::invalid_argument("map kind must be interval or circle");
        if (kind == "interval" && f.kind() != MapKind::interval)
            throw std::invalid_argument("declared interval map does not fix the basepoint");
    }
    return f;
}

json treepair_to_json(const TreePair& p) {
    return json{{"n", p.arity()},
                {"domain", p.domain().str()},
                {"range", p.range().str()},
                {"shift", p.shift()}};
}

TreePair treepair_from_json(const json& j) {
    check_format(j);
    const long n = j.at("n").get<long>();
    return TreePair(n, NaryTree::parse(j.at("domain").get<std::string>(), n),
                    NaryTree::parse(j.at("range").get<std::string>(), n),
                    j.at("shift").get<long>());
}

json intervalset_to_json(const IntervalSet& s) {
    json arcs = json::array();
    for (const auto& a : s.arcs())
        arcs.push_back(json{{"lower", point_to_json(a.lower())}, {"upper", point_to_json(a.upper())}});
    return json{{"full", s.is_full()}, {"arcs", arcs}};
}

json family_to_json(const GeneratingFamily& fam) {
    json gens = json::array();
    for (const auto& g : fam.generators()) gens.push_back(plmap_to_json(g));
    return json{{"format", kFormatTag},
                {"context", fam.context() == FamilyContext::line ? "line" : "circle"},
                {"generators", gens}};
}

GeneratingFamily family_from_json(const json& j) {
    check_format(j);
    const std::string ctx = j.at("context").get<std::string>();
    if (ctx != "line" && ctx != "circle")
        throw std::invalid_argument("family context must be line or circle");
    std::vector<PLMap> gens;
    for (const auto& g : j.at("generators")) gens.push_back(plmap_from_json(g));
    return GeneratingFamily(ctx == "line" ? FamilyContext::line : FamilyContext::circle,
                            std::move(gens));
}

json report_to_json(const TnRingReport& rep) {
    json fam = json::array();
    for (const auto& g : rep.family) fam.push_back(plmap_to_json(g));
    const auto support_checks = [](const std::vector<SupportCheck>& scs) {
        json out = json::array();
        for (const auto& sc : scs)
            out.push_back(json{{"description", sc.description},
                               {"expected", intervalset_to_json(sc.expected)},
                               {"computed", intervalset_to_json(sc.computed)},
                               {"matches", sc.matches}});
        return out;
    };
    json ineqs = json::array();
    for (const auto& iq : rep.inequalities) {
        json e{{"description", iq.description}, {"point", rat_to_json(iq.point)},
               {"value", rat_to_json(iq.value)}, {"bound", rat_to_json(iq.bound)},
               {"holds", iq.holds},             {"matches_reference", iq.matches_reference}};
        if (iq.reference) e["reference"] = rat_to_json(*iq.reference);
        ineqs.push_back(std::move(e));
    }
    return json{{"format", kFormatTag},
                {"n", rep.n},
                {"family", fam},
                {"supports", support_checks(rep.supports)},
                {"ring", rep.ring},
                {"inequalities", ineqs},
                {"conjugated_supports", support_checks(rep.conjugated_supports)},
                {"ring_cert", ring_to_json(rep.ring_cert)},
                {"notes", rep.notes},
                {"valid", rep.valid}};
}

json certificate_to_json(const CertificateFile& c) {
    json fam = json::array();
    for (const auto& g : c.family) fam.push_back(plmap_to_json(g));
    json j{{"format", kFormatTag},
           {"context", c.context == FamilyContext::line ? "line" : "circle"},
           {"family", fam}};
    if (std::holds_alternative<FPairCert>(c.cert)) {
        j["variant"] = "fpair";
        j["data"] = fpair_to_json(std::get<FPairCert>(c.cert));
    } else if (std::holds_alternative<RingCert>(c.cert)) {
        j["variant"] = "ring";
        j["data"] = ring_to_json(std::get<RingCert>(c.cert));
    } else if (std::holds_alternative<ChainCert>(c.cert)) {
        j["variant"] = "chain";
        j["data"] = chain_to_json(std::get<ChainCert>(c.cert));
    } else if (std::holds_alternative<ExpansionCert>(c.cert)) {
        j["variant"] = "expansion";
        j["data"] = expansion_to_json(std::get<ExpansionCert>(c.cert));
    } else if (std::holds_alternative<ShrinkCert>(c.cert)) {
        j["variant"] = "shrink";
        j["data"] = shrink_to_json(std::get<ShrinkCert>(c.cert));
    } else {
        j["variant"] = "displace";
        j["data"] = displace_to_json(std::get<DisplaceCert>(c.cert));
    }
    return j;
}

CertificateFile certificate_from_json(const json& j) {
    check_format(j);
    CertificateFile c{FamilyContext::circle, {}, RingCert{}};
    const std::string ctx = j.at("context").get<std::string>();
    if (ctx != "line" && ctx != "circle")
        throw std::invalid_argument("certificate context must be line or circle");
    c.context = ctx == "line" ? FamilyContext::line : FamilyContext::circle;
    for (const auto& g : j.at("family")) c.family.push_back(plmap_from_json(g));
    const std::string variant = j.at("variant").get<std::string>();
    const json& data = j.at("data");
    if (variant == "fpair") c.cert = fpair_from_json(data);
    else if (variant == "ring") c.cert = ring_from_json(data);
    else if (variant == "chain") c.cert = chain_from_json(data);
    else if (variant == "expansion") c.cert = expansion_from_json(data);
    else if (variant == "shrink") c.cert = shrink_from_json(data, c.family.size());
    else if (variant == "displace") c.cert = displace_from_json(data, c.family.size());
    else throw std::invalid_argument("unknown certificate variant: " + variant);
    return c;
}

bool replay_certificate(const CertificateFile& c) {
    if (std::holds_alternative<FPairCert>(c.cert)) {
        if (c.family.size() != 2) return false;
        return replay(c.family[0], c.family[1], std::get<FPairCert>(c.cert));
    }
    GeneratingFamily fam(c.context, c.family);
    if (std::holds_alternative<RingCert>(c.cert)) return replay(fam, std::get<RingCert>(c.cert));
    if (std::holds_alternative<ChainCert>(c.cert)) return replay(fam, std::get<ChainCert>(c.cert));
    if (std::holds_alternative<ExpansionCert>(c.cert))
        return replay(fam, std::get<ExpansionCert>(c.cert));
    if (std::holds_alternative<ShrinkCert>(c.cert)) return replay(fam, std::get<ShrinkCert>(c.cert));
    return replay(fam, std::get<DisplaceCert>(c.cert));
}

bool certificate_positive(const CertificateFile& c) {
    if (std::holds_alternative<FPairCert>(c.cert)) return std::get<FPairCert>(c.cert).certified;
    if (std::holds_alternative<RingCert>(c.cert)) return std::get<RingCert>(c.cert).certified;
    if (std::holds_alternative<ChainCert>(c.cert)) return std::get<ChainCert>(c.cert).certified;
    if (std::holds_alternative<ExpansionCert>(c.cert))
        return std::get<ExpansionCert>(c.cert).certified;
    if (std::holds_alternative<ShrinkCert>(c.cert)) return std::get<ShrinkCert>(c.cert).included;
    return std::get<DisplaceCert>(c.cert).disjoint;
}

}  // namespace ringkit
