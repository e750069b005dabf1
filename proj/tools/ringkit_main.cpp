#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ringkit/generators.hpp"
#include "ringkit/json_io.hpp"

using namespace ringkit;
using nlohmann::json;

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

long default_budget() {
    if (const char* env = std::getenv("RINGKIT_BUDGET")) {
        try {
            const long b = std::stol(env);
            if (b > 0) return b;
        } catch (const std::exception&) {
        }
    }
    return 64;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

void write_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << doc.dump(2) << "\n";
}

std::pair<Rational, Rational> parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected an interval \"p/q,p/q\": " + text);
    return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

json error_doc(const std::string& kind, const std::string& message) {
    return json{{"format", kFormatTag}, {"error", {{"kind", kind}, {"message", message}}}};
}

int cmd_gen(const std::string& group, long n, const std::string& name, long index,
            const std::string& format) {
    const bool want_tree = format == "treepair";
    if (!name.empty()) {
        const TreePair p = generator(gen_name_from_string(name), n, index);
        json doc = want_tree ? treepair_to_json(p) : plmap_to_json(to_plmap(p));
        doc["format"] = kFormatTag;
        emit(doc);
        return kExitVerified;
    }
    const long count = group == "Tn" ? n + 1 : n;
    if (want_tree) {
        json pairs = json::array();
        for (long i = 1; i <= count; ++i)
            pairs.push_back(treepair_to_json(generator(GenName::f, n, i)));
        emit(json{{"format", kFormatTag}, {"n", n}, {"pairs", pairs}});
        return kExitVerified;
    }
    std::vector<PLMap> gens;
    for (long i = 1; i <= count; ++i) gens.push_back(to_plmap(generator(GenName::f, n, i)));
    emit(family_to_json(GeneratingFamily(
        group == "Tn" ? FamilyContext::circle : FamilyContext::line, std::move(gens))));
    return kExitVerified;
}

int cmd_verify_ring(long n, const std::string& out_path) {
    const TnRingReport rep = verify_tn_ring(n);
    emit(report_to_json(rep));
    if (!out_path.empty())
        write_file(out_path,
                   certificate_to_json({FamilyContext::circle, rep.family, rep.ring_cert}));
    return rep.valid ? kExitVerified : kExitRefuted;
}

int cmd_expand(const std::string& family_path, long target_m, long nmax) {
    GeneratingFamily fam = family_from_json(read_json_file(family_path));
    if (target_m <= static_cast<long>(fam.size()))
        throw std::domain_error("--target-m must exceed the family size");
    json certs = json::array();
    while (static_cast<long>(fam.size()) < target_m) {
        const ExpandResult res = expand_ring(fam, nmax);
        if (!res.found) {
            emit(json{{"format", kFormatTag},
                      {"certificates", certs},
                      {"error",
                       {{"kind", "not_found"},
                        {"message", "no certified expansion with exponent up to " +
                                        std::to_string(res.largest_tried)}}}});
            return kExitRefuted;
        }
        certs.push_back(certificate_to_json({fam.context(), fam.generators(), *res.cert}));
        fam = GeneratingFamily(FamilyContext::circle, res.cert->new_family);
    }
    emit(json{{"format", kFormatTag}, {"certificates", certs}});
    return kExitVerified;
}

int cmd_stabilize(const std::string& family_path, long nmax) {
    GeneratingFamily fam = family_from_json(read_json_file(family_path));
    const StabilizeResult res = stabilize(fam, nmax);
    json doc{{"format", kFormatTag}, {"found", res.found}, {"largest_tried", res.largest_tried}};
    if (res.found) {
        doc["N"] = res.N;
        doc["certificate"] = certificate_to_json({fam.context(), fam.generators(), *res.cert});
    }
    emit(doc);
    return res.found ? kExitVerified : kExitRefuted;
}

int cmd_certify_f(const std::string& f_path, const std::string& g_path) {
    const PLMap f = plmap_from_json(read_json_file(f_path));
    const PLMap g = plmap_from_json(read_json_file(g_path));
    const FPairCert cert = certify_F_pair(f, g);
    const FamilyContext ctx =
        f.kind() == MapKind::interval && g.kind() == MapKind::interval ? FamilyContext::line
                                                                       : FamilyContext::circle;
    emit(certificate_to_json({ctx, {f, g}, cert}));
    return cert.certified ? kExitVerified : kExitRefuted;
}

int cmd_shrink(const std::string& family_path, const std::string& interval,
               const std::string& target, long budget) {
    GeneratingFamily fam = family_from_json(read_json_file(family_path));
    const auto [ilo, ihi] = parse_interval(interval);
    const auto [jlo, jhi] = parse_interval(target);
    // The anchor is a support boundary point inside the target window.
    std::optional<Rational> t;
    for (std::size_t i = 0; i < fam.size() && !t; ++i) {
        const auto [a, b] = fam.line_support(i);
        if (jlo < b && b < jhi) t = b;
        else if (jlo < a && a < jhi) t = a;
    }
    if (!t) throw std::domain_error("target window contains no support boundary point");
    const ShrinkCert cert = shrink_into(fam, ilo, ihi, *t, jlo, jhi, budget);
    emit(certificate_to_json({fam.context(), fam.generators(), cert}));
    return kExitVerified;
}

int cmd_eval(const std::string& map_path, const std::string& point) {
    const PLMap f = plmap_from_json(read_json_file(map_path));
    const CirclePoint image = f(CirclePoint(Rational::parse(point)));
    emit(json(image.value().str()));
    return kExitVerified;
}

int cmd_compose(const std::vector<std::string>& paths) {
    PLMap acc = plmap_from_json(read_json_file(paths.front()));
    for (std::size_t i = 1; i < paths.size(); ++i)
        acc = compose(acc, plmap_from_json(read_json_file(paths[i])));
    json doc = plmap_to_json(acc);
    doc["format"] = kFormatTag;
    emit(doc);
    return kExitVerified;
}

int cmd_support(const std::string& map_path) {
    const PLMap f = plmap_from_json(read_json_file(map_path));
    json doc = intervalset_to_json(support(f));
    doc["format"] = kFormatTag;
    emit(doc);
    return kExitVerified;
}

int cmd_p1(const std::string& family_path, const std::string& word) {
    GeneratingFamily fam = family_from_json(read_json_file(family_path));
    const Word w = word_parse(word, fam.size());
    emit(json(std::to_string(p1(fam, w))));
    return kExitVerified;
}

int cmd_replay(const std::string& cert_path, const std::string& family_path) {
    const CertificateFile cert = certificate_from_json(read_json_file(cert_path));
    if (!family_path.empty()) {
        GeneratingFamily fam = family_from_json(read_json_file(family_path));
        if (fam.context() != cert.context || fam.generators() != cert.family) {
            emit(json{{"format", kFormatTag},
                      {"consistent", false},
                      {"positive", false},
                      {"verified", false},
                      {"message", "supplied family differs from the certificate family"}});
            return kExitRefuted;
        }
    }
    const bool consistent = replay_certificate(cert);
    const bool positive = certificate_positive(cert);
    emit(json{{"format", kFormatTag},
              {"consistent", consistent},
              {"positive", positive},
              {"verified", consistent && positive}});
    return consistent && positive ? kExitVerified : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tree-pair and piecewise-affine calculus for the Higman-Thompson "
                 "groups, with replayable chain/ring certificates"};
    app.require_subcommand(1);

    std::string group = "Tn", name, format = "plmap";
    long n = 3, index = 0;
    auto* gen = app.add_subcommand("gen", "emit named generators or the f-family");
    gen->add_option("--group", group)->check(CLI::IsMember({"Fn", "Tn"}));
    gen->add_option("--n", n)->required();
    gen->add_option("--name", name)->check(CLI::IsMember({"x", "y", "g1", "g2", "f"}));
    gen->add_option("--i", index);
    gen->add_option("--format", format)->check(CLI::IsMember({"plmap", "treepair"}));

    long vn = 3;
    std::string out_path;
    auto* verify = app.add_subcommand("verify-ring", "verify the (n+1)-ring structure of T_n");
    verify->add_option("--n", vn)->required();
    verify->add_option("--out", out_path);

    std::string family_path;
    long target_m = 5, nmax = 16;
    auto* expand = app.add_subcommand("expand", "expand a certified m-ring to target size");
    expand->add_option("--family", family_path)->required();
    expand->add_option("--target-m", target_m)->required();
    expand->add_option("--max-exponent", nmax);

    std::string st_family;
    long st_nmax = 16;
    auto* stab = app.add_subcommand("stabilize", "find N making the powered family a chain group");
    stab->add_option("--family", st_family)->required();
    stab->add_option("--max-exponent", st_nmax);

    std::string fa_path, fb_path;
    auto* certf = app.add_subcommand("certify-f", "two-generator F-criterion certificate");
    certf->add_option("--f", fa_path)->required();
    certf->add_option("--g", fb_path)->required();

    std::string sh_family, sh_interval, sh_target;
    long budget = default_budget();
    auto* shrink = app.add_subcommand("shrink", "move a closed interval into a target window");
    shrink->add_option("--family", sh_family)->required();
    shrink->add_option("--interval", sh_interval)->required();
    shrink->add_option("--target", sh_target)->required();
    shrink->add_option("--budget", budget);

    std::string map_path, point;
    auto* eval = app.add_subcommand("eval", "evaluate a map at a rational point");
    eval->add_option("--map", map_path)->required();
    eval->add_option("--point", point)->required();

    std::vector<std::string> compose_paths;
    auto* comp = app.add_subcommand("compose", "compose maps, rightmost applied first");
    comp->add_option("--maps", compose_paths)->required()->expected(-1);

    std::string sup_path;
    auto* sup = app.add_subcommand("support", "support of a map as an interval set");
    sup->add_option("--map", sup_path)->required();

    std::string p1_family, p1_word;
    auto* p1cmd = app.add_subcommand("p1", "exponent sum of the first generator in a word");
    p1cmd->add_option("--family", p1_family)->required();
    p1cmd->add_option("--word", p1_word)->required();

    std::string rp_cert, rp_family;
    auto* rp = app.add_subcommand("replay", "re-verify a certificate from raw data");
    rp->add_option("--cert", rp_cert)->required();
    rp->add_option("--family", rp_family);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(group, n, name, index, format);
        if (verify->parsed()) return cmd_verify_ring(vn, out_path);
        if (expand->parsed()) return cmd_expand(family_path, target_m, nmax);
        if (stab->parsed()) return cmd_stabilize(st_family, st_nmax);
        if (certf->parsed()) return cmd_certify_f(fa_path, fb_path);
        if (shrink->parsed()) return cmd_shrink(sh_family, sh_interval, sh_target, budget);
        if (eval->parsed()) return cmd_eval(map_path, point);
        if (comp->parsed()) return cmd_compose(compose_paths);
        if (sup->parsed()) return cmd_support(sup_path);
        if (p1cmd->parsed()) return cmd_p1(p1_family, p1_word);
        if (rp->parsed()) return cmd_replay(rp_cert, rp_family);
    } catch (const BudgetError& e) {
        json doc = error_doc("budget", e.what());
        doc["error"]["best"] = json::array({e.best_lo.str(), e.best_hi.str()});
        emit(doc);
        std::cerr << "ringkit: " << e.what() << "\n";
        return kExitRefuted;
    } catch (const json::exception& e) {
        emit(error_doc("format", e.what()));
        std::cerr << "ringkit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        emit(error_doc("format", e.what()));
        std::cerr << "ringkit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        emit(error_doc("domain", e.what()));
        std::cerr << "ringkit: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
