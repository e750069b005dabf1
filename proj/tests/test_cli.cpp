// End-to-end checks of the command-line surface: exit codes, document
// shapes, and error handling. argv[1] is the path to the ringkit binary.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_tmp;
int g_failures = 0;

int run(const std::string& args, const fs::path& out) {
    const std::string cmd = '"' + g_cli + "\" " + args + " > \"" + out.string() + "\" 2> /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

json slurp(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "ok" : "FAIL") << " - " << what << "\n";
    if (!ok) ++g_failures;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-ringkit>\n";
        return 2;
    }
    g_cli = argv[1];
    g_tmp = fs::temp_directory_path() / "ringkit-cli-test";
    fs::create_directories(g_tmp);
    const fs::path out = g_tmp / "out.json";

    // generator documents
    const fs::path y3 = g_tmp / "y3.json";
    check(run("gen --group Tn --n 3 --name y", y3) == 0, "gen emits a map document");
    check(slurp(y3).at("kind") == "circle", "y3 is a circle map");

    const fs::path f1 = g_tmp / "f1.json", f2 = g_tmp / "f2.json", f4 = g_tmp / "f4.json";
    run("gen --n 3 --name f --i 1", f1);
    run("gen --n 3 --name f --i 2", f2);
    run("gen --n 3 --name f --i 4", f4);

    check(run("gen --n 3 --name f --i 9", out) == 2, "out-of-range index exits 2");
    check(run("gen --n 3 --name f --i 4 --format treepair", out) == 0, "treepair format");
    check(slurp(out).at("shift") == 2, "f_{3,4} pair carries shift 2");

    // eval / compose / support
    check(run("eval --map \"" + y3.string() + "\" --point 0/1", out) == 0, "eval runs");
    check(slurp(out) == json("2/3"), "y3 maps 0 to 2/3");
    check(run("eval --map \"" + y3.string() + "\" --point 7/", out) == 2, "malformed rational exits 2");
    check(run("eval --map \"" + (g_tmp / "missing.json").string() + "\" --point 0", out) == 2,
          "missing file exits 2");

    const std::string y3q = '"' + y3.string() + '"';
    check(run("compose --maps " + y3q + " " + y3q + " " + y3q, out) == 0, "compose runs");
    check(slurp(out).at("nodes") ==
              json::parse(R"([{"t":"0","v":"0"},{"t":"1","v":"1"}])"),
          "y3 cubed is the identity");

    check(run("support --map \"" + f4.string() + "\"", out) == 0, "support runs");
    check(slurp(out).at("arcs") == json::parse(R"([{"lower":"8/9","upper":"1/3"}])"),
          "support of f_{3,4} wraps from 8/9 to 1/3");

    // certify-f
    check(run("certify-f --f \"" + f1.string() + "\" --g \"" + f2.string() + "\"", out) == 0,
          "certify-f certifies (f1, f2)");
    check(slurp(out).at("data").at("value") == "19/27", "criterion value is exact");
    check(run("certify-f --f \"" + f2.string() + "\" --g \"" + f1.string() + "\"", out) == 2,
          "reversed pair violates the overlap pattern");

    // family-level commands
    const fs::path chain = g_tmp / "chain.json";
    run("gen --group Fn --n 3", chain);
    check(run("p1 --family \"" + chain.string() + "\" --word \"f1 f1 f1 f2\"", out) == 0, "p1 runs");
    check(slurp(out) == json("3"), "p1 counts signed exponents");
    check(run("p1 --family \"" + chain.string() + "\" --word \"f9\"", out) == 2,
          "word referencing a missing generator exits 2");

    check(run("stabilize --family \"" + chain.string() + "\" --max-exponent 0", out) == 1,
          "empty stabilize search exits 1");
    check(run("stabilize --family \"" + chain.string() + "\" --max-exponent 4", out) == 0,
          "stabilize finds N");
    check(slurp(out).at("N") == 1, "stabilize finds N = 1");

    check(run("shrink --family \"" + chain.string() +
                  "\" --interval 1/9,2/9 --target 5/9,7/9",
              out) == 0,
          "shrink emits a certificate");
    const json shrink_cert = slurp(out);
    check(shrink_cert.at("data").at("included") == true, "shrink image is inside the target");
    check(run("shrink --family \"" + chain.string() +
                  "\" --interval 1/9,2/9 --target 5/9,7/9 --budget 2",
              out) == 1,
          "budget exhaustion exits 1");
    check(slurp(out).at("error").at("kind") == "budget", "budget error is machine readable");
    check(run("shrink --family \"" + chain.string() + "\" --interval 1/9,2/9 --target 41/81,43/81",
              out) == 2,
          "target without a boundary point exits 2");

    // replay with explicit family cross-check
    const fs::path cert = g_tmp / "cert.json";
    write(cert, shrink_cert);
    check(run("replay --cert \"" + cert.string() + "\" --family \"" + chain.string() + "\"", out) == 0,
          "replay accepts the emitted certificate with its family");
    const fs::path ring5 = g_tmp / "ring5.json";
    run("gen --group Tn --n 5", ring5);
    check(run("replay --cert \"" + cert.string() + "\" --family \"" + ring5.string() + "\"", out) == 1,
          "replay rejects a mismatched family");
    json mutated = shrink_cert;
    mutated["data"]["final"][0] = "1/2";
    write(cert, mutated);
    check(run("replay --cert \"" + cert.string() + "\"", out) == 1,
          "replay rejects a mutated final value");

    std::cout << (g_failures == 0 ? "CLI SURFACE OK" : "CLI SURFACE FAILURES") << "\n";
    return g_failures == 0 ? 0 : 1;
}
