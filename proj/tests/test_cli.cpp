#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tbi/cli.hpp"
#include "tbi/json_io.hpp"
#include "tbi/lattice.hpp"

using namespace tbi;

namespace {

struct CliResult {
    int rc = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.rc = cli_run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("cli: documented invocations") {
    SUBCASE("l-group table") {
        const auto r = run_cli({"invariants", "--spec", "p=3;type=(1,0,0)", "--what", "l-groups",
                                "--decoration", "-inf", "--degrees", "0..3"});
        CHECK(r.rc == 0);
        CHECK(contains(r.out, "| 0 | Z^4 + Z/2 |"));
        CHECK(contains(r.out, "| 1 | 0 |"));
        CHECK(contains(r.out, "| 2 | Z^4 + Z/2 |"));
        CHECK(contains(r.out, "| 3 | 0 |"));
    }
    SUBCASE("tate table of a free module") {
        const auto r = run_cli(
            {"cohomology", "--spec", "p=3;sum=regular", "--what", "tate", "--degrees", "0..1"});
        CHECK(r.rc == 0);
        CHECK(contains(r.out, "| 0 | 0 |"));
        CHECK(contains(r.out, "| 1 | 0 |"));
    }
    SUBCASE("subgroup structure") {
        const auto r = run_cli({"invariants", "--spec", "p=5;type=(2,1,0)", "--what", "subgroups"});
        CHECK(r.rc == 0);
        CHECK(contains(r.out, "| 25 | 1 | 1 |"));
    }
    SUBCASE("help exits 0") {
        const auto r = run_cli({"--help"});
        CHECK(r.rc == 0);
        CHECK(contains(r.out, "Subcommands"));
    }
}

TEST_CASE("cli: byte-identical reruns for a fixed config") {
    const std::vector<std::vector<std::string>> configs = {
        {"invariants", "--spec", "p=3;type=(1,1,0)", "--what", "l-groups", "--decoration",
         "s,h,-inf", "--degrees", "-2..3"},
        {"spectral", "--spec", "p=5;type=(1,0,1)", "--variant", "l_homology_M", "--degree", "2",
         "--ell", "3", "--json"},
        {"verify", "--suite", "nu-identity,detect-roundtrip", "--seed", "77"},
        {"cohomology", "--spec", "p=3;sum=cyclotomic+trivial:2", "--what", "sphere", "--ell", "5",
         "--json"},
    };
    for (const auto& config : configs) {
        const auto first = run_cli(config);
        const auto second = run_cli(config);
        CHECK(first.rc == 0);
        CHECK(first.rc == second.rc);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
    }
}

TEST_CASE("cli: lattice JSON export and re-import") {
    const std::string path = temp_path("tbi_cli_lattice_roundtrip.json");
    const auto exported =
        run_cli({"lattice", "--spec", "p=3;type=(1,1,1)", "--json", "--out", path});
    REQUIRE(exported.rc == 0);
    CHECK(exported.out.empty());

    const auto reimported = run_cli({"lattice", "--file", path, "--json"});
    REQUIRE(reimported.rc == 0);

    std::ifstream in(path);
    std::stringstream file_content;
    file_content << in.rdbuf();
    CHECK(reimported.out == file_content.str());

    const ZpLattice original = canonical_lattice(3, {1, 1, 1});
    const ZpLattice parsed = lattice_from_json(ordered_json::parse(reimported.out));
    CHECK(parsed.action == original.action);
    CHECK(parsed.p == original.p);
    std::remove(path.c_str());
}

TEST_CASE("cli: exit codes follow the contract") {
    const std::vector<std::vector<std::string>> bad = {
        {"invariants", "--spec", "p=4;type=(1,0,0)"},
        {"invariants", "--spec", "p=3;type=(1,0)"},
        {"invariants", "--spec", "p=3;type=(1,0,0)", "--what", "structure-set", "--ell", "4"},
        {"invariants", "--spec", "p=3;type=(1,0,0)", "--what", "no-such-invariant"},
        {"invariants", "--what", "l-groups"},
        {"cohomology", "--spec", "p=3;sum=regular", "--degrees", "0..99"},
        {"cohomology", "--spec", "p=3;sum=regular", "--what", "homology", "--degrees", "-2..1"},
        {"verify", "--suite", "no-such-suite"},
        {"verify", "--p", "3,9"},
        {"spectral", "--spec", "p=3;type=(1,0,0)", "--variant", "mystery"},
        {"lattice", "--file", "/nonexistent/lattice.json"},
        {},
    };
    for (const auto& args : bad) {
        const auto r = run_cli(args);
        CHECK_MESSAGE(r.rc == 2, "expected exit 2 for: ", args.empty() ? "<none>" : args[0]);
    }

    const auto both = run_cli({"invariants", "--spec", "p=3;type=(1,0,0)", "--file", "x.json"});
    CHECK(both.rc == 2);

    const auto pass = run_cli({"verify", "--suite", "lemma45-freeness"});
    CHECK(pass.rc == 0);
    CHECK(contains(pass.out, "all suites passed"));
}

TEST_CASE("cli: malformed lattice files are rejected with diagnostics") {
    const std::string path = temp_path("tbi_cli_bad_lattice.json");
    const std::vector<std::string> payloads = {
        "not json at all",
        R"({"p": 3, "n": 2})",
        R"({"p": 3, "n": 2, "action": [[1, 0], [0]]})",
        R"({"p": 3, "n": 1, "action": [[2]]})",
        R"({"p": 3, "n": 2, "action": [[1, 1], [0, 1]]})",
    };
    for (const auto& payload : payloads) {
        std::ofstream(path) << payload;
        const auto r = run_cli({"lattice", "--file", path});
        CHECK_MESSAGE(r.rc == 2, "payload accepted: ", payload);
        CHECK(!r.err.empty());
    }
    std::remove(path.c_str());
}

TEST_CASE("cli: sum specs build the advertised direct sums") {
    const auto summed = run_cli({"lattice", "--spec", "p=3;sum=cyclotomic+regular+trivial:2"});
    CHECK(summed.rc == 0);
    CHECK(contains(summed.out, "| type | (1,1,2) |"));
    CHECK(contains(summed.out, "| rank | 7 |"));

    const auto counted = run_cli({"lattice", "--spec", "p=5;sum=cyclotomic:2"});
    CHECK(counted.rc == 0);
    CHECK(contains(counted.out, "| type | (2,0,0) |"));
}

TEST_CASE("cli: spectral page rendering and checker") {
    const auto page = run_cli({"spectral", "--spec", "p=3;type=(1,0,0)", "--variant",
                               "k_cohomology", "--degree", "0", "--columns", "4"});
    CHECK(page.rc == 0);
    CHECK(contains(page.out, "| 0 | 0 | Z^2 |"));
    CHECK(contains(page.out, "| 1 | -1 | Z/3 |"));
    CHECK(contains(page.out, "| 2 | -2 | Z/3 + Z/3 |"));

    const auto as_json = run_cli({"spectral", "--spec", "p=3;type=(1,0,0)", "--variant",
                                  "k_cohomology", "--degree", "0", "--columns", "4", "--json"});
    REQUIRE(as_json.rc == 0);
    const auto doc = ordered_json::parse(as_json.out);
    CHECK(doc["variant"] == "k_cohomology");
    CHECK(doc["entries"].contains("(0,0)"));
    CHECK(doc["entries"]["(0,0)"]["free_rank"] == 2);
    CHECK(doc["entries"]["(1,-1)"]["torsion"][0] == 3);

    const auto checked = run_cli(
        {"spectral", "--spec", "p=5;type=(2,0,0)", "--degree", "1", "--check", "6"});
    CHECK(checked.rc == 0);
    CHECK(contains(checked.out, "pass"));
}

TEST_CASE("cli: JSON envelopes carry the published schemas") {
    const auto inv = run_cli({"invariants", "--spec", "p=3;type=(1,0,0)", "--what", "l-groups",
                              "--decoration", "-inf", "--degrees", "0..0", "--json"});
    REQUIRE(inv.rc == 0);
    const auto doc = ordered_json::parse(inv.out);
    CHECK(doc["p"] == 3);
    CHECK(doc["type"] == ordered_json::array({1, 0, 0}));
    const auto& group = doc["values"][0]["groups"]["-inf"];
    CHECK(group["free_rank"] == 4);
    REQUIRE(group["leaves"].size() == 1);
    CHECK(group["leaves"][0]["kind"] == "Z2");
    CHECK(group["leaves"][0]["mult"] == 1);

    const auto kth = run_cli({"invariants", "--spec", "p=5;type=(0,0,1)", "--what", "k-theory",
                              "--degrees", "0..1", "--json"});
    REQUIRE(kth.rc == 0);
    const auto kdoc = ordered_json::parse(kth.out);
    for (const auto& value : kdoc["values"]) {
        CHECK(value["group"]["free_rank"] == 1);
        CHECK(value["group"]["leaves"][0]["kind"] == "Zp_adic");
        CHECK(value["group"]["leaves"][0]["mult"] == 4);
        CHECK(value["group"]["leaves"][0]["params"]["p"] == 5);
    }
}

TEST_CASE("cli: verbose verify lists individual cases") {
    const auto r = run_cli({"verify", "--suite", "nu-identity", "--verbose"});
    CHECK(r.rc == 0);
    CHECK(contains(r.out, "b=2"));
    CHECK(contains(r.out, "b=12"));
}
