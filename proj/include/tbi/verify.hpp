#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace tbi {

// One assertion of a verification suite; the name spells out the inputs so a
// failure report is reproducible by hand.
struct SuiteCase {
    std::string name;
    bool passed = true;
    std::string detail;  // expected-vs-got, filled only on failure
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCase> cases;

    bool passed() const;
    unsigned long failures() const;
    // Summary line; failing cases always listed, verbose lists every case.
    std::string to_string(bool verbose = false) const;
};

struct VerifyOptions {
    std::vector<unsigned long> primes = {3, 5};
    unsigned long max_abc = 2;    // cap on each of (a, b, c) in lattice grids
    unsigned long depth = 6;      // page depth for e2-consistency
    unsigned long trials = 1000;  // randomized linear-algebra trials
    std::uint64_t seed = 20260816;
};

// Registered suite names, in canonical execution order.
const std::vector<std::string>& suite_names();

// Run one suite by name; throws input_error for unknown names.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {});

// All suites, in suite_names() order.
std::vector<SuiteReport> run_all_suites(const VerifyOptions& opt = {});

}  // namespace tbi
