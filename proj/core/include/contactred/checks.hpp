#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace contactred {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // one line of evidence, or the failure reason
};

// Randomized property suites for the two antisymmetric-form facts the
// reduction argument rests on: a kernel computed on an orthogonal block
// equals the full kernel, and the kernel of the form restricted to the
// symplectic perp of an isotropic subspace is that subspace. Each
// instance is checked against an independent brute-force nullspace.
struct LemmaSuiteResult {
    int instances = 0;
    int failures = 0;
    double max_residual = 0.0;
};

LemmaSuiteResult run_kernel_splitting_suite(int instances, std::uint64_t seed);
LemmaSuiteResult run_isotropic_kernel_suite(int instances, std::uint64_t seed);

inline constexpr int criterion_count = 11;

// Acceptance criteria, 1-based. Each runs standalone; expensive
// intermediates are not shared between criteria.
CriterionResult run_criterion(int index, std::uint64_t base_seed = 0);

// Whole suite in order. When log is given, prints one PASS/FAIL line per
// criterion as results arrive.
std::vector<CriterionResult> check_all(std::uint64_t base_seed = 0, std::ostream* log = nullptr);

// The fixed batch of scenario reports used to demonstrate byte-level
// determinism; serialized with the standard report schema.
std::string determinism_bundle(std::uint64_t seed);

} // namespace contactred
