// Acceptance gate: one test case per criterion, each printing the same
// verdict line the command line tool emits, so a failure here reproduces
// directly via `contactred check-all`.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactred/checks.hpp"
#include "contactred/error.hpp"

#include <cstdio>

using namespace contactred;

namespace {

void run_and_report(int index) {
    const CriterionResult r = run_criterion(index);
    std::printf("criterion %d: %s - %s (%s)\n", r.index, r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(r.passed, r.name, ": ", r.detail);
}

} // namespace

TEST_CASE("acceptance criterion 1") { run_and_report(1); }
TEST_CASE("acceptance criterion 2") { run_and_report(2); }
TEST_CASE("acceptance criterion 3") { run_and_report(3); }
TEST_CASE("acceptance criterion 4") { run_and_report(4); }
TEST_CASE("acceptance criterion 5") { run_and_report(5); }
TEST_CASE("acceptance criterion 6") { run_and_report(6); }
TEST_CASE("acceptance criterion 7") { run_and_report(7); }
TEST_CASE("acceptance criterion 8") { run_and_report(8); }
TEST_CASE("acceptance criterion 9") { run_and_report(9); }
TEST_CASE("acceptance criterion 10") { run_and_report(10); }
TEST_CASE("acceptance criterion 11") { run_and_report(11); }

TEST_CASE("criterion indices outside the suite are rejected") {
    CHECK_THROWS_AS(run_criterion(0), Error);
    CHECK_THROWS_AS(run_criterion(12), Error);
}
