#pragma once

#include "contactred/lie_algebra.hpp"
#include "contactred/rational.hpp"
#include "contactred/reduction.hpp"
#include "contactred/report_json.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace contactred {

// A registered configuration the toolkit can verify. Numeric scenarios
// carry a full ContactSetup; bookkeeping scenarios carry only algebra
// data plus declared facts (ambient dimension, action properties), for
// groups whose phase space is not constructed here.
struct Scenario {
    std::string id;
    std::string summary;
    bool numeric = true;
    std::optional<ContactSetup> setup;
    AlgebraPtr algebra;
    DualElement default_mu;
    // Known exact points fed to strict-level sampling so distinguished
    // witnesses are present in the sample set.
    std::vector<Eigen::VectorXd> level_seed_points;
    // Checks run when a config names none. Empty means every check that
    // applies to the scenario kind. Scenarios whose default mu is not
    // attained as a strict moment value leave out the checks that sample
    // the strict level.
    std::vector<std::string> default_checks;
    // Bookkeeping facts: "dim_m", "locally_free", "proper" (1 = true).
    std::map<std::string, double> declared;
};

// Built-in scenarios, constructed once. Construction runs the exact
// load-time checks (generator tangency, form invariance).
const std::vector<Scenario>& scenario_registry();

// Throws CatalogError for an unknown id.
const Scenario& load_scenario(const std::string& id);

inline const std::vector<std::string> all_check_names = {
    "hypotheses", "transversality", "reduced_kernel", "strata",
    "albert",     "gs",             "reeb_flow"};

struct RunConfig {
    std::string scenario_id;
    std::vector<Rational> mu;  // exact; empty means the scenario default
    int n_samples = 200;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;  // empty means every applicable check
    std::string output_path;          // empty means no file
};

// Plain key-value text: `key = value` lines, [mu] section with one exact
// rational per line, [checks] section with one check name per line, '#'
// comments. Throws Error with the offending line on malformed input.
RunConfig parse_run_config(std::istream& input);
RunConfig load_run_config_file(const std::string& path);

struct ReductionReport {
    std::string scenario_id;
    DualElement mu;
    std::uint64_t seed = 0;
    int n_samples = 0;
    int sample_count = 0;
    std::vector<std::string> checks_run;

    std::optional<HypothesisReport> hypothesis;
    std::optional<double> transversality_rate;  // fraction of samples passing
    std::optional<double> locally_free_rate;
    std::optional<bool> reduced_kernel_ok;  // every sample passed
    std::optional<int> reduced_kernel_pass_count;
    std::optional<QuotientDimResult> quotient;
    std::optional<std::vector<StratumRecord>> strata;
    std::optional<std::vector<std::vector<int>>> realizable_patterns;
    std::optional<AlbertRecord> albert;
    std::optional<GsDimensionReport> gs;
    std::optional<FlowResult> reeb_flow;  // worst deviation over all starts
    int reeb_flow_starts = 0;

    // A failed assertion does not abort the run; it is recorded here and
    // the remaining checks still execute.
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

// Executes the requested checks in dependency order on one scenario.
// Sampling happens once per run and is shared by every check.
ReductionReport run_scenario(const RunConfig& config);

// Fixed field order, floats at 17 significant digits; see README for the
// schema. Identical reports are identical byte sequences.
JsonValue report_to_json(const ReductionReport& report);

} // namespace contactred
