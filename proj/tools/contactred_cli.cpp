// Command-line front end: scenario runs, registry listing, and the full
// acceptance suite. Exit codes: 0 all requested checks passed, 1 a check
// failed, 2 usage or load error.

#include "contactred/checks.hpp"
#include "contactred/error.hpp"
#include "contactred/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int command_list() {
    for (const auto& s : contactred::scenario_registry()) {
        std::cout << s.id << (s.numeric ? "" : "  [bookkeeping]") << "\n    " << s.summary
                  << "\n    algebra " << s.algebra->name() << ", default mu (";
        for (int i = 0; i < s.default_mu.size(); ++i)
            std::cout << (i ? ", " : "") << s.default_mu[i];
        std::cout << ")\n";
    }
    return 0;
}

int command_run(contactred::RunConfig config) {
    const contactred::ReductionReport report = contactred::run_scenario(config);

    std::cout << "scenario " << report.scenario_id << ", mu = (";
    for (int i = 0; i < report.mu.size(); ++i)
        std::cout << (i ? ", " : "") << report.mu[i];
    std::cout << "), seed " << report.seed << "\n";
    if (report.sample_count > 0)
        std::cout << "  ray samples: " << report.sample_count << "\n";
    if (report.hypothesis)
        std::cout << "  hypotheses: dim g_mu = " << report.hypothesis->dim_stabilizer
                  << ", dim k_mu = " << report.hypothesis->dim_kernel_algebra
                  << ", sum condition "
                  << (report.hypothesis->sum_condition_holds ? "holds" : "fails") << "\n";
    if (report.transversality_rate)
        std::cout << "  transversality rate " << *report.transversality_rate
                  << ", locally-free rate " << *report.locally_free_rate << "\n";
    if (report.reduced_kernel_ok)
        std::cout << "  reduced kernel: " << (*report.reduced_kernel_ok ? "matches" : "MISMATCH")
                  << " (" << *report.reduced_kernel_pass_count << " samples)\n";
    if (report.quotient)
        std::cout << "  quotient dim " << report.quotient->quotient_dim << " (level ray "
                  << report.quotient->level_ray_dim << ", orbit " << report.quotient->orbit_dim
                  << ", " << (report.quotient->quotient_dim % 2 ? "odd" : "even") << ")\n";
    if (report.strata)
        std::cout << "  strata: " << report.strata->size() << "\n";
    if (report.albert)
        std::cout << "  albert: level dim " << report.albert->level_dim << ", orbit dim "
                  << report.albert->albert_orbit_dim << ", quotient dim "
                  << report.albert->albert_quotient_dim << "\n";
    if (report.gs)
        std::cout << "  total space: fiber " << report.gs->fiber_dim << " + orbit "
                  << report.gs->orbit_dim << " = " << report.gs->gs_total_dim << "\n";
    if (report.reeb_flow)
        std::cout << "  Reeb flow: max level deviation "
                  << report.reeb_flow->max_level_deviation << " over " << report.reeb_flow_starts
                  << " starts\n";
    for (const auto& f : report.failures)
        std::cout << "  FAIL: " << f << "\n";

    std::string out_path = config.output_path;
    if (out_path.empty())
        out_path = report.scenario_id + "-report.json";
    std::ofstream out(out_path);
    if (!out)
        throw contactred::Error("cannot write report file: " + out_path);
    out << contactred::report_to_json(report).dump() << "\n";
    std::cout << (report.passed() ? "PASS" : "FAIL") << ", report written to " << out_path
              << "\n";
    return report.passed() ? 0 : 1;
}

int command_check_all(std::uint64_t seed, const std::string& out_path) {
    const auto results = contactred::check_all(seed, &std::cout);
    bool all_passed = true;
    for (const auto& r : results)
        all_passed = all_passed && r.passed;

    if (!out_path.empty()) {
        contactred::JsonValue arr = contactred::JsonValue::array();
        for (const auto& r : results) {
            contactred::JsonValue obj = contactred::JsonValue::object();
            obj.set("index", contactred::JsonValue::integer(r.index));
            obj.set("name", contactred::JsonValue::string(r.name));
            obj.set("passed", contactred::JsonValue::boolean(r.passed));
            obj.set("detail", contactred::JsonValue::string(r.detail));
            arr.push(std::move(obj));
        }
        contactred::JsonValue root = contactred::JsonValue::object();
        root.set("criteria", std::move(arr));
        root.set("all_passed", contactred::JsonValue::boolean(all_passed));
        std::ofstream out(out_path);
        if (!out)
            throw contactred::Error("cannot write summary file: " + out_path);
        out << root.dump() << "\n";
    }
    std::cout << (all_passed ? "all criteria passed" : "CRITERIA FAILED") << "\n";
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contact reduction verification toolkit"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list registered scenarios");

    auto* run_cmd = app.add_subcommand("run", "run checks on one scenario");
    std::string scenario_id;
    std::string config_path;
    std::vector<std::string> mu_text;
    std::vector<std::string> checks;
    int n_samples = 200;
    std::uint64_t seed = 0;
    std::string out_path;
    int threads = 1;
    run_cmd->add_option("-s,--scenario", scenario_id, "registry scenario id");
    run_cmd->add_option("-c,--config", config_path, "config file (overridden by flags)");
    run_cmd->add_option("--mu", mu_text, "mu coordinates, exact rationals like 2 or 1/3")
        ->delimiter(',');
    run_cmd->add_option("-n,--samples", n_samples, "requested sample count");
    run_cmd->add_option("--seed", seed, "base random seed");
    run_cmd->add_option("-o,--out", out_path, "report path (default <scenario>-report.json)");
    run_cmd->add_option("--checks", checks, "subset of checks to run")->delimiter(',');
    run_cmd->add_option("--threads", threads, "worker threads (never changes results)");

    auto* check_cmd = app.add_subcommand("check-all", "run the full acceptance suite");
    std::uint64_t check_seed = 0;
    std::string check_out;
    int check_threads = 1;
    check_cmd->add_option("--seed", check_seed, "base random seed");
    check_cmd->add_option("-o,--out", check_out, "write a JSON summary of the criteria");
    check_cmd->add_option("--threads", check_threads, "worker threads (never changes results)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list_cmd->parsed())
            return command_list();
        if (run_cmd->parsed()) {
            contactred::set_parallelism(threads);
            contactred::RunConfig config;
            if (!config_path.empty())
                config = contactred::load_run_config_file(config_path);
            if (!scenario_id.empty())
                config.scenario_id = scenario_id;
            if (!mu_text.empty()) {
                config.mu.clear();
                for (const auto& m : mu_text)
                    config.mu.push_back(contactred::Rational::parse(m));
            }
            if (run_cmd->count("--samples"))
                config.n_samples = n_samples;
            if (run_cmd->count("--seed"))
                config.seed = seed;
            if (!out_path.empty())
                config.output_path = out_path;
            if (!checks.empty())
                config.checks = checks;
            return command_run(std::move(config));
        }
        contactred::set_parallelism(check_threads);
        return command_check_all(check_seed, check_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
