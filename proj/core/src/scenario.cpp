#include "contactred/scenario.hpp"

#include "contactred/action.hpp"
#include "contactred/error.hpp"
#include "contactred/forms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace contactred {

namespace {

Eigen::MatrixXi weight_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    Eigen::MatrixXi m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

Scenario numeric_scenario(std::string id, std::string summary, const Eigen::VectorXd& coeffs,
                          double level, const Eigen::MatrixXi& weights, double radius,
                          DualElement default_mu) {
    Scenario s;
    s.id = std::move(id);
    s.summary = std::move(summary);
    s.numeric = true;
    s.algebra = find_algebra("abelian" + std::to_string(weights.rows()));
    EmbeddedManifold m = EmbeddedManifold::ellipsoid(coeffs, level);
    Poly1Form alpha = Poly1Form::standard_contact(m.ambient_dim);
    s.setup = make_contact_setup(std::move(m), std::move(alpha),
                                 torus_action(s.algebra, weights), radius, weights);
    s.default_mu = std::move(default_mu);
    return s;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

std::vector<Scenario> build_registry() {
    std::vector<Scenario> registry;

    {
        Scenario s = numeric_scenario(
            "E1", "ellipsoid |z1|^2 + 2|z2|^2 + 2|z3|^2 = 1 with circle weights (1,-1,-1)",
            vec({1, 2, 2}), 1.0, weight_rows({{1, -1, -1}}), 1.2, vec({1}));
        registry.push_back(std::move(s));
    }
    {
        // The defining equation |z1|^2/2 + |z2|^2 + |z3|^2/3 = 1 is stored
        // cleared of denominators (same locus, exact double coefficients).
        Scenario s = numeric_scenario(
            "E2", "ellipsoid |z1|^2/2 + |z2|^2 + |z3|^2/3 = 1 with circle weights (1,-1,-1)",
            vec({3, 6, 2}), 6.0, weight_rows({{1, -1, -1}}), 2.0, vec({1}));
        // Point with squared block moduli (14/9, 1/18, 1/2): it lies on
        // both the ellipsoid and the unit moment level, and carries the
        // full 3-torus orbit. Kept in the level sample set as a witness.
        s.level_seed_points.push_back(vec({std::sqrt(14.0) / 3.0, 0.0,
                                           1.0 / std::sqrt(18.0), 0.0,
                                           1.0 / std::sqrt(2.0), 0.0}));
        registry.push_back(std::move(s));
    }
    {
        Scenario s = numeric_scenario("S3", "round 3-sphere with diagonal circle weights (1,1)",
                                      vec({1, 1}), 1.0, weight_rows({{1, 1}}), 1.2, vec({1}));
        registry.push_back(std::move(s));
    }
    {
        Scenario s = numeric_scenario(
            "S5-T2", "round 5-sphere with 2-torus weight rows (1,1,1) and (0,1,-1)",
            vec({1, 1, 1}), 1.0, weight_rows({{1, 1, 1}, {0, 1, -1}}), 1.2, vec({2, 1}));
        // The first weight row sums the squared moduli, which is pinned to
        // 1 on the sphere, so mu = (2,1) only meets the moment image after
        // ray rescaling. The strict-level check is opt-in here.
        s.default_checks = {"hypotheses", "transversality", "reduced_kernel",
                            "strata",     "gs",             "reeb_flow"};
        registry.push_back(std::move(s));
    }
    {
        Scenario s = numeric_scenario(
            "S5-T3", "round 5-sphere with the coordinatewise 3-torus action",
            vec({1, 1, 1}), 1.0, weight_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1.2,
            vec({1, 1, 1}));
        // Same situation: the rows sum to the sphere constraint, so the
        // stored mu is reached only up to ray scale.
        s.default_checks = {"hypotheses", "transversality", "reduced_kernel",
                            "strata",     "gs",             "reeb_flow"};
        registry.push_back(std::move(s));
    }
    {
        Scenario s = numeric_scenario(
            "E2-T2", "the E2 ellipsoid with 2-torus weight rows (1,-1,-1) and (0,1,-1)",
            vec({3, 6, 2}), 6.0, weight_rows({{1, -1, -1}, {0, 1, -1}}), 2.0, vec({1, 0}));
        registry.push_back(std::move(s));
    }
    {
        // Cotangent-bundle phase space of the 2x2 unimodular group, times
        // a line: dimension 7, locally free and proper action. The value
        // of this scenario is pure dimension bookkeeping from algebra
        // data, so no ambient construction is attempted.
        Scenario s;
        s.id = "SL2-bookkeeping";
        s.summary = "sl2 coadjoint bookkeeping at the nilpotent functional (0,0,1)";
        s.numeric = false;
        s.algebra = find_algebra("sl2");
        s.default_mu = vec({0, 0, 1});
        s.declared["dim_m"] = 7;
        s.declared["locally_free"] = 1;
        s.declared["proper"] = 1;
        registry.push_back(std::move(s));
    }
    return registry;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool known_check(const std::string& name) {
    return std::find(all_check_names.begin(), all_check_names.end(), name) !=
           all_check_names.end();
}

} // namespace

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> registry = build_registry();
    return registry;
}

const Scenario& load_scenario(const std::string& id) {
    for (const auto& s : scenario_registry())
        if (s.id == id)
            return s;
    throw CatalogError("unknown scenario: " + id);
}

RunConfig parse_run_config(std::istream& input) {
    RunConfig config;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto fail = [&](const std::string& why) {
            throw Error("config line " + std::to_string(line_no) + ": " + why);
        };
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "mu" && section != "checks")
                fail("unknown section [" + section + "]");
            continue;
        }
        if (section == "mu") {
            try {
                config.mu.push_back(Rational::parse(line));
            } catch (const Error& e) {
                fail(e.what());
            }
            continue;
        }
        if (section == "checks") {
            if (!known_check(line))
                fail("unknown check: " + line);
            config.checks.push_back(line);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "scenario") {
                config.scenario_id = value;
            } else if (key == "n_samples" || key == "samples") {
                config.n_samples = std::stoi(value);
            } else if (key == "seed") {
                config.seed = std::stoull(value);
            } else if (key == "out") {
                config.output_path = value;
            } else {
                fail("unknown key: " + key);
            }
        } catch (const std::invalid_argument&) {
            fail("malformed number for key: " + key);
        } catch (const std::out_of_range&) {
            fail("number out of range for key: " + key);
        }
    }
    if (config.scenario_id.empty())
        throw Error("config: missing scenario id");
    if (config.n_samples < 1)
        throw Error("config: n_samples must be at least 1");
    return config;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config file: " + path);
    return parse_run_config(in);
}

namespace {

bool wants(const std::vector<std::string>& checks, const std::string& name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
}

constexpr double flow_deviation_tol = 1e-6;

void run_numeric_checks(const Scenario& scenario, const RunConfig& config,
                        const DualElement& mu, ReductionReport& report) {
    const ContactSetup& setup = *scenario.setup;
    const auto& checks = report.checks_run;

    const bool needs_samples = wants(checks, "transversality") ||
                               wants(checks, "reduced_kernel") || wants(checks, "strata");
    SampleSet samples;
    if (needs_samples) {
        samples = sample_level_ray(setup, mu, config.n_samples, config.seed);
        report.sample_count = samples.size();
        if (samples.size() == 0) {
            report.failures.push_back("no ray samples: the level ray looks unreachable");
            return;
        }
        try {
            report.quotient = quotient_dimension(setup, mu, samples);
            if (!report.quotient->consistent)
                report.failures.push_back("sampled quotient dimension disagrees with bookkeeping");
        } catch (const Error& e) {
            report.failures.push_back(std::string("quotient dimension: ") + e.what());
        }
    }

    if (wants(checks, "transversality")) {
        int trans = 0;
        int free_count = 0;
        for (const auto& x : samples.points) {
            if (transversality_check(setup, mu, x))
                ++trans;
            if (locally_free_check(setup, mu, x))
                ++free_count;
        }
        report.transversality_rate = static_cast<double>(trans) / samples.size();
        report.locally_free_rate = static_cast<double>(free_count) / samples.size();
        if (trans != samples.size())
            report.failures.push_back("transversality fails at " +
                                      std::to_string(samples.size() - trans) + " samples");
        if (trans != free_count)
            report.failures.push_back("transversality and locally-free verdicts disagree");
    }

    if (wants(checks, "reduced_kernel")) {
        int ok_count = 0;
        for (const auto& x : samples.points)
            if (reduced_kernel_check(setup, mu, x).ok)
                ++ok_count;
        report.reduced_kernel_pass_count = ok_count;
        report.reduced_kernel_ok = (ok_count == samples.size());
        if (!*report.reduced_kernel_ok)
            report.failures.push_back("reduced kernel mismatch at " +
                                      std::to_string(samples.size() - ok_count) + " samples");
        if (report.quotient && report.quotient->quotient_dim % 2 == 0)
            report.failures.push_back("reduced space has even dimension despite a clean kernel");
    }

    if (wants(checks, "strata")) {
        try {
            report.strata = orbit_type_partition(setup, mu, samples);
            for (const auto& stratum : *report.strata)
                if (!stratum.contact_on_stratum)
                    report.failures.push_back("stratum " + stratum.isotropy_label +
                                              " lost the contact condition");
            report.realizable_patterns = enumerate_realizable_patterns(setup, mu);
        } catch (const Error& e) {
            report.failures.push_back(std::string("strata: ") + e.what());
        }
    }

    if (wants(checks, "albert")) {
        try {
            report.albert = albert_reduce(setup, mu, config.n_samples, config.seed,
                                          scenario.level_seed_points);
            if (report.albert->albert_quotient_dim !=
                report.albert->level_dim - report.albert->albert_orbit_dim)
                report.failures.push_back("level/orbit/quotient dimensions are inconsistent");
        } catch (const Error& e) {
            report.failures.push_back(std::string("albert: ") + e.what());
        }
    }

    if (wants(checks, "gs")) {
        const int orbit_dim =
            setup.action.algebra->dim() -
            static_cast<int>(coadjoint_stabilizer(*setup.action.algebra, mu).cols());
        report.gs = gs_dimension_report(setup.manifold.expected_dim, *setup.action.algebra, mu,
                                        orbit_dim);
    }

    if (wants(checks, "reeb_flow")) {
        const int starts = std::min(config.n_samples, 20);
        SampleSet flow_starts = sample_level_ray(setup, mu, starts, config.seed);
        FlowResult worst;
        worst.max_level_deviation = 0.0;
        for (const auto& x : flow_starts.points) {
            const FlowResult r =
                reeb_flow_level_invariance(setup.manifold, setup.alpha, setup.phi, x, 1.0);
            if (r.max_level_deviation >= worst.max_level_deviation)
                worst = r;
        }
        report.reeb_flow = worst;
        report.reeb_flow_starts = flow_starts.size();
        if (worst.max_level_deviation >= flow_deviation_tol)
            report.failures.push_back("Reeb flow drifts off the moment level");
    }
}

void run_bookkeeping_checks(const Scenario& scenario, const DualElement& mu,
                            ReductionReport& report) {
    for (const auto& name : report.checks_run) {
        if (name != "hypotheses" && name != "gs")
            report.failures.push_back("check '" + name + "' needs a numeric scenario");
    }

    const auto it = scenario.declared.find("dim_m");
    if (it == scenario.declared.end())
        throw CatalogError("bookkeeping scenario without a declared ambient dimension");
    const int dim_m = static_cast<int>(it->second);
    const Subspace k = kernel_algebra(*scenario.algebra, mu);

    // Declared local freeness plays the role of the sampled transversality
    // certificate; the quotient dimension follows from pure bookkeeping.
    QuotientDimResult q;
    q.level_ray_dim = dim_m - (scenario.algebra->dim() - 1);
    q.orbit_dim = static_cast<int>(k.cols());
    q.quotient_dim = q.level_ray_dim - q.orbit_dim;
    q.formula_dim = quotient_dimension_formula(dim_m, scenario.algebra->dim(),
                                               static_cast<int>(k.cols()));
    q.consistent = (q.quotient_dim == *q.formula_dim);
    report.quotient = q;

    if (wants(report.checks_run, "gs")) {
        const int orbit_dim = scenario.algebra->dim() -
                              static_cast<int>(coadjoint_stabilizer(*scenario.algebra, mu).cols());
        report.gs = gs_dimension_report(dim_m, *scenario.algebra, mu, orbit_dim);
    }
}

} // namespace

ReductionReport run_scenario(const RunConfig& config) {
    const Scenario& scenario = load_scenario(config.scenario_id);
    if (config.n_samples < 1)
        throw Error("n_samples must be at least 1");

    DualElement mu;
    if (config.mu.empty()) {
        mu = scenario.default_mu;
    } else {
        mu.resize(static_cast<int>(config.mu.size()));
        for (std::size_t i = 0; i < config.mu.size(); ++i)
            mu[static_cast<int>(i)] = config.mu[i].to_double();
    }
    if (mu.size() != scenario.algebra->dim())
        throw Error("mu has " + std::to_string(mu.size()) + " coordinates, the algebra needs " +
                    std::to_string(scenario.algebra->dim()));

    ReductionReport report;
    report.scenario_id = scenario.id;
    report.mu = mu;
    report.seed = config.seed;
    report.n_samples = config.n_samples;
    report.checks_run = config.checks;
    if (report.checks_run.empty()) {
        if (!scenario.default_checks.empty())
            report.checks_run = scenario.default_checks;
        else
            report.checks_run = scenario.numeric
                                    ? all_check_names
                                    : std::vector<std::string>{"hypotheses", "gs"};
    }
    for (const auto& name : report.checks_run)
        if (!known_check(name))
            throw Error("unknown check: " + name);

    if (wants(report.checks_run, "hypotheses"))
        report.hypothesis = check_reduction_hypotheses(*scenario.algebra, mu);

    if (scenario.numeric)
        run_numeric_checks(scenario, config, mu, report);
    else
        run_bookkeeping_checks(scenario, mu, report);
    return report;
}

namespace {

JsonValue vector_json(const Eigen::VectorXd& v) {
    JsonValue arr = JsonValue::array();
    for (int i = 0; i < v.size(); ++i)
        arr.push(JsonValue::number(v[i]));
    return arr;
}

JsonValue int_list_json(const std::vector<int>& v) {
    JsonValue arr = JsonValue::array();
    for (int x : v)
        arr.push(JsonValue::integer(x));
    return arr;
}

} // namespace

JsonValue report_to_json(const ReductionReport& report) {
    JsonValue root = JsonValue::object();
    root.set("scenario", JsonValue::string(report.scenario_id));
    root.set("mu", vector_json(report.mu));
    root.set("seed", JsonValue::integer(static_cast<std::int64_t>(report.seed)));
    root.set("n_samples", JsonValue::integer(report.n_samples));
    root.set("sample_count", JsonValue::integer(report.sample_count));
    JsonValue checks = JsonValue::array();
    for (const auto& name : report.checks_run)
        checks.push(JsonValue::string(name));
    root.set("checks", std::move(checks));

    if (report.hypothesis) {
        const auto& h = *report.hypothesis;
        JsonValue obj = JsonValue::object();
        obj.set("dim_stabilizer", JsonValue::integer(h.dim_stabilizer));
        obj.set("dim_kernel_algebra", JsonValue::integer(h.dim_kernel_algebra));
        obj.set("sum_condition_holds", JsonValue::boolean(h.sum_condition_holds));
        obj.set("kernel_equals_stabilizer", JsonValue::boolean(h.kernel_equals_stabilizer));
        obj.set("mu_integral",
                h.mu_integral ? JsonValue::boolean(*h.mu_integral) : JsonValue());
        root.set("hypothesis", std::move(obj));
    }
    if (report.transversality_rate)
        root.set("transversality_rate", JsonValue::number(*report.transversality_rate));
    if (report.locally_free_rate)
        root.set("locally_free_rate", JsonValue::number(*report.locally_free_rate));
    if (report.reduced_kernel_ok) {
        JsonValue obj = JsonValue::object();
        obj.set("ok", JsonValue::boolean(*report.reduced_kernel_ok));
        obj.set("pass_count", JsonValue::integer(*report.reduced_kernel_pass_count));
        root.set("reduced_kernel", std::move(obj));
    }
    if (report.quotient) {
        const auto& q = *report.quotient;
        JsonValue obj = JsonValue::object();
        obj.set("quotient_dim", JsonValue::integer(q.quotient_dim));
        obj.set("level_ray_dim", JsonValue::integer(q.level_ray_dim));
        obj.set("orbit_dim", JsonValue::integer(q.orbit_dim));
        obj.set("formula_dim", q.formula_dim ? JsonValue::integer(*q.formula_dim) : JsonValue());
        obj.set("consistent", JsonValue::boolean(q.consistent));
        obj.set("odd", JsonValue::boolean(q.quotient_dim % 2 != 0));
        root.set("quotient", std::move(obj));
    }
    if (report.strata) {
        JsonValue arr = JsonValue::array();
        for (const auto& s : *report.strata) {
            JsonValue obj = JsonValue::object();
            obj.set("isotropy_label", JsonValue::string(s.isotropy_label));
            obj.set("sample_count", JsonValue::integer(static_cast<std::int64_t>(
                                        s.sample_indices.size())));
            obj.set("sample_indices", int_list_json(s.sample_indices));
            obj.set("stratum_dim", JsonValue::integer(s.stratum_dim));
            obj.set("orbit_dim", JsonValue::integer(s.orbit_dim));
            obj.set("quotient_dim", JsonValue::integer(s.quotient_dim));
            obj.set("contact_on_stratum", JsonValue::boolean(s.contact_on_stratum));
            arr.push(std::move(obj));
        }
        root.set("strata", std::move(arr));
    }
    if (report.realizable_patterns) {
        JsonValue arr = JsonValue::array();
        for (const auto& p : *report.realizable_patterns)
            arr.push(int_list_json(p));
        root.set("realizable_patterns", std::move(arr));
    }
    if (report.albert) {
        const auto& a = *report.albert;
        JsonValue obj = JsonValue::object();
        obj.set("level_dim", JsonValue::integer(a.level_dim));
        obj.set("albert_orbit_dim", JsonValue::integer(a.albert_orbit_dim));
        obj.set("albert_quotient_dim", JsonValue::integer(a.albert_quotient_dim));
        obj.set("max_residual", JsonValue::number(a.max_residual));
        obj.set("sample_count", JsonValue::integer(a.level_samples.size()));
        JsonValue pts = JsonValue::array();
        for (const auto& p : a.level_samples.points)
            pts.push(vector_json(p));
        obj.set("level_samples", std::move(pts));
        root.set("albert", std::move(obj));
    }
    if (report.gs) {
        const auto& g = *report.gs;
        JsonValue obj = JsonValue::object();
        obj.set("fiber_dim", JsonValue::integer(g.fiber_dim));
        obj.set("orbit_dim", JsonValue::integer(g.orbit_dim));
        obj.set("gs_total_dim", JsonValue::integer(g.gs_total_dim));
        obj.set("integral", g.integral ? JsonValue::boolean(*g.integral) : JsonValue());
        root.set("gs", std::move(obj));
    }
    if (report.reeb_flow) {
        JsonValue obj = JsonValue::object();
        obj.set("max_level_deviation", JsonValue::number(report.reeb_flow->max_level_deviation));
        obj.set("max_constraint_residual",
                JsonValue::number(report.reeb_flow->max_constraint_residual));
        obj.set("starts", JsonValue::integer(report.reeb_flow_starts));
        root.set("reeb_flow", std::move(obj));
    }
    root.set("passed", JsonValue::boolean(report.passed()));
    JsonValue fails = JsonValue::array();
    for (const auto& f : report.failures)
        fails.push(JsonValue::string(f));
    root.set("failures", std::move(fails));
    return root;
}

} // namespace contactred
