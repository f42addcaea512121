#include "contactred/checks.hpp"

#include "contactred/action.hpp"
#include "contactred/error.hpp"
#include "contactred/forms.hpp"
#include "contactred/linalg.hpp"
#include "contactred/newton.hpp"
#include "contactred/reduction.hpp"
#include "contactred/rng.hpp"
#include "contactred/scenario.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <unistd.h>

namespace contactred {

namespace {

std::uint64_t criterion_seed(std::uint64_t base, int index) {
    return base ^ (0xACCE5500ULL + static_cast<std::uint64_t>(index));
}

DualElement dual(std::initializer_list<double> values) {
    DualElement v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CriterionResult criterion_e1_albert(std::uint64_t seed) {
    CriterionResult r{1, "circle collapse of the first ellipsoid level", false, ""};
    const Scenario& scenario = load_scenario("E1");
    const AlbertRecord record = albert_reduce(*scenario.setup, dual({1}), 40, seed);
    double max_offplane = 0.0;
    for (const auto& p : record.level_samples.points)
        for (int i = 2; i < 6; ++i)
            max_offplane = std::max(max_offplane, std::abs(p[i]));
    const bool dims_ok = record.level_dim == 1 && record.albert_orbit_dim == 0 &&
                         record.albert_quotient_dim == 1;
    r.passed = dims_ok && record.level_samples.size() > 0 && max_offplane < 1e-6;
    r.detail = "level_dim=" + std::to_string(record.level_dim) +
               " orbit_dim=" + std::to_string(record.albert_orbit_dim) +
               " quotient_dim=" + std::to_string(record.albert_quotient_dim) +
               " samples=" + std::to_string(record.level_samples.size()) +
               " max|z2,z3|=" + fmt(max_offplane);
    return r;
}

CriterionResult criterion_e2_albert(std::uint64_t seed) {
    CriterionResult r{2, "three-dimensional second-ellipsoid reduction with torus witness", false,
                      ""};
    const Scenario& scenario = load_scenario("E2");
    const Eigen::VectorXd witness = scenario.level_seed_points.at(0);

    // The witness moduli satisfy the defining equation and the unit moment
    // level directly, before any sampling.
    const ContactSetup& setup = *scenario.setup;
    const double constraint_residual =
        std::abs(setup.manifold.constraints[0].eval(witness)) / 6.0;  // stored cleared of 1/6
    const double moment_residual = std::abs(moment_map(setup.phi, witness)[0] - 1.0);

    const AlbertRecord record =
        albert_reduce(setup, dual({1}), 60, seed, scenario.level_seed_points);
    double witness_gap = std::numeric_limits<double>::infinity();
    for (const auto& p : record.level_samples.points)
        witness_gap = std::min(witness_gap, (p - witness).norm());

    const bool dims_ok = record.level_dim == 4 && record.albert_quotient_dim == 3;
    r.passed = dims_ok && constraint_residual < 1e-10 && moment_residual < 1e-10 &&
               witness_gap <= 1e-6;
    r.detail = "level_dim=" + std::to_string(record.level_dim) +
               " quotient_dim=" + std::to_string(record.albert_quotient_dim) +
               " witness residuals=" + fmt(constraint_residual) + "/" + fmt(moment_residual) +
               " witness gap=" + fmt(witness_gap);
    return r;
}

CriterionResult criterion_sl2_bookkeeping(std::uint64_t) {
    CriterionResult r{3, "even bookkeeping quotient for the sl2 scenario", false, ""};
    RunConfig config;
    config.scenario_id = "SL2-bookkeeping";
    config.checks = {"hypotheses", "gs"};
    const ReductionReport report = run_scenario(config);
    const auto& h = *report.hypothesis;
    const auto& q = *report.quotient;
    const bool algebra_ok = h.dim_stabilizer == 1 && h.dim_kernel_algebra == 1 &&
                            h.kernel_equals_stabilizer && !h.sum_condition_holds;
    const bool quotient_even = q.quotient_dim % 2 == 0;
    r.passed = algebra_ok && q.quotient_dim == 4 && quotient_even && q.consistent &&
               report.gs->gs_total_dim == 6;
    r.detail = "dim_stabilizer=" + std::to_string(h.dim_stabilizer) +
               " kernel==stabilizer=" + std::string(h.kernel_equals_stabilizer ? "yes" : "no") +
               " sum_condition=" + std::string(h.sum_condition_holds ? "holds" : "fails") +
               " quotient_dim=" + std::to_string(q.quotient_dim) +
               (quotient_even ? " (even: not contact)" : " (odd)") +
               " total_dim=" + std::to_string(report.gs->gs_total_dim);
    return r;
}

CriterionResult criterion_trans_free(std::uint64_t seed) {
    CriterionResult r{4, "transversality and locally-free verdicts agree everywhere", false, ""};
    struct Pair {
        const char* id;
        DualElement mu;
    };
    const std::vector<Pair> pairs = {
        {"E1", dual({1})},          {"E2", dual({1})},       {"S3", dual({1})},
        {"S5-T2", dual({2, 1})},    {"S5-T2", dual({1, 0})}, {"S5-T3", dual({1, 1, 1})},
        {"E2-T2", dual({1, 0})},
    };
    int total = 0;
    int disagreements = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const ContactSetup& setup = *load_scenario(pairs[i].id).setup;
        const SampleSet samples =
            sample_level_ray(setup, pairs[i].mu, 160, seed + static_cast<std::uint64_t>(i));
        for (const auto& x : samples.points) {
            ++total;
            if (transversality_check(setup, pairs[i].mu, x) !=
                locally_free_check(setup, pairs[i].mu, x))
                ++disagreements;
        }
    }

    // Points where both properties genuinely fail: the circle z2 = z3 = 0
    // on the 5-sphere sits on the ray of (1,0), the second torus factor
    // fixes it, and the moment image degenerates there. The verdicts must
    // agree by being false together.
    const ContactSetup& s5 = *load_scenario("S5-T2").setup;
    const DualElement mu_degenerate = dual({1, 0});
    bool engineered_ok = true;
    for (double theta : {0.0, 0.7, 2.1, 4.0}) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
        x[0] = std::cos(theta);
        x[1] = std::sin(theta);
        ++total;
        const bool trans = transversality_check(s5, mu_degenerate, x);
        const bool free_here = locally_free_check(s5, mu_degenerate, x);
        if (trans != free_here)
            ++disagreements;
        if (trans || free_here)
            engineered_ok = false;
    }

    r.passed = (disagreements == 0) && engineered_ok && total >= 1000;
    r.detail = "points=" + std::to_string(total) +
               " disagreements=" + std::to_string(disagreements) +
               " degenerate circle verdicts=" + (engineered_ok ? "both false" : "unexpected");
    return r;
}

CriterionResult criterion_reeb_flow(std::uint64_t seed) {
    CriterionResult r{5, "Reeb flow preserves moment levels and closes the circle orbit", false,
                      ""};
    const Scenario& e2 = load_scenario("E2");
    const SampleSet starts = sample_level_ray(*e2.setup, dual({1}), 20, seed);
    double max_deviation = 0.0;
    for (const auto& x : starts.points) {
        const FlowResult f =
            reeb_flow_level_invariance(e2.setup->manifold, e2.setup->alpha, e2.setup->phi, x, 1.0);
        max_deviation = std::max(max_deviation, f.max_level_deviation);
    }

    // On the round 3-sphere with weights (1,1) the Reeb orbit through any
    // point is the unit-speed circle of period 2*pi.
    const Scenario& s3 = load_scenario("S3");
    Eigen::VectorXd hopf_start(4);
    hopf_start << 1.0, 0.0, 0.0, 0.0;
    const FlowResult hopf = reeb_flow_level_invariance(s3.setup->manifold, s3.setup->alpha,
                                                       s3.setup->phi, hopf_start, 2.0 * M_PI);
    const double closure = (hopf.endpoint - hopf_start).norm();

    r.passed = starts.size() == 20 && max_deviation < 1e-6 && closure <= 1e-8;
    r.detail = "starts=" + std::to_string(starts.size()) +
               " max level deviation=" + fmt(max_deviation) + " orbit closure=" + fmt(closure);
    return r;
}

CriterionResult criterion_moment_differential(std::uint64_t seed) {
    CriterionResult r{6, "moment differential identity at random triples", false, ""};
    double max_gap = 0.0;
    int triples = 0;
    std::uint64_t stream_index = 0;
    for (const auto& scenario : scenario_registry()) {
        if (!scenario.numeric)
            continue;
        const ContactSetup& setup = *scenario.setup;
        const int n = setup.manifold.ambient_dim;
        const int g = setup.action.algebra->dim();
        int made = 0;
        while (made < 100) {
            SeedStream stream(seed, stream_index++);
            const auto point =
                project_to_manifold(setup.manifold, stream.sphere_point(n, setup.bounding_radius));
            if (!point)
                continue;
            const Eigen::VectorXd v = stream.normal_vector(n);
            const Eigen::VectorXd a = stream.normal_vector(g);
            const auto check =
                moment_differential_check(setup.action, setup.alpha, setup.phi, *point, v, a);
            max_gap = std::max(max_gap, check.gap);
            ++made;
            ++triples;
        }
    }
    r.passed = triples == 600 && max_gap < 1e-10;
    r.detail = "triples=" + std::to_string(triples) + " max gap=" + fmt(max_gap);
    return r;
}

CriterionResult criterion_reduced_kernel(std::uint64_t seed) {
    CriterionResult r{7, "reduced kernel matches the orbit directions on the 5-sphere", false,
                      ""};
    const ContactSetup& setup = *load_scenario("S5-T2").setup;
    const DualElement mu = dual({2, 1});
    const SampleSet samples = sample_level_ray(setup, mu, 60, seed);
    int ok_count = 0;
    double worst_angle = 0.0;
    for (const auto& x : samples.points) {
        const ReducedKernelResult k = reduced_kernel_check(setup, mu, x);
        if (k.ok)
            ++ok_count;
        worst_angle = std::max(worst_angle, k.max_angle);
    }
    const QuotientDimResult q = quotient_dimension(setup, mu, samples);
    r.passed = samples.size() >= 50 && ok_count == samples.size() && q.quotient_dim == 3 &&
               q.quotient_dim % 2 == 1;
    r.detail = "samples=" + std::to_string(samples.size()) +
               " kernel matches=" + std::to_string(ok_count) +
               " worst angle=" + fmt(worst_angle) +
               " quotient_dim=" + std::to_string(q.quotient_dim);
    return r;
}

struct ConformalComparison {
    bool membership_ok = true;
    bool dims_ok = true;
    std::string note;
};

ConformalComparison compare_conformal(const Scenario& scenario, const DualElement& mu,
                                      std::uint64_t seed, bool with_albert) {
    const ContactSetup& base = *scenario.setup;
    const int n = base.manifold.ambient_dim;

    // f = 1 + |z|^2 / 4, positive everywhere, invariant under rotations.
    const PolyMap f = PolyMap::constant(n, 1.0) +
                      PolyMap::quadratic_form(0.25 * Eigen::MatrixXd::Identity(n, n));
    const ContactSetup scaled =
        make_contact_setup(base.manifold, scale_form(f, base.alpha), base.action,
                           base.bounding_radius, base.weights);

    ConformalComparison result;
    const SampleSet base_samples = sample_level_ray(base, mu, 40, seed);
    const SampleSet scaled_samples = sample_level_ray(scaled, mu, 40, seed);
    const double mu_sq = mu.squaredNorm();
    const auto on_ray = [&](const ContactSetup& setup, const Eigen::VectorXd& x) {
        const MomentValue phi = moment_map(setup.phi, x);
        const double s = phi.dot(mu) / mu_sq;
        return s > 0.0 && (phi - s * mu).cwiseAbs().maxCoeff() < 1e-10;
    };
    for (const auto& x : base_samples.points)
        if (!on_ray(scaled, x))
            result.membership_ok = false;
    for (const auto& x : scaled_samples.points)
        if (!on_ray(base, x))
            result.membership_ok = false;

    const QuotientDimResult qa = quotient_dimension(base, mu, base_samples);
    const QuotientDimResult qb = quotient_dimension(scaled, mu, scaled_samples);
    if (qa.quotient_dim != qb.quotient_dim || qa.level_ray_dim != qb.level_ray_dim ||
        qa.orbit_dim != qb.orbit_dim)
        result.dims_ok = false;

    const auto rates = [&](const ContactSetup& setup, const SampleSet& samples) {
        int trans = 0;
        int free_count = 0;
        int kernel_ok = 0;
        for (const auto& x : samples.points) {
            if (transversality_check(setup, mu, x))
                ++trans;
            if (locally_free_check(setup, mu, x))
                ++free_count;
            if (reduced_kernel_check(setup, mu, x).ok)
                ++kernel_ok;
        }
        return std::array<int, 3>{trans, free_count, kernel_ok};
    };
    const auto ra = rates(base, base_samples);
    const auto rb = rates(scaled, scaled_samples);
    if (ra[0] != base_samples.size() || ra[1] != base_samples.size() ||
        rb[0] != scaled_samples.size() || rb[1] != scaled_samples.size() ||
        ra[2] != base_samples.size() || rb[2] != scaled_samples.size())
        result.dims_ok = false;

    if (with_albert) {
        const AlbertRecord aa = albert_reduce(base, mu, 30, seed, scenario.level_seed_points);
        const AlbertRecord ab = albert_reduce(scaled, mu, 30, seed);
        if (aa.level_dim != ab.level_dim || aa.albert_orbit_dim != ab.albert_orbit_dim ||
            aa.albert_quotient_dim != ab.albert_quotient_dim)
            result.dims_ok = false;
        result.note = " level_dim " + std::to_string(aa.level_dim) + "==" +
                      std::to_string(ab.level_dim);
    }
    result.note = "quotient " + std::to_string(qa.quotient_dim) + "==" +
                  std::to_string(qb.quotient_dim) + result.note;
    return result;
}

CriterionResult criterion_conformal(std::uint64_t seed) {
    CriterionResult r{8, "conformal rescale keeps ray membership and dimensions", false, ""};
    const ConformalComparison e2 = compare_conformal(load_scenario("E2"), dual({1}), seed, true);
    const ConformalComparison s5 =
        compare_conformal(load_scenario("S5-T2"), dual({2, 1}), seed + 1, false);
    r.passed = e2.membership_ok && e2.dims_ok && s5.membership_ok && s5.dims_ok;
    r.detail = std::string("membership ") +
               ((e2.membership_ok && s5.membership_ok) ? "stable" : "CHANGED") + "; " + e2.note +
               "; " + s5.note;
    return r;
}

CriterionResult criterion_lemma_suites(std::uint64_t seed) {
    CriterionResult r{9, "kernel-splitting and isotropic-kernel property suites", false, ""};
    const LemmaSuiteResult a = run_kernel_splitting_suite(500, seed);
    const LemmaSuiteResult b = run_isotropic_kernel_suite(500, seed + 1);
    r.passed = a.failures == 0 && b.failures == 0 && a.instances == 500 && b.instances == 500 &&
               a.max_residual < 1e-10 && b.max_residual < 1e-10;
    r.detail = "splitting " + std::to_string(a.instances - a.failures) + "/" +
               std::to_string(a.instances) + " residual " + fmt(a.max_residual) +
               "; isotropic " + std::to_string(b.instances - b.failures) + "/" +
               std::to_string(b.instances) + " residual " + fmt(b.max_residual);
    return r;
}

CriterionResult criterion_partition(std::uint64_t seed) {
    CriterionResult r{10, "orbit-type partition matches enumerated zero patterns", false, ""};
    const ContactSetup& setup = *load_scenario("S5-T3").setup;
    const DualElement mu = dual({1, 1, 1});
    const SampleSet samples = sample_level_ray(setup, mu, 80, seed);
    const auto strata = orbit_type_partition(setup, mu, samples);
    const auto patterns = enumerate_realizable_patterns(setup, mu);

    std::vector<bool> covered(static_cast<std::size_t>(samples.size()), false);
    bool disjoint = true;
    for (const auto& s : strata) {
        for (int idx : s.sample_indices) {
            if (covered[static_cast<std::size_t>(idx)])
                disjoint = false;
            covered[static_cast<std::size_t>(idx)] = true;
        }
    }
    const bool exhaustive =
        std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
    bool contact_everywhere = true;
    for (const auto& s : strata)
        if (!s.contact_on_stratum)
            contact_everywhere = false;

    r.passed = samples.size() > 0 && strata.size() == patterns.size() && patterns.size() == 1 &&
               patterns[0].empty() && contact_everywhere && disjoint && exhaustive;
    r.detail = "strata=" + std::to_string(strata.size()) +
               " realizable patterns=" + std::to_string(patterns.size()) +
               " contact on all strata=" + (contact_everywhere ? "yes" : "no") + " partition=" +
               ((disjoint && exhaustive) ? "disjoint+exhaustive" : "BROKEN");
    return r;
}

CriterionResult criterion_determinism(std::uint64_t seed) {
    CriterionResult r{11, "byte-identical reports across runs and thread counts", false, ""};
    const int previous = get_parallelism();
    set_parallelism(1);
    const std::string run_a = determinism_bundle(seed);
    set_parallelism(4);
    const std::string run_b = determinism_bundle(seed);
    set_parallelism(previous);

    namespace fs = std::filesystem;
    const std::string tag = std::to_string(::getpid());
    const fs::path pa = fs::temp_directory_path() / ("contactred-run-a-" + tag + ".json");
    const fs::path pb = fs::temp_directory_path() / ("contactred-run-b-" + tag + ".json");
    {
        std::ofstream(pa) << run_a;
        std::ofstream(pb) << run_b;
    }
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const bool files_equal = slurp(pa) == slurp(pb);
    fs::remove(pa);
    fs::remove(pb);

    r.passed = files_equal && run_a == run_b && !run_a.empty();
    r.detail = "report bytes=" + std::to_string(run_a.size()) +
               (files_equal ? " identical across 1 and 4 threads" : " DIFFER between runs");
    return r;
}

} // namespace

LemmaSuiteResult run_kernel_splitting_suite(int instances, std::uint64_t seed) {
    LemmaSuiteResult result;
    result.instances = instances;
    for (int inst = 0; inst < instances; ++inst) {
        SeedStream stream(seed, static_cast<std::uint64_t>(inst));
        const int dw = stream.uniform01() < 0.5 ? 2 : 4;
        const int dx = 6 - dw;

        // Block X may be degenerate on purpose: the kernel must transfer.
        Eigen::MatrixXd wx(dx, dx);
        const bool deficient = stream.uniform01() < 0.5;
        if (deficient && dx > 2) {
            const int rx = dx - 2;
            Eigen::MatrixXd a(rx, rx);
            for (int i = 0; i < rx; ++i)
                for (int j = 0; j < rx; ++j)
                    a(i, j) = stream.normal();
            Eigen::MatrixXd restrict_map(rx, dx);
            for (int i = 0; i < rx; ++i)
                for (int j = 0; j < dx; ++j)
                    restrict_map(i, j) = stream.normal();
            wx = restrict_map.transpose() * (a - a.transpose()) * restrict_map;
        } else {
            Eigen::MatrixXd a(dx, dx);
            for (int i = 0; i < dx; ++i)
                for (int j = 0; j < dx; ++j)
                    a(i, j) = stream.normal();
            wx = a - a.transpose();
        }
        wx = 0.5 * (wx - wx.transpose().eval());

        // Block W must be nondegenerate so the full kernel stays inside X.
        Eigen::MatrixXd ww(dw, dw);
        while (true) {
            Eigen::MatrixXd a(dw, dw);
            for (int i = 0; i < dw; ++i)
                for (int j = 0; j < dw; ++j)
                    a(i, j) = stream.normal();
            ww = a - a.transpose();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(ww);
            if (svd.singularValues().minCoeff() > 0.1)
                break;
        }

        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(6, 6);
        gram.topLeftCorner(dx, dx) = wx;
        gram.bottomRightCorner(dw, dw) = ww;

        // Hide the block structure behind a random orthogonal change of basis.
        Eigen::MatrixXd g(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                g(i, j) = stream.normal();
        const Eigen::MatrixXd q =
            Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(6, 6);
        Eigen::MatrixXd gram_mixed = q.transpose() * gram * q;
        gram_mixed = 0.5 * (gram_mixed - gram_mixed.transpose().eval());
        const Eigen::MatrixXd x_basis = q.transpose().leftCols(dx);

        const Subspace full_kernel = bilinear_kernel(gram_mixed);
        Eigen::MatrixXd gram_x = x_basis.transpose() * gram_mixed * x_basis;
        gram_x = 0.5 * (gram_x - gram_x.transpose().eval());
        const Eigen::MatrixXd restricted_kernel = x_basis * bilinear_kernel(gram_x);

        // Independent route: LU kernel of the full Gram matrix.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram_mixed);
        lu.setThreshold(1e-9);
        Eigen::MatrixXd oracle = lu.kernel();
        if (oracle.cols() > 0 && lu.dimensionOfKernel() > 0) {
            oracle = Eigen::HouseholderQR<Eigen::MatrixXd>(oracle).householderQ() *
                     Eigen::MatrixXd::Identity(6, oracle.cols());
        } else {
            oracle = Eigen::MatrixXd::Zero(6, 0);
        }

        double residual = 0.0;
        if (full_kernel.cols() > 0)
            residual = std::max(residual, (gram_mixed * full_kernel).cwiseAbs().maxCoeff());
        if (restricted_kernel.cols() > 0)
            residual =
                std::max(residual, (gram_mixed * restricted_kernel).cwiseAbs().maxCoeff());
        bool ok = full_kernel.cols() == restricted_kernel.cols() &&
                  full_kernel.cols() == oracle.cols();
        if (ok && full_kernel.cols() > 0) {
            residual = std::max(residual, max_principal_angle(full_kernel, restricted_kernel));
            residual = std::max(residual, max_principal_angle(full_kernel, oracle));
        }
        if (!ok || residual >= 1e-10)
            ++result.failures;
        result.max_residual = std::max(result.max_residual, residual);
    }
    return result;
}

LemmaSuiteResult run_isotropic_kernel_suite(int instances, std::uint64_t seed) {
    LemmaSuiteResult result;
    result.instances = instances;
    for (int inst = 0; inst < instances; ++inst) {
        SeedStream stream(seed, static_cast<std::uint64_t>(inst));
        const int n = stream.uniform01() < 0.5 ? 2 : 3;
        const int dim = 2 * n;
        const int k = 1 + static_cast<int>(stream.uniform01() * n);

        Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(dim, dim);
        for (int b = 0; b < n; ++b) {
            j0(2 * b, 2 * b + 1) = 1.0;
            j0(2 * b + 1, 2 * b) = -1.0;
        }

        // Random linear coordinates with a modest condition number, so the
        // 1e-10 residual budget is meaningful.
        Eigen::MatrixXd t(dim, dim);
        while (true) {
            for (int i = 0; i < dim; ++i)
                for (int jj = 0; jj < dim; ++jj)
                    t(i, jj) = stream.normal();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
            if (svd.singularValues().minCoeff() > 1e-2 * svd.singularValues().maxCoeff())
                break;
        }
        Eigen::MatrixXd gram = t.transpose() * j0 * t;
        gram = 0.5 * (gram - gram.transpose().eval());

        // W = preimage of span{x-legs of the first k blocks}: isotropic for
        // the standard form, hence for the transported one.
        Eigen::MatrixXd w_raw(dim, k);
        Eigen::MatrixXd picks = Eigen::MatrixXd::Zero(dim, k);
        for (int c = 0; c < k; ++c)
            picks(2 * c, c) = 1.0;
        w_raw = t.fullPivLu().solve(picks);
        const Eigen::MatrixXd w_basis =
            Eigen::HouseholderQR<Eigen::MatrixXd>(w_raw).householderQ() *
            Eigen::MatrixXd::Identity(dim, k);

        const Subspace perp = symplectic_perp(gram, w_basis);
        Eigen::MatrixXd gram_perp = perp.transpose() * gram * perp;
        gram_perp = 0.5 * (gram_perp - gram_perp.transpose().eval());
        // Lagrangian W makes the restricted form vanish identically, so
        // the kernel cutoff is anchored to the ambient form's scale.
        const Eigen::MatrixXd kernel =
            perp * bilinear_kernel(gram_perp, gram.cwiseAbs().maxCoeff());

        // Independent route for the perp: LU kernel of W^T * gram.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(w_basis.transpose() * gram);
        lu.setThreshold(1e-9);
        const Eigen::MatrixXd perp_oracle = lu.kernel();

        bool ok = perp.cols() == dim - k && kernel.cols() == k &&
                  perp_oracle.cols() == dim - k;
        double residual = 0.0;
        if (ok) {
            residual = std::max(residual, max_principal_angle(kernel, w_basis));
            const Eigen::MatrixXd perp_oracle_on =
                Eigen::HouseholderQR<Eigen::MatrixXd>(perp_oracle).householderQ() *
                Eigen::MatrixXd::Identity(dim, dim - k);
            residual = std::max(residual, max_principal_angle(perp, perp_oracle_on));
        }
        if (!ok || residual >= 1e-10)
            ++result.failures;
        result.max_residual = std::max(result.max_residual, residual);
    }
    return result;
}

std::string determinism_bundle(std::uint64_t seed) {
    struct Entry {
        const char* id;
        std::vector<std::string> checks;
        int n_samples;
    };
    const std::vector<Entry> entries = {
        {"E1", {"albert"}, 30},
        {"E2", {"albert", "transversality"}, 30},
        {"S3", {"hypotheses", "transversality", "gs"}, 30},
        {"S5-T2", {"hypotheses", "transversality", "reduced_kernel", "strata", "gs"}, 40},
        {"S5-T3", {"strata"}, 40},
    };
    JsonValue runs = JsonValue::array();
    for (const auto& entry : entries) {
        RunConfig config;
        config.scenario_id = entry.id;
        config.checks = entry.checks;
        config.n_samples = entry.n_samples;
        config.seed = seed;
        runs.push(report_to_json(run_scenario(config)));
    }
    JsonValue root = JsonValue::object();
    root.set("runs", std::move(runs));
    return root.dump();
}

CriterionResult run_criterion(int index, std::uint64_t base_seed) {
    const std::uint64_t seed = criterion_seed(base_seed, index);
    switch (index) {
    case 1: return criterion_e1_albert(seed);
    case 2: return criterion_e2_albert(seed);
    case 3: return criterion_sl2_bookkeeping(seed);
    case 4: return criterion_trans_free(seed);
    case 5: return criterion_reeb_flow(seed);
    case 6: return criterion_moment_differential(seed);
    case 7: return criterion_reduced_kernel(seed);
    case 8: return criterion_conformal(seed);
    case 9: return criterion_lemma_suites(seed);
    case 10: return criterion_partition(seed);
    case 11: return criterion_determinism(seed);
    default: throw DimensionError("criterion index out of range: " + std::to_string(index));
    }
}

std::vector<CriterionResult> check_all(std::uint64_t base_seed, std::ostream* log) {
    std::vector<CriterionResult> results;
    for (int i = 1; i <= criterion_count; ++i) {
        CriterionResult r;
        try {
            r = run_criterion(i, base_seed);
        } catch (const std::exception& e) {
            r.index = i;
            r.name = "criterion " + std::to_string(i);
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (log)
            (*log) << "criterion " << r.index << ": " << (r.passed ? "PASS" : "FAIL") << " - "
                   << r.name << " (" << r.detail << ")\n";
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace contactred
