// Microbenchmarks for the hot paths: polynomial evaluation, frame and
// Reeb solves, Newton projection, and the sampling pipeline. Wall time
// only; results never feed back into any computed value.

#include <benchmark/benchmark.h>

#include "contactred/manifold.hpp"
#include "contactred/newton.hpp"
#include "contactred/reduction.hpp"
#include "contactred/rng.hpp"
#include "contactred/scenario.hpp"

#include <Eigen/Core>

#include <cmath>

using namespace contactred;

namespace {

const ContactSetup& e2_setup() {
    static const ContactSetup setup = *load_scenario("E2").setup;
    return setup;
}

Eigen::VectorXd e2_point() {
    // Fixed on-manifold point so every iteration does identical work.
    Eigen::VectorXd p = Eigen::VectorXd::Zero(6);
    p[0] = std::sqrt(2.0);
    return p;
}

} // namespace

static void BM_ConstraintEval(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd p = e2_point();
    for (auto _ : state)
        benchmark::DoNotOptimize(setup.manifold.residual(p));
}
BENCHMARK(BM_ConstraintEval);

static void BM_MomentEval(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd p = e2_point();
    for (auto _ : state)
        benchmark::DoNotOptimize(setup.phi[0].eval(p));
}
BENCHMARK(BM_MomentEval);

static void BM_TangentFrame(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd p = e2_point();
    for (auto _ : state)
        benchmark::DoNotOptimize(tangent_frame(setup.manifold, p));
}
BENCHMARK(BM_TangentFrame);

static void BM_ReebSolve(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd p = e2_point();
    for (auto _ : state)
        benchmark::DoNotOptimize(reeb_field(setup.manifold, setup.alpha, p));
}
BENCHMARK(BM_ReebSolve);

static void BM_NewtonProject(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    SeedStream stream(1, 0);
    const Eigen::VectorXd start = stream.sphere_point(6, setup.bounding_radius);
    for (auto _ : state)
        benchmark::DoNotOptimize(project_to_manifold(setup.manifold, start));
}
BENCHMARK(BM_NewtonProject);

static void BM_SampleLevelRay(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd mu = Eigen::VectorXd::Ones(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_level_ray(setup, mu, 8, 42));
}
BENCHMARK(BM_SampleLevelRay);

static void BM_ReducedKernelCheck(benchmark::State& state) {
    const ContactSetup& setup = e2_setup();
    const Eigen::VectorXd mu = Eigen::VectorXd::Ones(1);
    const SampleSet samples = sample_level_ray(setup, mu, 1, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(reduced_kernel_check(setup, mu, samples.points[0]));
}
BENCHMARK(BM_ReducedKernelCheck);

BENCHMARK_MAIN();
