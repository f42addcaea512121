#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace contactred {

// Deterministic random stream. Every consumer derives one stream per
// (base seed, task index) pair, so results are independent of evaluation
// order and of how work is split across threads. Gaussian draws use
// Box-Muller on top of splitmix64 output instead of std::normal_distribution,
// whose value sequence the standard leaves unspecified.
class SeedStream {
public:
    SeedStream(std::uint64_t base_seed, std::uint64_t index);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    double normal();

    Eigen::VectorXd normal_vector(int dim);

    // Uniform on the sphere of the given radius.
    Eigen::VectorXd sphere_point(int dim, double radius);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace contactred
