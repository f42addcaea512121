#include "contactred/rng.hpp"

#include "contactred/error.hpp"

#include <cmath>

namespace contactred {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SeedStream::SeedStream(std::uint64_t base_seed, std::uint64_t index) {
    // Fold the index in through two rounds so that streams for adjacent
    // indices share no obvious state structure.
    std::uint64_t mix = base_seed;
    (void)splitmix64(mix);
    mix ^= 0xD1B54A32D192ED03ULL * (index + 1);
    (void)splitmix64(mix);
    state_ = mix;
}

std::uint64_t SeedStream::next_u64() {
    return splitmix64(state_);
}

double SeedStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeedStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    do {
        u = uniform01();
    } while (u <= 0.0);
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * M_PI * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Eigen::VectorXd SeedStream::normal_vector(int dim) {
    Eigen::VectorXd out(dim);
    for (int i = 0; i < dim; ++i)
        out[i] = normal();
    return out;
}

Eigen::VectorXd SeedStream::sphere_point(int dim, double radius) {
    if (dim < 1)
        throw DimensionError("sphere_point needs dim >= 1");
    Eigen::VectorXd v = normal_vector(dim);
    double n = v.norm();
    while (n < 1e-12) {
        v = normal_vector(dim);
        n = v.norm();
    }
    return v * (radius / n);
}

} // namespace contactred
