#pragma once

#include "contactred/action.hpp"
#include "contactred/forms.hpp"
#include "contactred/lie_algebra.hpp"
#include "contactred/manifold.hpp"
#include "contactred/newton.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace contactred {

// Everything the reduction pipeline needs about one contact G-space:
// the constraint locus, the contact form, the infinitesimal action, the
// precomputed moment component polynomials, and a radius from which to
// draw ambient Newton seeds.
struct ContactSetup {
    EmbeddedManifold manifold;
    Poly1Form alpha;
    LinearAction action;
    std::vector<PolyMap> phi;
    double bounding_radius = 1.0;
    // Integer weight matrix for torus actions (one row per factor);
    // absent for non-torus groups.
    std::optional<Eigen::MatrixXi> weights;
};

ContactSetup make_contact_setup(EmbeddedManifold manifold, Poly1Form alpha, LinearAction action,
                                double bounding_radius,
                                std::optional<Eigen::MatrixXi> weights = std::nullopt);

struct SampleSet {
    std::vector<Eigen::VectorXd> points;
    // Ray scale s with Phi(point) = s * mu; empty for strict-level sampling.
    std::vector<double> scales;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(points.size()); }
};

// Sampling tolerances, pinned once.
inline constexpr double sample_keep_tol = 1e-10;   // accepted residual
inline constexpr double sample_scale_floor = 1e-9; // smallest admissible ray scale
inline constexpr double dedup_radius = 1e-6;

// Draws ambient seeds uniformly on the bounding sphere and Newton-projects
// the joint system {constraints, Phi - s*mu} with the ray scale s as an
// extra unknown. Non-converging seeds are discarded. Accepted points are
// sorted canonically and deduplicated at dedup_radius, so the result is
// independent of evaluation order; each seed index owns a derived random
// stream, so it is independent of thread count too. Returns at most
// n_samples points; an empty result is a diagnostic, not an error.
SampleSet sample_level_ray(const ContactSetup& setup, const Eigen::VectorXd& mu, int n_samples,
                           std::uint64_t seed);

// Same machinery for the strict level {Phi = mu}, no scale unknown.
// extra_seeds are deterministic additional start points (witness points a
// caller wants represented); they participate in the same dedup.
SampleSet sample_strict_level(const ContactSetup& setup, const Eigen::VectorXd& mu,
                              int n_samples, std::uint64_t seed,
                              const std::vector<Eigen::VectorXd>& extra_seeds = {});

// Image of the moment differential on the tangent space, extended by mu,
// has full rank dim(g*). Pointwise; the point must lie on the manifold.
bool transversality_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                          const Eigen::VectorXd& point);

// The kernel algebra k_mu acts with orbit dimension dim(k_mu) at the point.
// Generator-field columns are ranked against an absolute floor of
// 1e-6 * (generator scale), not the relative rank cutoff: the question here
// is whether a field vanishes at the point, and a relative cutoff would
// classify an exactly-fixed point as full rank.
bool locally_free_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                        const Eigen::VectorXd& point);

struct ReducedKernelResult {
    int kernel_dim = 0;  // nullity of dalpha on T_zZ ∩ ker(alpha_z)
    int orbit_dim = 0;   // dim of the k_mu orbit directions at z
    double max_angle = 0.0;
    bool ok = false;
};

// Tolerance on the subspace match in reduced_kernel_check.
inline constexpr double reduced_kernel_angle_tol = 1e-6;

// Compares the degeneracy directions of dalpha restricted to
// T_zZ ∩ ker(alpha_z) with the tangent directions of the k_mu orbit.
ReducedKernelResult reduced_kernel_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                                         const Eigen::VectorXd& point);

struct QuotientDimResult {
    int quotient_dim = 0;
    int level_ray_dim = 0;
    int orbit_dim = 0;
    std::optional<int> formula_dim;  // bookkeeping route, when hypotheses allow it
    bool consistent = true;          // numeric vs formula, when both exist
};

// Bookkeeping formula dim M - (dim g* - 1) - dim k_mu.
int quotient_dimension_formula(int dim_m, int dim_g, int dim_k_mu);

// Measures dim Z at the samples (tangent nullity of the joint constraint
// and projected-moment system), subtracts the k_mu orbit dimension, and
// cross-checks the bookkeeping formula. Dimensions are only reported when
// at least 90% of samples agree; otherwise the call throws with a
// diagnostic. A formula/numeric mismatch is reported in the result, never
// silently resolved.
QuotientDimResult quotient_dimension(const ContactSetup& setup, const Eigen::VectorXd& mu,
                                     const SampleSet& samples);

struct StratumRecord {
    std::string isotropy_label;
    std::vector<int> sample_indices;
    int stratum_dim = 0;
    int orbit_dim = 0;
    int quotient_dim = 0;
    bool contact_on_stratum = false;
};

// Partition of a sample set by isotropy data of a torus action: the label
// combines the zero-coordinate block pattern with the Hermite normal form
// of the lattice spanned by the weight columns of the nonzero blocks, so
// grouping is exact integer arithmetic. Per stratum, dimensions are
// measured on the fixed-block locus intersected with the level-ray
// conditions, and the contact condition is re-checked on that locus.
std::vector<StratumRecord> orbit_type_partition(const ContactSetup& setup,
                                                const Eigen::VectorXd& mu,
                                                const SampleSet& samples);

// Zero-coordinate block patterns realizable on the level ray, decided by
// exact-ish linear feasibility (Fourier-Motzkin) over the squared block
// moduli and the ray scale. Patterns are sorted; the empty pattern means
// all blocks nonzero.
std::vector<std::vector<int>> enumerate_realizable_patterns(const ContactSetup& setup,
                                                            const Eigen::VectorXd& mu);

// Row-style Hermite normal form of an integer matrix (nonnegative pivots,
// entries above a pivot reduced); zero rows dropped. Canonical form of the
// row lattice, used to build isotropy labels.
Eigen::MatrixXi hermite_normal_form(const Eigen::MatrixXi& m);

struct AlbertRecord {
    int level_dim = 0;
    int albert_orbit_dim = 0;
    int albert_quotient_dim = 0;
    SampleSet level_samples;
    double max_residual = 0.0;  // worst constraint and moment residual over samples
};

// Samples the strict level {Phi = mu}, measures its dimension, and ranks
// the modified generators  A_M - <mu, A> Y  (Y the Reeb field) on it.
// level_dim comes from the local displacement estimator below, because the
// catalog contains a level cut out tangentially, where the constraint
// Jacobian's nullity overcounts the actual dimension.
AlbertRecord albert_reduce(const ContactSetup& setup, const Eigen::VectorXd& mu, int n_samples,
                           std::uint64_t seed,
                           const std::vector<Eigen::VectorXd>& extra_seeds = {});

struct GsDimensionReport {
    int fiber_dim = 0;
    int orbit_dim = 0;
    int gs_total_dim = 0;
    std::optional<bool> integral;
};

// Dimension bookkeeping for the two-stage picture: quotient fiber plus the
// coadjoint orbit through mu. Integrality of mu is reported for torus
// algebras only.
GsDimensionReport gs_dimension_report(int dim_m, const LieAlgebraData& algebra,
                                      const Eigen::VectorXd& mu, int orbit_dim);

// Dimension of the solution set of `system` through `point`, measured by
// Newton-projecting a fan of nearby probes back onto the set and ranking
// the displacement directions. Probe scale 1e-4, singular values cut at
// 1e-2 of the largest: curvature contributes at the probe scale and
// genuine tangent directions at unit scale, so the gap is wide. Unlike the
// Jacobian nullity, this measures the set itself and stays correct where
// the defining equations are degenerate.
int empirical_tangent_dim(const PolySystem& system, const Eigen::VectorXd& point,
                          std::uint64_t seed);

// Runs fn(0..n-1) across the given number of threads with strided
// assignment. Each index must write only to its own output slot; with that
// discipline results are bitwise independent of the thread count.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

// Process-wide worker count used by the samplers, clamped to [1, 64].
// Changing it never changes any computed result, only wall time.
void set_parallelism(int n);
int get_parallelism();

} // namespace contactred
