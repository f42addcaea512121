#include "contactred/reduction.hpp"

#include "contactred/error.hpp"
#include "contactred/linalg.hpp"
#include "contactred/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace contactred {

namespace {

std::atomic<int> g_parallelism{1};

// Stream index spaces for the different consumers of one base seed, so a
// sampler and a probe fan never share a stream.
constexpr std::uint64_t seed_domain_samples = 0x53414D50ULL;
constexpr std::uint64_t seed_domain_probes = 0x50524F42ULL;

Eigen::MatrixXd mu_perp_rows(const Eigen::VectorXd& mu) {
    Eigen::MatrixXd mu_col(mu.size(), 1);
    mu_col.col(0) = mu;
    return orthogonal_complement(mu_col).transpose();
}

// Joint system for the ray preimage, with the scale s appended as the last
// ambient variable.
PolySystem ray_system(const ContactSetup& setup, const Eigen::VectorXd& mu) {
    const int n = setup.manifold.ambient_dim;
    std::vector<PolyMap> fs;
    for (const auto& c : setup.manifold.constraints)
        fs.push_back(embed(c, n + 1));
    for (int i = 0; i < static_cast<int>(setup.phi.size()); ++i) {
        PolyMap f = embed(setup.phi[static_cast<std::size_t>(i)], n + 1);
        if (mu[i] != 0.0) {
            PolyMap s_term = PolyMap::coordinate(n + 1, n) * mu[i];
            f = f - s_term;
        }
        fs.push_back(std::move(f));
    }
    return PolySystem(std::move(fs));
}

PolySystem strict_level_system(const ContactSetup& setup, const Eigen::VectorXd& mu) {
    std::vector<PolyMap> fs = setup.manifold.constraints;
    const int n = setup.manifold.ambient_dim;
    for (int i = 0; i < static_cast<int>(setup.phi.size()); ++i)
        fs.push_back(setup.phi[static_cast<std::size_t>(i)] -
                     PolyMap::constant(n, mu[i]));
    return PolySystem(std::move(fs));
}

bool canonical_less(const Eigen::VectorXd& a, double sa, const Eigen::VectorXd& b, double sb) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return sa < sb;
}

// Sort canonically, then keep points pairwise farther apart than
// dedup_radius. The accepted set is a function of the point set alone.
void sort_and_dedup(std::vector<Eigen::VectorXd>& points, std::vector<double>& scales,
                    int keep_at_most) {
    std::vector<int> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    const bool with_scales = !scales.empty();
    std::sort(order.begin(), order.end(), [&](int ia, int ib) {
        return canonical_less(points[ia], with_scales ? scales[ia] : 0.0, points[ib],
                              with_scales ? scales[ib] : 0.0);
    });
    std::vector<Eigen::VectorXd> kept;
    std::vector<double> kept_scales;
    for (int idx : order) {
        if (static_cast<int>(kept.size()) >= keep_at_most)
            break;
        bool fresh = true;
        for (const auto& k : kept) {
            if ((k - points[idx]).norm() <= dedup_radius) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            kept.push_back(points[idx]);
            if (with_scales)
                kept_scales.push_back(scales[idx]);
        }
    }
    points = std::move(kept);
    scales = std::move(kept_scales);
}

Subspace k_mu_basis(const ContactSetup& setup, const Eigen::VectorXd& mu) {
    return kernel_algebra(*setup.action.algebra, mu);
}

// Columns of induced fields for an orthonormal family of algebra elements.
Eigen::MatrixXd algebra_fields(const ContactSetup& setup, const Subspace& elements,
                               const Eigen::VectorXd& x) {
    Eigen::MatrixXd fields(x.size(), elements.cols());
    for (int c = 0; c < elements.cols(); ++c)
        fields.col(c) = generator_field(setup.action, elements.col(c), x);
    return fields;
}

// Natural magnitude of the induced fields at x; vanishing is judged
// against this, not against the largest singular value of the field
// matrix itself.
double field_scale(const ContactSetup& setup, const Subspace& elements,
                   const Eigen::VectorXd& x) {
    double scale = 1.0;
    for (int c = 0; c < elements.cols(); ++c) {
        Eigen::MatrixXd combo =
            Eigen::MatrixXd::Zero(setup.action.ambient_dim(), setup.action.ambient_dim());
        for (int i = 0; i < elements.rows(); ++i)
            if (elements(i, c) != 0.0)
                combo += elements(i, c) * setup.action.generators[static_cast<std::size_t>(i)];
        scale = std::max(scale, combo.norm() * x.norm());
    }
    return scale;
}

constexpr double vanishing_field_rtol = 1e-6;

int field_rank_with_floor(const Eigen::MatrixXd& fields, double scale) {
    if (fields.cols() == 0)
        return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fields);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > vanishing_field_rtol * scale)
            ++rank;
    return rank;
}

// Rows that cut the ray preimage infinitesimally: the moment differential
// projected onto the complement of the mu line.
Eigen::MatrixXd ray_cut_rows(const ContactSetup& setup, const Eigen::VectorXd& mu,
                             const Eigen::VectorXd& x) {
    const Eigen::MatrixXd jphi = moment_jacobian(setup.phi, x);
    return mu_perp_rows(mu) * jphi;
}

int majority_value(const std::vector<int>& values, const char* what) {
    if (values.empty())
        throw SingularityError(std::string(what) + ": no samples to measure");
    std::map<int, int> counts;
    for (int v : values)
        ++counts[v];
    int best = values[0];
    int best_count = 0;
    for (const auto& [v, c] : counts) {
        if (c > best_count) {
            best = v;
            best_count = c;
        }
    }
    const double agreement = static_cast<double>(best_count) / values.size();
    if (agreement < 0.9) {
        std::ostringstream os;
        os << what << ": only " << best_count << " of " << values.size()
           << " samples agree on the value " << best;
        throw SingularityError(os.str());
    }
    return best;
}

std::vector<int> zero_pattern(const Eigen::VectorXd& x, double tol) {
    std::vector<int> pattern;
    for (int j = 0; j * 2 + 1 < x.size(); ++j) {
        if (std::hypot(x[2 * j], x[2 * j + 1]) <= tol)
            pattern.push_back(j);
    }
    return pattern;
}

constexpr double pattern_zero_tol = 1e-6;

std::string pattern_label(const std::vector<int>& pattern, const Eigen::MatrixXi& hnf) {
    std::ostringstream os;
    os << "zeros=[";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i)
            os << ",";
        os << pattern[i];
    }
    os << "];lattice=[";
    for (int r = 0; r < hnf.rows(); ++r) {
        if (r)
            os << ",";
        os << "[";
        for (int c = 0; c < hnf.cols(); ++c) {
            if (c)
                os << ",";
            os << hnf(r, c);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

// Manifold of the fixed locus of a zero pattern: original constraints plus
// the vanishing of both real coordinates of each listed block.
EmbeddedManifold fixed_locus_manifold(const EmbeddedManifold& m, const std::vector<int>& pattern) {
    std::vector<PolyMap> constraints = m.constraints;
    for (int j : pattern) {
        constraints.push_back(PolyMap::coordinate(m.ambient_dim, 2 * j));
        constraints.push_back(PolyMap::coordinate(m.ambient_dim, 2 * j + 1));
    }
    const int dim = m.expected_dim - 2 * static_cast<int>(pattern.size());
    if (dim < 0)
        throw DimensionError("zero pattern kills more dimensions than the manifold has");
    return EmbeddedManifold(m.ambient_dim, std::move(constraints), dim);
}

} // namespace

void set_parallelism(int n) {
    g_parallelism.store(std::clamp(n, 1, 64));
}

int get_parallelism() {
    return g_parallelism.load();
}

void parallel_for(int n, int n_threads, const std::function<void(int)>& fn) {
    if (n <= 0)
        return;
    n_threads = std::clamp(n_threads, 1, n);
    if (n_threads == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t] {
            for (int i = t; i < n; i += n_threads)
                fn(i);
        });
    }
    for (auto& w : workers)
        w.join();
}

ContactSetup make_contact_setup(EmbeddedManifold manifold, Poly1Form alpha, LinearAction action,
                                double bounding_radius, std::optional<Eigen::MatrixXi> weights) {
    if (alpha.ambient_dim != manifold.ambient_dim)
        throw DimensionError("form and manifold live on different ambient spaces");
    if (action.ambient_dim() != manifold.ambient_dim)
        throw DimensionError("action and manifold live on different ambient spaces");
    if (bounding_radius <= 0.0)
        throw DimensionError("bounding radius must be positive");

    // Load-time well-formedness, both as exact coefficient identities:
    // each generator is tangent to every constraint, and each generator
    // preserves the contact form.
    for (std::size_t g = 0; g < action.generators.size(); ++g) {
        const auto field = linear_field(action.generators[g]);
        for (const auto& c : manifold.constraints) {
            const PolyMap drift = poly_dot(c.gradient(), field);
            if (!drift.is_zero())
                throw SingularityError("generator " + std::to_string(g) +
                                       " is not tangent to a constraint (exact check)");
        }
        const Poly1Form lie = lie_derivative_linear(alpha, action.generators[g]);
        for (const auto& coeff : lie.coeffs)
            if (!coeff.is_zero())
                throw SingularityError("generator " + std::to_string(g) +
                                       " does not preserve the contact form (exact check)");
    }

    ContactSetup setup;
    setup.manifold = std::move(manifold);
    setup.alpha = std::move(alpha);
    setup.phi = moment_polynomials(action, setup.alpha);
    setup.action = std::move(action);
    setup.bounding_radius = bounding_radius;
    setup.weights = std::move(weights);
    if (setup.weights && setup.weights->rows() != setup.action.algebra->dim())
        throw DimensionError("weight matrix rows must match the algebra dimension");
    return setup;
}

SampleSet sample_level_ray(const ContactSetup& setup, const Eigen::VectorXd& mu, int n_samples,
                           std::uint64_t seed) {
    if (mu.size() != setup.action.algebra->dim())
        throw DimensionError("mu does not match the algebra dimension");
    if (n_samples <= 0)
        throw DimensionError("sample count must be positive");
    const int n = setup.manifold.ambient_dim;
    const PolySystem system = ray_system(setup, mu);
    const int attempts = std::max(8 * n_samples, 64);

    std::vector<std::optional<std::pair<Eigen::VectorXd, double>>> slots(
        static_cast<std::size_t>(attempts));
    parallel_for(attempts, get_parallelism(), [&](int i) {
        SeedStream stream(seed ^ seed_domain_samples, static_cast<std::uint64_t>(i));
        Eigen::VectorXd start(n + 1);
        start.head(n) = stream.sphere_point(n, setup.bounding_radius);
        start[n] = 1.0;
        const auto solved = newton_project(system, start);
        if (!solved)
            return;
        const double s = (*solved)[n];
        if (s <= sample_scale_floor)
            return;
        if (system.residual(*solved) > sample_keep_tol)
            return;
        slots[static_cast<std::size_t>(i)] = std::make_pair(solved->head(n).eval(), s);
    });

    std::vector<Eigen::VectorXd> points;
    std::vector<double> scales;
    for (const auto& slot : slots) {
        if (slot) {
            points.push_back(slot->first);
            scales.push_back(slot->second);
        }
    }
    sort_and_dedup(points, scales, n_samples);
    SampleSet out;
    out.points = std::move(points);
    out.scales = std::move(scales);
    out.seed = seed;
    return out;
}

SampleSet sample_strict_level(const ContactSetup& setup, const Eigen::VectorXd& mu,
                              int n_samples, std::uint64_t seed,
                              const std::vector<Eigen::VectorXd>& extra_seeds) {
    if (mu.size() != setup.action.algebra->dim())
        throw DimensionError("mu does not match the algebra dimension");
    if (n_samples <= 0)
        throw DimensionError("sample count must be positive");
    const int n = setup.manifold.ambient_dim;
    const PolySystem system = strict_level_system(setup, mu);
    const int random_attempts = std::max(8 * n_samples, 64);
    const int attempts = random_attempts + static_cast<int>(extra_seeds.size());

    // The strict level can be cut out tangentially, where Gauss-Newton
    // converges linearly instead of quadratically; give it more room.
    NewtonOptions opts;
    opts.max_iters = 120;
    opts.tol = 1e-12;

    std::vector<std::optional<Eigen::VectorXd>> slots(static_cast<std::size_t>(attempts));
    parallel_for(attempts, get_parallelism(), [&](int i) {
        Eigen::VectorXd start;
        if (i < static_cast<int>(extra_seeds.size())) {
            start = extra_seeds[static_cast<std::size_t>(i)];
            if (start.size() != n)
                throw DimensionError("extra seed with wrong ambient dimension");
        } else {
            SeedStream stream(seed ^ seed_domain_samples,
                              static_cast<std::uint64_t>(i - extra_seeds.size()));
            start = stream.sphere_point(n, setup.bounding_radius);
        }
        const auto solved = newton_project(system, start, opts);
        if (!solved)
            return;
        if (system.residual(*solved) > sample_keep_tol)
            return;
        slots[static_cast<std::size_t>(i)] = *solved;
    });

    // Seeded witnesses are kept unconditionally and in their given order.
    // Only the random pool goes through the canonical sort, so truncation
    // to n_samples can never push a witness out.
    std::vector<Eigen::VectorXd> points;
    for (std::size_t i = 0; i < extra_seeds.size(); ++i) {
        const auto& slot = slots[i];
        if (!slot)
            continue;
        bool fresh = true;
        for (const auto& k : points)
            if ((k - *slot).norm() <= dedup_radius)
                fresh = false;
        if (fresh)
            points.push_back(*slot);
    }
    std::vector<Eigen::VectorXd> pool;
    std::vector<double> scales;
    for (std::size_t i = extra_seeds.size(); i < slots.size(); ++i)
        if (slots[i])
            pool.push_back(*slots[i]);
    sort_and_dedup(pool, scales, n_samples);
    for (const auto& p : pool) {
        if (static_cast<int>(points.size()) >= n_samples)
            break;
        bool fresh = true;
        for (const auto& k : points)
            if ((k - p).norm() <= dedup_radius)
                fresh = false;
        if (fresh)
            points.push_back(p);
    }
    SampleSet out;
    out.points = std::move(points);
    out.seed = seed;
    return out;
}

bool transversality_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                          const Eigen::VectorXd& point) {
    if (mu.size() != setup.action.algebra->dim())
        throw DimensionError("mu does not match the algebra dimension");
    const TangentFrame frame = tangent_frame(setup.manifold, point);
    const Eigen::MatrixXd jphi = moment_jacobian(setup.phi, point);
    Eigen::MatrixXd test(mu.size(), frame.dim() + 1);
    test.leftCols(frame.dim()) = jphi * frame.basis;
    test.col(frame.dim()) = mu;
    return numerical_rank(test) == static_cast<int>(mu.size());
}

bool locally_free_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                        const Eigen::VectorXd& point) {
    if (!setup.manifold.on_manifold(point, on_manifold_tol))
        throw OffManifoldError("locally-free check off the manifold");
    const Subspace k = k_mu_basis(setup, mu);
    if (k.cols() == 0)
        return true;
    const Eigen::MatrixXd fields = algebra_fields(setup, k, point);
    const double scale = field_scale(setup, k, point);
    return field_rank_with_floor(fields, scale) == static_cast<int>(k.cols());
}

ReducedKernelResult reduced_kernel_check(const ContactSetup& setup, const Eigen::VectorXd& mu,
                                         const Eigen::VectorXd& point) {
    const TangentFrame frame = tangent_frame(setup.manifold, point);
    const int d = frame.dim();

    // T_zZ in frame coordinates: tangent directions whose moment image
    // stays on the mu line, then intersect with ker(alpha).
    const Eigen::MatrixXd cut = ray_cut_rows(setup, mu, point) * frame.basis;
    Eigen::VectorXd alpha_row(d);
    for (int i = 0; i < d; ++i)
        alpha_row[i] = eval_1form(setup.alpha, point, frame.basis.col(i));
    Eigen::MatrixXd stacked(cut.rows() + 1, d);
    stacked.topRows(cut.rows()) = cut;
    stacked.bottomRows(1) = alpha_row.transpose();
    const Eigen::MatrixXd w_coords = nullspace(stacked);
    const Eigen::MatrixXd w = frame.basis * w_coords;  // orthonormal columns

    const Poly2Form da = exterior_derivative(setup.alpha);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(w.cols(), w.cols());
    for (int a = 0; a < w.cols(); ++a)
        for (int b = a + 1; b < w.cols(); ++b) {
            gram(a, b) = eval_2form(da, point, w.col(a), w.col(b));
            gram(b, a) = -gram(a, b);
        }
    // d(alpha) can vanish identically on W when the reduced space is a
    // single Reeb direction, so the kernel cutoff is anchored to the size
    // of the form on ambient pairs rather than to the Gram's own noise.
    const int n = setup.manifold.ambient_dim;
    double form_scale = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            form_scale = std::max(form_scale,
                                  std::abs(eval_2form(da, point, Eigen::VectorXd::Unit(n, i),
                                                      Eigen::VectorXd::Unit(n, j))));
    const Subspace kernel_coords = bilinear_kernel(gram, form_scale);
    const Eigen::MatrixXd kernel = w * kernel_coords;

    const Subspace k = k_mu_basis(setup, mu);
    ReducedKernelResult result;
    result.kernel_dim = static_cast<int>(kernel.cols());
    if (k.cols() == 0) {
        result.orbit_dim = 0;
        result.max_angle = 0.0;
        result.ok = (result.kernel_dim == 0);
        return result;
    }
    const Eigen::MatrixXd fields = algebra_fields(setup, k, point);
    const double scale = field_scale(setup, k, point);
    result.orbit_dim = field_rank_with_floor(fields, scale);
    if (result.orbit_dim != result.kernel_dim) {
        result.max_angle = M_PI / 2.0;
        result.ok = false;
        return result;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fields, Eigen::ComputeThinU);
    const Eigen::MatrixXd orbit_basis = svd.matrixU().leftCols(result.orbit_dim);
    result.max_angle = max_principal_angle(kernel, orbit_basis);
    result.ok = result.max_angle < reduced_kernel_angle_tol;
    return result;
}

int quotient_dimension_formula(int dim_m, int dim_g, int dim_k_mu) {
    return dim_m - (dim_g - 1) - dim_k_mu;
}

QuotientDimResult quotient_dimension(const ContactSetup& setup, const Eigen::VectorXd& mu,
                                     const SampleSet& samples) {
    if (samples.size() == 0)
        throw SingularityError("quotient dimension: empty sample set");
    const Subspace k = k_mu_basis(setup, mu);
    std::vector<int> tangent_dims;
    std::vector<int> orbit_dims;
    for (const auto& x : samples.points) {
        const Eigen::MatrixXd jc = setup.manifold.jacobian(x);
        const Eigen::MatrixXd cut = ray_cut_rows(setup, mu, x);
        Eigen::MatrixXd stacked(jc.rows() + cut.rows(), setup.manifold.ambient_dim);
        stacked.topRows(jc.rows()) = jc;
        stacked.bottomRows(cut.rows()) = cut;
        tangent_dims.push_back(setup.manifold.ambient_dim - numerical_rank(stacked));
        if (k.cols() == 0) {
            orbit_dims.push_back(0);
        } else {
            orbit_dims.push_back(
                field_rank_with_floor(algebra_fields(setup, k, x), field_scale(setup, k, x)));
        }
    }
    QuotientDimResult result;
    result.level_ray_dim = majority_value(tangent_dims, "level ray dimension");
    result.orbit_dim = majority_value(orbit_dims, "orbit dimension");
    result.quotient_dim = result.level_ray_dim - result.orbit_dim;
    result.formula_dim = quotient_dimension_formula(
        setup.manifold.expected_dim, setup.action.algebra->dim(), static_cast<int>(k.cols()));
    result.consistent = (result.quotient_dim == *result.formula_dim);
    return result;
}

Eigen::MatrixXi hermite_normal_form(const Eigen::MatrixXi& m) {
    Eigen::MatrixXi h = m;
    const int rows = static_cast<int>(h.rows());
    const int cols = static_cast<int>(h.cols());
    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows; ++col) {
        // Euclidean reduction: make every entry below the pivot zero.
        while (true) {
            int best = -1;
            for (int r = pivot_row; r < rows; ++r)
                if (h(r, col) != 0 && (best == -1 || std::abs(h(r, col)) < std::abs(h(best, col))))
                    best = r;
            if (best == -1)
                break;
            h.row(pivot_row).swap(h.row(best));
            bool cleared = true;
            for (int r = pivot_row + 1; r < rows; ++r) {
                if (h(r, col) == 0)
                    continue;
                const int q = h(r, col) / h(pivot_row, col);
                h.row(r) -= q * h.row(pivot_row);
                if (h(r, col) != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (h(pivot_row, col) == 0)
            continue;
        if (h(pivot_row, col) < 0)
            h.row(pivot_row) = -h.row(pivot_row);
        // Reduce the entries above the pivot into [0, pivot).
        for (int r = 0; r < pivot_row; ++r) {
            const int q = static_cast<int>(
                std::floor(static_cast<double>(h(r, col)) / h(pivot_row, col)));
            if (q != 0)
                h.row(r) -= q * h.row(pivot_row);
        }
        ++pivot_row;
    }
    return h.topRows(pivot_row);
}

std::vector<StratumRecord> orbit_type_partition(const ContactSetup& setup,
                                                const Eigen::VectorXd& mu,
                                                const SampleSet& samples) {
    if (!setup.weights)
        throw UnsupportedDimensionError("orbit-type partition needs a torus weight matrix");
    if (samples.size() == 0)
        throw SingularityError("orbit-type partition: empty sample set");
    const Eigen::MatrixXi& weights = *setup.weights;
    const Subspace k = k_mu_basis(setup, mu);

    struct Group {
        std::vector<int> pattern;
        std::vector<int> indices;
    };
    std::map<std::string, Group> groups;
    for (int i = 0; i < samples.size(); ++i) {
        const std::vector<int> pattern = zero_pattern(samples.points[static_cast<std::size_t>(i)],
                                                      pattern_zero_tol);
        // Lattice spanned by the weight columns of the blocks that are
        // allowed to move; its Hermite form is the canonical isotropy key.
        std::vector<int> live;
        for (int j = 0; j < weights.cols(); ++j)
            if (std::find(pattern.begin(), pattern.end(), j) == pattern.end())
                live.push_back(j);
        Eigen::MatrixXi rows(static_cast<int>(live.size()), weights.rows());
        for (std::size_t r = 0; r < live.size(); ++r)
            rows.row(static_cast<int>(r)) = weights.col(live[r]).transpose();
        const std::string label = pattern_label(pattern, hermite_normal_form(rows));
        auto& group = groups[label];
        group.pattern = pattern;
        group.indices.push_back(i);
    }

    std::vector<StratumRecord> strata;
    for (const auto& [label, group] : groups) {
        StratumRecord record;
        record.isotropy_label = label;
        record.sample_indices = group.indices;

        const EmbeddedManifold locus = fixed_locus_manifold(setup.manifold, group.pattern);
        std::vector<int> dims;
        std::vector<int> orbit_dims;
        bool contact_everywhere = true;
        for (int idx : group.indices) {
            const Eigen::VectorXd& x = samples.points[static_cast<std::size_t>(idx)];
            const Eigen::MatrixXd jc = locus.jacobian(x);
            const Eigen::MatrixXd cut = ray_cut_rows(setup, mu, x);
            Eigen::MatrixXd stacked(jc.rows() + cut.rows(), locus.ambient_dim);
            stacked.topRows(jc.rows()) = jc;
            stacked.bottomRows(cut.rows()) = cut;
            dims.push_back(locus.ambient_dim - numerical_rank(stacked));
            if (k.cols() == 0) {
                orbit_dims.push_back(0);
            } else {
                orbit_dims.push_back(
                    field_rank_with_floor(algebra_fields(setup, k, x), field_scale(setup, k, x)));
            }
            if (!contact_check(locus, setup.alpha, x).is_contact)
                contact_everywhere = false;
        }
        record.stratum_dim = majority_value(dims, "stratum dimension");
        record.orbit_dim = majority_value(orbit_dims, "stratum orbit dimension");
        record.quotient_dim = record.stratum_dim - record.orbit_dim;
        record.contact_on_stratum = contact_everywhere;
        if (record.quotient_dim < 0)
            throw SingularityError("stratum with negative quotient dimension");
        strata.push_back(std::move(record));
    }
    return strata;
}

namespace {

// Fourier-Motzkin feasibility for { t : rows * t >= bounds }, eliminating
// one variable at a time. Sizes here are tiny (at most three free
// variables, a handful of rows), so the quadratic growth is irrelevant.
bool fm_feasible(std::vector<std::pair<Eigen::VectorXd, double>> ineqs, int n_vars) {
    constexpr double tol = 1e-9;
    for (int v = 0; v < n_vars; ++v) {
        std::vector<std::pair<Eigen::VectorXd, double>> lower, upper, rest;
        for (const auto& [a, c] : ineqs) {
            if (a[v] > tol)
                lower.emplace_back(a, c);
            else if (a[v] < -tol)
                upper.emplace_back(a, c);
            else
                rest.emplace_back(a, c);
        }
        for (const auto& [al, cl] : lower) {
            for (const auto& [au, cu] : upper) {
                // al·t >= cl gives t_v >= ..., au·t >= cu gives t_v <= ...;
                // combine to eliminate t_v.
                Eigen::VectorXd combo = al / al[v] - au / au[v];
                const double bound = cl / al[v] - cu / au[v];
                combo[v] = 0.0;
                rest.emplace_back(combo, bound);
            }
        }
        ineqs = std::move(rest);
    }
    for (const auto& [a, c] : ineqs) {
        (void)a;
        if (c > tol)
            return false;
    }
    return true;
}

// Coefficients q_j and level r of a constraint of the shape
// sum_j q_j |z_j|^2 = r; anything else is rejected.
std::pair<Eigen::VectorXd, double> diagonal_quadric_data(const PolyMap& constraint, int blocks) {
    const int n = constraint.ambient_dim();
    Eigen::VectorXd q = Eigen::VectorXd::Zero(blocks);
    double r = 0.0;
    for (const auto& [exps, coeff] : constraint.terms()) {
        int degree = 0;
        int square_at = -1;
        bool clean = true;
        for (int i = 0; i < n; ++i) {
            degree += exps[i];
            if (exps[i] == 2 && square_at == -1)
                square_at = i;
            else if (exps[i] != 0)
                clean = false;
        }
        if (degree == 0) {
            r = -coeff;
        } else if (degree == 2 && clean && square_at >= 0) {
            q[square_at / 2] += coeff / 2.0;
        } else {
            throw UnsupportedDimensionError(
                "pattern enumeration needs diagonal quadric constraints");
        }
    }
    return {q, r};
}

} // namespace

std::vector<std::vector<int>> enumerate_realizable_patterns(const ContactSetup& setup,
                                                            const Eigen::VectorXd& mu) {
    if (!setup.weights)
        throw UnsupportedDimensionError("pattern enumeration needs a torus weight matrix");
    const Eigen::MatrixXi& weights = *setup.weights;
    const int blocks = setup.manifold.ambient_dim / 2;
    constexpr double strict_margin = 1e-6;

    std::vector<std::pair<Eigen::VectorXd, double>> quadrics;
    for (const auto& c : setup.manifold.constraints)
        quadrics.push_back(diagonal_quadric_data(c, blocks));

    std::vector<std::vector<int>> realizable;
    for (int mask = 0; mask < (1 << blocks); ++mask) {
        std::vector<int> pattern, live;
        for (int j = 0; j < blocks; ++j) {
            if (mask & (1 << j))
                pattern.push_back(j);
            else
                live.push_back(j);
        }
        // Unknowns: squared moduli of live blocks, then the ray scale s.
        const int nu = static_cast<int>(live.size()) + 1;
        const int ne = static_cast<int>(quadrics.size()) + weights.rows();
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(ne, nu);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(ne);
        int row = 0;
        for (const auto& [q, r] : quadrics) {
            for (std::size_t c = 0; c < live.size(); ++c)
                e(row, static_cast<int>(c)) = q[live[c]];
            b[row] = r;
            ++row;
        }
        for (int w = 0; w < weights.rows(); ++w) {
            for (std::size_t c = 0; c < live.size(); ++c)
                e(row, static_cast<int>(c)) = static_cast<double>(weights(w, live[c]));
            e(row, nu - 1) = -mu[w];
            ++row;
        }
        // u >= margin on every unknown, on the affine solution set of e u = b.
        const Eigen::VectorXd particular = least_squares(e, b);
        if ((e * particular - b).cwiseAbs().maxCoeff() > 1e-9)
            continue;  // equalities inconsistent
        const Eigen::MatrixXd free_dirs = nullspace(e);
        std::vector<std::pair<Eigen::VectorXd, double>> ineqs;
        for (int i = 0; i < nu; ++i) {
            Eigen::VectorXd a(free_dirs.cols());
            for (int t = 0; t < free_dirs.cols(); ++t)
                a[t] = free_dirs(i, t);
            ineqs.emplace_back(a, strict_margin - particular[i]);
        }
        if (fm_feasible(std::move(ineqs), static_cast<int>(free_dirs.cols())))
            realizable.push_back(pattern);
    }
    std::sort(realizable.begin(), realizable.end());
    return realizable;
}

int empirical_tangent_dim(const PolySystem& system, const Eigen::VectorXd& point,
                          std::uint64_t seed) {
    const int n = system.ambient_dim();
    if (point.size() != n)
        throw DimensionError("tangent probe point has wrong ambient dimension");
    constexpr double probe_eps = 1e-4;
    const int probes = std::max(2 * n + 2, 14);

    NewtonOptions opts;
    opts.max_iters = 120;
    opts.tol = 3e-14;

    // The base point must sit on the set to the probe tolerance, not just
    // to the looser sampling tolerance: a base offset of 1e-7 divided by
    // the probe scale is 1e-3 in every column, which accumulates into a
    // spurious direction. Probes are also centered below for the same
    // reason.
    const Eigen::VectorXd base = newton_project(system, point, opts).value_or(point);

    std::vector<std::optional<Eigen::VectorXd>> slots(static_cast<std::size_t>(probes));
    parallel_for(probes, 1, [&](int p) {
        SeedStream stream(seed ^ seed_domain_probes, static_cast<std::uint64_t>(p));
        const Eigen::VectorXd dir = stream.sphere_point(n, 1.0);
        const auto projected = newton_project(system, base + probe_eps * dir, opts);
        if (!projected)
            return;
        const Eigen::VectorXd delta = (*projected - base) / probe_eps;
        if (delta.norm() > 10.0)
            return;  // wandered to a far part of the set
        slots[static_cast<std::size_t>(p)] = delta;
    });

    std::vector<Eigen::VectorXd> deltas;
    for (const auto& s : slots)
        if (s)
            deltas.push_back(*s);
    if (static_cast<int>(deltas.size()) < std::max(4, n / 2))
        throw ConvergenceError("tangent dimension probes mostly failed to reproject");

    Eigen::MatrixXd d(n, static_cast<int>(deltas.size()));
    for (std::size_t c = 0; c < deltas.size(); ++c)
        d.col(static_cast<int>(c)) = deltas[c];
    d.colwise() -= d.rowwise().mean().eval();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] < 1e-3)
        return 0;  // every probe snapped back: isolated point
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > 1e-2 * sv[0])
            ++rank;
    return rank;
}

AlbertRecord albert_reduce(const ContactSetup& setup, const Eigen::VectorXd& mu, int n_samples,
                           std::uint64_t seed, const std::vector<Eigen::VectorXd>& extra_seeds) {
    AlbertRecord record;
    record.level_samples = sample_strict_level(setup, mu, n_samples, seed, extra_seeds);
    if (record.level_samples.size() == 0)
        throw SingularityError("strict level is empty or unreachable: mu is not attained");

    const PolySystem level = strict_level_system(setup, mu);

    // Rank decisions below happen at a tighter residual than the sampling
    // contract requires: a generator field that vanishes on the level can
    // be as small as the sample's own offset from it.
    NewtonOptions refine;
    refine.max_iters = 120;
    refine.tol = 3e-14;
    for (auto& x : record.level_samples.points)
        x = newton_project(level, x, refine).value_or(x);

    std::vector<int> dims;
    record.max_residual = 0.0;
    for (int i = 0; i < record.level_samples.size(); ++i) {
        const Eigen::VectorXd& x = record.level_samples.points[static_cast<std::size_t>(i)];
        record.max_residual = std::max(record.max_residual, level.residual(x));
        dims.push_back(empirical_tangent_dim(level, x, seed + static_cast<std::uint64_t>(i)));
    }
    record.level_dim = majority_value(dims, "strict level dimension");

    const int g = setup.action.algebra->dim();
    std::vector<int> orbit_dims;
    for (const auto& x : record.level_samples.points) {
        const Eigen::VectorXd reeb = reeb_field(setup.manifold, setup.alpha, x);
        Eigen::MatrixXd fields(x.size(), g);
        double scale = 1.0;
        for (int i = 0; i < g; ++i) {
            Eigen::VectorXd basis_vec = Eigen::VectorXd::Zero(g);
            basis_vec[i] = 1.0;
            const Eigen::VectorXd raw = generator_field(setup.action, basis_vec, x);
            fields.col(i) = raw - mu[i] * reeb;
            scale = std::max(scale, raw.norm() + std::abs(mu[i]) * reeb.norm());
        }
        orbit_dims.push_back(field_rank_with_floor(fields, scale));
    }
    record.albert_orbit_dim = majority_value(orbit_dims, "modified orbit dimension");
    record.albert_quotient_dim = record.level_dim - record.albert_orbit_dim;
    return record;
}

GsDimensionReport gs_dimension_report(int dim_m, const LieAlgebraData& algebra,
                                      const Eigen::VectorXd& mu, int orbit_dim) {
    if (mu.size() != algebra.dim())
        throw DimensionError("mu does not match the algebra dimension");
    if (orbit_dim < 0 || orbit_dim > algebra.dim())
        throw DimensionError("orbit dimension out of range");
    GsDimensionReport report;
    const Subspace k = kernel_algebra(algebra, mu);
    report.fiber_dim =
        quotient_dimension_formula(dim_m, algebra.dim(), static_cast<int>(k.cols()));
    report.orbit_dim = orbit_dim;
    report.gs_total_dim = report.fiber_dim + orbit_dim;
    if (algebra.is_torus()) {
        bool integral = true;
        for (int i = 0; i < mu.size(); ++i)
            if (std::abs(mu[i] - std::round(mu[i])) > 1e-9)
                integral = false;
        report.integral = integral;
    }
    return report;
}

} // namespace contactred
