#include "contactred/action.hpp"

#include "contactred/error.hpp"
#include "contactred/newton.hpp"

#include <cmath>
#include <string>

namespace contactred {

LinearAction::LinearAction(AlgebraPtr alg, std::vector<Eigen::MatrixXd> gens)
    : algebra(std::move(alg)), generators(std::move(gens)) {
    if (!algebra)
        throw DimensionError("action without an algebra");
    if (static_cast<int>(generators.size()) != algebra->dim())
        throw DimensionError("action needs one generator per algebra basis element");
    const int n = ambient_dim();
    double scale = 1.0;
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw DimensionError("generator matrices must be square and of equal size");
        scale = std::max(scale, g.cwiseAbs().maxCoeff());
    }
    // The generator map must be a homomorphism: [M_i, M_j] = sum_k c(i,j,k) M_k.
    for (int i = 0; i < algebra->dim(); ++i) {
        for (int j = i + 1; j < algebra->dim(); ++j) {
            Eigen::MatrixXd lhs = generators[i] * generators[j] - generators[j] * generators[i];
            for (int k = 0; k < algebra->dim(); ++k) {
                const Rational& cijk = algebra->c(i, j, k);
                if (!cijk.is_zero())
                    lhs -= cijk.to_double() * generators[k];
            }
            if (lhs.cwiseAbs().maxCoeff() > 1e-12 * scale * scale)
                throw SingularityError("generators do not represent the algebra: commutator (" +
                                       std::to_string(i) + ", " + std::to_string(j) +
                                       ") mismatch");
        }
    }
}

Eigen::MatrixXd rotation_generator(const Eigen::VectorXd& block_weights) {
    const int blocks = static_cast<int>(block_weights.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * blocks, 2 * blocks);
    for (int j = 0; j < blocks; ++j) {
        m(2 * j, 2 * j + 1) = -block_weights[j];
        m(2 * j + 1, 2 * j) = block_weights[j];
    }
    return m;
}

LinearAction torus_action(const AlgebraPtr& algebra, const Eigen::MatrixXi& weights) {
    if (!algebra || !algebra->is_torus() || algebra->dim() != weights.rows())
        throw DimensionError("torus action needs a torus algebra matching the weight rows");
    std::vector<Eigen::MatrixXd> gens;
    gens.reserve(weights.rows());
    for (int r = 0; r < weights.rows(); ++r)
        gens.push_back(rotation_generator(weights.row(r).cast<double>().transpose()));
    return LinearAction(algebra, std::move(gens));
}

Eigen::VectorXd generator_field(const LinearAction& action, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& x) {
    if (a.size() != action.algebra->dim())
        throw DimensionError("algebra element does not match the action's algebra");
    if (x.size() != action.ambient_dim())
        throw DimensionError("point does not match the action's ambient dimension");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < a.size(); ++i)
        if (a[i] != 0.0)
            out += a[i] * (action.generators[i] * x);
    return out;
}

std::vector<PolyMap> moment_polynomials(const LinearAction& action, const Poly1Form& alpha) {
    if (alpha.ambient_dim != action.ambient_dim())
        throw DimensionError("form and action live on different ambient spaces");
    std::vector<PolyMap> phi;
    phi.reserve(action.generators.size());
    for (const auto& g : action.generators)
        phi.push_back(pair_with_linear_field(alpha, g));
    return phi;
}

MomentValue moment_map(const std::vector<PolyMap>& phi, const Eigen::VectorXd& x) {
    MomentValue out(static_cast<int>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i)
        out[static_cast<int>(i)] = phi[i].eval(x);
    return out;
}

Eigen::MatrixXd moment_jacobian(const std::vector<PolyMap>& phi, const Eigen::VectorXd& x) {
    if (phi.empty())
        throw DimensionError("moment jacobian of an empty component list");
    Eigen::MatrixXd j(static_cast<int>(phi.size()), x.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (int c = 0; c < x.size(); ++c)
            j(static_cast<int>(i), c) = phi[i].derivative(c).eval(x);
    return j;
}

MomentValue symplectization_moment(const MomentValue& phi, double t) {
    return std::exp(t) * phi;
}

MomentDifferentialResult moment_differential_check(const LinearAction& action,
                                                   const Poly1Form& alpha,
                                                   const std::vector<PolyMap>& phi,
                                                   const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& v,
                                                   const Eigen::VectorXd& a) {
    MomentDifferentialResult r;
    // <dPhi_x(v), a> = sum_i a_i * grad(Phi_i)(x) . v
    double lhs = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0)
            continue;
        double directional = 0.0;
        for (int c = 0; c < x.size(); ++c)
            directional += phi[static_cast<std::size_t>(i)].derivative(c).eval(x) * v[c];
        lhs += a[i] * directional;
    }
    r.lhs = lhs;
    const Poly2Form da = exterior_derivative(alpha);
    r.rhs = eval_2form(da, x, v, generator_field(action, a, x));
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

FlowResult reeb_flow_level_invariance(const EmbeddedManifold& m, const Poly1Form& alpha,
                                      const std::vector<PolyMap>& phi,
                                      const Eigen::VectorXd& start, double total_time) {
    if (total_time <= 0.0)
        throw DimensionError("flow needs a positive time horizon");
    if (!m.on_manifold(start, on_manifold_tol))
        throw OffManifoldError("flow start point is off the manifold");

    const PolySystem constraints(m.constraints);
    NewtonOptions project_opts;
    project_opts.max_iters = 5;
    project_opts.tol = 1e-12;
    auto project = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        const auto projected = newton_project(constraints, y, project_opts);
        if (!projected)
            throw ConvergenceError("flow reprojection did not converge");
        return *projected;
    };
    auto field = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return reeb_field(m, alpha, project(y));
    };

    const MomentValue level0 = moment_map(phi, start);
    FlowResult result;
    result.max_level_deviation = 0.0;
    result.max_constraint_residual = 0.0;

    const double h = 1e-3 * total_time;
    const int steps = 1000;
    Eigen::VectorXd x = start;
    for (int s = 0; s < steps; ++s) {
        const Eigen::VectorXd k1 = field(x);
        const Eigen::VectorXd k2 = field(x + 0.5 * h * k1);
        const Eigen::VectorXd k3 = field(x + 0.5 * h * k2);
        const Eigen::VectorXd k4 = field(x + h * k3);
        Eigen::VectorXd next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        result.max_constraint_residual =
            std::max(result.max_constraint_residual, m.residual(next));
        x = project(next);
        const MomentValue level = moment_map(phi, x);
        const double deviation = (level - level0).cwiseAbs().maxCoeff();
        result.max_level_deviation = std::max(result.max_level_deviation, deviation);
    }
    result.endpoint = x;
    return result;
}

} // namespace contactred
