#include "contactred/newton.hpp"

#include "contactred/error.hpp"
#include "contactred/linalg.hpp"

#include <cmath>

namespace contactred {

PolySystem::PolySystem(std::vector<PolyMap> functions) : functions_(std::move(functions)) {
    if (functions_.empty())
        throw DimensionError("polynomial system with no equations");
    dim_ = functions_[0].ambient_dim();
    for (const auto& f : functions_) {
        if (f.ambient_dim() != dim_)
            throw DimensionError("polynomial system with mixed ambient dimensions");
        gradients_.push_back(f.gradient());
    }
}

Eigen::VectorXd PolySystem::eval(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(size());
    for (int i = 0; i < size(); ++i)
        out[i] = functions_[i].eval(x);
    return out;
}

double PolySystem::residual(const Eigen::VectorXd& x) const {
    return eval(x).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd PolySystem::jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd j(size(), dim_);
    for (int i = 0; i < size(); ++i)
        for (int c = 0; c < dim_; ++c)
            j(i, c) = gradients_[i][c].eval(x);
    return j;
}

std::optional<Eigen::VectorXd> newton_project(const PolySystem& system,
                                              const Eigen::VectorXd& start,
                                              const NewtonOptions& opts) {
    if (start.size() != system.ambient_dim())
        throw DimensionError("Newton start point has wrong ambient dimension");
    Eigen::VectorXd x = start;
    Eigen::VectorXd f = system.eval(x);
    double fnorm = f.cwiseAbs().maxCoeff();
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        if (fnorm <= opts.tol)
            return x;
        const Eigen::MatrixXd j = system.jacobian(x);
        const Eigen::VectorXd step = least_squares(j, -f);
        if (!step.allFinite())
            return std::nullopt;
        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < opts.max_backtracks; ++bt) {
            const Eigen::VectorXd candidate = x + lambda * step;
            const Eigen::VectorXd fc = system.eval(candidate);
            const double cnorm = fc.cwiseAbs().maxCoeff();
            if (cnorm < fnorm) {
                x = candidate;
                f = fc;
                fnorm = cnorm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            return std::nullopt;
    }
    return fnorm <= opts.tol ? std::optional<Eigen::VectorXd>(x) : std::nullopt;
}

PolyMap embed(const PolyMap& p, int new_dim) {
    if (new_dim < p.ambient_dim())
        throw DimensionError("embed target dimension smaller than the source");
    PolyMap out(new_dim);
    for (const auto& [exps, coeff] : p.terms()) {
        MultiIndex e(new_dim, 0);
        for (int i = 0; i < p.ambient_dim(); ++i)
            e[i] = exps[i];
        out.add_term(e, coeff);
    }
    return out;
}

std::optional<Eigen::VectorXd> project_to_manifold(const EmbeddedManifold& m,
                                                   const Eigen::VectorXd& start,
                                                   const NewtonOptions& opts) {
    if (m.constraint_count() == 0)
        return start;
    const PolySystem system(m.constraints);
    return newton_project(system, start, opts);
}

} // namespace contactred
