#pragma once

#include "contactred/manifold.hpp"
#include "contactred/polynomial.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace contactred {

// Polynomial system F : R^n -> R^m with cached gradients.
// Built once, evaluated many times across Newton runs.
class PolySystem {
public:
    explicit PolySystem(std::vector<PolyMap> functions);

    int ambient_dim() const { return dim_; }
    int size() const { return static_cast<int>(functions_.size()); }
    const std::vector<PolyMap>& functions() const { return functions_; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
    // max |F_i(x)|
    double residual(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

private:
    int dim_;
    std::vector<PolyMap> functions_;
    std::vector<std::vector<PolyMap>> gradients_;
};

struct NewtonOptions {
    int max_iters = 50;
    double tol = 1e-12;       // convergence on max |F_i|
    int max_backtracks = 40;  // step halvings per iteration
};

// Damped Gauss-Newton projection onto {F = 0}: least-squares steps with
// residual-decrease backtracking. Returns nullopt when the residual target
// is not reached; callers treat that as "discard this seed", not an error.
// Quadratically degenerate zero sets converge linearly here, which the
// iteration budget covers for the catalog systems.
std::optional<Eigen::VectorXd> newton_project(const PolySystem& system,
                                              const Eigen::VectorXd& start,
                                              const NewtonOptions& opts = {});

// Same polynomial, one ambient variable appended (used to adjoin the ray
// scale as an unknown).
PolyMap embed(const PolyMap& p, int new_dim);

// Projection onto a manifold's constraint locus.
std::optional<Eigen::VectorXd> project_to_manifold(const EmbeddedManifold& m,
                                                   const Eigen::VectorXd& start,
                                                   const NewtonOptions& opts = {});

} // namespace contactred
