#pragma once

#include "contactred/forms.hpp"
#include "contactred/lie_algebra.hpp"
#include "contactred/manifold.hpp"

#include <Eigen/Core>

#include <vector>

namespace contactred {

// Linear group action presented infinitesimally: one generator matrix per
// algebra basis element, acting on the ambient space. Construction verifies
// that generator commutators reproduce the structure constants.
struct LinearAction {
    AlgebraPtr algebra;
    std::vector<Eigen::MatrixXd> generators;

    LinearAction() = default;
    LinearAction(AlgebraPtr alg, std::vector<Eigen::MatrixXd> gens);

    int ambient_dim() const {
        return generators.empty() ? 0 : static_cast<int>(generators[0].rows());
    }
};

// Rotation generator for a circle acting on interleaved complex coordinates
// with the given per-block integer weights: block j is w_j * [[0,-1],[1,0]].
Eigen::MatrixXd rotation_generator(const Eigen::VectorXd& block_weights);

// Torus action from an integer weight matrix, one row per torus factor.
LinearAction torus_action(const AlgebraPtr& algebra, const Eigen::MatrixXi& weights);

// Induced field of the algebra element a at x: (sum_i a_i M_i) x.
Eigen::VectorXd generator_field(const LinearAction& action, const Eigen::VectorXd& a,
                                const Eigen::VectorXd& x);

using MomentValue = Eigen::VectorXd;

// Components <Phi, b_i> = alpha(b_i-field) as exact polynomials.
std::vector<PolyMap> moment_polynomials(const LinearAction& action, const Poly1Form& alpha);

MomentValue moment_map(const std::vector<PolyMap>& phi, const Eigen::VectorXd& x);

// Rows are the exact coefficient gradients of the moment components.
Eigen::MatrixXd moment_jacobian(const std::vector<PolyMap>& phi, const Eigen::VectorXd& x);

// Moment of the symplectization cone coordinate t over a contact moment
// value: e^t Phi.
MomentValue symplectization_moment(const MomentValue& phi, double t);

struct MomentDifferentialResult {
    double lhs = 0.0;  // <dPhi_x(v), a>, exact coefficient derivative route
    double rhs = 0.0;  // dalpha(v, a-field at x)
    double gap = 0.0;
};

// The defining identity of the contact moment map, both sides evaluated
// independently at one (point, tangent vector, algebra element) triple.
MomentDifferentialResult moment_differential_check(const LinearAction& action,
                                                   const Poly1Form& alpha,
                                                   const std::vector<PolyMap>& phi,
                                                   const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& v,
                                                   const Eigen::VectorXd& a);

struct FlowResult {
    Eigen::VectorXd endpoint;
    double max_level_deviation = 0.0;      // max_i max_t |Phi_i(x(t)) - Phi_i(x(0))|
    double max_constraint_residual = 0.0;  // worst drift before reprojection
};

// Integrates the Reeb field with classical RK4 at fixed step h = 1e-3 * T.
// Every stage point and every accepted step is reprojected onto the
// constraint locus (Newton, at most 5 iterations, tolerance 1e-12) before
// the field is evaluated, since the Reeb solve is only defined on the
// manifold. Records the moment deviation along the whole trajectory.
FlowResult reeb_flow_level_invariance(const EmbeddedManifold& m, const Poly1Form& alpha,
                                      const std::vector<PolyMap>& phi,
                                      const Eigen::VectorXd& start, double total_time);

} // namespace contactred
