#pragma once

#include "contactred/forms.hpp"
#include "contactred/polynomial.hpp"

#include <Eigen/Core>

#include <vector>

namespace contactred {

// Level set of polynomial constraints in R^N. expected_dim is what the
// constraints are supposed to cut out; operations cross-check it against
// the measured rank and refuse to continue at singular points.
struct EmbeddedManifold {
    int ambient_dim = 0;
    std::vector<PolyMap> constraints;
    int expected_dim = 0;

    EmbeddedManifold() = default;
    EmbeddedManifold(int ambient, std::vector<PolyMap> cons, int dim);

    // Ellipsoid  sum_j a_j |z_j|^2 = r  in interleaved complex coordinates,
    // with one coefficient per complex block.
    static EmbeddedManifold ellipsoid(const Eigen::VectorXd& block_coeffs, double r);

    int constraint_count() const { return static_cast<int>(constraints.size()); }

    // Max |c_i(point)| over all constraints.
    double residual(const Eigen::VectorXd& point) const;

    bool on_manifold(const Eigen::VectorXd& point, double tol = 1e-8) const;

    // Jacobian of the constraints, one row per constraint.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& point) const;
};

// Orthonormal tangent basis at a point, columns of `basis`.
struct TangentFrame {
    Eigen::VectorXd point;
    Eigen::MatrixXd basis;

    int dim() const { return static_cast<int>(basis.cols()); }
};

// Admission tolerance for "this point lies on the manifold".
inline constexpr double on_manifold_tol = 1e-8;

// Orthonormal basis of ker(J) at an on-manifold point. Throws
// OffManifoldError off the constraint locus and SingularityError when the
// measured nullity disagrees with expected_dim.
TangentFrame tangent_frame(const EmbeddedManifold& m, const Eigen::VectorXd& point);

struct ContactCheckResult {
    bool is_contact = false;
    // Value of α ∧ (dα)^n on the orthonormal frame. The sign is basis
    // dependent; only |volume| carries meaning across calls.
    double volume = 0.0;
};

// Default threshold on |volume| below which the form fails the check.
inline constexpr double contact_volume_tol = 1e-9;

// Evaluates the top form α ∧ (dα)^n on the tangent frame at a point of an
// odd-dimensional manifold, by expanding over the α slot and taking
// Pfaffians of the dα Gram matrix with one frame vector removed. Exact
// antisymmetrization, practical because scenario dimensions stop at 7;
// beyond that the call raises UnsupportedDimensionError.
ContactCheckResult contact_check(const EmbeddedManifold& m, const Poly1Form& alpha,
                                 const Eigen::VectorXd& point,
                                 double volume_tol = contact_volume_tol);

// The unique tangent field Y with α(Y) = 1 and dα(Y, ·) = 0 on the tangent
// space, solved from the frame Gram system and verified to residual 1e-9.
// Throws SingularityError when the system is degenerate (the contact
// condition fails at the point).
Eigen::VectorXd reeb_field(const EmbeddedManifold& m, const Poly1Form& alpha,
                           const Eigen::VectorXd& point);

} // namespace contactred
