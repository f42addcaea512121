#include "contactred/manifold.hpp"

#include "contactred/error.hpp"
#include "contactred/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace contactred {

EmbeddedManifold::EmbeddedManifold(int ambient, std::vector<PolyMap> cons, int dim)
    : ambient_dim(ambient), constraints(std::move(cons)), expected_dim(dim) {
    if (expected_dim < 0 || expected_dim > ambient_dim)
        throw DimensionError("expected manifold dimension out of range");
    for (const auto& c : constraints)
        if (c.ambient_dim() != ambient_dim)
            throw DimensionError("constraint with wrong ambient dimension");
}

EmbeddedManifold EmbeddedManifold::ellipsoid(const Eigen::VectorXd& block_coeffs, double r) {
    const int blocks = static_cast<int>(block_coeffs.size());
    const int n = 2 * blocks;
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < blocks; ++j) {
        q(2 * j, 2 * j) = block_coeffs[j];
        q(2 * j + 1, 2 * j + 1) = block_coeffs[j];
    }
    PolyMap c = PolyMap::quadratic_form(q) - PolyMap::constant(n, r);
    return EmbeddedManifold(n, {c}, n - 1);
}

double EmbeddedManifold::residual(const Eigen::VectorXd& point) const {
    if (point.size() != ambient_dim)
        throw DimensionError("residual of a point with wrong ambient dimension");
    double worst = 0.0;
    for (const auto& c : constraints)
        worst = std::max(worst, std::abs(c.eval(point)));
    return worst;
}

bool EmbeddedManifold::on_manifold(const Eigen::VectorXd& point, double tol) const {
    return residual(point) <= tol;
}

Eigen::MatrixXd EmbeddedManifold::jacobian(const Eigen::VectorXd& point) const {
    Eigen::MatrixXd j(constraint_count(), ambient_dim);
    for (int r = 0; r < constraint_count(); ++r)
        for (int c = 0; c < ambient_dim; ++c)
            j(r, c) = constraints[r].derivative(c).eval(point);
    return j;
}

TangentFrame tangent_frame(const EmbeddedManifold& m, const Eigen::VectorXd& point) {
    if (point.size() != m.ambient_dim)
        throw DimensionError("tangent frame at a point with wrong ambient dimension");
    if (!m.on_manifold(point, on_manifold_tol))
        throw OffManifoldError("tangent frame requested off the constraint locus, residual " +
                               std::to_string(m.residual(point)));
    TangentFrame frame;
    frame.point = point;
    if (m.constraint_count() == 0) {
        frame.basis = Eigen::MatrixXd::Identity(m.ambient_dim, m.ambient_dim);
        return frame;
    }
    const Eigen::MatrixXd j = m.jacobian(point);
    frame.basis = nullspace(j);
    if (frame.dim() != m.expected_dim)
        throw SingularityError("constraint Jacobian nullity " + std::to_string(frame.dim()) +
                               " does not match expected dimension " +
                               std::to_string(m.expected_dim));
    return frame;
}

namespace {

// Pfaffian of a (small) antisymmetric matrix by first-row expansion.
double pfaffian(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (n % 2 != 0)
        return 0.0;
    if (n == 0)
        return 1.0;
    if (n == 2)
        return a(0, 1);
    double total = 0.0;
    for (int j = 1; j < n; ++j) {
        if (a(0, j) == 0.0)
            continue;
        // Minor with rows/cols 0 and j removed.
        Eigen::MatrixXd minor(n - 2, n - 2);
        int rr = 0;
        for (int r = 1; r < n; ++r) {
            if (r == j)
                continue;
            int cc = 0;
            for (int c = 1; c < n; ++c) {
                if (c == j)
                    continue;
                minor(rr, cc) = a(r, c);
                ++cc;
            }
            ++rr;
        }
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        total += sign * a(0, j) * pfaffian(minor);
    }
    return total;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

} // namespace

ContactCheckResult contact_check(const EmbeddedManifold& m, const Poly1Form& alpha,
                                 const Eigen::VectorXd& point, double volume_tol) {
    if (alpha.ambient_dim != m.ambient_dim)
        throw DimensionError("contact check with a form of wrong ambient dimension");
    if (m.expected_dim % 2 != 1)
        throw DimensionError("contact check on an even-dimensional manifold");
    if (m.expected_dim > 7)
        throw UnsupportedDimensionError(
            "contact check by exhaustive antisymmetrization is limited to dimension 7");
    const TangentFrame frame = tangent_frame(m, point);
    const int d = frame.dim();
    const int n = (d - 1) / 2;

    Eigen::VectorXd alpha_vals(d);
    for (int i = 0; i < d; ++i)
        alpha_vals[i] = eval_1form(alpha, point, frame.basis.col(i));

    const Poly2Form da = exterior_derivative(alpha);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            gram(i, j) = eval_2form(da, point, frame.basis.col(i), frame.basis.col(j));
            gram(j, i) = -gram(i, j);
        }

    // (α ∧ (dα)^n)(e_1..e_d) = Σ_i (-1)^{i-1} α(e_i) · (dα)^n(e_1..ê_i..e_d),
    // and (dα)^n on 2n vectors equals n! times the Pfaffian of its Gram matrix.
    double volume = 0.0;
    const double nfact = factorial(n);
    for (int i = 0; i < d; ++i) {
        if (alpha_vals[i] == 0.0)
            continue;
        Eigen::MatrixXd minor(d - 1, d - 1);
        int rr = 0;
        for (int r = 0; r < d; ++r) {
            if (r == i)
                continue;
            int cc = 0;
            for (int c = 0; c < d; ++c) {
                if (c == i)
                    continue;
                minor(rr, cc) = gram(r, c);
                ++cc;
            }
            ++rr;
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        volume += sign * alpha_vals[i] * nfact * pfaffian(minor);
    }

    ContactCheckResult result;
    result.volume = volume;
    result.is_contact = std::abs(volume) > volume_tol;
    return result;
}

Eigen::VectorXd reeb_field(const EmbeddedManifold& m, const Poly1Form& alpha,
                           const Eigen::VectorXd& point) {
    const ContactCheckResult contact = contact_check(m, alpha, point);
    if (!contact.is_contact)
        throw SingularityError("Reeb system singular: contact condition fails at the point");
    const TangentFrame frame = tangent_frame(m, point);
    const int d = frame.dim();

    // Unknown coefficients c with Y = Σ c_k e_k:
    //   α(Y) = 1  and  dα(Y, e_i) = 0 for every frame vector e_i.
    Eigen::MatrixXd system(d + 1, d);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    const Poly2Form da = exterior_derivative(alpha);
    for (int k = 0; k < d; ++k)
        system(0, k) = eval_1form(alpha, point, frame.basis.col(k));
    rhs[0] = 1.0;
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            system(i + 1, k) = eval_2form(da, point, frame.basis.col(k), frame.basis.col(i));

    const Eigen::VectorXd c = least_squares(system, rhs);
    const double residual = (system * c - rhs).cwiseAbs().maxCoeff();
    if (residual > 1e-9)
        throw SingularityError("Reeb system residual " + std::to_string(residual) +
                               " exceeds 1e-9");
    return frame.basis * c;
}

} // namespace contactred
