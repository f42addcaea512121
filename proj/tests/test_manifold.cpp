// Constraint loci, tangent frames, the contact volume, and the Reeb
// solve, checked on spheres and ellipsoids where every answer is known in
// closed form.

#include <doctest.h>

#include "contactred/error.hpp"
#include "contactred/forms.hpp"
#include "contactred/manifold.hpp"
#include "contactred/rng.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace contactred;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

// Random point with sum_j a_j |z_j|^2 = r, by radial scaling; exact up to
// one rounding step, so well inside the admission tolerance.
Eigen::VectorXd ellipsoid_point(const Eigen::VectorXd& block_coeffs, double r,
                                SeedStream& stream) {
    const int n = 2 * static_cast<int>(block_coeffs.size());
    const Eigen::VectorXd s = stream.sphere_point(n, 1.0);
    double q = 0.0;
    for (int j = 0; j < block_coeffs.size(); ++j)
        q += block_coeffs[j] * (s[2 * j] * s[2 * j] + s[2 * j + 1] * s[2 * j + 1]);
    return std::sqrt(r / q) * s;
}

} // namespace

TEST_SUITE("manifold") {

TEST_CASE("ellipsoid factory pins the constraint polynomial") {
    const EmbeddedManifold e = EmbeddedManifold::ellipsoid(vec({1, 2, 2}), 1.0);
    CHECK(e.ambient_dim == 6);
    CHECK(e.expected_dim == 5);
    REQUIRE(e.constraint_count() == 1);

    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(6, 6);
    q.diagonal() << 1, 1, 2, 2, 2, 2;
    CHECK(e.constraints[0] ==
          PolyMap::quadratic_form(q) - PolyMap::constant(6, 1.0));

    const Eigen::VectorXd p = vec({1, 0, 0, 0, 0, 0});
    CHECK(e.residual(p) == 0.0);
    CHECK(e.on_manifold(p));
    CHECK(!e.on_manifold(1.1 * p));
    CHECK(e.jacobian(p).row(0).isApprox(2.0 * p.transpose(), 1e-15));
}

TEST_CASE("tangent frame is orthonormal and annihilates the gradient") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    SeedStream stream(2024, 0);
    const Eigen::VectorXd p = ellipsoid_point(vec({1, 1}), 1.0, stream);
    const TangentFrame frame = tangent_frame(s3, p);
    REQUIRE(frame.dim() == 3);
    CHECK((frame.basis.transpose() * frame.basis - Eigen::MatrixXd::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    CHECK((frame.basis.transpose() * p).cwiseAbs().maxCoeff() < 1e-13);

    CHECK_THROWS_AS(tangent_frame(s3, vec({2, 0, 0, 0})), OffManifoldError);
}

TEST_CASE("tangent frame refuses singular points") {
    // x^2 + y^2 = 0 cuts out the origin, where the Jacobian drops rank.
    const PolyMap c = PolyMap::quadratic_form(Eigen::MatrixXd::Identity(2, 2));
    const EmbeddedManifold degenerate(2, {c}, 1);
    CHECK_THROWS_AS(tangent_frame(degenerate, vec({0, 0})), SingularityError);
}

TEST_CASE("contact volume on the round 3-sphere is 2 everywhere") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    SeedStream stream(7, 1);
    for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXd p = ellipsoid_point(vec({1, 1}), 1.0, stream);
        const ContactCheckResult r = contact_check(s3, alpha, p);
        CHECK(r.is_contact);
        CHECK(std::abs(r.volume) == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("contact volume on the (1,2,2) ellipsoid at a pinned point") {
    // At (1, 0, 0, 0, 0, 0): alpha restricted to the frame is dy_1, and
    // the dalpha Gram on the remaining blocks contributes 2! * Pf = 8.
    const EmbeddedManifold e = EmbeddedManifold::ellipsoid(vec({1, 2, 2}), 1.0);
    const Poly1Form alpha = Poly1Form::standard_contact(6);
    const ContactCheckResult r = contact_check(e, alpha, vec({1, 0, 0, 0, 0, 0}));
    CHECK(r.is_contact);
    CHECK(std::abs(r.volume) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("a degenerate 1-form fails the contact check") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    Poly1Form beta(4);
    beta.coeffs[1] = PolyMap::constant(4, 1.0);  // beta = dy_1, so dbeta = 0
    const ContactCheckResult r = contact_check(s3, beta, vec({1, 0, 0, 0}));
    CHECK(!r.is_contact);
    CHECK(std::abs(r.volume) < contact_volume_tol);
}

TEST_CASE("conformal scaling rescales the volume by f^(n+1)") {
    SeedStream stream(99, 0);

    // f = 1 + |x|^2 / 4 equals 5/4 on a unit sphere.
    const auto scaled_ratio = [&](int blocks) {
        const Eigen::VectorXd coeffs = Eigen::VectorXd::Ones(blocks);
        const EmbeddedManifold m = EmbeddedManifold::ellipsoid(coeffs, 1.0);
        const int dim = 2 * blocks;
        const Poly1Form alpha = Poly1Form::standard_contact(dim);
        const PolyMap f = PolyMap::constant(dim, 1.0) +
                          PolyMap::quadratic_form(0.25 * Eigen::MatrixXd::Identity(dim, dim));
        const Eigen::VectorXd p = ellipsoid_point(coeffs, 1.0, stream);
        const double base = contact_check(m, alpha, p).volume;
        const double scaled = contact_check(m, scale_form(f, alpha), p).volume;
        return std::abs(scaled) / std::abs(base);
    };

    // n = 1 on the 3-sphere, n = 2 on the 5-sphere.
    CHECK(scaled_ratio(2) == doctest::Approx(std::pow(1.25, 2)).epsilon(1e-10));
    CHECK(scaled_ratio(3) == doctest::Approx(std::pow(1.25, 3)).epsilon(1e-10));
}

TEST_CASE("contact check stops at the supported dimension") {
    const EmbeddedManifold s9 = EmbeddedManifold::ellipsoid(Eigen::VectorXd::Ones(5), 1.0);
    const Poly1Form alpha = Poly1Form::standard_contact(10);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(10);
    p[0] = 1.0;
    CHECK_THROWS_AS(contact_check(s9, alpha, p), UnsupportedDimensionError);
}

TEST_CASE("Reeb field of the round sphere is the Hopf field") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    SeedStream stream(31, 2);
    for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXd p = ellipsoid_point(vec({1, 1}), 1.0, stream);
        const Eigen::VectorXd y = reeb_field(s3, alpha, p);
        const Eigen::VectorXd expected = vec({-p[1], p[0], -p[3], p[2]});
        CHECK((y - expected).norm() < 1e-9);
    }
}

TEST_CASE("Reeb field of an ellipsoid rotates each block at its own rate") {
    // For sum_j a_j |z_j|^2 = r the field rotates block j at rate a_j / r.
    SeedStream stream(31, 3);

    const Eigen::VectorXd a1 = vec({1, 2, 2});
    const EmbeddedManifold e1 = EmbeddedManifold::ellipsoid(a1, 1.0);
    const Eigen::VectorXd p1 = ellipsoid_point(a1, 1.0, stream);
    const Eigen::VectorXd y1 = reeb_field(e1, Poly1Form::standard_contact(6), p1);
    const Eigen::VectorXd want1 =
        vec({-p1[1], p1[0], -2 * p1[3], 2 * p1[2], -2 * p1[5], 2 * p1[4]});
    CHECK((y1 - want1).norm() < 1e-9);

    const Eigen::VectorXd a2 = vec({3, 6, 2});
    const EmbeddedManifold e2 = EmbeddedManifold::ellipsoid(a2, 6.0);
    const Eigen::VectorXd p2 = ellipsoid_point(a2, 6.0, stream);
    const Eigen::VectorXd y2 = reeb_field(e2, Poly1Form::standard_contact(6), p2);
    Eigen::VectorXd want2(6);
    want2 << -p2[1] / 2, p2[0] / 2, -p2[3], p2[2], -p2[5] / 3, p2[4] / 3;
    CHECK((y2 - want2).norm() < 1e-9);
}

TEST_CASE("Reeb solve reports degeneracy instead of an arbitrary field") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    Poly1Form beta(4);
    beta.coeffs[1] = PolyMap::constant(4, 1.0);
    CHECK_THROWS_AS(reeb_field(s3, beta, vec({1, 0, 0, 0})), SingularityError);
}

} // TEST_SUITE("manifold")
