// Differential forms with polynomial coefficients. The exterior calculus
// here is exact coefficient arithmetic, so most identities are asserted
// as polynomial equalities; the quadrature tests tie the symbols back to
// actual line integrals.

#include <doctest.h>

#include "contactred/error.hpp"
#include "contactred/forms.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>

using namespace contactred;

namespace {

Eigen::VectorXd vec4(double a, double b, double c, double d) {
    Eigen::VectorXd v(4);
    v << a, b, c, d;
    return v;
}

// Rotation of both complex blocks of R^4 with unit speed.
Eigen::MatrixXd block_rotation4() {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    j(0, 1) = -1.0;
    j(1, 0) = 1.0;
    j(2, 3) = -1.0;
    j(3, 2) = 1.0;
    return j;
}

} // namespace

TEST_SUITE("forms") {

TEST_CASE("standard contact form has the pinned coefficients") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    REQUIRE(alpha.coeffs.size() == 4);
    CHECK(alpha.coeffs[0] == -PolyMap::coordinate(4, 1));
    CHECK(alpha.coeffs[1] == PolyMap::coordinate(4, 0));
    CHECK(alpha.coeffs[2] == -PolyMap::coordinate(4, 3));
    CHECK(alpha.coeffs[3] == PolyMap::coordinate(4, 2));
    CHECK_THROWS_AS(Poly1Form::standard_contact(3), DimensionError);
    CHECK_THROWS_AS(Poly1Form(2, {PolyMap::constant(2, 1.0)}), DimensionError);
}

TEST_CASE("1-form evaluation") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const Eigen::VectorXd p = vec4(1, 2, 3, 4);
    CHECK(eval_1form(alpha, p, vec4(0, 1, 0, 0)) == 1.0);
    CHECK(eval_1form(alpha, p, vec4(1, 1, 1, 1)) == -2.0);
    CHECK_THROWS_AS(eval_1form(alpha, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)),
                    DimensionError);
}

TEST_CASE("exterior derivative of the contact form is twice the block area form") {
    const Poly2Form da = exterior_derivative(Poly1Form::standard_contact(4));
    CHECK(da.coeff(0, 1) == PolyMap::constant(4, 2.0));
    CHECK(da.coeff(2, 3) == PolyMap::constant(4, 2.0));
    CHECK(da.coeff(0, 2).is_zero());
    CHECK(da.coeff(1, 3).is_zero());
    // Signed access transposes the slot.
    CHECK(da.coeff(1, 0) == PolyMap::constant(4, -2.0));
}

TEST_CASE("2-form evaluation is antisymmetric and bilinear") {
    const Poly2Form da = exterior_derivative(Poly1Form::standard_contact(4));
    const Eigen::VectorXd p = vec4(0.3, -0.2, 0.7, 0.1);
    const Eigen::VectorXd u = vec4(1, 0.5, 0, -0.3);
    const Eigen::VectorXd v = vec4(0, 1, 0.4, 0.2);
    const Eigen::VectorXd w = vec4(0.2, 0, -1, 0.6);
    CHECK(eval_2form(da, p, u, v) == doctest::Approx(-eval_2form(da, p, v, u)).epsilon(1e-15));
    CHECK(eval_2form(da, p, 2.0 * u + w, v) ==
          doctest::Approx(2.0 * eval_2form(da, p, u, v) + eval_2form(da, p, w, v))
              .epsilon(1e-14));
    CHECK(eval_2form(da, p, u, u) == 0.0);
}

TEST_CASE("d of a 0-form is its gradient, and d of that vanishes") {
    // f = x^3 + 2xy + y.
    const PolyMap x = PolyMap::coordinate(2, 0);
    const PolyMap y = PolyMap::coordinate(2, 1);
    const PolyMap f = x * x * x + (x * y) * 2.0 + y;
    const Poly1Form df = exterior_derivative(f);
    CHECK(df.coeffs[0] == x * x * 3.0 + y * 2.0);
    CHECK(df.coeffs[1] == x * 2.0 + PolyMap::constant(2, 1.0));
    CHECK(exterior_derivative(df).coeff(0, 1).is_zero());
}

TEST_CASE("interior product with the radial field doubles the contact form") {
    // dalpha(x, v) = 2 alpha(v), an exact identity in the coefficients.
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const Poly2Form da = exterior_derivative(alpha);
    const Poly1Form contracted = interior_product_linear(da, Eigen::MatrixXd::Identity(4, 4));
    for (int i = 0; i < 4; ++i)
        CHECK(contracted.coeffs[i] == alpha.coeffs[i] * 2.0);
}

TEST_CASE("pairing the contact form with the block rotation gives the squared radius") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const PolyMap paired = pair_with_linear_field(alpha, block_rotation4());
    CHECK(paired == PolyMap::quadratic_form(Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("Lie derivative vanishes exactly for the rotation and matches a pullback otherwise") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);

    const Poly1Form invariant = lie_derivative_linear(alpha, block_rotation4());
    for (const PolyMap& c : invariant.coeffs)
        CHECK(c.is_zero());

    // M scales the first coordinate only; the pullback through
    // exp(tM) = diag(e^t, 1, 1, 1) differentiates by hand to
    // x0 dx1 - x1 dx0.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 0) = 1.0;
    const Poly1Form lie = lie_derivative_linear(alpha, m);
    CHECK(lie.coeffs[0] == -PolyMap::coordinate(4, 1));
    CHECK(lie.coeffs[1] == PolyMap::coordinate(4, 0));
    CHECK(lie.coeffs[2].is_zero());
    CHECK(lie.coeffs[3].is_zero());
}

TEST_CASE("Leibniz rule for a scaled form holds coefficientwise") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const PolyMap x0 = PolyMap::coordinate(4, 0);
    const PolyMap f = PolyMap::constant(4, 1.0) + x0 * x0;

    const Poly2Form lhs = exterior_derivative(scale_form(f, alpha));
    const Poly2Form da = exterior_derivative(alpha);
    const Poly2Form dfa = wedge(exterior_derivative(f), alpha);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(lhs.coeff(i, j) == dfa.coeff(i, j) + f * da.coeff(i, j));

    // df wedge df cancels exactly.
    const Poly2Form zero = wedge(exterior_derivative(f), exterior_derivative(f));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(zero.coeff(i, j).is_zero());
}

TEST_CASE("circulation around a circle matches the area integral") {
    // On the circle of radius r in the first block, alpha pulls back to
    // the constant r^2 dt, so any quadrature is exact up to rounding.
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const double r = 0.9;
    const int n = 48;
    const double pi = std::numbers::pi_v<double>;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * pi * (k + 0.5) / n;
        const Eigen::VectorXd point = vec4(r * std::cos(t), r * std::sin(t), 0.0, 0.0);
        const Eigen::VectorXd velocity = vec4(-r * std::sin(t), r * std::cos(t), 0.0, 0.0);
        total += eval_1form(alpha, point, velocity) * (2.0 * pi / n);
    }
    CHECK(total == doctest::Approx(2.0 * pi * r * r).epsilon(1e-13));
}

TEST_CASE("circulation around a shrinking parallelogram converges to d") {
    // Independent check that the symbolic d is the geometric one: the
    // loop integral over the boundary of {p + s h u + t h v}, divided by
    // h^2, approaches dbeta at the centroid at second order.
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const PolyMap x0 = PolyMap::coordinate(4, 0);
    const PolyMap f = PolyMap::constant(4, 1.0) + x0 * x0;
    const Poly1Form beta = scale_form(f, alpha);
    const Poly2Form dbeta = exterior_derivative(beta);

    const Eigen::VectorXd p = vec4(0.3, -0.2, 0.7, 0.1);
    const Eigen::VectorXd u = vec4(1, 0.5, 0, -0.3);
    const Eigen::VectorXd v = vec4(0, 1, 0.4, 0.2);

    const auto edge = [&](const Eigen::VectorXd& from, const Eigen::VectorXd& dir) {
        const int n = 64;
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += eval_1form(beta, from + ((k + 0.5) / n) * dir, dir) / n;
        return acc;
    };
    const auto loop_error = [&](double h) {
        double circ = 0.0;
        circ += edge(p, h * u);
        circ += edge(p + h * u, h * v);
        circ -= edge(p + h * v, h * u);
        circ -= edge(p, h * v);
        const Eigen::VectorXd centroid = p + 0.5 * h * (u + v);
        return std::abs(circ / (h * h) - eval_2form(dbeta, centroid, u, v));
    };

    const double coarse = loop_error(1e-2);
    const double fine = loop_error(5e-3);
    CHECK(coarse < 1e-2);
    CHECK(fine < 0.35 * coarse + 1e-12);
}

} // TEST_SUITE("forms")
