// Linear actions, moment polynomials, and the Reeb flow integrator. The
// moment identity and the flow both have closed-form references on the
// round sphere.

#include <doctest.h>

#include "contactred/action.hpp"
#include "contactred/error.hpp"
#include "contactred/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace contactred;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<int>(values.size()));
    int i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

// Cross-product generators of so3 acting on R^3.
std::vector<Eigen::MatrixXd> so3_generators() {
    std::vector<Eigen::MatrixXd> gens(3, Eigen::MatrixXd::Zero(3, 3));
    gens[0](1, 2) = -1.0;
    gens[0](2, 1) = 1.0;
    gens[1](0, 2) = 1.0;
    gens[1](2, 0) = -1.0;
    gens[2](0, 1) = -1.0;
    gens[2](1, 0) = 1.0;
    return gens;
}

Eigen::MatrixXi weight_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    Eigen::MatrixXi m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int x : row)
            m(i, j++) = x;
        ++i;
    }
    return m;
}

} // namespace

TEST_SUITE("action") {

TEST_CASE("rotation generator layout") {
    const Eigen::MatrixXd m = rotation_generator(vec({1, 2}));
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
    expected(0, 1) = -1.0;
    expected(1, 0) = 1.0;
    expected(2, 3) = -2.0;
    expected(3, 2) = 2.0;
    CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linear actions verify their structure constants") {
    const AlgebraPtr so3 = find_algebra("so3");
    CHECK_NOTHROW(LinearAction(so3, so3_generators()));

    // One flipped sign breaks [g0, g1] = g2.
    std::vector<Eigen::MatrixXd> broken = so3_generators();
    broken[2] = -broken[2];
    CHECK_THROWS_AS(LinearAction(so3, broken), SingularityError);

    std::vector<Eigen::MatrixXd> short_list(2, Eigen::MatrixXd::Zero(3, 3));
    CHECK_THROWS_AS(LinearAction(so3, short_list), DimensionError);
}

TEST_CASE("torus actions come from integer weight matrices") {
    const LinearAction t2 =
        torus_action(find_algebra("abelian2"), weight_rows({{1, 1, 1}, {0, 1, -1}}));
    CHECK(t2.ambient_dim() == 6);
    REQUIRE(t2.generators.size() == 2);
    // Generators of a torus action commute.
    const Eigen::MatrixXd commutator = t2.generators[0] * t2.generators[1] -
                                       t2.generators[1] * t2.generators[0];
    CHECK(commutator.cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(torus_action(find_algebra("so3"), weight_rows({{1, 1}, {0, 1}, {1, 0}})),
                    DimensionError);
}

TEST_CASE("generator fields combine linearly") {
    const LinearAction t2 =
        torus_action(find_algebra("abelian2"), weight_rows({{1, 1, 1}, {0, 1, -1}}));
    const Eigen::VectorXd x = vec({1, 2, 3, 4, 5, 6});
    const Eigen::VectorXd a = vec({2, -1});
    const Eigen::VectorXd field = generator_field(t2, a, x);
    const Eigen::VectorXd expected = 2.0 * (t2.generators[0] * x) - t2.generators[1] * x;
    CHECK((field - expected).norm() == 0.0);
}

TEST_CASE("moment components are the pinned quadratic forms") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const LinearAction circle = torus_action(find_algebra("abelian1"), weight_rows({{1, 1}}));
    const std::vector<PolyMap> phi = moment_polynomials(circle, alpha);
    REQUIRE(phi.size() == 1);
    CHECK(phi[0] == PolyMap::quadratic_form(Eigen::MatrixXd::Identity(4, 4)));

    // Signed weights flip the sign of a block's contribution.
    const Poly1Form alpha6 = Poly1Form::standard_contact(6);
    const LinearAction mixed = torus_action(find_algebra("abelian1"), weight_rows({{1, -1, -1}}));
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(6, 6);
    q.diagonal() << 1, 1, -1, -1, -1, -1;
    CHECK(moment_polynomials(mixed, alpha6)[0] == PolyMap::quadratic_form(q));
}

TEST_CASE("moment map and Jacobian evaluation") {
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const LinearAction circle = torus_action(find_algebra("abelian1"), weight_rows({{1, 1}}));
    const std::vector<PolyMap> phi = moment_polynomials(circle, alpha);
    const Eigen::VectorXd p = vec({1, 2, 3, 4});
    CHECK(moment_map(phi, p)[0] == 30.0);
    CHECK((moment_jacobian(phi, p) - 2.0 * p.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symplectization scales the moment exponentially") {
    const MomentValue phi = vec({3, -2});
    const MomentValue lifted = symplectization_moment(phi, 0.5);
    CHECK(lifted[0] == doctest::Approx(3.0 * std::exp(0.5)).epsilon(1e-15));
    CHECK(lifted[1] == doctest::Approx(-2.0 * std::exp(0.5)).epsilon(1e-15));
    CHECK((symplectization_moment(phi, 0.0) - phi).norm() == 0.0);
}

TEST_CASE("the moment differential identity holds at random triples") {
    // d<Phi, a>(v) = dalpha(v, a-field) is a polynomial identity on the
    // whole ambient space, so unconstrained random triples probe it.
    const Poly1Form alpha = Poly1Form::standard_contact(6);
    const LinearAction t2 =
        torus_action(find_algebra("abelian2"), weight_rows({{1, -1, -1}, {0, 1, -1}}));
    const std::vector<PolyMap> phi = moment_polynomials(t2, alpha);
    SeedStream stream(5, 0);
    for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd x = stream.normal_vector(6);
        const Eigen::VectorXd v = stream.normal_vector(6);
        const Eigen::VectorXd a = stream.normal_vector(2);
        const MomentDifferentialResult r = moment_differential_check(t2, alpha, phi, x, v, a);
        CHECK(r.gap < 1e-12 * (1.0 + std::abs(r.lhs)));
        CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
    }
}

TEST_CASE("Reeb flow on the round sphere follows the Hopf circle") {
    const EmbeddedManifold s3 = EmbeddedManifold::ellipsoid(vec({1, 1}), 1.0);
    const Poly1Form alpha = Poly1Form::standard_contact(4);
    const LinearAction circle = torus_action(find_algebra("abelian1"), weight_rows({{1, 1}}));
    const std::vector<PolyMap> phi = moment_polynomials(circle, alpha);
    const Eigen::VectorXd start = vec({1, 0, 0, 0});
    const double pi = std::numbers::pi_v<double>;

    // Quarter turn: (1,0,0,0) lands on (0,1,0,0).
    const FlowResult quarter = reeb_flow_level_invariance(s3, alpha, phi, start, pi / 2.0);
    CHECK((quarter.endpoint - vec({0, 1, 0, 0})).norm() < 1e-8);

    // Full period returns to the start; the moment never moves.
    const FlowResult period = reeb_flow_level_invariance(s3, alpha, phi, start, 2.0 * pi);
    CHECK((period.endpoint - start).norm() < 1e-8);
    CHECK(period.max_level_deviation < 1e-10);
    CHECK(period.max_constraint_residual < 1e-8);
}

} // TEST_SUITE("action")
