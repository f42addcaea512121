// Algebra catalog, exact structure-constant gates, coadjoint machinery,
// and the antisymmetric-kernel helpers.

#include <doctest.h>

#include "contactred/error.hpp"
#include "contactred/lie_algebra.hpp"
#include "contactred/linalg.hpp"
#include "contactred/rng.hpp"

#include <Eigen/Dense>

#include <sstream>
#include <string>

using namespace contactred;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
    Eigen::VectorXd v(3);
    v << a, b, c;
    return v;
}

Eigen::VectorXd unit(int dim, int index) {
    return Eigen::VectorXd::Unit(dim, index);
}

} // namespace

TEST_SUITE("lie_algebra") {

TEST_CASE("builtin catalog contents") {
    const std::vector<AlgebraPtr> catalog = builtin_algebra_catalog();
    REQUIRE(catalog.size() == 6);

    const AlgebraPtr so3 = find_algebra("so3");
    CHECK(so3->dim() == 3);
    CHECK(!so3->is_torus());
    const AlgebraPtr sl2 = find_algebra("sl2");
    CHECK(sl2->basis_names() == std::vector<std::string>{"H", "E", "F"});
    CHECK(find_algebra("abelian2")->is_torus());
    CHECK(find_algebra("abelian2")->dim() == 2);
    CHECK_THROWS_AS(find_algebra("nope"), CatalogError);
}

TEST_CASE("so3 and sl2 brackets") {
    const AlgebraPtr so3 = find_algebra("so3");
    CHECK((so3->bracket(unit(3, 0), unit(3, 1)) - unit(3, 2)).norm() == 0.0);
    CHECK((so3->bracket(unit(3, 1), unit(3, 2)) - unit(3, 0)).norm() == 0.0);
    // Bilinearity: [2 e0 + e1, e2] = -2 e1 + e0.
    CHECK((so3->bracket(2.0 * unit(3, 0) + unit(3, 1), unit(3, 2)) - vec3(1, -2, 0)).norm() ==
          0.0);

    const AlgebraPtr sl2 = find_algebra("sl2");
    CHECK((sl2->bracket(unit(3, 0), unit(3, 1)) - 2.0 * unit(3, 1)).norm() == 0.0);
    CHECK((sl2->bracket(unit(3, 0), unit(3, 2)) + 2.0 * unit(3, 2)).norm() == 0.0);
    CHECK((sl2->bracket(unit(3, 1), unit(3, 2)) - unit(3, 0)).norm() == 0.0);

    CHECK(find_algebra("abelian3")->bracket(vec3(1, 2, 3), vec3(4, 5, 6)).norm() == 0.0);
    CHECK_THROWS_AS(so3->bracket(Eigen::VectorXd::Zero(2), unit(3, 0)), DimensionError);
}

TEST_CASE("text catalog round-trips the builtin data") {
    std::istringstream text(builtin_catalog_text());
    const std::vector<AlgebraPtr> parsed = load_algebra_catalog(text);
    const std::vector<AlgebraPtr> builtin = builtin_algebra_catalog();
    REQUIRE(parsed.size() == builtin.size());
    for (std::size_t n = 0; n < parsed.size(); ++n) {
        CHECK(parsed[n]->name() == builtin[n]->name());
        CHECK(parsed[n]->dim() == builtin[n]->dim());
        CHECK(parsed[n]->is_torus() == builtin[n]->is_torus());
        const int d = parsed[n]->dim();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    CHECK(parsed[n]->c(i, j, k) == builtin[n]->c(i, j, k));
    }
}

TEST_CASE("installed catalog file matches the builtin catalog") {
    const std::vector<AlgebraPtr> from_file = load_algebra_catalog_file(CONTACTRED_CATALOG_FILE);
    const std::vector<AlgebraPtr> builtin = builtin_algebra_catalog();
    REQUIRE(from_file.size() == builtin.size());
    for (std::size_t n = 0; n < from_file.size(); ++n) {
        CHECK(from_file[n]->name() == builtin[n]->name());
        const int d = from_file[n]->dim();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    CHECK(from_file[n]->c(i, j, k) == builtin[n]->c(i, j, k));
    }
}

TEST_CASE("the Jacobi identity is enforced on load") {
    // [e0,e1] = e2, [e1,e2] = e1, [e2,e0] = e1 leaves the cyclic sum
    // at [e0,e1] = e2, which is nonzero.
    const std::string bad = "algebra bad\n"
                            "torus false\n"
                            "basis a b c\n"
                            "c 0 1 2 1\n"
                            "c 1 2 1 1\n"
                            "c 2 0 1 1\n"
                            "end\n";
    std::istringstream in(bad);
    CHECK_THROWS_AS(load_algebra_catalog(in), CatalogError);
}

TEST_CASE("malformed catalog blocks are rejected with the offending line") {
    const auto load = [](const std::string& text) {
        std::istringstream in(text);
        return load_algebra_catalog(in);
    };
    // Bracket of an element with itself.
    CHECK_THROWS_AS(load("algebra a\ntorus true\nbasis x\nc 0 0 0 1\nend\n"), CatalogError);
    // Unterminated block.
    CHECK_THROWS_AS(load("algebra a\ntorus true\nbasis x y\n"), CatalogError);
    // Bad rational.
    CHECK_THROWS_AS(load("algebra a\ntorus false\nbasis x y z\nc 0 1 2 q\nend\n"), CatalogError);
    // Unknown directive.
    CHECK_THROWS_AS(load("algebra a\nspin 2\nbasis x y\nend\n"), CatalogError);
}

TEST_CASE("coadjoint action satisfies its defining pairing") {
    SeedStream stream(17, 0);
    for (const char* name : {"so3", "sl2"}) {
        const AlgebraPtr alg = find_algebra(name);
        for (int i = 0; i < 8; ++i) {
            const Eigen::VectorXd a = stream.normal_vector(3);
            const Eigen::VectorXd b = stream.normal_vector(3);
            const DualElement mu = stream.normal_vector(3);
            const double lhs = coadjoint_action(*alg, a, mu).dot(b);
            const double rhs = mu.dot(alg->bracket(a, b));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("stabilizer and kernel algebra at pinned dual points") {
    const AlgebraPtr so3 = find_algebra("so3");
    const DualElement mu3 = vec3(0, 0, 1);
    const Subspace stab3 = coadjoint_stabilizer(*so3, mu3);
    REQUIRE(stab3.cols() == 1);
    CHECK(max_principal_angle(stab3, unit(3, 2)) < 1e-10);
    // ker(mu) = span(e0, e1) misses the stabilizer entirely.
    CHECK(kernel_algebra(*so3, mu3).cols() == 0);

    const AlgebraPtr sl2 = find_algebra("sl2");
    const Subspace stab_sl2 = coadjoint_stabilizer(*sl2, mu3);
    REQUIRE(stab_sl2.cols() == 1);
    CHECK(max_principal_angle(stab_sl2, unit(3, 1)) < 1e-10);
    const Subspace k_sl2 = kernel_algebra(*sl2, mu3);
    REQUIRE(k_sl2.cols() == 1);
    CHECK(max_principal_angle(k_sl2, unit(3, 1)) < 1e-10);

    // Abelian algebras are their own stabilizer.
    const AlgebraPtr ab2 = find_algebra("abelian2");
    CHECK(coadjoint_stabilizer(*ab2, Eigen::Vector2d(2, 1)).cols() == 2);
    CHECK(kernel_algebra(*ab2, Eigen::Vector2d(2, 1)).cols() == 1);
}

TEST_CASE("hypothesis report at pinned dual points") {
    const HypothesisReport so3_report =
        check_reduction_hypotheses(*find_algebra("so3"), vec3(0, 0, 1));
    CHECK(so3_report.dim_stabilizer == 1);
    CHECK(so3_report.dim_kernel_algebra == 0);
    CHECK(so3_report.sum_condition_holds);
    CHECK(!so3_report.kernel_equals_stabilizer);
    CHECK(!so3_report.mu_integral.has_value());

    // sl2 at the dual point of a nilpotent element: k_mu = g_mu = span(E)
    // but ker(mu) + g_mu stops at span(H, E).
    const HypothesisReport sl2_report =
        check_reduction_hypotheses(*find_algebra("sl2"), vec3(0, 0, 1));
    CHECK(sl2_report.dim_stabilizer == 1);
    CHECK(sl2_report.dim_kernel_algebra == 1);
    CHECK(!sl2_report.sum_condition_holds);
    CHECK(sl2_report.kernel_equals_stabilizer);

    const HypothesisReport ab_report =
        check_reduction_hypotheses(*find_algebra("abelian2"), Eigen::Vector2d(2, 1));
    CHECK(ab_report.dim_stabilizer == 2);
    CHECK(ab_report.dim_kernel_algebra == 1);
    CHECK(ab_report.sum_condition_holds);
    CHECK(!ab_report.kernel_equals_stabilizer);
    REQUIRE(ab_report.mu_integral.has_value());
    CHECK(*ab_report.mu_integral);

    const HypothesisReport frac =
        check_reduction_hypotheses(*find_algebra("abelian2"), Eigen::Vector2d(0.5, 1));
    REQUIRE(frac.mu_integral.has_value());
    CHECK(!*frac.mu_integral);
}

TEST_CASE("bilinear kernel of antisymmetric Gram matrices") {
    Eigen::MatrixXd j2(2, 2);
    j2 << 0, 1, -1, 0;
    CHECK(bilinear_kernel(j2).cols() == 0);

    Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(3, 3);
    odd(0, 1) = 1.0;
    odd(1, 0) = -1.0;
    const Subspace k = bilinear_kernel(odd);
    REQUIRE(k.cols() == 1);
    CHECK(max_principal_angle(k, unit(3, 2)) < 1e-12);

    CHECK_THROWS_AS(bilinear_kernel(Eigen::MatrixXd::Identity(2, 2)), DimensionError);
    CHECK_THROWS_AS(bilinear_kernel(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
}

TEST_CASE("an all-noise Gram counts as the zero form against a reference scale") {
    // Rounding residue of a form that vanishes identically; relative to
    // itself it has full rank, relative to the ambient form it is zero.
    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(3, 3);
    noise(0, 1) = 3e-14;
    noise(1, 0) = -3e-14;
    noise(1, 2) = -1e-14;
    noise(2, 1) = 1e-14;
    CHECK(bilinear_kernel(noise, 1.0).cols() == 3);
    CHECK(bilinear_kernel(Eigen::MatrixXd::Zero(3, 3), 1.0).cols() == 3);
}

TEST_CASE("symplectic perp of an isotropic line") {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(4, 4);
    gram(0, 1) = 1.0;
    gram(1, 0) = -1.0;
    gram(2, 3) = 1.0;
    gram(3, 2) = -1.0;
    const Subspace w = unit(4, 0);
    const Subspace perp = symplectic_perp(gram, w);
    REQUIRE(perp.cols() == 3);
    CHECK((w.transpose() * gram * perp).cwiseAbs().maxCoeff() < 1e-13);
    // An isotropic subspace lies inside its own perp.
    CHECK(max_principal_angle(w, perp * (perp.transpose() * w)) < 1e-10);
}

TEST_CASE("slice meets the coadjoint orbit only at zero") {
    CHECK(slice_intersection_check(*find_algebra("so3"), vec3(0, 0, 1)));
    CHECK(slice_intersection_check(*find_algebra("abelian2"), Eigen::Vector2d(2, 1)));
}

} // TEST_SUITE("lie_algebra")
