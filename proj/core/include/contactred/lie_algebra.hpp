#pragma once

#include "contactred/rational.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace contactred {

// Coordinates of a dual-space element in the dual of the stored basis.
using DualElement = Eigen::VectorXd;

// Subspace given by an orthonormal column basis (zero columns = zero space).
using Subspace = Eigen::MatrixXd;

// Finite-dimensional real Lie algebra presented by structure constants
// [b_i, b_j] = sum_k c(i,j,k) b_k. Constants are exact rationals, and both
// antisymmetry and the Jacobi identity are verified with exact arithmetic
// when the object is built, so a loaded algebra is a Lie algebra, full stop.
class LieAlgebraData {
public:
    LieAlgebraData(std::string name, std::vector<std::string> basis_names,
                   std::vector<Rational> structure_constants, bool torus);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }

    // When set, the basis elements exponentiate to the standard circles of
    // a torus, so the integral lattice is Z^dim in these coordinates.
    bool is_torus() const { return torus_; }

    const Rational& c(int i, int j, int k) const;

    // Bracket of coordinate vectors, in double arithmetic.
    Eigen::VectorXd bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

private:
    std::string name_;
    int dim_;
    std::vector<std::string> basis_names_;
    std::vector<Rational> c_;
    bool torus_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

// Catalog access. The built-in catalog carries abelian algebras R^1..R^4
// (torus conventions) plus so3 and sl2; the same data ships as a text file
// that load_algebra_catalog can read back, with identical parsing and the
// identical exact Jacobi gate.
std::vector<AlgebraPtr> builtin_algebra_catalog();
AlgebraPtr find_algebra(const std::string& name);
std::vector<AlgebraPtr> load_algebra_catalog(std::istream& input);
std::vector<AlgebraPtr> load_algebra_catalog_file(const std::string& path);
const char* builtin_catalog_text();

// ad*(A) mu, with the sign fixed by <ad*(A) mu, B> = <mu, [A, B]>.
DualElement coadjoint_action(const LieAlgebraData& alg, const Eigen::VectorXd& a,
                             const DualElement& mu);

// Stabilizer subalgebra g_mu = { A : ad*(A) mu = 0 }.
Subspace coadjoint_stabilizer(const LieAlgebraData& alg, const DualElement& mu);

// k_mu = ker(mu) ∩ g_mu. Verifies the ideal property <mu, [k_mu, g_mu]> = 0
// as an internal consistency check before returning.
Subspace kernel_algebra(const LieAlgebraData& alg, const DualElement& mu);

struct HypothesisReport {
    int dim_stabilizer = 0;
    int dim_kernel_algebra = 0;
    bool sum_condition_holds = false;      // ker(mu) + g_mu = g
    bool kernel_equals_stabilizer = false; // k_mu == g_mu as subspaces
    std::optional<bool> mu_integral;       // torus algebras only
};

HypothesisReport check_reduction_hypotheses(const LieAlgebraData& alg, const DualElement& mu);

// Nullspace of an antisymmetric Gram matrix; antisymmetry is checked.
// A positive reference_scale guards the all-noise case: when every entry
// sits below rank_rtol times that scale the form counts as zero and the
// kernel is the whole space. A relative cutoff alone would assign pure
// rounding noise an arbitrary rank.
Subspace bilinear_kernel(const Eigen::MatrixXd& gram, double reference_scale = 0.0);

// { v : gram(w, v) = 0 for all w in span(w_basis) }, in the same coordinates.
Subspace symplectic_perp(const Eigen::MatrixXd& gram, const Subspace& w_basis);

// Whether T_mu(G·mu) meets the tangent space of the ray slice
// R+·(mu + ball in the orthogonal complement of the orbit tangent) only at 0.
// The bilinear form on dual coordinates defaults to the identity.
bool slice_intersection_check(const LieAlgebraData& alg, const DualElement& mu,
                              const std::optional<Eigen::MatrixXd>& dual_form = std::nullopt);

} // namespace contactred
