#pragma once

#include <Eigen/Core>

namespace contactred {

// Uniform rank cutoff: singular values below rank_rtol * sigma_max count
// as zero. Every rank and nullspace decision in the library goes through
// these helpers so the convention cannot drift between modules.
inline constexpr double rank_rtol = 1e-9;

int numerical_rank(const Eigen::MatrixXd& m, double rtol = rank_rtol);

// Orthonormal basis of the (right) nullspace, as matrix columns.
// Deterministic for a fixed input: columns come straight from the SVD.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rtol = rank_rtol);

// Orthonormal basis of the column span.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rtol = rank_rtol);

// Orthonormal basis of the orthogonal complement of span(m's columns).
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& m, double rtol = rank_rtol);

// Largest principal angle between two subspaces given by orthonormal
// column bases. Demands equal dimensions; two zero-dimensional spaces are
// at angle zero. Used for "these are the same subspace" assertions.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Orthonormal basis of span(a) ∩ span(b); inputs are orthonormal bases.
Eigen::MatrixXd subspace_intersection(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                      double rtol = rank_rtol);

// Least-squares solve min |m x - rhs| via complete orthogonal decomposition.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs);

} // namespace contactred
