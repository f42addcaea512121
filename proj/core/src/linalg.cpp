#include "contactred/linalg.hpp"

#include "contactred/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace contactred {

namespace {

// Full SVD once; rank and nullspace both read off the same decomposition.
struct SvdSplit {
    int rank;
    Eigen::MatrixXd null_basis;  // columns of V past the rank
    Eigen::MatrixXd col_basis;   // columns of U up to the rank
};

SvdSplit split(const Eigen::MatrixXd& m, double rtol) {
    if (m.rows() == 0 || m.cols() == 0) {
        SvdSplit s;
        s.rank = 0;
        s.null_basis = Eigen::MatrixXd::Identity(m.cols(), m.cols());
        s.col_basis = Eigen::MatrixXd::Zero(m.rows(), 0);
        return s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = rtol * sv[0];
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff)
            ++rank;
    if (sv[0] == 0.0)
        rank = 0;
    SvdSplit s;
    s.rank = rank;
    s.null_basis = svd.matrixV().rightCols(m.cols() - rank);
    s.col_basis = svd.matrixU().leftCols(rank);
    return s;
}

} // namespace

int numerical_rank(const Eigen::MatrixXd& m, double rtol) {
    return split(m, rtol).rank;
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double rtol) {
    return split(m, rtol).null_basis;
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rtol) {
    return split(m, rtol).col_basis;
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& m, double rtol) {
    if (m.cols() == 0)
        return Eigen::MatrixXd::Identity(m.rows(), m.rows());
    // Complement of the column span = nullspace of the transpose.
    return nullspace(m.transpose(), rtol);
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols())
        throw DimensionError("principal angle between subspaces of different dimension");
    if (a.cols() == 0)
        return 0.0;
    if (a.rows() != b.rows())
        throw DimensionError("principal angle between subspaces of different ambient dimension");
    // Cosine and sine are computed separately (Bjorck-Golub): acos of the
    // cosine alone cannot resolve angles below the square root of machine
    // precision, and near-aligned subspaces are the common case here.
    const Eigen::MatrixXd cross = a.transpose() * b;
    Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(cross);
    const double cos_t = std::clamp(cos_svd.singularValues().minCoeff(), -1.0, 1.0);
    Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(b - a * cross);
    const double sin_t = sin_svd.singularValues().maxCoeff();
    return std::atan2(sin_t, cos_t);
}

Eigen::MatrixXd subspace_intersection(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                      double rtol) {
    if (a.rows() != b.rows())
        throw DimensionError("subspace intersection needs a common ambient space");
    if (a.cols() == 0 || b.cols() == 0)
        return Eigen::MatrixXd::Zero(a.rows(), 0);
    // x in both spans iff x = a u = b v; solutions live in the nullspace of [a, -b].
    Eigen::MatrixXd stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    const Eigen::MatrixXd uv = nullspace(stacked, rtol);
    if (uv.cols() == 0)
        return Eigen::MatrixXd::Zero(a.rows(), 0);
    return column_space(a * uv.topRows(a.cols()), rtol);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
    return cod.solve(rhs);
}

} // namespace contactred
