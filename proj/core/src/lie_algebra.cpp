#include "contactred/lie_algebra.hpp"

#include "contactred/error.hpp"
#include "contactred/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <sstream>

namespace contactred {

LieAlgebraData::LieAlgebraData(std::string name, std::vector<std::string> basis_names,
                               std::vector<Rational> structure_constants, bool torus)
    : name_(std::move(name)),
      dim_(static_cast<int>(basis_names.size())),
      basis_names_(std::move(basis_names)),
      c_(std::move(structure_constants)),
      torus_(torus) {
    if (dim_ <= 0)
        throw CatalogError("algebra '" + name_ + "' has no basis");
    if (static_cast<int>(c_.size()) != dim_ * dim_ * dim_)
        throw CatalogError("algebra '" + name_ + "' has a malformed structure constant table");

    // Antisymmetry, exactly.
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                if (c(i, j, k) != -c(j, i, k))
                    throw CatalogError("algebra '" + name_ +
                                       "': structure constants are not antisymmetric");

    // Jacobi identity, exactly: for all i, j, l, m
    //   sum_k c(i,j,k) c(k,l,m) + c(j,l,k) c(k,i,m) + c(l,i,k) c(k,j,m) = 0.
    for (int i = 0; i < dim_; ++i) {
        for (int j = i + 1; j < dim_; ++j) {
            for (int l = j + 1; l < dim_; ++l) {
                for (int m = 0; m < dim_; ++m) {
                    Rational sum(0);
                    for (int k = 0; k < dim_; ++k) {
                        sum = sum + c(i, j, k) * c(k, l, m);
                        sum = sum + c(j, l, k) * c(k, i, m);
                        sum = sum + c(l, i, k) * c(k, j, m);
                    }
                    if (!sum.is_zero())
                        throw CatalogError("algebra '" + name_ +
                                           "': Jacobi identity fails on basis triple (" +
                                           basis_names_[i] + ", " + basis_names_[j] + ", " +
                                           basis_names_[l] + ")");
                }
            }
        }
    }
}

const Rational& LieAlgebraData::c(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
}

Eigen::VectorXd LieAlgebraData::bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    if (a.size() != dim_ || b.size() != dim_)
        throw DimensionError("bracket arguments do not match the algebra dimension");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (a[i] == 0.0)
            continue;
        for (int j = 0; j < dim_; ++j) {
            if (b[j] == 0.0)
                continue;
            for (int k = 0; k < dim_; ++k) {
                const Rational& cij = c(i, j, k);
                if (!cij.is_zero())
                    out[k] += a[i] * b[j] * cij.to_double();
            }
        }
    }
    return out;
}

namespace {

struct PendingAlgebra {
    std::string name;
    std::vector<std::string> basis;
    std::vector<std::tuple<int, int, int, Rational>> entries;
    bool torus = false;

    AlgebraPtr build() const {
        const int d = static_cast<int>(basis.size());
        std::vector<Rational> table(static_cast<std::size_t>(d) * d * d, Rational(0));
        auto slot = [&](int i, int j, int k) -> Rational& {
            return table[(static_cast<std::size_t>(i) * d + j) * d + k];
        };
        for (const auto& [i, j, k, v] : entries) {
            if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d)
                throw CatalogError("algebra '" + name + "': structure constant index out of range");
            if (i == j)
                throw CatalogError("algebra '" + name + "': bracket of an element with itself");
            slot(i, j, k) = v;
            slot(j, i, k) = -v;
        }
        return std::make_shared<LieAlgebraData>(name, basis, std::move(table), torus);
    }
};

} // namespace

std::vector<AlgebraPtr> load_algebra_catalog(std::istream& input) {
    std::vector<AlgebraPtr> out;
    std::optional<PendingAlgebra> current;
    std::string line;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream tokens(line);
        std::string word;
        if (!(tokens >> word))
            continue;
        const std::string where = " (catalog line " + std::to_string(line_no) + ")";
        if (word == "algebra") {
            if (current)
                throw CatalogError("nested algebra block" + where);
            PendingAlgebra pending;
            if (!(tokens >> pending.name))
                throw CatalogError("algebra block without a name" + where);
            current = std::move(pending);
        } else if (word == "basis") {
            if (!current)
                throw CatalogError("basis outside an algebra block" + where);
            std::string b;
            while (tokens >> b)
                current->basis.push_back(b);
            if (current->basis.empty())
                throw CatalogError("empty basis list" + where);
        } else if (word == "torus") {
            if (!current)
                throw CatalogError("torus outside an algebra block" + where);
            std::string flag;
            tokens >> flag;
            if (flag != "true" && flag != "false")
                throw CatalogError("torus expects true or false" + where);
            current->torus = (flag == "true");
        } else if (word == "c") {
            if (!current)
                throw CatalogError("structure constant outside an algebra block" + where);
            int i = 0, j = 0, k = 0;
            std::string value;
            if (!(tokens >> i >> j >> k >> value))
                throw CatalogError("structure constant line needs 'c i j k p/q'" + where);
            current->entries.emplace_back(i, j, k, Rational::parse(value));
        } else if (word == "end") {
            if (!current)
                throw CatalogError("end outside an algebra block" + where);
            out.push_back(current->build());
            current.reset();
        } else {
            throw CatalogError("unknown catalog directive '" + word + "'" + where);
        }
    }
    if (current)
        throw CatalogError("unterminated algebra block '" + current->name + "'");
    return out;
}

std::vector<AlgebraPtr> load_algebra_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CatalogError("cannot open catalog file '" + path + "'");
    return load_algebra_catalog(in);
}

std::vector<AlgebraPtr> builtin_algebra_catalog() {
    static const std::vector<AlgebraPtr> catalog = [] {
        std::istringstream in(builtin_catalog_text());
        return load_algebra_catalog(in);
    }();
    return catalog;
}

AlgebraPtr find_algebra(const std::string& name) {
    for (const auto& alg : builtin_algebra_catalog())
        if (alg->name() == name)
            return alg;
    throw CatalogError("no algebra named '" + name + "' in the catalog");
}

DualElement coadjoint_action(const LieAlgebraData& alg, const Eigen::VectorXd& a,
                             const DualElement& mu) {
    const int d = alg.dim();
    if (a.size() != d || mu.size() != d)
        throw DimensionError("coadjoint action arguments do not match the algebra dimension");
    DualElement out = Eigen::VectorXd::Zero(d);
    for (int b = 0; b < d; ++b) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) {
            if (a[i] == 0.0)
                continue;
            for (int k = 0; k < d; ++k) {
                const Rational& cibk = alg.c(i, b, k);
                if (!cibk.is_zero())
                    v += a[i] * cibk.to_double() * mu[k];
            }
        }
        out[b] = v;
    }
    return out;
}

namespace {

// Matrix of A -> ad*(A) mu in basis coordinates: column i is ad*(b_i) mu.
Eigen::MatrixXd coadjoint_matrix(const LieAlgebraData& alg, const DualElement& mu) {
    const int d = alg.dim();
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd basis_vec = Eigen::VectorXd::Zero(d);
        basis_vec[i] = 1.0;
        m.col(i) = coadjoint_action(alg, basis_vec, mu);
    }
    return m;
}

} // namespace

Subspace coadjoint_stabilizer(const LieAlgebraData& alg, const DualElement& mu) {
    if (mu.size() != alg.dim())
        throw DimensionError("mu does not match the algebra dimension");
    return nullspace(coadjoint_matrix(alg, mu));
}

Subspace kernel_algebra(const LieAlgebraData& alg, const DualElement& mu) {
    const Subspace stab = coadjoint_stabilizer(alg, mu);
    Subspace ker_mu;
    if (mu.cwiseAbs().maxCoeff() == 0.0)
        ker_mu = Eigen::MatrixXd::Identity(alg.dim(), alg.dim());
    else
        ker_mu = nullspace(mu.transpose());
    const Subspace k = subspace_intersection(stab, ker_mu);

    // k_mu is an ideal of g_mu annihilated by mu; a violation here means
    // the linear algebra above broke, not that the input was bad.
    const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
    for (int a = 0; a < k.cols(); ++a) {
        for (int b = 0; b < stab.cols(); ++b) {
            const double pairing = mu.dot(alg.bracket(k.col(a), stab.col(b)));
            if (std::abs(pairing) > 1e-10 * scale)
                throw Error("internal: kernel algebra fails the ideal property, pairing " +
                            std::to_string(pairing));
        }
    }
    return k;
}

HypothesisReport check_reduction_hypotheses(const LieAlgebraData& alg, const DualElement& mu) {
    HypothesisReport report;
    const Subspace stab = coadjoint_stabilizer(alg, mu);
    const Subspace k = kernel_algebra(alg, mu);
    report.dim_stabilizer = static_cast<int>(stab.cols());
    report.dim_kernel_algebra = static_cast<int>(k.cols());

    Subspace ker_mu;
    if (mu.cwiseAbs().maxCoeff() == 0.0)
        ker_mu = Eigen::MatrixXd::Identity(alg.dim(), alg.dim());
    else
        ker_mu = nullspace(mu.transpose());
    Eigen::MatrixXd sum(alg.dim(), ker_mu.cols() + stab.cols());
    sum << ker_mu, stab;
    report.sum_condition_holds = (numerical_rank(sum) == alg.dim());

    report.kernel_equals_stabilizer =
        (report.dim_kernel_algebra == report.dim_stabilizer) &&
        (k.cols() == 0 || max_principal_angle(k, stab) < 1e-9);

    if (alg.is_torus()) {
        bool integral = true;
        for (int i = 0; i < mu.size(); ++i)
            if (std::abs(mu[i] - std::round(mu[i])) > 1e-9)
                integral = false;
        report.mu_integral = integral;
    }
    return report;
}

Subspace bilinear_kernel(const Eigen::MatrixXd& gram, double reference_scale) {
    if (gram.rows() != gram.cols())
        throw DimensionError("bilinear kernel of a non-square matrix");
    const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    if (gram.rows() > 0 && (gram + gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DimensionError("bilinear kernel needs an antisymmetric matrix");
    if (reference_scale > 0.0 && gram.size() > 0 &&
        gram.cwiseAbs().maxCoeff() <= rank_rtol * reference_scale)
        return Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    return nullspace(gram);
}

Subspace symplectic_perp(const Eigen::MatrixXd& gram, const Subspace& w_basis) {
    if (gram.rows() != gram.cols())
        throw DimensionError("symplectic perp of a non-square form");
    if (w_basis.rows() != gram.rows())
        throw DimensionError("subspace basis does not match the form's space");
    if (w_basis.cols() == 0)
        return Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    return nullspace(w_basis.transpose() * gram);
}

bool slice_intersection_check(const LieAlgebraData& alg, const DualElement& mu,
                              const std::optional<Eigen::MatrixXd>& dual_form) {
    const int d = alg.dim();
    if (mu.size() != d)
        throw DimensionError("mu does not match the algebra dimension");
    Eigen::MatrixXd p = dual_form.value_or(Eigen::MatrixXd::Identity(d, d));
    if (p.rows() != d || p.cols() != d)
        throw DimensionError("dual form does not match the algebra dimension");

    const Subspace orbit_tangent = column_space(coadjoint_matrix(alg, mu));
    if (orbit_tangent.cols() == 0)
        return true;  // the orbit is a point

    // Tangent of the slice: the ray direction plus the form-complement of
    // the orbit tangent.
    const Subspace complement = nullspace(orbit_tangent.transpose() * p);
    Eigen::MatrixXd slice_raw(d, 1 + complement.cols());
    slice_raw << mu, complement;
    const Subspace slice_tangent = column_space(slice_raw);

    Eigen::MatrixXd joint(d, orbit_tangent.cols() + slice_tangent.cols());
    joint << orbit_tangent, slice_tangent;
    return numerical_rank(joint) ==
           static_cast<int>(orbit_tangent.cols() + slice_tangent.cols());
}

} // namespace contactred
