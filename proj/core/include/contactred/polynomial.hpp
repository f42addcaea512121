#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace contactred {

// Exponent vector, one entry per ambient coordinate.
using MultiIndex = std::vector<int>;

// Sparse multivariate polynomial with double coefficients. Coefficient
// arithmetic (sum, product, derivative) is carried out on the stored
// coefficients themselves, so polynomials with integer or dyadic
// coefficients stay exact; only evaluation rounds. Terms live in an
// ordered map, which makes iteration order, and everything serialized
// from it, deterministic. A normalized polynomial stores no zero
// coefficients.
class PolyMap {
public:
    explicit PolyMap(int ambient_dim = 0) : dim_(ambient_dim) {}

    static PolyMap constant(int ambient_dim, double value);
    static PolyMap coordinate(int ambient_dim, int index);
    // Linear form  sum_i coeffs[i] * x_i.
    static PolyMap linear(const Eigen::VectorXd& coeffs);
    // Quadratic form  x^T Q x  for symmetric Q.
    static PolyMap quadratic_form(const Eigen::MatrixXd& q);

    int ambient_dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    const std::map<MultiIndex, double>& terms() const { return terms_; }

    void add_term(const MultiIndex& exponents, double coeff);

    double eval(const Eigen::VectorXd& point) const;

    PolyMap derivative(int coordinate) const;
    std::vector<PolyMap> gradient() const;

    PolyMap operator+(const PolyMap& o) const;
    PolyMap operator-(const PolyMap& o) const;
    PolyMap operator*(const PolyMap& o) const;
    PolyMap operator*(double scalar) const;
    PolyMap operator-() const { return *this * -1.0; }

    bool operator==(const PolyMap& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

    // Largest |coefficient|, 0 for the zero polynomial. The exact-identity
    // tests use this to assert a difference normalized to nothing.
    double max_abs_coeff() const;

    std::string str() const;

private:
    int dim_;
    std::map<MultiIndex, double> terms_;
};

PolyMap operator*(double scalar, const PolyMap& p);

// Polynomial vector field  x -> M x  componentwise, as ambient_dim polynomials.
std::vector<PolyMap> linear_field(const Eigen::MatrixXd& m);

// Dot product of two polynomial vectors of equal length.
PolyMap poly_dot(const std::vector<PolyMap>& a, const std::vector<PolyMap>& b);

} // namespace contactred
