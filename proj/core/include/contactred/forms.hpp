#pragma once

#include "contactred/polynomial.hpp"

#include <Eigen/Core>

#include <map>
#include <utility>
#include <vector>

namespace contactred {

// Differential 1-form with polynomial coefficients:  sum_i c_i(x) dx_i.
struct Poly1Form {
    int ambient_dim = 0;
    std::vector<PolyMap> coeffs;  // one per coordinate

    Poly1Form() = default;
    explicit Poly1Form(int dim);
    Poly1Form(int dim, std::vector<PolyMap> c);

    // Standard contact form on R^{2n} with interleaved complex coordinates
    // (x_1, y_1, ..., x_n, y_n):  sum_j (x_j dy_j - y_j dx_j).
    static Poly1Form standard_contact(int ambient_dim);
};

// Differential 2-form with polynomial coefficients, stored on the basis
// dx_i ∧ dx_j for i < j.
struct Poly2Form {
    int ambient_dim = 0;
    std::map<std::pair<int, int>, PolyMap> coeffs;

    Poly2Form() = default;
    explicit Poly2Form(int dim) : ambient_dim(dim) {}

    // Accumulates into the (min(i,j), max(i,j)) slot with the right sign.
    void add(int i, int j, const PolyMap& c);
    // Coefficient of dx_i ∧ dx_j for any i != j (signed), zero polynomial if absent.
    PolyMap coeff(int i, int j) const;
};

double eval_1form(const Poly1Form& form, const Eigen::VectorXd& point,
                  const Eigen::VectorXd& vector);

double eval_2form(const Poly2Form& form, const Eigen::VectorXd& point,
                  const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// d of a 1-form, coefficientwise:  d(c_i dx_i) = sum_{j<i} (∂_j c_i) dx_j ∧ dx_i.
// Coefficient arithmetic is exact; nothing is differenced numerically.
Poly2Form exterior_derivative(const Poly1Form& form);

// d of a 0-form (the gradient as a 1-form).
Poly1Form exterior_derivative(const PolyMap& f);

// Interior product ι(X)ω for the linear vector field X(x) = M x.
Poly1Form interior_product_linear(const Poly2Form& form, const Eigen::MatrixXd& m);

// Pairing ι(X)α = α(X) for the linear field X(x) = M x, as a polynomial.
PolyMap pair_with_linear_field(const Poly1Form& form, const Eigen::MatrixXd& m);

// Cartan formula  L_X α = ι(X) dα + d(α(X))  for a linear field X(x) = M x.
// All steps are exact coefficient operations, so an invariant form comes
// back as the zero polynomial in every slot.
Poly1Form lie_derivative_linear(const Poly1Form& form, const Eigen::MatrixXd& m);

// f * α, polynomial multiplication in each coefficient slot.
Poly1Form scale_form(const PolyMap& f, const Poly1Form& form);

// Wedge of a 0-form differential with a 1-form: df ∧ α.
Poly2Form wedge(const Poly1Form& a, const Poly1Form& b);

} // namespace contactred
