#include "contactred/forms.hpp"

#include "contactred/error.hpp"

namespace contactred {

Poly1Form::Poly1Form(int dim) : ambient_dim(dim), coeffs(dim, PolyMap(dim)) {}

Poly1Form::Poly1Form(int dim, std::vector<PolyMap> c) : ambient_dim(dim), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != dim)
        throw DimensionError("1-form needs one coefficient per coordinate");
    for (const auto& p : coeffs)
        if (p.ambient_dim() != dim)
            throw DimensionError("1-form coefficient with wrong ambient dimension");
}

Poly1Form Poly1Form::standard_contact(int ambient_dim) {
    if (ambient_dim % 2 != 0 || ambient_dim <= 0)
        throw DimensionError("standard contact form needs an even positive ambient dimension");
    Poly1Form form(ambient_dim);
    for (int j = 0; j < ambient_dim / 2; ++j) {
        const int x = 2 * j;
        const int y = 2 * j + 1;
        form.coeffs[x] = -PolyMap::coordinate(ambient_dim, y);   // -y_j dx_j
        form.coeffs[y] = PolyMap::coordinate(ambient_dim, x);    //  x_j dy_j
    }
    return form;
}

void Poly2Form::add(int i, int j, const PolyMap& c) {
    if (i == j)
        throw DimensionError("2-form slot with repeated index");
    if (i < 0 || j < 0 || i >= ambient_dim || j >= ambient_dim)
        throw DimensionError("2-form slot index out of range");
    const bool flip = i > j;
    const auto key = flip ? std::make_pair(j, i) : std::make_pair(i, j);
    auto it = coeffs.find(key);
    if (it == coeffs.end())
        it = coeffs.emplace(key, PolyMap(ambient_dim)).first;
    it->second = flip ? it->second - c : it->second + c;
    if (it->second.is_zero())
        coeffs.erase(it);
}

PolyMap Poly2Form::coeff(int i, int j) const {
    const bool flip = i > j;
    const auto key = flip ? std::make_pair(j, i) : std::make_pair(i, j);
    const auto it = coeffs.find(key);
    if (it == coeffs.end())
        return PolyMap(ambient_dim);
    return flip ? -it->second : it->second;
}

double eval_1form(const Poly1Form& form, const Eigen::VectorXd& point,
                  const Eigen::VectorXd& vector) {
    if (point.size() != form.ambient_dim || vector.size() != form.ambient_dim)
        throw DimensionError("1-form evaluation with mismatched dimensions");
    double total = 0.0;
    for (int i = 0; i < form.ambient_dim; ++i) {
        if (vector[i] != 0.0)
            total += form.coeffs[i].eval(point) * vector[i];
    }
    return total;
}

double eval_2form(const Poly2Form& form, const Eigen::VectorXd& point,
                  const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (point.size() != form.ambient_dim || u.size() != form.ambient_dim ||
        v.size() != form.ambient_dim)
        throw DimensionError("2-form evaluation with mismatched dimensions");
    double total = 0.0;
    for (const auto& [key, c] : form.coeffs) {
        const auto [i, j] = key;
        const double plane = u[i] * v[j] - u[j] * v[i];
        if (plane != 0.0)
            total += c.eval(point) * plane;
    }
    return total;
}

Poly2Form exterior_derivative(const Poly1Form& form) {
    Poly2Form out(form.ambient_dim);
    for (int i = 0; i < form.ambient_dim; ++i) {
        for (int j = 0; j < form.ambient_dim; ++j) {
            if (j == i)
                continue;
            const PolyMap dji = form.coeffs[i].derivative(j);
            if (!dji.is_zero())
                out.add(j, i, dji);  // (∂_j c_i) dx_j ∧ dx_i
        }
    }
    return out;
}

Poly1Form exterior_derivative(const PolyMap& f) {
    return Poly1Form(f.ambient_dim(), f.gradient());
}

Poly1Form interior_product_linear(const Poly2Form& form, const Eigen::MatrixXd& m) {
    if (m.rows() != form.ambient_dim || m.cols() != form.ambient_dim)
        throw DimensionError("interior product with a field of wrong dimension");
    const std::vector<PolyMap> field = linear_field(m);
    Poly1Form out(form.ambient_dim);
    // (ι(X)ω)(v) = ω(X, v):  slot j picks up  sum_i ω_{ij} X_i.
    for (const auto& [key, c] : form.coeffs) {
        const auto [i, j] = key;
        out.coeffs[j] = out.coeffs[j] + c * field[i];
        out.coeffs[i] = out.coeffs[i] - c * field[j];
    }
    return out;
}

PolyMap pair_with_linear_field(const Poly1Form& form, const Eigen::MatrixXd& m) {
    if (m.rows() != form.ambient_dim || m.cols() != form.ambient_dim)
        throw DimensionError("pairing with a field of wrong dimension");
    return poly_dot(form.coeffs, linear_field(m));
}

Poly1Form lie_derivative_linear(const Poly1Form& form, const Eigen::MatrixXd& m) {
    const Poly2Form da = exterior_derivative(form);
    const Poly1Form contraction = interior_product_linear(da, m);
    const Poly1Form exact_part = exterior_derivative(pair_with_linear_field(form, m));
    Poly1Form out(form.ambient_dim);
    for (int i = 0; i < form.ambient_dim; ++i)
        out.coeffs[i] = contraction.coeffs[i] + exact_part.coeffs[i];
    return out;
}

Poly1Form scale_form(const PolyMap& f, const Poly1Form& form) {
    if (f.ambient_dim() != form.ambient_dim)
        throw DimensionError("scaling a form by a function of wrong dimension");
    Poly1Form out(form.ambient_dim);
    for (int i = 0; i < form.ambient_dim; ++i)
        out.coeffs[i] = f * form.coeffs[i];
    return out;
}

Poly2Form wedge(const Poly1Form& a, const Poly1Form& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw DimensionError("wedge of forms with different ambient dimensions");
    Poly2Form out(a.ambient_dim);
    for (int i = 0; i < a.ambient_dim; ++i) {
        for (int j = i + 1; j < a.ambient_dim; ++j) {
            const PolyMap c = a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i];
            if (!c.is_zero())
                out.add(i, j, c);
        }
    }
    return out;
}

} // namespace contactred
