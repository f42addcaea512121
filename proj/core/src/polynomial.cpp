#include "contactred/polynomial.hpp"

#include "contactred/error.hpp"

#include <cmath>
#include <sstream>

namespace contactred {

namespace {

void check_same_dim(const PolyMap& a, const PolyMap& b, const char* what) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError(std::string(what) + ": ambient dimensions differ");
}

} // namespace

PolyMap PolyMap::constant(int ambient_dim, double value) {
    PolyMap p(ambient_dim);
    p.add_term(MultiIndex(ambient_dim, 0), value);
    return p;
}

PolyMap PolyMap::coordinate(int ambient_dim, int index) {
    if (index < 0 || index >= ambient_dim)
        throw DimensionError("coordinate index out of range");
    PolyMap p(ambient_dim);
    MultiIndex e(ambient_dim, 0);
    e[index] = 1;
    p.add_term(e, 1.0);
    return p;
}

PolyMap PolyMap::linear(const Eigen::VectorXd& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    PolyMap p(n);
    for (int i = 0; i < n; ++i) {
        MultiIndex e(n, 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

PolyMap PolyMap::quadratic_form(const Eigen::MatrixXd& q) {
    if (q.rows() != q.cols())
        throw DimensionError("quadratic form needs a square matrix");
    const int n = static_cast<int>(q.rows());
    PolyMap p(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            MultiIndex e(n, 0);
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, q(i, j));
        }
    }
    return p;
}

void PolyMap::add_term(const MultiIndex& exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != dim_)
        throw DimensionError("exponent vector length does not match ambient dimension");
    for (int e : exponents)
        if (e < 0)
            throw DimensionError("negative exponent");
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        if (coeff != 0.0)
            terms_.emplace(exponents, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0.0)
        terms_.erase(it);
}

double PolyMap::eval(const Eigen::VectorXd& point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionError("evaluation point has wrong ambient dimension");
    double total = 0.0;
    for (const auto& [exps, coeff] : terms_) {
        double term = coeff;
        for (int i = 0; i < dim_; ++i) {
            for (int k = 0; k < exps[i]; ++k)
                term *= point[i];
        }
        total += term;
    }
    return total;
}

PolyMap PolyMap::derivative(int coordinate) const {
    if (coordinate < 0 || coordinate >= dim_)
        throw DimensionError("derivative coordinate out of range");
    PolyMap out(dim_);
    for (const auto& [exps, coeff] : terms_) {
        const int e = exps[coordinate];
        if (e == 0)
            continue;
        MultiIndex d = exps;
        d[coordinate] -= 1;
        out.add_term(d, coeff * static_cast<double>(e));
    }
    return out;
}

std::vector<PolyMap> PolyMap::gradient() const {
    std::vector<PolyMap> g;
    g.reserve(dim_);
    for (int i = 0; i < dim_; ++i)
        g.push_back(derivative(i));
    return g;
}

PolyMap PolyMap::operator+(const PolyMap& o) const {
    check_same_dim(*this, o, "polynomial sum");
    PolyMap out = *this;
    for (const auto& [exps, coeff] : o.terms_)
        out.add_term(exps, coeff);
    return out;
}

PolyMap PolyMap::operator-(const PolyMap& o) const {
    check_same_dim(*this, o, "polynomial difference");
    PolyMap out = *this;
    for (const auto& [exps, coeff] : o.terms_)
        out.add_term(exps, -coeff);
    return out;
}

PolyMap PolyMap::operator*(const PolyMap& o) const {
    check_same_dim(*this, o, "polynomial product");
    PolyMap out(dim_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            MultiIndex e(dim_);
            for (int i = 0; i < dim_; ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolyMap PolyMap::operator*(double scalar) const {
    PolyMap out(dim_);
    if (scalar == 0.0)
        return out;
    for (const auto& [exps, coeff] : terms_)
        out.add_term(exps, coeff * scalar);
    return out;
}

double PolyMap::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [exps, coeff] : terms_)
        m = std::max(m, std::abs(coeff));
    return m;
}

std::string PolyMap::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exps, coeff] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << coeff;
        for (int i = 0; i < dim_; ++i) {
            if (exps[i] == 0)
                continue;
            os << "*x" << i;
            if (exps[i] > 1)
                os << "^" << exps[i];
        }
    }
    return os.str();
}

PolyMap operator*(double scalar, const PolyMap& p) {
    return p * scalar;
}

std::vector<PolyMap> linear_field(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw DimensionError("linear field needs a square matrix");
    const int n = static_cast<int>(m.rows());
    std::vector<PolyMap> field;
    field.reserve(n);
    for (int i = 0; i < n; ++i)
        field.push_back(PolyMap::linear(m.row(i).transpose()));
    return field;
}

PolyMap poly_dot(const std::vector<PolyMap>& a, const std::vector<PolyMap>& b) {
    if (a.size() != b.size() || a.empty())
        throw DimensionError("poly_dot needs two vectors of equal positive length");
    PolyMap out(a[0].ambient_dim());
    for (std::size_t i = 0; i < a.size(); ++i)
        out = out + a[i] * b[i];
    return out;
}

} // namespace contactred
