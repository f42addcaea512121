#include "contactred/rational.hpp"

#include "contactred/error.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>

namespace contactred {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw CatalogError("rational overflow in multiplication");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw CatalogError("rational overflow in addition");
    return out;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0)
        throw CatalogError("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    return Rational(-num_, den_);
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + (-o);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0)
        throw CatalogError("rational division by zero");
    return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
}

Rational Rational::parse(const std::string& text) {
    if (text.empty())
        throw CatalogError("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(text, &used);
            if (used != text.size())
                throw CatalogError("trailing characters in rational literal '" + text + "'");
            return Rational(v);
        }
        std::size_t used_num = 0;
        std::size_t used_den = 0;
        const std::string num_text = text.substr(0, slash);
        const std::string den_text = text.substr(slash + 1);
        const std::int64_t p = std::stoll(num_text, &used_num);
        const std::int64_t q = std::stoll(den_text, &used_den);
        if (used_num != num_text.size() || used_den != den_text.size())
            throw CatalogError("trailing characters in rational literal '" + text + "'");
        return Rational(p, q);
    } catch (const std::invalid_argument&) {
        throw CatalogError("malformed rational literal '" + text + "'");
    } catch (const std::out_of_range&) {
        throw CatalogError("rational literal out of range '" + text + "'");
    }
}

std::string Rational::str() const {
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace contactred
