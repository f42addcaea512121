#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace contactred {

// Exact rational with int64 numerator/denominator, always normalized so
// that den > 0 and gcd(|num|, den) == 1. Arithmetic throws on overflow;
// the quantities stored this way (structure constants, config inputs)
// are tiny, so hitting the guard means corrupted data, not a size limit
// the caller should work around.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    // Accepts "p", "-p", "p/q". Throws CatalogError on anything else.
    static Rational parse(const std::string& text);

    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace contactred
