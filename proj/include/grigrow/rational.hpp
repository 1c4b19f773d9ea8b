#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Exact rational arithmetic on int64 numerator/denominator with overflow
// checks (throws std::overflow_error).  Canonical form: den > 0, gcd = 1.

namespace grigrow {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    static Rational parse(std::string_view s);  // "p" or "p/q"

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::int64_t floor() const;          // largest integer <= value
    Rational frac() const;               // this - floor(), in [0,1)
    Rational mod1() const { return frac(); }
    bool is_integer() const { return den_ == 1; }

    Rational pow(unsigned k) const;

    std::string str() const;  // "p/q" or "p"

private:
    std::int64_t num_, den_;
};

}  // namespace grigrow
