#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>

namespace shiftq {

using Integer = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rational {
   public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
    Rational(Integer n) : num_(std::move(n)), den_(1) {}
    Rational(Integer num, Integer den);

    /// Parses "p", "p/q", with optional sign. Throws StructuralError on junk.
    static Rational parse(const std::string& text);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);  // throws DomainError on zero divisor

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    /// 1/n!, handy for the L-infinity series.
    static Rational inv_factorial(unsigned n);
    static Rational factorial(unsigned n);
    static Rational binomial(unsigned n, unsigned k);

   private:
    void normalize();

    Integer num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace shiftq
