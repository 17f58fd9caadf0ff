#include "shiftq/rational.hpp"

#include <ostream>
#include <utility>

#include "shiftq/errors.hpp"

namespace shiftq {

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    Integer g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text), 1);
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw DomainError("rational literal with zero denominator: " + text);
        return Rational(num, den);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw StructuralError("malformed rational literal: '" + text + "'");
    }
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw DomainError("division of rationals by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Integer lhs = a.num_ * b.den_;
    Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Rational Rational::factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

Rational Rational::inv_factorial(unsigned n) { return Rational(1) / factorial(n); }

Rational Rational::binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return Rational(r);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace shiftq
