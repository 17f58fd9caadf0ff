#pragma once

#include <string>
#include <vector>

#include "shiftq/polynomial.hpp"

namespace shiftq {

/// Polynomial truncated power series in the formal parameter hbar: powers above
/// order_cap are dropped silently by every operation.
class HbarPoly {
   public:
    HbarPoly() = default;
    HbarPoly(std::vector<std::string> vars, unsigned order_cap)
        : vars_(std::move(vars)), cap_(order_cap) {}

    static HbarPoly zero(std::vector<std::string> vars, unsigned cap) {
        return HbarPoly(std::move(vars), cap);
    }
    static HbarPoly from_poly(Polynomial p, unsigned cap);
    static HbarPoly constant(std::vector<std::string> vars, unsigned cap, Rational c);
    /// c * hbar^power
    static HbarPoly hbar_monomial(std::vector<std::string> vars, unsigned cap, unsigned power,
                                  Polynomial coeff);

    const std::vector<std::string>& vars() const { return vars_; }
    unsigned order_cap() const { return cap_; }
    bool is_zero() const;

    /// Coefficient of hbar^k (zero polynomial if absent or beyond the cap).
    Polynomial coeff(unsigned k) const;
    unsigned top_power() const;  // largest stored power (0 when zero)

    void set_coeff(unsigned k, Polynomial p);
    void add_coeff(unsigned k, const Polynomial& p);

    HbarPoly truncated(unsigned new_cap) const;

    HbarPoly operator-() const;
    HbarPoly& operator+=(const HbarPoly& o);
    HbarPoly& operator-=(const HbarPoly& o);
    friend HbarPoly operator+(HbarPoly a, const HbarPoly& b) { return a += b; }
    friend HbarPoly operator-(HbarPoly a, const HbarPoly& b) { return a -= b; }
    friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b);
    HbarPoly scaled(const Rational& c) const;
    HbarPoly partial(size_t index) const;

    friend bool operator==(const HbarPoly& a, const HbarPoly& b);
    friend bool operator<(const HbarPoly& a, const HbarPoly& b);

    std::string str() const;

   private:
    void trim();

    std::vector<std::string> vars_;
    unsigned cap_ = 0;
    std::vector<Polynomial> coeff_;  // index = hbar power, size <= cap_+1, trailing zeros trimmed
};

void require_compatible(const HbarPoly& a, const HbarPoly& b);

}  // namespace shiftq
