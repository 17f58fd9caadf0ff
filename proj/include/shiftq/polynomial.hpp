#pragma once

#include <map>
#include <string>
#include <vector>

#include "shiftq/rational.hpp"

namespace shiftq {

using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

/// Graded-lexicographic order: lower total degree first, then lexicographic on
/// exponent vectors. Frozen so that term iteration (and hence every printed
/// report) is byte-stable.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse exact-rational multivariate polynomial over a fixed ordered variable list.
class Polynomial {
   public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial zero(std::vector<std::string> vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(std::vector<std::string> vars, Rational c);
    static Polynomial variable(std::vector<std::string> vars, size_t index);
    static Polynomial monomial(std::vector<std::string> vars, Exponents exp, Rational c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    unsigned degree() const;  // total degree; 0 for the zero polynomial

    void add_term(const Exponents& exp, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const Rational& c) const;

    /// Formal partial derivative with respect to vars()[index].
    Polynomial partial(size_t index) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const Polynomial& a, const Polynomial& b);

    std::string str() const;

   private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Throws StructuralError unless both polynomials live over the same variable list.
void require_same_vars(const Polynomial& a, const Polynomial& b);

}  // namespace shiftq
