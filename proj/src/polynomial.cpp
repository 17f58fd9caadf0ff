#include "shiftq/polynomial.hpp"

#include <sstream>

#include "shiftq/errors.hpp"

namespace shiftq {

unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

Polynomial Polynomial::constant(std::vector<std::string> vars, Rational c) {
    Polynomial p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, size_t index) {
    if (index >= vars.size()) throw StructuralError("variable index out of range");
    Polynomial p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[index] = 1;
    p.add_term(e, Rational(1));
    return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> vars, Exponents exp, Rational c) {
    Polynomial p(std::move(vars));
    if (exp.size() != p.vars_.size()) throw StructuralError("exponent vector length mismatch");
    p.add_term(exp, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Exponents(vars_.size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
    return terms_.empty() ? 0u : total_degree(terms_.rbegin()->first);
}

void Polynomial::add_term(const Exponents& exp, const Rational& c) {
    if (c.is_zero()) return;
    if (exp.size() != vars_.size()) throw StructuralError("exponent vector length mismatch");
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    Polynomial r(a.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    const unsigned cap = limits::max_total_degree();
    if (a.degree() + b.degree() > cap)
        throw ResourceError("polynomial product exceeds total-degree cap " + std::to_string(cap));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, coeff * c);
    return r;
}

Polynomial Polynomial::partial(size_t index) const {
    if (index >= vars_.size()) throw StructuralError("partial-derivative index out of range");
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exponents d = e;
        d[index] -= 1;
        r.add_term(d, c * Rational(static_cast<long long>(e[index])));
    }
    return r;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
    auto ai = a.terms_.begin(), bi = b.terms_.begin();
    GradedLexLess less;
    for (; ai != a.terms_.end() && bi != b.terms_.end(); ++ai, ++bi) {
        if (less(ai->first, bi->first)) return true;
        if (less(bi->first, ai->first)) return false;
        if (ai->second != bi->second) return ai->second < bi->second;
    }
    return ai == a.terms_.end() && bi != b.terms_.end();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_var = total_degree(e) > 0;
        if (!has_var || !mag.is_one()) {
            os << mag.str();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

void require_same_vars(const Polynomial& a, const Polynomial& b) {
    if (a.vars() != b.vars()) throw StructuralError("variable-list mismatch between polynomials");
}

}  // namespace shiftq
