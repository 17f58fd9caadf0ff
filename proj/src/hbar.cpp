#include "shiftq/hbar.hpp"

#include <sstream>

#include "shiftq/errors.hpp"

namespace shiftq {

HbarPoly HbarPoly::from_poly(Polynomial p, unsigned cap) {
    HbarPoly h(p.vars(), cap);
    h.set_coeff(0, std::move(p));
    return h;
}

HbarPoly HbarPoly::constant(std::vector<std::string> vars, unsigned cap, Rational c) {
    return from_poly(Polynomial::constant(std::move(vars), std::move(c)), cap);
}

HbarPoly HbarPoly::hbar_monomial(std::vector<std::string> vars, unsigned cap, unsigned power,
                                 Polynomial coeff) {
    HbarPoly h(std::move(vars), cap);
    h.set_coeff(power, std::move(coeff));
    return h;
}

bool HbarPoly::is_zero() const { return coeff_.empty(); }

Polynomial HbarPoly::coeff(unsigned k) const {
    if (k < coeff_.size()) return coeff_[k];
    return Polynomial::zero(vars_);
}

unsigned HbarPoly::top_power() const {
    return coeff_.empty() ? 0u : static_cast<unsigned>(coeff_.size() - 1);
}

void HbarPoly::set_coeff(unsigned k, Polynomial p) {
    if (p.vars() != vars_) throw StructuralError("variable-list mismatch in hbar coefficient");
    if (k > cap_) return;  // truncation
    if (coeff_.size() <= k) coeff_.resize(k + 1, Polynomial::zero(vars_));
    coeff_[k] = std::move(p);
    trim();
}

void HbarPoly::add_coeff(unsigned k, const Polynomial& p) {
    if (p.vars() != vars_) throw StructuralError("variable-list mismatch in hbar coefficient");
    if (k > cap_ || p.is_zero()) return;
    if (coeff_.size() <= k) coeff_.resize(k + 1, Polynomial::zero(vars_));
    coeff_[k] += p;
    trim();
}

HbarPoly HbarPoly::truncated(unsigned new_cap) const {
    HbarPoly r(vars_, new_cap);
    for (unsigned k = 0; k < coeff_.size() && k <= new_cap; ++k) r.set_coeff(k, coeff_[k]);
    return r;
}

void HbarPoly::trim() {
    while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
}

HbarPoly HbarPoly::operator-() const {
    HbarPoly r(vars_, cap_);
    r.coeff_.reserve(coeff_.size());
    for (const auto& p : coeff_) r.coeff_.push_back(-p);
    return r;
}

HbarPoly& HbarPoly::operator+=(const HbarPoly& o) {
    require_compatible(*this, o);
    for (unsigned k = 0; k < o.coeff_.size(); ++k) add_coeff(k, o.coeff_[k]);
    return *this;
}

HbarPoly& HbarPoly::operator-=(const HbarPoly& o) {
    require_compatible(*this, o);
    for (unsigned k = 0; k < o.coeff_.size(); ++k) add_coeff(k, -o.coeff_[k]);
    return *this;
}

HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
    require_compatible(a, b);
    HbarPoly r(a.vars_, a.cap_);
    for (unsigned i = 0; i < a.coeff_.size(); ++i) {
        if (a.coeff_[i].is_zero()) continue;
        for (unsigned j = 0; j < b.coeff_.size() && i + j <= a.cap_; ++j) {
            if (b.coeff_[j].is_zero()) continue;
            r.add_coeff(i + j, a.coeff_[i] * b.coeff_[j]);
        }
    }
    return r;
}

HbarPoly HbarPoly::scaled(const Rational& c) const {
    HbarPoly r(vars_, cap_);
    if (c.is_zero()) return r;
    for (unsigned k = 0; k < coeff_.size(); ++k) r.set_coeff(k, coeff_[k].scaled(c));
    return r;
}

HbarPoly HbarPoly::partial(size_t index) const {
    HbarPoly r(vars_, cap_);
    for (unsigned k = 0; k < coeff_.size(); ++k) r.set_coeff(k, coeff_[k].partial(index));
    return r;
}

bool operator==(const HbarPoly& a, const HbarPoly& b) {
    return a.vars_ == b.vars_ && a.cap_ == b.cap_ && a.coeff_ == b.coeff_;
}

bool operator<(const HbarPoly& a, const HbarPoly& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
    if (a.cap_ != b.cap_) return a.cap_ < b.cap_;
    return a.coeff_ < b.coeff_;
}

std::string HbarPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned k = 0; k < coeff_.size(); ++k) {
        if (coeff_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << coeff_[k].str();
        } else {
            os << "h^" << k << "*(" << coeff_[k].str() << ")";
        }
    }
    return os.str();
}

void require_compatible(const HbarPoly& a, const HbarPoly& b) {
    if (a.vars() != b.vars()) throw StructuralError("variable-list mismatch between hbar series");
    if (a.order_cap() != b.order_cap())
        throw StructuralError("hbar order-cap mismatch: " + std::to_string(a.order_cap()) +
                              " vs " + std::to_string(b.order_cap()));
}

}  // namespace shiftq
