#include "shiftq/element.hpp"

#include <algorithm>
#include <sstream>

#include "shiftq/errors.hpp"
#include "shiftq/koszul.hpp"

namespace shiftq {

GradedSpace GradedSpace::finite(std::vector<std::pair<std::string, int>> basis) {
    GradedSpace s;
    s.backend = Backend::Finite;
    s.basis = std::move(basis);
    for (size_t i = 0; i < s.basis.size(); ++i)
        for (size_t j = i + 1; j < s.basis.size(); ++j)
            if (s.basis[i].first == s.basis[j].first)
                throw StructuralError("duplicate basis name: " + s.basis[i].first);
    return s;
}

GradedSpace GradedSpace::tpoly(std::vector<std::string> vars, unsigned hbar_cap) {
    GradedSpace s;
    s.backend = Backend::TPoly;
    s.vars = std::move(vars);
    s.hbar_cap = hbar_cap;
    return s;
}

GradedSpace GradedSpace::dpoly(std::vector<std::string> vars, unsigned hbar_cap) {
    GradedSpace s;
    s.backend = Backend::DPoly;
    s.vars = std::move(vars);
    s.hbar_cap = hbar_cap;
    return s;
}

int GradedSpace::basis_index(const std::string& name) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].first == name) return static_cast<int>(i);
    return -1;
}

int GradedSpace::basis_degree(const std::string& name) const {
    int i = basis_index(name);
    if (i < 0) throw StructuralError("unknown basis element: " + name);
    return basis[static_cast<size_t>(i)].second;
}

bool GradedSpace::same_as(const GradedSpace& o) const {
    return backend == o.backend && basis == o.basis && vars == o.vars && hbar_cap == o.hbar_cap;
}

Element Element::finite(FiniteVec v) {
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
    Element e;
    e.v_ = std::move(v);
    return e;
}

Element Element::tpoly(HPolyvector v) {
    Element e;
    e.v_ = std::move(v);
    return e;
}

Element Element::dpoly(HPolyDiffOp v) {
    Element e;
    e.v_ = std::move(v);
    return e;
}

const FiniteVec& Element::fv() const {
    if (!is_finite()) throw StructuralError("element is not from a finite backend");
    return std::get<FiniteVec>(v_);
}

const HPolyvector& Element::pv() const {
    if (!is_tpoly()) throw StructuralError("element is not a polyvector");
    return std::get<HPolyvector>(v_);
}

const HPolyDiffOp& Element::op() const {
    if (!is_dpoly()) throw StructuralError("element is not a polydifferential operator");
    return std::get<HPolyDiffOp>(v_);
}

bool Element::is_zero() const {
    if (is_finite()) return fv().empty();
    if (is_tpoly()) return pv().is_zero();
    return op().is_zero();
}

int Element::degree(const GradedSpace& space) const {
    if (is_finite()) {
        if (fv().empty()) return 0;
        int deg = space.basis_degree(fv().begin()->first);
        for (const auto& [name, c] : fv())
            if (space.basis_degree(name) != deg)
                throw DomainError("finite element is not degree-homogeneous");
        return deg;
    }
    if (is_tpoly()) return pv().rank() - 1;
    return op().arity() - 1;
}

Element Element::operator-() const { return scaled(Rational(-1)); }

Element operator+(const Element& a, const Element& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_finite() && b.is_finite()) {
        FiniteVec r = a.fv();
        for (const auto& [name, c] : b.fv()) {
            auto [it, inserted] = r.emplace(name, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) r.erase(it);
            }
        }
        return Element::finite(std::move(r));
    }
    if (a.is_tpoly() && b.is_tpoly()) return Element::tpoly(a.pv() + b.pv());
    if (a.is_dpoly() && b.is_dpoly()) return Element::dpoly(a.op() + b.op());
    throw StructuralError("cannot add elements from different backends");
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element Element::scaled(const Rational& c) const {
    if (is_finite()) {
        FiniteVec r;
        if (!c.is_zero())
            for (const auto& [name, coeff] : fv()) r.emplace(name, coeff * c);
        return Element::finite(std::move(r));
    }
    if (is_tpoly()) return Element::tpoly(pv().scaled(c));
    return Element::dpoly(op().scaled(c));
}

bool operator<(const Element& a, const Element& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    if (a.is_finite()) return a.fv() < b.fv();
    if (a.is_tpoly()) return a.pv() < b.pv();
    return a.op() < b.op();
}

std::string Element::str() const {
    if (is_finite()) {
        if (fv().empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [name, c] : fv()) {
            if (!first) os << " + ";
            first = false;
            if (c.is_one())
                os << name;
            else
                os << c.str() << "*" << name;
        }
        return os.str();
    }
    if (is_tpoly()) return pv().str();
    return op().str();
}

GradedMap GradedMap::from_table(int arity, int degree, Table table) {
    GradedMap m;
    m.arity_ = arity;
    m.degree_ = degree;
    m.table_ = std::move(table);
    return m;
}

GradedMap GradedMap::from_fn(int arity, int degree, Fn fn) {
    GradedMap m;
    m.arity_ = arity;
    m.degree_ = degree;
    m.fn_ = std::move(fn);
    return m;
}

Element GradedMap::eval(const GradedSpace& space, std::span<const Element> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw StructuralError("graded map applied to wrong number of arguments");
    if (fn_) return fn_(args);
    if (space.backend != GradedSpace::Backend::Finite)
        throw StructuralError("table-backed maps need a finite backend");

    // multilinear expansion over basis components
    ElementSum acc;
    std::vector<std::pair<std::vector<int>, Rational>> expansion{{{}, Rational(1)}};
    for (const auto& arg : args) {
        std::vector<std::pair<std::vector<int>, Rational>> next;
        for (const auto& [prefix, coeff] : expansion) {
            for (const auto& [name, c] : arg.fv()) {
                int idx = space.basis_index(name);
                if (idx < 0) throw StructuralError("unknown basis element: " + name);
                auto tuple = prefix;
                tuple.push_back(idx);
                next.emplace_back(std::move(tuple), coeff * c);
            }
        }
        expansion = std::move(next);
    }
    for (auto& [tuple, coeff] : expansion) {
        // sort into canonical order, accumulating the exterior Koszul sign
        int sign = 1;
        bool zero = false;
        for (size_t i = 1; i < tuple.size() && !zero; ++i) {
            for (size_t j = i; j > 0 && tuple[j - 1] > tuple[j]; --j) {
                int d1 = space.basis[static_cast<size_t>(tuple[j - 1])].second;
                int d2 = space.basis[static_cast<size_t>(tuple[j])].second;
                sign *= ((d1 * d2) % 2 + 2) % 2 == 0 ? -1 : 1;  // -(-1)^{d1 d2}
                std::swap(tuple[j - 1], tuple[j]);
            }
        }
        for (size_t i = 0; i + 1 < tuple.size() && !zero; ++i)
            if (tuple[i] == tuple[i + 1] &&
                space.basis[static_cast<size_t>(tuple[i])].second % 2 == 0)
                zero = true;  // repeated even-degree slot kills the exterior monomial
        if (zero) continue;
        auto it = table_.find(tuple);
        if (it == table_.end()) continue;
        acc.add(Element::finite(it->second).scaled(coeff * Rational(sign)));
    }
    return acc.value_or(Element::finite({}));
}

Element zero_element(const GradedSpace& space, int rank_or_arity) {
    switch (space.backend) {
        case GradedSpace::Backend::Finite:
            return Element::finite({});
        case GradedSpace::Backend::TPoly:
            return Element::tpoly(
                HPolyvector(HbarPoly::zero(space.vars, space.hbar_cap), rank_or_arity));
        case GradedSpace::Backend::DPoly:
            return Element::dpoly(
                HPolyDiffOp(HbarPoly::zero(space.vars, space.hbar_cap), rank_or_arity));
    }
    throw StructuralError("unreachable backend");
}

}  // namespace shiftq
