#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftq/polydiffop.hpp"
#include "shiftq/polyvector.hpp"

namespace shiftq {

/// Sparse rational combination of named basis elements (finite backend).
using FiniteVec = std::map<std::string, Rational>;

/// Graded ambient space of an L-infinity structure: an abstract finite basis
/// with declared degrees, or polyvectors / polydifferential operators with the
/// shifted grading rank-1 / arity-1.
struct GradedSpace {
    enum class Backend { Finite, TPoly, DPoly };

    Backend backend = Backend::Finite;
    std::vector<std::pair<std::string, int>> basis;  // finite: (name, unshifted degree)
    std::vector<std::string> vars;                   // tpoly/dpoly
    unsigned hbar_cap = 0;

    static GradedSpace finite(std::vector<std::pair<std::string, int>> basis);
    static GradedSpace tpoly(std::vector<std::string> vars, unsigned hbar_cap);
    static GradedSpace dpoly(std::vector<std::string> vars, unsigned hbar_cap);

    int basis_index(const std::string& name) const;  // -1 when absent
    int basis_degree(const std::string& name) const;
    bool same_as(const GradedSpace& o) const;
};

/// One element of a graded space; which alternative is active must match the
/// space's backend.
class Element {
   public:
    Element() : v_(FiniteVec{}) {}
    static Element finite(FiniteVec v);
    static Element tpoly(HPolyvector v);
    static Element dpoly(HPolyDiffOp v);

    bool is_finite() const { return std::holds_alternative<FiniteVec>(v_); }
    bool is_tpoly() const { return std::holds_alternative<HPolyvector>(v_); }
    bool is_dpoly() const { return std::holds_alternative<HPolyDiffOp>(v_); }

    const FiniteVec& fv() const;
    const HPolyvector& pv() const;
    const HPolyDiffOp& op() const;

    bool is_zero() const;
    /// Unshifted degree; finite elements must be homogeneous in the space.
    int degree(const GradedSpace& space) const;

    Element operator-() const;
    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    Element scaled(const Rational& c) const;

    friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }
    friend bool operator<(const Element& a, const Element& b);

    std::string str() const;

   private:
    std::variant<FiniteVec, HPolyvector, HPolyDiffOp> v_;
};

/// Accumulator that tolerates an unknown zero shape.
struct ElementSum {
    std::optional<Element> value;
    void add(const Element& e) {
        if (e.is_zero()) return;
        if (!value)
            value = e;
        else
            value = *value + e;
    }
    void add_scaled(const Element& e, const Rational& c) {
        if (c.is_zero()) return;
        add(e.scaled(c));
    }
    bool is_zero() const { return !value || value->is_zero(); }
    Element value_or(const Element& zero) const { return value ? *value : zero; }
};

/// Multilinear graded map given either as a finite table on non-decreasing
/// basis tuples (extended by exterior-convention antisymmetry on unshifted
/// degrees) or as an already-multilinear callable.
class GradedMap {
   public:
    using Fn = std::function<Element(std::span<const Element>)>;
    using Table = std::map<std::vector<int>, FiniteVec>;

    GradedMap() = default;
    static GradedMap from_table(int arity, int degree, Table table);
    static GradedMap from_fn(int arity, int degree, Fn fn);

    int arity() const { return arity_; }
    int degree() const { return degree_; }
    bool is_table() const { return !fn_; }
    const Table& table() const { return table_; }

    /// Exterior-convention evaluation on arbitrary elements of the space.
    Element eval(const GradedSpace& space, std::span<const Element> args) const;

   private:
    int arity_ = 1;
    int degree_ = 0;
    Table table_;
    Fn fn_;
};

/// Zero element of the given space shape (finite: empty vector; tpoly/dpoly
/// need the rank/arity of the slot being produced).
Element zero_element(const GradedSpace& space, int rank_or_arity = 0);

}  // namespace shiftq
