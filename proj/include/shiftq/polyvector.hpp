#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "shiftq/errors.hpp"
#include "shiftq/hbar.hpp"
#include "shiftq/polynomial.hpp"

namespace shiftq {

/// Strictly increasing 0-based partial-derivative slots of a polyvector monomial.
using IdxTuple = std::vector<int>;

template <class R>
struct RingOps;

template <>
struct RingOps<Polynomial> {
    static Polynomial zero_like(const Polynomial& proto) { return Polynomial::zero(proto.vars()); }
    static Polynomial one_like(const Polynomial& proto) {
        return Polynomial::constant(proto.vars(), Rational(1));
    }
};

template <>
struct RingOps<HbarPoly> {
    static HbarPoly zero_like(const HbarPoly& proto) {
        return HbarPoly::zero(proto.vars(), proto.order_cap());
    }
    static HbarPoly one_like(const HbarPoly& proto) {
        return HbarPoly::constant(proto.vars(), proto.order_cap(), Rational(1));
    }
};

/// Antisymmetric p-vector field with coefficients in R, indices normalized to
/// strictly increasing tuples at construction. Rank 0 elements are functions.
template <class R>
class PolyvectorT {
   public:
    using TermMap = std::map<IdxTuple, R>;

    PolyvectorT() : rank_(0) {}
    PolyvectorT(R proto, int rank) : proto_(RingOps<R>::zero_like(proto)), rank_(rank) {
        if (rank < 0) throw StructuralError("polyvector rank must be non-negative");
    }

    static PolyvectorT zero(R proto, int rank) { return PolyvectorT(std::move(proto), rank); }
    static PolyvectorT function(R f) {
        PolyvectorT v(f, 0);
        v.add_term({}, std::move(f));
        return v;
    }
    /// Constant-coefficient basis monomial d_{i1} ^ ... ^ d_{ip}.
    static PolyvectorT basis(R proto, IdxTuple idx) {
        PolyvectorT v(proto, static_cast<int>(idx.size()));
        v.add_term(std::move(idx), RingOps<R>::one_like(v.proto_));
        return v;
    }

    const std::vector<std::string>& vars() const { return proto_.vars(); }
    const R& proto() const { return proto_; }
    int rank() const { return rank_; }
    int shifted_degree() const { return rank_ - 1; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * d_idx, antisymmetrizing the index tuple into canonical order.
    void add_term(IdxTuple idx, R c) {
        if (static_cast<int>(idx.size()) != rank_)
            throw StructuralError("index tuple length does not match polyvector rank");
        if (c.is_zero()) return;
        int sign = 1;
        for (size_t i = 1; i < idx.size(); ++i) {  // insertion sort, tracking parity
            for (size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
                std::swap(idx[j - 1], idx[j]);
                sign = -sign;
            }
        }
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= static_cast<int>(vars().size()))
                throw StructuralError("polyvector slot index out of range");
            if (i + 1 < idx.size() && idx[i] == idx[i + 1]) return;  // repeated slot: zero
        }
        if (sign < 0) c = -c;
        auto it = terms_.find(idx);
        if (it == terms_.end()) {
            terms_.emplace(std::move(idx), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PolyvectorT operator-() const {
        PolyvectorT r(proto_, rank_);
        for (const auto& [i, c] : terms_) r.terms_.emplace(i, -c);
        return r;
    }
    PolyvectorT& operator+=(const PolyvectorT& o) {
        require_match(o);
        for (const auto& [i, c] : o.terms_) add_canonical(i, c);
        return *this;
    }
    PolyvectorT& operator-=(const PolyvectorT& o) {
        require_match(o);
        for (const auto& [i, c] : o.terms_) add_canonical(i, -c);
        return *this;
    }
    friend PolyvectorT operator+(PolyvectorT a, const PolyvectorT& b) { return a += b; }
    friend PolyvectorT operator-(PolyvectorT a, const PolyvectorT& b) { return a -= b; }

    PolyvectorT scaled(const Rational& c) const {
        PolyvectorT r(proto_, rank_);
        if (c.is_zero()) return r;
        for (const auto& [i, coeff] : terms_) r.terms_.emplace(i, coeff.scaled(c));
        return r;
    }

    friend bool operator==(const PolyvectorT& a, const PolyvectorT& b) {
        return a.vars() == b.vars() && a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const PolyvectorT& a, const PolyvectorT& b) {
        if (a.vars() != b.vars()) return a.vars() < b.vars();
        if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
        return a.terms_ < b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (int k : i) os << "*d" << vars()[k];
        }
        return os.str();
    }

    void require_match(const PolyvectorT& o) const {
        if (vars() != o.vars())
            throw StructuralError("variable-list mismatch between polyvectors");
        if (rank_ != o.rank_) throw StructuralError("rank mismatch between polyvectors");
    }

   private:
    void add_canonical(const IdxTuple& idx, const R& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(idx);
        if (it == terms_.end()) {
            terms_.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    R proto_;  // zero coefficient carrying the variable list (and hbar cap)
    int rank_;
    TermMap terms_;
};

using Polyvector = PolyvectorT<Polynomial>;
using HPolyvector = PolyvectorT<HbarPoly>;

namespace detail {

/// Sign of merging two strictly increasing tuples into one sorted tuple;
/// 0 when they share a slot.
inline int merge_sign(const IdxTuple& a, const IdxTuple& b) {
    int inversions = 0;
    for (int x : a)
        for (int y : b) {
            if (x == y) return 0;
            if (x > y) ++inversions;
        }
    return inversions % 2 == 0 ? 1 : -1;
}

inline IdxTuple merged(const IdxTuple& a, const IdxTuple& b) {
    IdxTuple m;
    m.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
    return m;
}

/// (-1)^(p(p-1)/2): the grading twist fixing the frozen bracket convention.
inline int reversal_sign(int p) { return (p / 2) % 2 == 0 ? 1 : -1; }

}  // namespace detail

template <class R>
PolyvectorT<R> wedge(const PolyvectorT<R>& a, const PolyvectorT<R>& b) {
    if (a.vars() != b.vars()) throw StructuralError("variable-list mismatch in wedge product");
    PolyvectorT<R> r(a.proto(), a.rank() + b.rank());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            int s = detail::merge_sign(ia, ib);
            if (s == 0) continue;
            R c = ca * cb;
            if (s < 0) c = -c;
            r.add_term(detail::merged(ia, ib), std::move(c));
        }
    }
    return r;
}

/// Schouten-Nijenhuis bracket, graded Lie bracket on shifted degree rank-1.
///
/// Frozen convention: the canonical odd Poisson bracket of the superspace
/// picture, conjugated by the grading twist (-1)^(p(p-1)/2). This is the unique
/// choice for which simultaneously [xi,f] = xi(f), [xi,eta] = Lie bracket,
/// and [f,[pi,g]] = pi(df,dg); the regression fixtures lock it in place.
template <class R>
PolyvectorT<R> schouten(const PolyvectorT<R>& a, const PolyvectorT<R>& b) {
    if (a.vars() != b.vars()) throw StructuralError("variable-list mismatch in Schouten bracket");
    const int p = a.rank(), q = b.rank();
    const int out_rank = p + q - 1;
    if (out_rank < 0) return PolyvectorT<R>::zero(a.proto(), 0);
    PolyvectorT<R> r(a.proto(), out_rank);
    const size_t nvars = a.vars().size();
    const int mu = detail::reversal_sign(p) * detail::reversal_sign(q) *
                   detail::reversal_sign(out_rank);
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            // d^R/d theta_k (a-term) wedge d/dx_k (b-term)
            for (size_t r_pos = 0; r_pos < ia.size(); ++r_pos) {
                const int k = ia[r_pos];
                R db = cb.partial(static_cast<size_t>(k));
                if (db.is_zero()) continue;
                IdxTuple ia_red = ia;
                ia_red.erase(ia_red.begin() + static_cast<long>(r_pos));
                int sgn = ((p - 1 - static_cast<int>(r_pos)) % 2 == 0) ? 1 : -1;  // right derivative
                int ms = detail::merge_sign(ia_red, ib);
                if (ms == 0) continue;
                R c = ca * db;
                if (sgn * ms * mu < 0) c = -c;
                r.add_term(detail::merged(ia_red, ib), std::move(c));
            }
            // - d/dx_k (a-term) wedge d^L/d theta_k (b-term)
            for (size_t s_pos = 0; s_pos < ib.size(); ++s_pos) {
                const int k = ib[s_pos];
                R da = ca.partial(static_cast<size_t>(k));
                if (da.is_zero()) continue;
                IdxTuple ib_red = ib;
                ib_red.erase(ib_red.begin() + static_cast<long>(s_pos));
                int sgn = (s_pos % 2 == 0) ? 1 : -1;  // left derivative
                int ms = detail::merge_sign(ia, ib_red);
                if (ms == 0) continue;
                R c = da * cb;
                if (-sgn * ms * mu < 0) c = -c;
                r.add_term(detail::merged(ia, ib_red), std::move(c));
            }
        }
    }
    (void)nvars;
    return r;
}

/// L_xi = schouten(xi, .) for a rank-1 field xi; preserves the rank of a.
template <class R>
PolyvectorT<R> lie_derivative(const PolyvectorT<R>& xi, const PolyvectorT<R>& a) {
    if (xi.rank() != 1)
        throw StructuralError("lie_derivative direction must be a rank-1 polyvector");
    return schouten(xi, a);
}

/// <df_1 ^ ... ^ df_p, Psi>: determinant pairing of a rank-p polyvector with
/// p functions (no 1/p! prefactor).
template <class R>
R pair_with_differentials(const PolyvectorT<R>& psi, std::span<const R> funcs) {
    if (funcs.size() != static_cast<size_t>(psi.rank()))
        throw StructuralError("pairing needs exactly rank-many functions");
    R acc = RingOps<R>::zero_like(psi.proto());
    const int p = psi.rank();
    if (p == 0) {
        for (const auto& [idx, c] : psi.terms()) acc += c;
        return acc;
    }
    std::vector<int> perm(p);
    for (const auto& [idx, c] : psi.terms()) {
        for (int i = 0; i < p; ++i) perm[i] = i;
        // sum over permutations with parity: det(d_{idx[a]} f_b)
        int sign = 1;
        while (true) {
            R prod = RingOps<R>::one_like(psi.proto());
            for (int b = 0; b < p && !prod.is_zero(); ++b)
                prod = prod * funcs[b].partial(static_cast<size_t>(idx[perm[b]]));
            if (!prod.is_zero()) {
                prod = prod * c;
                acc += sign > 0 ? prod : -prod;
            }
            // next permutation, tracking parity via adjacent-transposition count
            if (!std::next_permutation(perm.begin(), perm.end())) break;
            // recompute parity from scratch (p <= 4 in practice)
            int inv = 0;
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j)
                    if (perm[i] > perm[j]) ++inv;
            sign = inv % 2 == 0 ? 1 : -1;
        }
    }
    return acc;
}

template <class R>
PolyvectorT<R> scale(const PolyvectorT<R>& a, const Rational& c) {
    return a.scaled(c);
}

inline HPolyvector to_hbar(const Polyvector& v, unsigned cap) {
    HPolyvector r(HbarPoly::zero(v.vars(), cap), v.rank());
    for (const auto& [i, c] : v.terms()) r.add_term(i, HbarPoly::from_poly(c, cap));
    return r;
}

/// Extracts the hbar^0 part; the polyvector must have no higher powers.
inline Polyvector from_hbar_exact(const HPolyvector& v) {
    Polyvector r(Polynomial::zero(v.vars()), v.rank());
    for (const auto& [i, c] : v.terms()) {
        if (c.top_power() > 0)
            throw DomainError("polyvector carries genuine hbar powers; cannot demote");
        r.add_term(i, c.coeff(0));
    }
    return r;
}

}  // namespace shiftq
