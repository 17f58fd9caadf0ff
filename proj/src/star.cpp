#include "shiftq/star.hpp"

#include <array>

#include "shiftq/errors.hpp"

namespace shiftq {

StarProduct::StarProduct(unsigned hbar_cap, HPolyDiffOp B, bool mc_verified)
    : cap_(hbar_cap), B_(std::move(B)), mc_verified_(mc_verified) {
    if (B_.arity() != 2) throw StructuralError("star-product cochain must have arity 2");
    for (const auto& [m, c] : B_.terms())
        if (!c.coeff(0).is_zero())
            throw StructuralError("star-product cochain must vanish at hbar^0");
}

HbarPoly star_mul(const StarProduct& S, const HbarPoly& f, const HbarPoly& g) {
    if (f.order_cap() != S.hbar_cap() || g.order_cap() != S.hbar_cap())
        throw StructuralError("hbar cap mismatch between star product and arguments");
    std::array<HbarPoly, 2> args{f, g};
    return f * g + apply_op(S.B(), std::span<const HbarPoly>(args));
}

HbarPoly star_commutator(const StarProduct& S, const HbarPoly& f, const HbarPoly& g) {
    return star_mul(S, f, g) - star_mul(S, g, f);
}

HPolyDiffOp mc_defect_star(const StarProduct& S) {
    const auto& B = S.B();
    return hochschild_delta(B) + gerstenhaber(B, B).scaled(Rational(Integer(1), Integer(2)));
}

StarProduct verify_star(const StarProduct& S) {
    return S.with_mc_verified(mc_defect_star(S).is_zero());
}

StarProduct moyal(const Polyvector& pi_const, unsigned cap) {
    if (pi_const.rank() != 2) throw StructuralError("moyal needs a rank-2 polyvector");
    const size_t n = pi_const.vars().size();
    std::vector<std::pair<std::pair<size_t, size_t>, Rational>> entries;  // full antisym matrix
    for (const auto& [idx, c] : pi_const.terms()) {
        if (!c.is_constant())
            throw DomainError("moyal requires constant coefficients in the bivector");
        Rational v = c.constant_term();
        entries.push_back({{static_cast<size_t>(idx[0]), static_cast<size_t>(idx[1])}, v});
        entries.push_back({{static_cast<size_t>(idx[1]), static_cast<size_t>(idx[0])}, -v});
    }

    HPolyDiffOp B(HbarPoly::zero(pi_const.vars(), cap), 2);
    // k-fold contractions of the antisymmetric matrix
    std::vector<size_t> pick;
    for (unsigned k = 1; k <= cap; ++k) {
        Rational norm = Rational::inv_factorial(k);
        Rational half_pow(Integer(1), Integer(1) << k);
        pick.assign(k, 0);
        if (entries.empty()) break;
        while (true) {
            Rational coeff = norm * half_pow;
            Exponents left(n, 0), right(n, 0);
            for (unsigned a = 0; a < k; ++a) {
                const auto& e = entries[pick[a]];
                coeff *= e.second;
                left[e.first.first] += 1;
                right[e.first.second] += 1;
            }
            if (!coeff.is_zero()) {
                HbarPoly c = HbarPoly::hbar_monomial(
                    pi_const.vars(), cap, k,
                    Polynomial::constant(pi_const.vars(), coeff));
                B.add_term({left, right}, std::move(c));
            }
            // odometer over entry tuples
            size_t pos = 0;
            while (pos < k && ++pick[pos] == entries.size()) {
                pick[pos] = 0;
                ++pos;
            }
            if (pos == k) break;
        }
    }
    StarProduct S(cap, std::move(B));
    return verify_star(S);
}

}  // namespace shiftq
