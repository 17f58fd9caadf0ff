#include <doctest.h>

#include <random>

#include "shiftq/errors.hpp"
#include "shiftq/hkr.hpp"
#include "shiftq/poisson.hpp"
#include "shiftq/star.hpp"

using namespace shiftq;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Polynomial proto2() { return Polynomial::zero(kXY); }
Polynomial varx() { return Polynomial::variable(kXY, 0); }
Polynomial vary() { return Polynomial::variable(kXY, 1); }

Polyvector pi_plane() { return Polyvector::basis(proto2(), {0, 1}); }  // d_x ^ d_y

HbarPoly lift(const Polynomial& p, unsigned cap) { return HbarPoly::from_poly(p, cap); }

Polynomial random_poly(std::mt19937_64& rng, unsigned max_deg = 3) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    Polynomial p(kXY);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(kXY.size(), 0);
        unsigned budget = max_deg;
        for (size_t i = 0; i < kXY.size(); ++i) {
            unsigned d = expo(rng) % (budget + 1);
            e[i] = d;
            budget -= d;
        }
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

/// Independent exponential-series oracle for the Moyal coefficient
/// B_k(f,g) = (1/k!)(1/2)^k sum pi^{i1 j1}..pi^{ik jk} d...f d...g over the
/// full antisymmetric matrix of the plane bivector.
Polynomial moyal_bk_oracle(unsigned k, const Polynomial& f, const Polynomial& g) {
    // entries (i,j,s): (0,1,+1), (1,0,-1)
    struct E {
        size_t i, j;
        int s;
    };
    std::vector<E> entries{{0, 1, 1}, {1, 0, -1}};
    Rational norm = Rational::inv_factorial(k) * Rational(Integer(1), Integer(1) << k);
    Polynomial acc = Polynomial::zero(kXY);
    std::vector<size_t> pick(k, 0);
    while (true) {
        int sign = 1;
        Polynomial df = f, dg = g;
        for (unsigned a = 0; a < k; ++a) {
            const E& e = entries[pick[a]];
            sign *= e.s;
            df = df.partial(e.i);
            dg = dg.partial(e.j);
        }
        Polynomial term = df * dg;
        if (sign < 0) term = -term;
        acc += term;
        size_t pos = 0;
        while (pos < k && ++pick[pos] == entries.size()) {
            pick[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return acc.scaled(norm);
}

/// hbar^k coefficient of B applied as a bidifferential operator on plain polynomials.
Polynomial b_coefficient_applied(const StarProduct& S, unsigned k, const Polynomial& f,
                                 const Polynomial& g) {
    std::vector<HbarPoly> args{lift(f, S.hbar_cap()), lift(g, S.hbar_cap())};
    return apply_op(S.B(), std::span<const HbarPoly>(args)).coeff(k);
}

}  // namespace

TEST_CASE("moyal on the plane: unit, linear term, commutator") {
    auto S = moyal(pi_plane(), 4);
    CHECK(S.mc_verified());

    auto one = lift(Polynomial::constant(kXY, Rational(1)), 4);
    auto x = lift(varx(), 4);
    auto y = lift(vary(), 4);

    CHECK(star_mul(S, x, one) == x);   // unit preserved
    CHECK(star_mul(S, one, x) == x);

    // x * y = xy + h/2
    auto expect = lift(varx() * vary(), 4) +
                  HbarPoly::hbar_monomial(kXY, 4, 1,
                                          Polynomial::constant(kXY, Rational(Integer(1), Integer(2))));
    CHECK(star_mul(S, x, y) == expect);

    // x * y - y * x = h = h {x,y}
    CHECK(star_commutator(S, x, y) ==
          HbarPoly::hbar_monomial(kXY, 4, 1, Polynomial::constant(kXY, Rational(1))));
}

TEST_CASE("moyal B_k agrees with the exponential-series oracle") {
    auto S = moyal(pi_plane(), 4);
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 12; ++t) {
        auto f = random_poly(rng), g = random_poly(rng);
        for (unsigned k = 1; k <= 4; ++k)
            CHECK(b_coefficient_applied(S, k, f, g) == moyal_bk_oracle(k, f, g));
    }
    // frozen spot value: B_2(x^2, y^2) = 1/2
    CHECK(b_coefficient_applied(S, 2, varx() * varx(), vary() * vary()) ==
          Polynomial::constant(kXY, Rational(Integer(1), Integer(2))));
    CHECK(moyal_bk_oracle(2, varx() * varx(), vary() * vary()) ==
          Polynomial::constant(kXY, Rational(Integer(1), Integer(2))));
}

TEST_CASE("mc defect of moyal vanishes; zero bivector gives the undeformed product") {
    CHECK(mc_defect_star(moyal(pi_plane(), 4)).is_zero());

    auto S0 = moyal(Polyvector::zero(proto2(), 2), 4);
    CHECK(S0.B().is_zero());
    std::mt19937_64 rng(7);
    auto f = lift(random_poly(rng), 4), g = lift(random_poly(rng), 4);
    CHECK(star_mul(S0, f, g) == f * g);
    CHECK(mc_defect_star(StarProduct(4, HPolyDiffOp(HbarPoly::zero(kXY, 4), 2))).is_zero());
}

TEST_CASE("mc defect iff associativity, both sides computed independently") {
    auto S = moyal(pi_plane(), 4);
    std::vector<Polynomial> monos;
    for (unsigned dx = 0; dx <= 3; ++dx)
        for (unsigned dy = 0; dx + dy <= 3; ++dy)
            monos.push_back(Polynomial::monomial(kXY, {dx, dy}, Rational(1)));
    auto associative_on_monomials = [&](const StarProduct& P) {
        for (const auto& f : monos)
            for (const auto& g : monos)
                for (const auto& h : monos) {
                    auto lhs = star_mul(P, star_mul(P, lift(f, 4), lift(g, 4)), lift(h, 4));
                    auto rhs = star_mul(P, lift(f, 4), star_mul(P, lift(g, 4), lift(h, 4)));
                    if (!(lhs == rhs)) return false;
                }
        return true;
    };
    CHECK(associative_on_monomials(S));

    // perturb one B_2 coefficient by 1: defect appears at hbar^2 and
    // associativity fails on some monomial triple
    HPolyDiffOp B = S.B();
    Exponents e11{1, 1};
    B.add_term({e11, e11},
               HbarPoly::hbar_monomial(kXY, 4, 2, Polynomial::constant(kXY, Rational(1))));
    StarProduct bad(4, std::move(B));
    auto defect = mc_defect_star(bad);
    CHECK_FALSE(defect.is_zero());
    bool has_h2 = false;
    for (const auto& [m, c] : defect.terms())
        if (!c.coeff(2).is_zero()) has_h2 = true;
    CHECK(has_h2);
    CHECK_FALSE(associative_on_monomials(bad));
    CHECK_FALSE(verify_star(bad).mc_verified());
}

TEST_CASE("hkr of a non-Poisson bivector fails MC at hbar^2") {
    // B = h chi(pi) with [pi,pi] != 0 on three variables
    std::vector<std::string> kV{"x1", "x2", "x3"};
    Polynomial p3 = Polynomial::zero(kV);
    Polyvector bad(p3, 2);
    bad.add_term({0, 1}, Polynomial::variable(kV, 1));
    bad.add_term({1, 2}, Polynomial::variable(kV, 0));
    REQUIRE_FALSE(schouten(bad, bad).is_zero());

    HPolyvector hbad(HbarPoly::zero(kV, 2), 2);
    for (const auto& [idx, c] : bad.terms())
        hbad.add_term(idx, HbarPoly::hbar_monomial(kV, 2, 1, c));
    StarProduct S(2, hkr(hbad));
    auto defect = mc_defect_star(S);
    CHECK_FALSE(defect.is_zero());

    // the hbar^2 component acts on linear triples as (1/2) chi([pi,pi]) up to
    // the frozen sign (second-derivative corrections vanish on linear inputs)
    auto half_sq = hkr(schouten(bad, bad)).scaled(Rational(Integer(1), Integer(2)));
    bool matched_plus = true, matched_minus = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                std::vector<HbarPoly> args{
                    HbarPoly::from_poly(Polynomial::variable(kV, static_cast<size_t>(i)), 2),
                    HbarPoly::from_poly(Polynomial::variable(kV, static_cast<size_t>(j)), 2),
                    HbarPoly::from_poly(Polynomial::variable(kV, static_cast<size_t>(k)), 2)};
                Polynomial d2 = apply_op(defect, std::span<const HbarPoly>(args)).coeff(2);
                std::vector<Polynomial> pargs{Polynomial::variable(kV, static_cast<size_t>(i)),
                                              Polynomial::variable(kV, static_cast<size_t>(j)),
                                              Polynomial::variable(kV, static_cast<size_t>(k))};
                Polynomial ref = apply_op(half_sq, std::span<const Polynomial>(pargs));
                if (!(d2 == ref)) matched_plus = false;
                if (!(d2 == -ref)) matched_minus = false;
            }
    CHECK((matched_plus || matched_minus));
}

TEST_CASE("star commutator equals the bracket expression in the frozen convention") {
    // f*g - g*f = -[f,[B,g]] with the frozen Gerstenhaber signs
    auto S = moyal(pi_plane(), 3);
    std::mt19937_64 rng(11111);
    for (int t = 0; t < 10; ++t) {
        auto f = random_poly(rng), g = random_poly(rng);
        auto fop = HPolyDiffOp::from_coefficient(lift(f, 3));
        auto gop = HPolyDiffOp::from_coefficient(lift(g, 3));
        auto nested = gerstenhaber(fop, gerstenhaber(S.B(), gop));
        REQUIRE(nested.arity() == 0);
        HbarPoly val = HbarPoly::zero(kXY, 3);
        for (const auto& [m, c] : nested.terms()) val += c;
        CHECK(star_commutator(S, lift(f, 3), lift(g, 3)) == -val);
    }
}

TEST_CASE("star cap mismatch is structural") {
    auto S = moyal(pi_plane(), 4);
    CHECK_THROWS_AS(star_mul(S, lift(varx(), 3), lift(vary(), 3)), StructuralError);
    CHECK_THROWS_AS(moyal(Polyvector::function(varx()), 2), StructuralError);
    Polyvector nonconst(proto2(), 2);
    nonconst.add_term({0, 1}, varx());
    CHECK_THROWS_AS(moyal(nonconst, 2), DomainError);
}
