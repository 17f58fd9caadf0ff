#include <doctest.h>

#include <random>

#include "shiftq/errors.hpp"
#include "shiftq/poisson.hpp"
#include "shiftq/polyvector.hpp"

using namespace shiftq;

namespace {

const std::vector<std::string> kV{"x1", "x2", "x3"};

Polynomial var(size_t i) { return Polynomial::variable(kV, i); }
Polynomial constant(long long v) { return Polynomial::constant(kV, Rational(v)); }
Polynomial proto() { return Polynomial::zero(kV); }

Polyvector pv_function(const Polynomial& f) { return Polyvector::function(f); }

Polyvector basis_field(int i) { return Polyvector::basis(proto(), {i}); }

Polynomial casimir_so3() { return var(0) * var(0) + var(1) * var(1) + var(2) * var(2); }

Polynomial random_poly(std::mt19937_64& rng, unsigned max_deg = 2) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    Polynomial p(kV);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(kV.size(), 0);
        unsigned budget = max_deg;
        for (size_t i = 0; i < kV.size(); ++i) {
            unsigned d = expo(rng) % (budget + 1);
            e[i] = d;
            budget -= d;
        }
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

Polyvector random_polyvector(std::mt19937_64& rng, int rank) {
    Polyvector v(proto(), rank);
    std::uniform_int_distribution<int> slot(0, 2);
    std::uniform_int_distribution<int> nterms(1, 2);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        IdxTuple idx;
        while (static_cast<int>(idx.size()) < rank) {
            int s = slot(rng);
            if (std::find(idx.begin(), idx.end(), s) == idx.end()) idx.push_back(s);
        }
        v.add_term(idx, random_poly(rng));
    }
    return v;
}

int lambda_twist(int p) {
    if (p < 0) return 1;
    return (p / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("wedge basics") {
    auto d1 = basis_field(0), d2 = basis_field(1);
    CHECK(wedge(d1, d1).is_zero());

    auto d12 = wedge(d1, d2);
    CHECK(d12.rank() == 2);
    CHECK(d12.terms().size() == 1);
    CHECK(d12.terms().begin()->second == constant(1));

    // (x1 d1) ^ (x2 d2) = x1 x2 d1^d2, checked against bilinear expansion
    Polyvector a(proto(), 1), b(proto(), 1);
    a.add_term({0}, var(0));
    b.add_term({1}, var(1));
    Polyvector expect(proto(), 2);
    expect.add_term({0, 1}, var(0) * var(1));
    CHECK(wedge(a, b) == expect);

    // graded commutativity on unshifted ranks: a^b = (-1)^{pq} b^a
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        for (int pa = 0; pa <= 2; ++pa)
            for (int pb = 0; pb <= 2; ++pb) {
                auto u = random_polyvector(rng, pa);
                auto w = random_polyvector(rng, pb);
                auto lhs = wedge(u, w);
                auto rhs = wedge(w, u);
                if ((pa * pb) % 2 != 0) rhs = -rhs;
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("schouten generator values") {
    // [f,g] = 0 for functions
    CHECK(schouten(pv_function(var(0)), pv_function(var(1))).is_zero());

    // [d1, x1^2] = 2 x1
    auto lhs = schouten(basis_field(0), pv_function(var(0) * var(0)));
    CHECK(lhs == pv_function(var(0).scaled(Rational(2))));

    // vector fields: Lie bracket; [x1 d2, d1] = -d2
    Polyvector a(proto(), 1);
    a.add_term({1}, var(0));
    auto br = schouten(a, basis_field(0));
    Polyvector expect(proto(), 1);
    expect.add_term({1}, constant(-1));
    CHECK(br == expect);

    // [pi_so3, pi_so3] = 0
    auto pi = so3_bivector();
    CHECK(schouten(pi, pi).is_zero());
}

TEST_CASE("poisson structure flags and bracket examples") {
    PoissonStructure pi(so3_bivector());
    CHECK(pi.jacobi_verified());

    auto f = casimir_so3();
    CHECK(poisson_bracket(pi, f, f).is_zero());
    CHECK(poisson_bracket(pi, var(0), var(1)) == var(2));
    CHECK(poisson_bracket(pi, f, var(0)).is_zero());  // Casimir

    // frozen sign convention: {f,g} = [f,[pi,g]] verbatim
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        auto u = random_poly(rng), w = random_poly(rng);
        auto nested = schouten(pv_function(u), schouten(pi.bivector(), pv_function(w)));
        CHECK(nested == pv_function(poisson_bracket(pi, u, w)));
    }
}

TEST_CASE("lie derivative examples") {
    auto pi = so3_bivector();
    auto d3 = basis_field(2);
    Polyvector expect(proto(), 2);
    expect.add_term({0, 1}, constant(1));
    CHECK(lie_derivative(d3, pi) == expect);
    CHECK(lie_derivative(d3, expect).is_zero());
    CHECK(lie_derivative(basis_field(0), pv_function(var(0))) == pv_function(constant(1)));
    CHECK_THROWS_AS(lie_derivative(pi, pi), StructuralError);
}

TEST_CASE("d_pi examples") {
    PoissonStructure pi(so3_bivector());
    CHECK(d_pi(pi, pv_function(casimir_so3())).is_zero());

    auto h = d_pi(pi, pv_function(var(0)));
    CHECK(h.rank() == 1);
    CHECK_FALSE(h.is_zero());
    // the Hamiltonian field of x1 up to sign: x3 d2 - x2 d3
    Polyvector expect(proto(), 1);
    expect.add_term({1}, var(2));
    expect.add_term({2}, -var(1));
    CHECK(h == expect);

    PoissonStructure zero_pi(Polyvector::zero(proto(), 2));
    CHECK(d_pi(zero_pi, so3_bivector()).is_zero());

    // d_pi o d_pi = 0 on random polyvectors when jacobi verified
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t)
        for (int rank = 0; rank <= 2; ++rank) {
            auto a = random_polyvector(rng, rank);
            CHECK(d_pi(pi, d_pi(pi, a)).is_zero());
        }
}

TEST_CASE("nijenhuis defect examples") {
    PoissonStructure pi(so3_bivector());
    CHECK(nijenhuis_defect(basis_field(2), pi).is_zero());  // constant field, linear pi

    // Poisson field (Hamiltonian field of x3): first derivative already vanishes
    auto ham = d_pi(pi, pv_function(var(2)));
    CHECK(lie_derivative(ham, pi.bivector()).is_zero());
    CHECK(nijenhuis_defect(ham, pi).is_zero());

    // genuine failure: xi = x1^2 d1
    Polyvector xi(proto(), 1);
    xi.add_term({0}, var(0) * var(0));
    CHECK_FALSE(nijenhuis_defect(xi, pi).is_zero());
}

TEST_CASE("schouten graded antisymmetry in shifted degrees") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 40; ++t) {
        for (int pa = 0; pa <= 3; ++pa)
            for (int pb = 0; pb <= 3; ++pb) {
                auto a = random_polyvector(rng, pa);
                auto b = random_polyvector(rng, pb);
                auto lhs = schouten(a, b);
                auto rhs = schouten(b, a);
                int sign = ((pa - 1) * (pb - 1)) % 2 == 0 ? -1 : 1;
                if (lhs.rank() != rhs.rank()) continue;  // both rank<0 collapse to zero
                CHECK(lhs == (sign < 0 ? -rhs : rhs));
            }
    }
}

TEST_CASE("schouten graded Leibniz over wedge, frozen signs") {
    // [a, b^c] = s1 [a,b]^c + s2 b^[a,c] with the twist-adjusted signs below;
    // this fixture freezes the bracket convention.
    std::mt19937_64 rng(4242);
    auto s1 = [](int pa, int pb, int pc) {
        return lambda_twist(pb + pc) * lambda_twist(pb) * lambda_twist(pa + pb + pc - 1) *
               lambda_twist(pa + pb - 1);
    };
    auto s2 = [](int pa, int pb, int pc) {
        int koszul = ((pa - 1) * pb) % 2 == 0 ? 1 : -1;
        return koszul * lambda_twist(pb + pc) * lambda_twist(pc) *
               lambda_twist(pa + pb + pc - 1) * lambda_twist(pa + pc - 1);
    };
    for (int t = 0; t < 25; ++t) {
        for (int pa = 0; pa <= 2; ++pa)
            for (int pb = 0; pb <= 2; ++pb)
                for (int pc = 0; pc <= 2 && pb + pc <= 3; ++pc) {
                    auto a = random_polyvector(rng, pa);
                    auto b = random_polyvector(rng, pb);
                    auto cc = random_polyvector(rng, pc);
                    auto lhs = schouten(a, wedge(b, cc));
                    Polyvector rhs = Polyvector::zero(proto(), lhs.rank());
                    if (pa + pb - 1 >= 0) {
                        auto term = wedge(schouten(a, b), cc);
                        rhs += s1(pa, pb, pc) < 0 ? -term : term;
                    }
                    if (pa + pc - 1 >= 0) {
                        auto term = wedge(b, schouten(a, cc));
                        rhs += s2(pa, pb, pc) < 0 ? -term : term;
                    }
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("schouten graded Jacobi in shifted degrees") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 20; ++t) {
        for (int pa = 0; pa <= 2; ++pa)
            for (int pb = 1; pb <= 2; ++pb)
                for (int pc = 1; pc <= 2; ++pc) {
                    auto a = random_polyvector(rng, pa);
                    auto b = random_polyvector(rng, pb);
                    auto cc = random_polyvector(rng, pc);
                    auto lhs = schouten(a, schouten(b, cc));
                    auto r1 = schouten(schouten(a, b), cc);
                    auto r2 = schouten(b, schouten(a, cc));
                    int sign = ((pa - 1) * (pb - 1)) % 2 == 0 ? 1 : -1;
                    auto rhs = r1 + (sign < 0 ? -r2 : r2);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("[pi,pi]=0 iff Jacobi identity of the bracket, instance level") {
    // positive instance: so(3)
    PoissonStructure good(so3_bivector());
    CHECK(good.jacobi_verified());
    std::vector<Polynomial> monos;
    for (unsigned d1 = 0; d1 <= 3; ++d1)
        for (unsigned d2 = 0; d1 + d2 <= 3; ++d2)
            for (unsigned d3 = 0; d1 + d2 + d3 <= 3; ++d3)
                monos.push_back(Polynomial::monomial(kV, {d1, d2, d3}, Rational(1)));
    auto jacobiator = [&](const PoissonStructure& ps, const Polynomial& f, const Polynomial& g,
                          const Polynomial& h) {
        return poisson_bracket(ps, f, poisson_bracket(ps, g, h)) +
               poisson_bracket(ps, g, poisson_bracket(ps, h, f)) +
               poisson_bracket(ps, h, poisson_bracket(ps, f, g));
    };
    for (const auto& f : monos)
        for (const auto& g : monos)
            if (&f < &g)
                CHECK(jacobiator(good, f, g, var(0)).is_zero());

    // negative instance: pi = x2 d1^d2 + x1 d2^d3 fails Jacobi and is detected
    Polyvector bad(proto(), 2);
    bad.add_term({0, 1}, var(1));
    bad.add_term({1, 2}, var(0));
    PoissonStructure bad_ps(bad);
    CHECK_FALSE(bad_ps.jacobi_verified());
    bool found_violation = false;
    for (const auto& f : monos) {
        for (const auto& g : monos) {
            if (!jacobiator(bad_ps, f, g, var(0)).is_zero() ||
                !jacobiator(bad_ps, f, g, var(1)).is_zero() ||
                !jacobiator(bad_ps, f, g, var(2)).is_zero()) {
                found_violation = true;
                break;
            }
        }
        if (found_violation) break;
    }
    CHECK(found_violation);
}

TEST_CASE("poisson axioms hold when jacobi verified") {
    PoissonStructure pi(so3_bivector());
    std::mt19937_64 rng(314);
    for (int t = 0; t < 25; ++t) {
        auto f = random_poly(rng), g = random_poly(rng), h = random_poly(rng);
        // bilinearity
        CHECK(poisson_bracket(pi, f + g, h) ==
              poisson_bracket(pi, f, h) + poisson_bracket(pi, g, h));
        CHECK(poisson_bracket(pi, f.scaled(Rational(3)), h) ==
              poisson_bracket(pi, f, h).scaled(Rational(3)));
        // antisymmetry
        CHECK(poisson_bracket(pi, f, g) == -poisson_bracket(pi, g, f));
        // Leibniz
        CHECK(poisson_bracket(pi, f, g * h) ==
              poisson_bracket(pi, f, g) * h + poisson_bracket(pi, f, h) * g);
        // Jacobi
        auto jac = poisson_bracket(pi, f, poisson_bracket(pi, g, h)) +
                   poisson_bracket(pi, g, poisson_bracket(pi, h, f)) +
                   poisson_bracket(pi, h, poisson_bracket(pi, f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("Poisson fields distribute over the bracket (eq of vanishing Lie derivative)") {
    PoissonStructure pi(so3_bivector());
    auto ham = d_pi(pi, pv_function(var(2)));  // Poisson field
    REQUIRE(lie_derivative(ham, pi.bivector()).is_zero());
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 25; ++t) {
        auto f = random_poly(rng), g = random_poly(rng);
        auto xi_f = schouten(ham, pv_function(f));
        auto xi_g = schouten(ham, pv_function(g));
        auto lhs = schouten(ham, pv_function(poisson_bracket(pi, f, g)));
        Polynomial xf = xi_f.terms().empty() ? Polynomial::zero(kV) : xi_f.terms().begin()->second;
        Polynomial xg = xi_g.terms().empty() ? Polynomial::zero(kV) : xi_g.terms().begin()->second;
        auto rhs = poisson_bracket(pi, xf, g) + poisson_bracket(pi, f, xg);
        CHECK(lhs == pv_function(rhs));
    }
}

TEST_CASE("pairing with differentials matches the bracket") {
    PoissonStructure pi(so3_bivector());
    std::mt19937_64 rng(161803);
    for (int t = 0; t < 20; ++t) {
        auto f = random_poly(rng), g = random_poly(rng);
        std::vector<Polynomial> args{f, g};
        CHECK(pair_with_differentials(pi.bivector(), std::span<const Polynomial>(args)) ==
              poisson_bracket(pi, f, g));
    }
}

TEST_CASE("lie-poisson builder: gl(2) casimirs") {
    auto pi_biv = lie_poisson_bivector(4, gl2_structure_constants(), {"x11", "x12", "x21", "x22"});
    PoissonStructure pi(pi_biv);
    CHECK(pi.jacobi_verified());
    std::vector<std::string> v{"x11", "x12", "x21", "x22"};
    auto y1 = Polynomial::variable(v, 0), y2 = Polynomial::variable(v, 1),
         y3 = Polynomial::variable(v, 2), y4 = Polynomial::variable(v, 3);
    auto c1 = y1 + y4;
    auto c2 = y1 * y4 - y2 * y3;
    for (const auto& g : {y1, y2, y3, y4}) {
        CHECK(poisson_bracket(pi, c1, g).is_zero());
        CHECK(poisson_bracket(pi, c2, g).is_zero());
    }
}
