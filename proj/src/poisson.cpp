#include "shiftq/poisson.hpp"

#include <array>

#include "shiftq/errors.hpp"

namespace shiftq {

PoissonStructure::PoissonStructure(Polyvector bivector)
    : bivector_(std::move(bivector)),
      schouten_square_(schouten(bivector_, bivector_)),
      jacobi_verified_(schouten_square_.is_zero()) {
    if (bivector_.rank() != 2)
        throw StructuralError("a Poisson structure needs a rank-2 polyvector");
}

Polynomial poisson_bracket(const PoissonStructure& pi, const Polynomial& f, const Polynomial& g) {
    if (f.vars() != pi.vars() || g.vars() != pi.vars())
        throw StructuralError("variable-list mismatch in poisson_bracket");
    Polynomial acc = Polynomial::zero(pi.vars());
    for (const auto& [idx, c] : pi.bivector().terms()) {
        const size_t i = static_cast<size_t>(idx[0]), j = static_cast<size_t>(idx[1]);
        acc += c * (f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i));
    }
    return acc;
}

Polyvector d_pi(const PoissonStructure& pi, const Polyvector& a) {
    return schouten(pi.bivector(), a);
}

Polyvector nijenhuis_defect(const Polyvector& xi, const PoissonStructure& pi) {
    if (xi.rank() != 1) throw StructuralError("Nijenhuis field must have rank 1");
    return lie_derivative(xi, lie_derivative(xi, pi.bivector()));
}

Polyvector lie_poisson_bivector(int dim, const std::vector<StructureConstant>& constants,
                                std::vector<std::string> names) {
    if (dim <= 0) throw StructuralError("Lie-Poisson dimension must be positive");
    if (names.empty()) {
        names.reserve(static_cast<size_t>(dim));
        for (int i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != dim)
        throw StructuralError("variable name count does not match dimension");
    Polyvector pi(Polynomial::zero(names), 2);
    for (const auto& sc : constants) {
        if (sc.i < 1 || sc.j < 1 || sc.k < 1 || sc.i > dim || sc.j > dim || sc.k > dim)
            throw StructuralError("structure-constant index out of range");
        if (sc.i >= sc.j) throw StructuralError("structure constants require i < j");
        Polynomial coeff =
            Polynomial::variable(names, static_cast<size_t>(sc.k - 1)).scaled(sc.c);
        pi.add_term({sc.i - 1, sc.j - 1}, std::move(coeff));
    }
    return pi;
}

std::vector<StructureConstant> gl2_structure_constants() {
    // basis order (x11, x12, x21, x22) = (1,2,3,4)
    // [e11,e12]=e12, [e11,e21]=-e21, [e12,e21]=e11-e22, [e12,e22]=e12, [e21,e22]=-e21
    return {
        {1, 2, 2, Rational(1)},  {1, 3, 3, Rational(-1)}, {2, 3, 1, Rational(1)},
        {2, 3, 4, Rational(-1)}, {2, 4, 2, Rational(1)},  {3, 4, 3, Rational(-1)},
    };
}

Polyvector so3_bivector() {
    std::vector<std::string> names{"x1", "x2", "x3"};
    Polyvector pi(Polynomial::zero(names), 2);
    pi.add_term({0, 1}, Polynomial::variable(names, 2));
    pi.add_term({1, 2}, Polynomial::variable(names, 0));
    pi.add_term({2, 0}, Polynomial::variable(names, 1));
    return pi;
}

}  // namespace shiftq
