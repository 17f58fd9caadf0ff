#pragma once

#include <string>
#include <vector>

#include "shiftq/polyvector.hpp"

namespace shiftq {

/// A bivector together with the result of the [pi,pi] = 0 check, which the
/// constructor performs eagerly (desk-scale inputs keep this cheap).
class PoissonStructure {
   public:
    explicit PoissonStructure(Polyvector bivector);

    const Polyvector& bivector() const { return bivector_; }
    bool jacobi_verified() const { return jacobi_verified_; }
    /// [pi,pi]; identically zero iff the structure is Poisson.
    const Polyvector& jacobiator() const { return schouten_square_; }
    const std::vector<std::string>& vars() const { return bivector_.vars(); }

   private:
    Polyvector bivector_;
    Polyvector schouten_square_;
    bool jacobi_verified_;
};

/// {f,g} = pi(df,dg), the determinant contraction. Coincides exactly with
/// schouten(f, schouten(pi,g)) in the frozen sign convention.
Polynomial poisson_bracket(const PoissonStructure& pi, const Polynomial& f, const Polynomial& g);

/// Lichnerowicz differential d_pi = [pi, .].
Polyvector d_pi(const PoissonStructure& pi, const Polyvector& a);

/// L_xi^2 pi; zero iff xi is a Nijenhuis field for pi.
Polyvector nijenhuis_defect(const Polyvector& xi, const PoissonStructure& pi);

struct StructureConstant {
    int i;  // 1-based, i < j
    int j;
    int k;
    Rational c;
};

/// Lie-Poisson bivector pi = sum c_ij^k x_k d_i ^ d_j over i < j on variables
/// x1..xn (names generated when not supplied).
Polyvector lie_poisson_bivector(int dim, const std::vector<StructureConstant>& constants,
                                std::vector<std::string> names = {});

/// Structure constants of gl(2) in the basis (x11, x12, x21, x22).
std::vector<StructureConstant> gl2_structure_constants();

/// so(3) fixture: pi = x3 d1^d2 + x1 d2^d3 + x2 d3^d1 on (x1,x2,x3).
Polyvector so3_bivector();

}  // namespace shiftq
