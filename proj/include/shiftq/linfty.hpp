#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftq/element.hpp"
#include "shiftq/koszul.hpp"

namespace shiftq {

/// Arity-truncated L-infinity algebra: structure maps D_n of degree 2-n for
/// n = 1..cutoff (absent entries are zero). The dgla flag marks structures
/// with D_n = 0 for n > 2, the only ones derivations are defined for.
struct LInftyAlgebra {
    GradedSpace space;
    int cutoff = 4;
    std::map<int, GradedMap> D;
    bool is_dgla = false;

    const GradedMap* structure_map(int arity) const {
        auto it = D.find(arity);
        return it == D.end() ? nullptr : &it->second;
    }
    int max_structure_arity() const { return D.empty() ? 0 : D.rbegin()->first; }
};

/// Taylor coefficients F_n of degree 1-n between two algebras.
struct LInftyMorphism {
    LInftyAlgebra source;
    LInftyAlgebra target;
    std::map<int, GradedMap> F;

    const GradedMap* coefficient(int arity) const {
        auto it = F.find(arity);
        return it == F.end() ? nullptr : &it->second;
    }
    int max_arity() const { return F.empty() ? 0 : F.rbegin()->first; }
};

/// Derivation coefficients X_n of degree 1-n on a DGLA.
struct LInftyDerivation {
    LInftyAlgebra algebra;
    std::map<int, GradedMap> X;

    const GradedMap* coefficient(int arity) const {
        auto it = X.find(arity);
        return it == X.end() ? nullptr : &it->second;
    }
    int max_arity() const { return X.empty() ? 0 : X.rbegin()->first; }
};

struct MCElement {
    Element value;
    bool verified = false;
};

/// Structured outcome of an identity sweep: the nonzero residuals plus the
/// truncation that was in force.
struct DefectReport {
    std::string check;
    int checked_arity = 0;
    int arity_cutoff = 0;
    unsigned hbar_cap = 0;
    std::vector<std::pair<std::string, std::string>> residuals;  // tuple repr -> value repr
    bool pass = true;

    void note_residual(const std::string& tuple, const Element& value) {
        if (value.is_zero()) return;
        residuals.emplace_back(tuple, value.str());
        pass = false;
    }
};

// --- internal evaluation -----------------------------------------------------

/// Decalage sign on shifted parities: (-1)^{sum_i (n-1-i) t_i}.
int decalage_sign(const std::vector<int>& shifted_degrees);

std::vector<int> shifted_degrees(const GradedSpace& space, std::span<const Element> args);

/// Evaluates a public (exterior-convention) map as its internal shifted-symmetric
/// avatar; nullptr maps evaluate to zero.
Element internal_eval(const GradedSpace& space, const GradedMap* map,
                      std::span<const Element> args);

// --- defect checkers ----------------------------------------------------------

/// Generalized Jacobi defect at the given arity; zero for a valid structure.
/// DGLA specializations reproduce the graded Leibniz rule (n=2) and the graded
/// Jacobiator (n=3) verbatim.
Element jacobi_defect(const LInftyAlgebra& L, int arity, std::span<const Element> args);

/// LHS - RHS of the morphism identity at the given arity.
Element morphism_defect(const LInftyMorphism& F, int arity, std::span<const Element> args);

/// F_n - G_n - (homotopy combination). DGLA algebras only; arities 1 and 2
/// follow the printed chain-homotopy displays, higher arities the same frozen
/// Koszul pattern.
Element homotopy_defect(const LInftyMorphism& F, const LInftyMorphism& G,
                        const std::map<int, GradedMap>& H, int arity,
                        std::span<const Element> args);

/// Defect of the derivation identity at the given arity (DGLA only).
Element derivation_defect(const LInftyDerivation& X, int arity, std::span<const Element> args);

/// d(Pi) + sum_{n>=2} 1/n! D_n(Pi..Pi), truncated at the cutoff.
Element mc_defect(const LInftyAlgebra& L, const Element& pi);

/// Runs mc_defect and wraps the element with the verified flag.
MCElement verify_mc(const LInftyAlgebra& L, const Element& pi);

/// Twisted structure D^Pi_n = sum_k 1/k! D_{n+k}(..., Pi..Pi).
LInftyAlgebra twist_structure(const LInftyAlgebra& L, const MCElement& m);

/// Twisted morphism F^Pi between the twisted source and the target twisted by
/// the pushed MC element.
LInftyMorphism twist_morphism(const LInftyMorphism& F, const MCElement& m);

/// F(Pi) = sum 1/n! F_n(Pi..Pi), verified in the target.
MCElement push_mc(const LInftyMorphism& F, const MCElement& m);

/// X(Pi) = sum 1/n! X_n(Pi..Pi).
Element x_of_pi(const LInftyDerivation& X, const MCElement& m);

/// Twisted-derivation Taylor coefficient at the given arity:
/// sum_p 1/p! X_{n+p}(a_1..a_n, Pi..Pi) in the internal normalization.
Element x_pi(const LInftyDerivation& X, const MCElement& m, int arity,
             std::span<const Element> args);

struct NijenhuisReport {
    bool weak_zero = false;
    bool all_zero = false;
    int checked_arity = 0;
    int derivation_max_arity = 0;
    std::string weak_residual;  // "0" when clean
    std::vector<std::pair<std::string, std::string>> strong_residuals;
};

/// Weak defect X_pi(X(pi)) and the strong defects X_{pi,n}(..., X(pi)) for
/// n = 1..max_arity. Finite backends sweep the whole basis; polynomial backends
/// evaluate on the supplied probe elements (arities with no surviving X
/// coefficients are structurally zero).
NijenhuisReport nijenhuis_defects(const LInftyDerivation& X, const MCElement& m, int max_arity,
                                  std::span<const Element> probes = {});

struct ExpOptions {
    Rational t = Rational(1);
    int series_order = 8;
    bool allow_truncated = false;
};

/// exp(t X) as an L-infinity morphism, via the coderivation exponential
/// truncated at the series order. Throws ResourceError if the series fails to
/// terminate and truncation was not allowed.
LInftyMorphism exp_derivation(const LInftyDerivation& X, const ExpOptions& opts);

// --- builders ------------------------------------------------------------------

LInftyAlgebra finite_linfty(GradedSpace space, std::map<int, GradedMap> D, int cutoff,
                            bool is_dgla = false);

/// DGLA of polyvector fields: zero differential, Schouten bracket.
LInftyAlgebra tpoly_dgla(std::vector<std::string> vars, unsigned hbar_cap, int cutoff);

/// DGLA of local Hochschild cochains: Hochschild differential, Gerstenhaber bracket.
LInftyAlgebra dpoly_dgla(std::vector<std::string> vars, unsigned hbar_cap, int cutoff);

LInftyMorphism identity_morphism(const LInftyAlgebra& L);
LInftyMorphism strict_morphism(LInftyAlgebra source, LInftyAlgebra target, GradedMap f1);

/// X_1 = [z, .] for a degree-0 element z of a DGLA; a derivation by Jacobi.
LInftyDerivation inner_derivation(const LInftyAlgebra& L, const Element& z);

/// Sweeps jacobi_defect over all basis tuples of arities <= max_arity.
DefectReport jacobi_report(const LInftyAlgebra& L, int max_arity);
DefectReport morphism_report(const LInftyMorphism& F, int max_arity);
DefectReport derivation_report(const LInftyDerivation& X, int max_arity);

/// Canonical non-decreasing basis tuples of the given length (repeated entries
/// of even degree are skipped: the exterior convention kills them).
std::vector<std::vector<int>> basis_tuples(const GradedSpace& space, int length);

Element basis_element(const GradedSpace& space, int index);
std::string tuple_repr(const GradedSpace& space, const std::vector<int>& tuple);

}  // namespace shiftq
