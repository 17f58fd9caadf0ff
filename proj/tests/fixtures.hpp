#pragma once

#include <map>
#include <string>
#include <vector>

#include "shiftq/linfty.hpp"

namespace shiftq::fixtures {

inline Element fe(const std::string& name, Rational c = Rational(1)) {
    FiniteVec v;
    v.emplace(name, std::move(c));
    return Element::finite(std::move(v));
}

inline FiniteVec fv1(const std::string& name, Rational c = Rational(1)) {
    FiniteVec v;
    v.emplace(name, std::move(c));
    return v;
}

/// G1: basis x (deg 1), y (deg 2); dx = y; [x,x] = -2y. MC element x.
inline LInftyAlgebra g1(int cutoff = 4) {
    GradedSpace space = GradedSpace::finite({{"x", 1}, {"y", 2}});
    GradedMap::Table d_table;
    d_table.emplace(std::vector<int>{0}, fv1("y"));
    GradedMap::Table br_table;
    br_table.emplace(std::vector<int>{0, 0}, fv1("y", Rational(-2)));
    std::map<int, GradedMap> D;
    D.emplace(1, GradedMap::from_table(1, 1, std::move(d_table)));
    D.emplace(2, GradedMap::from_table(2, 0, std::move(br_table)));
    return finite_linfty(std::move(space), std::move(D), cutoff, /*is_dgla=*/true);
}

/// G2: basis z (deg 0), x (deg 1), y (deg 2); dx = y; [z,x] = x, [z,y] = y.
inline LInftyAlgebra g2(int cutoff = 4) {
    GradedSpace space = GradedSpace::finite({{"z", 0}, {"x", 1}, {"y", 2}});
    GradedMap::Table d_table;
    d_table.emplace(std::vector<int>{1}, fv1("y"));
    GradedMap::Table br_table;
    br_table.emplace(std::vector<int>{0, 1}, fv1("x"));
    br_table.emplace(std::vector<int>{0, 2}, fv1("y"));
    std::map<int, GradedMap> D;
    D.emplace(1, GradedMap::from_table(1, 1, std::move(d_table)));
    D.emplace(2, GradedMap::from_table(2, 0, std::move(br_table)));
    return finite_linfty(std::move(space), std::move(D), cutoff, /*is_dgla=*/true);
}

/// Broken variant of G2: [z,y] = 2y violates the Leibniz rule.
inline LInftyAlgebra g2_broken(int cutoff = 4) {
    GradedSpace space = GradedSpace::finite({{"z", 0}, {"x", 1}, {"y", 2}});
    GradedMap::Table d_table;
    d_table.emplace(std::vector<int>{1}, fv1("y"));
    GradedMap::Table br_table;
    br_table.emplace(std::vector<int>{0, 1}, fv1("x"));
    br_table.emplace(std::vector<int>{0, 2}, fv1("y", Rational(2)));
    std::map<int, GradedMap> D;
    D.emplace(1, GradedMap::from_table(1, 1, std::move(d_table)));
    D.emplace(2, GradedMap::from_table(2, 0, std::move(br_table)));
    return finite_linfty(std::move(space), std::move(D), cutoff, /*is_dgla=*/true);
}

/// Strict DGLA endomorphism of G2: z -> z, x -> c x, y -> c y.
inline GradedMap g2_scaling(Rational c) {
    GradedMap::Table t;
    t.emplace(std::vector<int>{0}, fv1("z"));
    t.emplace(std::vector<int>{1}, fv1("x", c));
    t.emplace(std::vector<int>{2}, fv1("y", c));
    return GradedMap::from_table(1, 0, std::move(t));
}

/// Chain map that is not a bracket homomorphism: z -> 2z, x -> x, y -> y.
inline GradedMap g2_chain_not_hom() {
    GradedMap::Table t;
    t.emplace(std::vector<int>{0}, fv1("z", Rational(2)));
    t.emplace(std::vector<int>{1}, fv1("x"));
    t.emplace(std::vector<int>{2}, fv1("y"));
    return GradedMap::from_table(1, 0, std::move(t));
}

/// Not even a chain map: x -> x, y -> 2y, z -> z.
inline GradedMap g2_non_chain() {
    GradedMap::Table t;
    t.emplace(std::vector<int>{0}, fv1("z"));
    t.emplace(std::vector<int>{1}, fv1("x"));
    t.emplace(std::vector<int>{2}, fv1("y", Rational(2)));
    return GradedMap::from_table(1, 0, std::move(t));
}

}  // namespace shiftq::fixtures
