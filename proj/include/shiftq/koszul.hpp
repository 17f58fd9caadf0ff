#pragma once

#include <vector>

namespace shiftq {

/// A permutation as the sequence of original indices in their new order:
/// permuted[k] = original[perm[k]].
using Perm = std::vector<int>;

/// Composition: apply sigma first, then tau on positions; (sigma*tau)[k] = sigma[tau[k]].
Perm compose(const Perm& sigma, const Perm& tau);

/// Koszul sign in the exterior convention on the given (unshifted) degrees:
/// an adjacent transposition of elements of degrees d1,d2 contributes
/// -(-1)^{d1 d2}. Throws StructuralError on length mismatch or non-permutations.
int koszul_sign(const Perm& perm, const std::vector<int>& degrees);

/// Koszul sign in the graded-symmetric convention (adjacent transposition
/// contributes (-1)^{d1 d2}); used internally on shifted degrees.
int koszul_sign_sym(const Perm& perm, const std::vector<int>& degrees);

/// All (i,j)-unshuffle representatives: permutations of size i+j increasing on
/// both blocks, one per i-element subset, in lexicographic subset order.
std::vector<Perm> unshuffles(int i, int j);

/// All permutations of n elements (for the unshuffle-vs-full-sum oracle).
std::vector<Perm> all_permutations(int n);

}  // namespace shiftq
