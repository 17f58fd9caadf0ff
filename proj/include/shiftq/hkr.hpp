#pragma once

#include <algorithm>
#include <numeric>

#include "shiftq/polydiffop.hpp"
#include "shiftq/polyvector.hpp"

namespace shiftq {

/// Hochschild-Kostant-Rosenberg map: chi(Psi)(f1..fp) = <df1 ^ ... ^ dfp, Psi>,
/// determinant convention with no 1/p! prefactor, so chi((h/2) pi)(f,g) equals
/// (h/2){f,g}.
template <class R>
PolyDiffOpT<R> hkr(const PolyvectorT<R>& psi) {
    const int p = psi.rank();
    PolyDiffOpT<R> op(psi.proto(), p);
    const size_t nvars = psi.vars().size();
    std::vector<int> perm(static_cast<size_t>(p));
    for (const auto& [idx, c] : psi.terms()) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int inversions = 0;
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j)
                    if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
            MultiTuple multi;
            multi.reserve(static_cast<size_t>(p));
            for (int b = 0; b < p; ++b) {
                Exponents e(nvars, 0);
                e[static_cast<size_t>(idx[static_cast<size_t>(perm[static_cast<size_t>(b)])])] = 1;
                multi.push_back(std::move(e));
            }
            op.add_term(std::move(multi), inversions % 2 == 0 ? c : -c);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return op;
}

}  // namespace shiftq
