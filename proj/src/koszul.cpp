#include "shiftq/koszul.hpp"

#include <algorithm>
#include <numeric>

#include "shiftq/errors.hpp"

namespace shiftq {

namespace {

void validate(const Perm& perm, size_t n) {
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || static_cast<size_t>(v) >= n || seen[static_cast<size_t>(v)])
            throw StructuralError("not a permutation");
        seen[static_cast<size_t>(v)] = true;
    }
}

/// Bubble-sorts `perm` to the identity; for every adjacent swap of entries a,b
/// multiplies the running sign by swap_sign(deg[a], deg[b]).
template <class SwapSign>
int accumulate_sign(Perm perm, const std::vector<int>& degrees, SwapSign swap_sign) {
    int sign = 1;
    const size_t n = perm.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = 0; j + 1 < n - i; ++j) {
            if (perm[j] > perm[j + 1]) {
                sign *= swap_sign(degrees[static_cast<size_t>(perm[j])],
                                  degrees[static_cast<size_t>(perm[j + 1])]);
                std::swap(perm[j], perm[j + 1]);
            }
        }
    }
    return sign;
}

}  // namespace

Perm compose(const Perm& sigma, const Perm& tau) {
    if (sigma.size() != tau.size()) throw StructuralError("permutation size mismatch");
    Perm r(tau.size());
    for (size_t k = 0; k < tau.size(); ++k) r[k] = sigma[static_cast<size_t>(tau[k])];
    return r;
}

int koszul_sign(const Perm& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size())
        throw StructuralError("permutation/degree length mismatch");
    validate(perm, perm.size());
    return accumulate_sign(perm, degrees, [](int d1, int d2) {
        return ((d1 * d2) % 2 + 2) % 2 == 0 ? -1 : 1;  // -(-1)^{d1 d2}
    });
}

int koszul_sign_sym(const Perm& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size())
        throw StructuralError("permutation/degree length mismatch");
    validate(perm, perm.size());
    return accumulate_sign(perm, degrees, [](int d1, int d2) {
        return ((d1 * d2) % 2 + 2) % 2 == 0 ? 1 : -1;  // (-1)^{d1 d2}
    });
}

std::vector<Perm> unshuffles(int i, int j) {
    if (i < 0 || j < 0) throw StructuralError("unshuffle block sizes must be non-negative");
    const int n = i + j;
    std::vector<Perm> out;
    std::vector<int> subset(static_cast<size_t>(i));
    std::iota(subset.begin(), subset.end(), 0);
    if (i == 0 || j == 0) {
        Perm id(static_cast<size_t>(n));
        std::iota(id.begin(), id.end(), 0);
        out.push_back(std::move(id));
        return out;
    }
    while (true) {
        Perm p;
        p.reserve(static_cast<size_t>(n));
        std::vector<bool> used(static_cast<size_t>(n), false);
        for (int v : subset) {
            p.push_back(v);
            used[static_cast<size_t>(v)] = true;
        }
        for (int v = 0; v < n; ++v)
            if (!used[static_cast<size_t>(v)]) p.push_back(v);
        out.push_back(std::move(p));
        // next subset, lexicographic
        int pos = i - 1;
        while (pos >= 0 && subset[static_cast<size_t>(pos)] == n - i + pos) --pos;
        if (pos < 0) break;
        ++subset[static_cast<size_t>(pos)];
        for (int k = pos + 1; k < i; ++k)
            subset[static_cast<size_t>(k)] = subset[static_cast<size_t>(k - 1)] + 1;
    }
    return out;
}

std::vector<Perm> all_permutations(int n) {
    Perm p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace shiftq
