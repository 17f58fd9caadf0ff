#include "shiftq/linfty.hpp"

#include <algorithm>
#include <sstream>

#include "shiftq/errors.hpp"

namespace shiftq {

namespace {

int parity_sign(long long exponent) { return ((exponent % 2) + 2) % 2 == 0 ? 1 : -1; }

/// tau normalizations aligning machinery defects with the printed DGLA forms.
int tau_jacobi(int n) { return parity_sign(static_cast<long long>(n - 1) * (n - 2) / 2); }

Element zero_like(const GradedSpace&) { return Element::finite({}); }

}  // namespace

int decalage_sign(const std::vector<int>& shifted) {
    long long e = 0;
    const int n = static_cast<int>(shifted.size());
    for (int i = 0; i < n; ++i) e += static_cast<long long>(n - 1 - i) * shifted[static_cast<size_t>(i)];
    return parity_sign(e);
}

std::vector<int> shifted_degrees(const GradedSpace& space, std::span<const Element> args) {
    std::vector<int> t;
    t.reserve(args.size());
    for (const auto& a : args) t.push_back(a.degree(space) - 1);
    return t;
}

Element internal_eval(const GradedSpace& space, const GradedMap* map,
                      std::span<const Element> args) {
    if (map == nullptr) return Element::finite({});
    int s = decalage_sign(shifted_degrees(space, args));
    Element v = map->eval(space, args);
    return s < 0 ? -v : v;
}

// --- jacobi ---------------------------------------------------------------------

Element jacobi_defect(const LInftyAlgebra& L, int arity, std::span<const Element> args) {
    if (arity < 1 || arity > L.cutoff) throw DomainError("arity beyond the structure cutoff");
    if (static_cast<int>(args.size()) != arity)
        throw StructuralError("jacobi_defect tuple length mismatch");
    const auto t = shifted_degrees(L.space, args);
    ElementSum acc;
    std::vector<Element> block, rest_args;
    for (int k = 1; k <= arity; ++k) {
        const GradedMap* inner = L.structure_map(k);
        const GradedMap* outer = L.structure_map(arity - k + 1);
        if (inner == nullptr || outer == nullptr) continue;
        for (const auto& sigma : unshuffles(k, arity - k)) {
            int sign = koszul_sign_sym(sigma, t);
            block.clear();
            for (int i = 0; i < k; ++i) block.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            Element val = internal_eval(L.space, inner, block);
            if (val.is_zero()) continue;
            rest_args.clear();
            rest_args.push_back(std::move(val));
            for (int i = k; i < arity; ++i)
                rest_args.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            acc.add_scaled(internal_eval(L.space, outer, rest_args), Rational(sign));
        }
    }
    int norm = tau_jacobi(arity) * decalage_sign(t);
    Element out = acc.value_or(zero_like(L.space));
    return norm < 0 ? -out : out;
}

// --- morphism --------------------------------------------------------------------

namespace {

/// Set partitions of {0..n-1}: blocks listed by smallest element, elements ascending.
void set_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
    out.clear();
    std::vector<std::vector<int>> current;
    std::function<void(int)> rec = [&](int next) {
        if (next == n) {
            out.push_back(current);
            return;
        }
        const size_t blocks_before = current.size();
        for (size_t b = 0; b < blocks_before; ++b) {
            current[b].push_back(next);
            rec(next + 1);
            current[b].pop_back();
        }
        current.push_back({next});
        rec(next + 1);
        current.pop_back();
    };
    rec(0);
}

}  // namespace

Element morphism_defect(const LInftyMorphism& M, int arity, std::span<const Element> args) {
    if (arity < 1 || arity > M.source.cutoff) throw DomainError("arity beyond the structure cutoff");
    if (static_cast<int>(args.size()) != arity)
        throw StructuralError("morphism_defect tuple length mismatch");
    const auto t = shifted_degrees(M.source.space, args);
    ElementSum acc;

    // F o D_V side
    std::vector<Element> block, rest_args;
    for (int k = 1; k <= arity; ++k) {
        const GradedMap* inner = M.source.structure_map(k);
        const GradedMap* outer = M.coefficient(arity - k + 1);
        if (inner == nullptr || outer == nullptr) continue;
        for (const auto& sigma : unshuffles(k, arity - k)) {
            int sign = koszul_sign_sym(sigma, t);
            block.clear();
            for (int i = 0; i < k; ++i) block.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            Element val = internal_eval(M.source.space, inner, block);
            if (val.is_zero()) continue;
            rest_args.clear();
            rest_args.push_back(std::move(val));
            for (int i = k; i < arity; ++i)
                rest_args.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            acc.add_scaled(internal_eval(M.source.space, outer, rest_args), Rational(sign));
        }
    }

    // minus D_W o F side, summed over unordered partitions
    std::vector<std::vector<std::vector<int>>> partitions;
    set_partitions(arity, partitions);
    for (const auto& partition : partitions) {
        const int k = static_cast<int>(partition.size());
        const GradedMap* outer = M.target.structure_map(k);
        if (outer == nullptr) continue;
        bool missing = false;
        for (const auto& b : partition)
            if (M.coefficient(static_cast<int>(b.size())) == nullptr) missing = true;
        if (missing) continue;
        Perm perm;
        for (const auto& b : partition) perm.insert(perm.end(), b.begin(), b.end());
        int sign = koszul_sign_sym(perm, t);
        std::vector<Element> images;
        images.reserve(static_cast<size_t>(k));
        bool zero = false;
        for (const auto& b : partition) {
            block.clear();
            for (int i : b) block.push_back(args[static_cast<size_t>(i)]);
            Element v = internal_eval(M.source.space, M.coefficient(static_cast<int>(b.size())), block);
            if (v.is_zero()) {
                zero = true;
                break;
            }
            images.push_back(std::move(v));
        }
        if (zero) continue;
        acc.add_scaled(internal_eval(M.target.space, outer, images), Rational(-sign));
    }

    int norm = decalage_sign(t);
    Element out = acc.value_or(zero_like(M.target.space));
    return norm < 0 ? -out : out;
}

// --- homotopy ---------------------------------------------------------------------

Element homotopy_defect(const LInftyMorphism& F, const LInftyMorphism& G,
                        const std::map<int, GradedMap>& H, int arity,
                        std::span<const Element> args) {
    if (!F.source.space.same_as(G.source.space) || !F.target.space.same_as(G.target.space))
        throw StructuralError("homotopy between morphisms with mismatched algebras");
    if (!F.target.is_dgla)
        throw DomainError("homotopy defect is implemented for DGLA targets only");
    if (arity >= 2 && !F.source.space.same_as(F.target.space))
        throw StructuralError("bracket terms of the homotopy identity need source == target");
    const int n = arity;
    if (static_cast<int>(args.size()) != n)
        throw StructuralError("homotopy_defect tuple length mismatch");

    auto h_map = [&](int k) -> const GradedMap* {
        auto it = H.find(k);
        return it == H.end() ? nullptr : &it->second;
    };
    std::vector<int> deg;
    for (const auto& a : args) deg.push_back(a.degree(F.source.space));

    ElementSum acc;
    auto feval = [&](const LInftyMorphism& M, std::span<const Element> xs) {
        return M.coefficient(n) ? M.coefficient(n)->eval(M.source.space, xs)
                                : Element::finite({});
    };
    acc.add(feval(F, args));
    acc.add(-feval(G, args));

    const GradedMap* d_src = F.source.structure_map(1);
    const GradedMap* d_tgt = F.target.structure_map(1);
    const GradedMap* bracket = F.target.structure_map(2);

    // - d_W H_n(args)
    if (const GradedMap* hn = h_map(n)) {
        Element hv = hn->eval(F.source.space, args);
        if (!hv.is_zero() && d_tgt) {
            std::vector<Element> one{hv};
            acc.add(-d_tgt->eval(F.target.space, one));
        }
        // + (-1)^n sum_i eta_i H_n(a_1, .., d a_i, .., a_n): the sign is the
        // parity of |H_n| = -n in the differential of the map
        if (d_src) {
            int prefix = 0;
            for (int i = 0; i < n; ++i) {
                std::vector<Element> one{args[static_cast<size_t>(i)]};
                Element da = d_src->eval(F.source.space, one);
                if (!da.is_zero()) {
                    std::vector<Element> xs(args.begin(), args.end());
                    xs[static_cast<size_t>(i)] = da;
                    acc.add_scaled(hn->eval(F.source.space, xs),
                                   Rational(parity_sign(prefix + n)));
                }
                prefix += deg[static_cast<size_t>(i)];
            }
        }
    }

    if (n >= 2) {
        const GradedMap* hn1 = h_map(n - 1);
        const GradedMap* bracket_src = F.source.structure_map(2);
        // - sum_{i<j} eps_front(i,j) H_{n-1}([a_i,a_j], rest)
        if (hn1 && bracket_src) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    long long e = 0;
                    for (int k = 0; k < i; ++k) e += static_cast<long long>(deg[static_cast<size_t>(i)]) * deg[static_cast<size_t>(k)];
                    for (int k = 0; k < j; ++k)
                        if (k != i) e += static_cast<long long>(deg[static_cast<size_t>(j)]) * deg[static_cast<size_t>(k)];
                    std::vector<Element> pair{args[static_cast<size_t>(i)], args[static_cast<size_t>(j)]};
                    Element br = bracket_src->eval(F.source.space, pair);
                    if (br.is_zero()) continue;
                    std::vector<Element> xs{br};
                    for (int k = 0; k < n; ++k)
                        if (k != i && k != j) xs.push_back(args[static_cast<size_t>(k)]);
                    acc.add_scaled(hn1->eval(F.source.space, xs), Rational(-parity_sign(e)));
                }
        }
        // + sum_i kappa_i [H_{n-1}(rest_i), a_i]
        if (hn1 && bracket) {
            for (int i = 0; i < n; ++i) {
                long long e = 0;
                for (int k = i + 1; k < n; ++k) e += static_cast<long long>(deg[static_cast<size_t>(i)]) * deg[static_cast<size_t>(k)];
                std::vector<Element> xs;
                for (int k = 0; k < n; ++k)
                    if (k != i) xs.push_back(args[static_cast<size_t>(k)]);
                Element hv = hn1->eval(F.source.space, xs);
                if (hv.is_zero()) continue;
                std::vector<Element> pair{hv, args[static_cast<size_t>(i)]};
                acc.add_scaled(bracket->eval(F.target.space, pair), Rational(parity_sign(e)));
            }
        }
    }
    return acc.value_or(zero_like(F.target.space));
}

// --- derivation --------------------------------------------------------------------

Element derivation_defect(const LInftyDerivation& X, int arity, std::span<const Element> args) {
    if (!X.algebra.is_dgla)
        throw DomainError("derivation identities are defined on DGLA backends only");
    if (arity < 1 || arity > X.algebra.cutoff)
        throw DomainError("arity beyond the structure cutoff");
    if (static_cast<int>(args.size()) != arity)
        throw StructuralError("derivation_defect tuple length mismatch");
    const auto& L = X.algebra;
    const auto t = shifted_degrees(L.space, args);
    auto x_map = [&](int k) -> const GradedMap* {
        auto it = X.X.find(k);
        return it == X.X.end() ? nullptr : &it->second;
    };
    ElementSum acc;
    std::vector<Element> block, rest_args;
    for (int k = 1; k <= arity; ++k) {
        for (const auto& sigma : unshuffles(k, arity - k)) {
            int sign = koszul_sign_sym(sigma, t);
            block.clear();
            for (int i = 0; i < k; ++i) block.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            auto tail = [&](Element head) {
                rest_args.clear();
                rest_args.push_back(std::move(head));
                for (int i = k; i < arity; ++i)
                    rest_args.push_back(args[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
            };
            // D_{n-k+1}(X_k(block), rest)
            {
                Element val = internal_eval(L.space, x_map(k), block);
                if (!val.is_zero()) {
                    tail(std::move(val));
                    acc.add_scaled(internal_eval(L.space, L.structure_map(arity - k + 1), rest_args),
                                   Rational(sign));
                }
            }
            // - X_{n-k+1}(D_k(block), rest)
            {
                Element val = internal_eval(L.space, L.structure_map(k), block);
                if (!val.is_zero()) {
                    tail(std::move(val));
                    acc.add_scaled(internal_eval(L.space, x_map(arity - k + 1), rest_args),
                                   Rational(-sign));
                }
            }
        }
    }
    int norm = decalage_sign(t);
    Element out = acc.value_or(zero_like(L.space));
    return norm < 0 ? -out : out;
}

// --- Maurer-Cartan -------------------------------------------------------------------

Element mc_defect(const LInftyAlgebra& L, const Element& pi) {
    if (!pi.is_zero() && pi.degree(L.space) != 1)
        throw DomainError("Maurer-Cartan candidates must have degree 1");
    ElementSum acc;
    std::vector<Element> args;
    for (int n = 1; n <= L.cutoff; ++n) {
        const GradedMap* dn = L.structure_map(n);
        if (dn == nullptr) continue;
        args.assign(static_cast<size_t>(n), pi);
        acc.add_scaled(internal_eval(L.space, dn, args), Rational::inv_factorial(static_cast<unsigned>(n)));
    }
    return acc.value_or(zero_like(L.space));
}

MCElement verify_mc(const LInftyAlgebra& L, const Element& pi) {
    return MCElement{pi, mc_defect(L, pi).is_zero()};
}

// --- twisting ----------------------------------------------------------------------

namespace {

Element twisted_eval(const LInftyAlgebra& L, const std::map<int, GradedMap>& maps, int arity,
                     const Element& pi, std::span<const Element> args) {
    ElementSum acc;
    std::vector<Element> xs(args.begin(), args.end());
    for (int k = 0; arity + k <= L.cutoff; ++k) {
        auto it = maps.find(arity + k);
        if (it != maps.end()) {
            acc.add_scaled(internal_eval(L.space, &it->second, xs),
                           Rational::inv_factorial(static_cast<unsigned>(k)));
        }
        xs.push_back(pi);
    }
    int norm = decalage_sign(shifted_degrees(L.space, args));
    Element out = acc.value_or(Element::finite({}));
    return norm < 0 ? -out : out;
}

}  // namespace

LInftyAlgebra twist_structure(const LInftyAlgebra& L, const MCElement& m) {
    if (!m.verified) throw DomainError("twist_structure requires a verified Maurer-Cartan element");
    LInftyAlgebra out;
    out.space = L.space;
    out.cutoff = L.cutoff;
    out.is_dgla = L.is_dgla;
    for (int n = 1; n <= L.cutoff; ++n) {
        LInftyAlgebra base = L;  // value capture keeps the closure self-contained
        Element pi = m.value;
        out.D.emplace(n, GradedMap::from_fn(n, 2 - n, [base, pi, n](std::span<const Element> xs) {
                          return twisted_eval(base, base.D, n, pi, xs);
                      }));
    }
    return out;
}

MCElement push_mc(const LInftyMorphism& F, const MCElement& m) {
    if (!m.verified) throw DomainError("push_mc requires a verified Maurer-Cartan element");
    ElementSum acc;
    std::vector<Element> args;
    for (int n = 1; n <= F.source.cutoff; ++n) {
        const GradedMap* fn = F.coefficient(n);
        if (fn == nullptr) continue;
        args.assign(static_cast<size_t>(n), m.value);
        acc.add_scaled(internal_eval(F.source.space, fn, args),
                       Rational::inv_factorial(static_cast<unsigned>(n)));
    }
    Element val = acc.value_or(zero_like(F.target.space));
    return verify_mc(F.target, val);
}

LInftyMorphism twist_morphism(const LInftyMorphism& F, const MCElement& m) {
    if (!m.verified) throw DomainError("twist_morphism requires a verified Maurer-Cartan element");
    MCElement pushed = push_mc(F, m);
    if (!pushed.verified)
        throw DomainError("pushed Maurer-Cartan element failed verification in the target");
    LInftyMorphism out;
    out.source = twist_structure(F.source, m);
    out.target = twist_structure(F.target, pushed);
    for (int n = 1; n <= F.source.cutoff; ++n) {
        LInftyMorphism base = F;
        Element pi = m.value;
        LInftyAlgebra src = F.source;
        out.F.emplace(n, GradedMap::from_fn(n, 1 - n, [base, src, pi, n](std::span<const Element> xs) {
                          return twisted_eval(src, base.F, n, pi, xs);
                      }));
    }
    return out;
}

Element x_of_pi(const LInftyDerivation& X, const MCElement& m) {
    if (!m.verified) throw DomainError("x_of_pi requires a verified Maurer-Cartan element");
    ElementSum acc;
    std::vector<Element> args;
    for (int n = 1; n <= X.algebra.cutoff; ++n) {
        auto it = X.X.find(n);
        if (it == X.X.end()) continue;
        args.assign(static_cast<size_t>(n), m.value);
        acc.add_scaled(internal_eval(X.algebra.space, &it->second, args),
                       Rational::inv_factorial(static_cast<unsigned>(n)));
    }
    return acc.value_or(zero_like(X.algebra.space));
}

Element x_pi(const LInftyDerivation& X, const MCElement& m, int arity,
             std::span<const Element> args) {
    if (!m.verified) throw DomainError("x_pi requires a verified Maurer-Cartan element");
    if (arity < 1) throw DomainError("x_pi arity must be at least 1");
    return twisted_eval(X.algebra, X.X, arity, m.value, args);
}

// --- Nijenhuis ----------------------------------------------------------------------

NijenhuisReport nijenhuis_defects(const LInftyDerivation& X, const MCElement& m, int max_arity,
                                  std::span<const Element> probes) {
    if (!m.verified)
        throw DomainError("nijenhuis_defects requires a verified Maurer-Cartan element");
    NijenhuisReport rep;
    rep.checked_arity = max_arity;
    rep.derivation_max_arity = X.max_arity();
    Element xpi = x_of_pi(X, m);
    std::vector<Element> one{xpi};
    Element weak = x_pi(X, m, 1, one);
    rep.weak_zero = weak.is_zero();
    rep.weak_residual = weak.str();
    rep.all_zero = rep.weak_zero;
    if (!rep.weak_zero) rep.strong_residuals.emplace_back("(X(pi))", weak.str());

    for (int n = 2; n <= max_arity; ++n) {
        // X_{pi,n} only sees X-coefficients of arity >= n
        if (X.max_arity() < n) continue;  // structurally zero
        std::vector<std::vector<Element>> fillings;
        std::vector<std::string> labels;
        if (X.algebra.space.backend == GradedSpace::Backend::Finite) {
            for (const auto& tuple : basis_tuples(X.algebra.space, n - 1)) {
                std::vector<Element> xs;
                for (int idx : tuple) xs.push_back(basis_element(X.algebra.space, idx));
                fillings.push_back(std::move(xs));
                labels.push_back(tuple_repr(X.algebra.space, tuple));
            }
        } else {
            // lazy backend: fill the remaining slots from the probe set
            std::vector<int> pick(static_cast<size_t>(n - 1), 0);
            if (!probes.empty()) {
                while (true) {
                    std::vector<Element> xs;
                    std::string label = "(";
                    for (size_t i = 0; i < pick.size(); ++i) {
                        xs.push_back(probes[static_cast<size_t>(pick[i])]);
                        label += "probe" + std::to_string(pick[i]);
                        label += (i + 1 < pick.size() ? "," : "");
                    }
                    label += ")";
                    fillings.push_back(std::move(xs));
                    labels.push_back(std::move(label));
                    size_t pos = 0;
                    while (pos < pick.size()) {
                        if (++pick[pos] < static_cast<int>(probes.size())) break;
                        pick[pos] = 0;
                        ++pos;
                    }
                    if (pos == pick.size()) break;
                }
            }
        }
        for (size_t f = 0; f < fillings.size(); ++f) {
            auto xs = fillings[f];
            xs.push_back(xpi);
            Element defect = x_pi(X, m, n, xs);
            if (!defect.is_zero()) {
                rep.all_zero = false;
                rep.strong_residuals.emplace_back("arity " + std::to_string(n) + " " + labels[f],
                                                  defect.str());
            }
        }
    }
    return rep;
}

// --- exponential --------------------------------------------------------------------

namespace {

struct Word {
    std::vector<Element> factors;
    friend bool operator<(const Word& a, const Word& b) { return a.factors < b.factors; }
};

using WordSum = std::map<Word, Rational>;

/// Sorts the factors, accumulating the symmetric Koszul sign on shifted degrees;
/// zero (nullopt) when an odd factor repeats.
std::optional<std::pair<Word, int>> canonical_word(Word w, const GradedSpace& space) {
    int sign = 1;
    auto& f = w.factors;
    for (size_t i = 1; i < f.size(); ++i) {
        for (size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
            int t1 = f[j - 1].degree(space) - 1;
            int t2 = f[j].degree(space) - 1;
            sign *= parity_sign(static_cast<long long>(t1) * t2);
            std::swap(f[j - 1], f[j]);
        }
    }
    for (size_t i = 0; i + 1 < f.size(); ++i)
        if (f[i] == f[i + 1] && (f[i].degree(space) - 1) % 2 != 0) return std::nullopt;
    return std::make_pair(std::move(w), sign);
}

void add_word(WordSum& sum, Word w, Rational coeff, const GradedSpace& space) {
    if (coeff.is_zero()) return;
    for (const auto& f : w.factors)
        if (f.is_zero()) return;
    auto canon = canonical_word(std::move(w), space);
    if (!canon) return;
    coeff *= Rational(canon->second);
    auto it = sum.find(canon->first);
    if (it == sum.end()) {
        sum.emplace(std::move(canon->first), coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) sum.erase(it);
    }
}

/// One application of the coderivation lift of X to a sum of symmetric words.
WordSum coderivation_apply(const LInftyDerivation& X, const WordSum& in) {
    const GradedSpace& space = X.algebra.space;
    WordSum out;
    for (const auto& [w, coeff] : in) {
        const int n = static_cast<int>(w.factors.size());
        std::vector<int> t;
        for (const auto& f : w.factors) t.push_back(f.degree(space) - 1);
        for (int k = 1; k <= std::min(n, X.max_arity()); ++k) {
            auto it = X.X.find(k);
            if (it == X.X.end()) continue;
            // iterate k-subsets of positions
            std::vector<int> pick(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
            while (true) {
                long long e = 0;
                for (int a = 0; a < k; ++a) {
                    for (int j = 0; j < pick[static_cast<size_t>(a)]; ++j) {
                        bool in_pick = false;
                        for (int b = 0; b < k; ++b)
                            if (pick[static_cast<size_t>(b)] == j) in_pick = true;
                        if (!in_pick)
                            e += static_cast<long long>(t[static_cast<size_t>(pick[static_cast<size_t>(a)])]) *
                                 t[static_cast<size_t>(j)];
                    }
                }
                std::vector<Element> block;
                for (int a = 0; a < k; ++a) block.push_back(w.factors[static_cast<size_t>(pick[static_cast<size_t>(a)])]);
                Element val = internal_eval(space, &it->second, block);
                if (!val.is_zero()) {
                    Word nw;
                    nw.factors.push_back(std::move(val));
                    for (int j = 0; j < n; ++j) {
                        bool in_pick = false;
                        for (int b = 0; b < k; ++b)
                            if (pick[static_cast<size_t>(b)] == j) in_pick = true;
                        if (!in_pick) nw.factors.push_back(w.factors[static_cast<size_t>(j)]);
                    }
                    add_word(out, std::move(nw), coeff * Rational(parity_sign(e)), space);
                }
                // next subset
                int pos = k - 1;
                while (pos >= 0 && pick[static_cast<size_t>(pos)] == n - k + pos) --pos;
                if (pos < 0) break;
                ++pick[static_cast<size_t>(pos)];
                for (int a = pos + 1; a < k; ++a)
                    pick[static_cast<size_t>(a)] = pick[static_cast<size_t>(a - 1)] + 1;
            }
        }
    }
    return out;
}

Element project_length_one(const WordSum& sum, const GradedSpace&) {
    ElementSum acc;
    for (const auto& [w, coeff] : sum)
        if (w.factors.size() == 1) acc.add_scaled(w.factors[0], coeff);
    return acc.value_or(Element::finite({}));
}

}  // namespace

LInftyMorphism exp_derivation(const LInftyDerivation& X, const ExpOptions& opts) {
    LInftyMorphism out;
    out.source = X.algebra;
    out.target = X.algebra;
    for (int n = 1; n <= X.algebra.cutoff; ++n) {
        LInftyDerivation base = X;
        ExpOptions o = opts;
        out.F.emplace(n, GradedMap::from_fn(n, 1 - n, [base, o, n](std::span<const Element> xs) {
            const GradedSpace& space = base.algebra.space;
            WordSum cur;
            Word w0;
            w0.factors.assign(xs.begin(), xs.end());
            add_word(cur, std::move(w0), Rational(1), space);
            ElementSum acc;
            acc.add(project_length_one(cur, space));
            Rational tk(1);
            for (int k = 1; k <= o.series_order; ++k) {
                cur = coderivation_apply(base, cur);
                if (cur.empty()) break;
                tk *= o.t;
                acc.add_scaled(project_length_one(cur, space),
                               tk * Rational::inv_factorial(static_cast<unsigned>(k)));
            }
            if (!cur.empty() && !coderivation_apply(base, cur).empty() && !o.allow_truncated)
                throw ResourceError(
                    "coderivation exponential did not terminate within the series order");
            Element v = acc.value_or(Element::finite({}));
            int norm = decalage_sign(shifted_degrees(space, xs));
            return norm < 0 ? -v : v;
        }));
    }
    return out;
}

// --- builders ------------------------------------------------------------------------

LInftyAlgebra finite_linfty(GradedSpace space, std::map<int, GradedMap> D, int cutoff,
                            bool is_dgla) {
    if (space.backend != GradedSpace::Backend::Finite)
        throw StructuralError("finite_linfty needs a finite graded space");
    LInftyAlgebra L;
    L.space = std::move(space);
    L.cutoff = cutoff;
    L.D = std::move(D);
    L.is_dgla = is_dgla;
    for (const auto& [arity, map] : L.D) {
        if (map.arity() != arity) throw StructuralError("structure map arity mismatch");
        if (map.degree() != 2 - arity)
            throw StructuralError("structure map D_n must have degree 2-n");
    }
    return L;
}

LInftyAlgebra tpoly_dgla(std::vector<std::string> vars, unsigned hbar_cap, int cutoff) {
    LInftyAlgebra L;
    L.space = GradedSpace::tpoly(std::move(vars), hbar_cap);
    L.cutoff = cutoff;
    L.is_dgla = true;
    L.D.emplace(2, GradedMap::from_fn(2, 0, [](std::span<const Element> xs) {
                    return Element::tpoly(schouten(xs[0].pv(), xs[1].pv()));
                }));
    return L;
}

LInftyAlgebra dpoly_dgla(std::vector<std::string> vars, unsigned hbar_cap, int cutoff) {
    LInftyAlgebra L;
    L.space = GradedSpace::dpoly(std::move(vars), hbar_cap);
    L.cutoff = cutoff;
    L.is_dgla = true;
    L.D.emplace(1, GradedMap::from_fn(1, 1, [](std::span<const Element> xs) {
                    return Element::dpoly(hochschild_delta(xs[0].op()));
                }));
    L.D.emplace(2, GradedMap::from_fn(2, 0, [](std::span<const Element> xs) {
                    return Element::dpoly(gerstenhaber(xs[0].op(), xs[1].op()));
                }));
    return L;
}

LInftyMorphism identity_morphism(const LInftyAlgebra& L) {
    LInftyMorphism M;
    M.source = L;
    M.target = L;
    M.F.emplace(1, GradedMap::from_fn(1, 0, [](std::span<const Element> xs) { return xs[0]; }));
    return M;
}

LInftyMorphism strict_morphism(LInftyAlgebra source, LInftyAlgebra target, GradedMap f1) {
    LInftyMorphism M;
    M.source = std::move(source);
    M.target = std::move(target);
    M.F.emplace(1, std::move(f1));
    return M;
}

LInftyDerivation inner_derivation(const LInftyAlgebra& L, const Element& z) {
    if (!L.is_dgla) throw DomainError("inner derivations need a DGLA");
    if (!z.is_zero() && z.degree(L.space) != 0)
        throw DomainError("inner derivations come from degree-0 elements");
    LInftyDerivation X;
    X.algebra = L;
    LInftyAlgebra base = L;
    Element zz = z;
    X.X.emplace(1, GradedMap::from_fn(1, 0, [base, zz](std::span<const Element> xs) {
                    std::vector<Element> pair{zz, xs[0]};
                    const GradedMap* b = base.structure_map(2);
                    return b ? b->eval(base.space, pair) : Element::finite({});
                }));
    return X;
}

// --- sweeps ------------------------------------------------------------------------

Element basis_element(const GradedSpace& space, int index) {
    if (space.backend != GradedSpace::Backend::Finite)
        throw StructuralError("basis_element needs a finite backend");
    FiniteVec v;
    v.emplace(space.basis[static_cast<size_t>(index)].first, Rational(1));
    return Element::finite(std::move(v));
}

std::string tuple_repr(const GradedSpace& space, const std::vector<int>& tuple) {
    std::string s = "(";
    for (size_t i = 0; i < tuple.size(); ++i) {
        s += space.basis[static_cast<size_t>(tuple[i])].first;
        if (i + 1 < tuple.size()) s += ",";
    }
    return s + ")";
}

std::vector<std::vector<int>> basis_tuples(const GradedSpace& space, int length) {
    if (space.backend != GradedSpace::Backend::Finite)
        throw StructuralError("basis sweeps need a finite backend");
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(space.basis.size());
    std::vector<int> cur(static_cast<size_t>(length), 0);
    if (length == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        bool ok = true;
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            if (cur[i] > cur[i + 1]) ok = false;
            if (cur[i] == cur[i + 1] &&
                space.basis[static_cast<size_t>(cur[i])].second % 2 == 0)
                ok = false;  // repeated even slot is identically zero
        }
        if (ok) out.push_back(cur);
        size_t pos = 0;
        while (pos < cur.size()) {
            if (++cur[pos] < n) break;
            cur[pos] = 0;
            ++pos;
        }
        if (pos == cur.size()) break;
    }
    return out;
}

namespace {

template <class DefectFn>
DefectReport sweep(const GradedSpace& space, int cutoff, unsigned hbar_cap, int max_arity,
                   const std::string& name, DefectFn&& defect) {
    DefectReport rep;
    rep.check = name;
    rep.checked_arity = max_arity;
    rep.arity_cutoff = cutoff;
    rep.hbar_cap = hbar_cap;
    for (int n = 1; n <= max_arity; ++n) {
        for (const auto& tuple : basis_tuples(space, n)) {
            std::vector<Element> args;
            args.reserve(tuple.size());
            for (int idx : tuple) args.push_back(basis_element(space, idx));
            rep.note_residual(tuple_repr(space, tuple), defect(n, args));
        }
    }
    return rep;
}

}  // namespace

DefectReport jacobi_report(const LInftyAlgebra& L, int max_arity) {
    return sweep(L.space, L.cutoff, L.space.hbar_cap, max_arity, "generalized-jacobi",
                 [&](int n, std::span<const Element> args) { return jacobi_defect(L, n, args); });
}

DefectReport morphism_report(const LInftyMorphism& F, int max_arity) {
    return sweep(F.source.space, F.source.cutoff, F.source.space.hbar_cap, max_arity,
                 "linfty-morphism",
                 [&](int n, std::span<const Element> args) { return morphism_defect(F, n, args); });
}

DefectReport derivation_report(const LInftyDerivation& X, int max_arity) {
    return sweep(X.algebra.space, X.algebra.cutoff, X.algebra.space.hbar_cap, max_arity,
                 "linfty-derivation",
                 [&](int n, std::span<const Element> args) { return derivation_defect(X, n, args); });
}

}  // namespace shiftq
