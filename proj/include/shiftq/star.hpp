#pragma once

#include "shiftq/polydiffop.hpp"
#include "shiftq/polyvector.hpp"

namespace shiftq {

/// Star product stored as one arity-2 operator B with hbar-series coefficients,
/// vanishing at hbar^0; f * g = fg + B(f,g), truncated at the cap.
class StarProduct {
   public:
    StarProduct(unsigned hbar_cap, HPolyDiffOp B, bool mc_verified = false);

    unsigned hbar_cap() const { return cap_; }
    const HPolyDiffOp& B() const { return B_; }
    bool mc_verified() const { return mc_verified_; }
    const std::vector<std::string>& vars() const { return B_.vars(); }

    StarProduct with_mc_verified(bool flag) const { return StarProduct(cap_, B_, flag); }

   private:
    unsigned cap_;
    HPolyDiffOp B_;
    bool mc_verified_;
};

/// f * g = fg + B(f,g) mod hbar^{cap+1}.
HbarPoly star_mul(const StarProduct& S, const HbarPoly& f, const HbarPoly& g);

/// f * g - g * f.
HbarPoly star_commutator(const StarProduct& S, const HbarPoly& f, const HbarPoly& g);

/// delta(B) + 1/2 [B,B]; identically zero mod hbar^{cap+1} iff the star product
/// is associative to that order.
HPolyDiffOp mc_defect_star(const StarProduct& S);

/// Runs mc_defect_star and returns the star product with the flag set on success.
StarProduct verify_star(const StarProduct& S);

/// Moyal-type exponential star product of a constant-coefficient bivector:
/// B_k(f,g) = (1/k!)(1/2)^k pi^{i1 j1} ... pi^{ik jk} d_{i...}f d_{j...}g.
StarProduct moyal(const Polyvector& pi_const, unsigned cap);

}  // namespace shiftq
