#pragma once

#include "spectra/spectral.hpp"

namespace spectra {

// Outcome of one mechanically verified statement on one complex.  status is
// "pass", "fail" or "inconclusive" (the statement's hypotheses were never
// satisfied, e.g. only torsion classes where a rational one is needed).
struct CheckReport {
    std::string check;
    std::string status;
    std::string note;
    std::vector<std::pair<std::string, std::string>> details;  // ordered key/value
    bool ok() const { return status != "fail"; }
};

// c_{R'}(j(a)) <= c_Z(a) for every generator class and coefficient change
// Z -> Q, Z -> Z/m with m in {2, 3, 7, 14}, plus the further reductions
// Z/14 -> Z/2 and Z/14 -> Z/7.
CheckReport check_coeff_monotone(const Analyzer& an);

// inf_k c_Z(k a) = c_Q(j a), with the minimal multiplier certified two ways:
// by the divisor scan inside spectral_depth and by per-level element orders.
CheckReport check_z_vs_q(const Analyzer& an);

// Over each field K in {Q, Z/2, Z/3, Z/7}: -c_K(dual, a) equals the least
// critical level where the pairing functional of a is nonzero on the image.
CheckReport check_field_pd(const Analyzer& an, const Analyzer& dn);

// Over Z: 0 <= c_Z(dual, a) + inf{c_Z(C, b) : <a, b> != 0} <= torsion depth,
// also against the degree-refined depth.  Torsion a pair to nothing and are
// reported inconclusive.
CheckReport check_corrected_pd(const Analyzer& an, const Analyzer& dn);

// P = {primes in any invariant factor of any level homology or level-image
// cokernel, of C and its dual} + the smallest prime outside.  Asserts
// inf_{p in P} c_{Z/p} <= c_Q <= sup_{p in P} c_{Z/p} <= c_Z and that the
// outside prime matches c_Q exactly.
CheckReport check_prime_envelope(const Analyzer& an, const Analyzer& dn);

// For p in {2, 3}: compares c_{Z/p}(j a) with c_Q(j a).  If >, the infimum of
// c_Z(k a) is only attained by multiples of p; if <, c_{Z/p} undercuts every
// multiplier prime to p.  Equal values decide nothing.
CheckReport check_refinement(const Analyzer& an);

// gamma_Z(a, b) = beta(b) + beta_dual(a) + gamma_Q(a, b) for PD-linked pairs:
// b is the integral class of the level witness realizing the field formula,
// so gamma_Q(a, b) = 0 and inf_k c_Z(C, k b) = -inf_k c_Z(dual, k a).
CheckReport check_depth_identity(const Analyzer& an, const Analyzer& dn);

// |torsion_depth(F) - torsion_depth(G)| <= s1 + s2 for a validated
// interleaving.
CheckReport check_tor_lipschitz(const Interleaving& I);

// Everything above on one complex (lipschitz uses a generated interleaving).
std::vector<CheckReport> run_standard_checks(const FilteredComplex& C,
                                             std::uint64_t lipschitz_seed);

}  // namespace spectra
