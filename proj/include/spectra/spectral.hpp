#pragma once

#include "spectra/homology.hpp"

namespace spectra {

// Value of a level scan: -inf < rationals < +inf.  -inf is the value on zero
// classes, +inf the infimum over an empty set.
struct SpectralValue {
    enum Kind { NEG_INF = -1, FINITE = 0, POS_INF = 1 };
    Kind kind = FINITE;
    mpq_class v;

    static SpectralValue neg_inf() { return {NEG_INF, 0}; }
    static SpectralValue pos_inf() { return {POS_INF, 0}; }
    static SpectralValue of(const mpq_class& q) { return {FINITE, q}; }

    bool finite() const { return kind == FINITE; }
    std::string str() const {
        if (kind == NEG_INF) return "-inf";
        if (kind == POS_INF) return "inf";
        return v.get_str();
    }
    bool operator==(const SpectralValue& o) const {
        return kind == o.kind && (kind != FINITE || v == o.v);
    }
    bool operator<(const SpectralValue& o) const {
        if (kind != o.kind) return kind < o.kind;
        return kind == FINITE && v < o.v;
    }
    bool operator<=(const SpectralValue& o) const { return *this < o || *this == o; }
};

// Sum with -inf absorbing; -inf + inf is rejected.
SpectralValue sv_add(const SpectralValue& a, const SpectralValue& b);
SpectralValue sv_sub(const SpectralValue& a, const SpectralValue& b);

// c(a): least critical value tau with a in Im(H(tau) -> H(full)); -inf for the
// zero class.  `a` must be a full-level class.
SpectralValue spectral_invariant(const Analyzer& an, const HomologyClass& a);

// c_Z(a) - inf_k c_Z(k a), with the infimum identified as c_Q(j a) and
// certified by a minimal multiplier.
struct DepthReport {
    SpectralValue c_z;       // c_Z(a)
    SpectralValue c_q;       // c_Q(j a) = inf_k c_Z(k a)
    SpectralValue beta;      // c_z - c_q; +inf when a is torsion
    mpz_class witness = 1;   // least k >= 1 with c_Z(k a) = c_q
    mpz_class lcm_bound = 1; // denominator-clearing bound; witness divides it
};

// ring Z, full level, a != 0
DepthReport spectral_depth(const Analyzer& an, const HomologyClass& a);

// Least kappa >= 0 such that for every tau the restriction
// Ext(H(tau+kappa)) -> Ext(H(tau)) is the zero map: every torsion functional
// dies within kappa.  +inf exactly when the limit homology itself has torsion
// in the degree, so nothing kills it; kappa ranges over {0} and differences
// of critical values.
SpectralValue torsion_depth(const Analyzer& an, int degree);
SpectralValue torsion_depth(const Analyzer& an);                     // max over degrees
std::map<int, SpectralValue> torsion_depth_all(const Analyzer& an);  // degree -> depth

// c_R(C, a) + c_R(dual, a_dual); both classes must be nonzero.
SpectralValue spectral_norm(const Analyzer& an, const Analyzer& dual_an,
                            const HomologyClass& a, const HomologyClass& a_dual);

// Evaluation pairing <z, w> for z in H_k(dual), w in H_{D-k}(C), same ring;
// reduced mod m over Z/m.
mpq_class pd_pairing(const Analyzer& dual_an, const Analyzer& an, const HomologyClass& z,
                     const HomologyClass& w);

// Chain maps F -> G -> F shifting actions by at most s1 / s2, inverse to each
// other on full homology.  Columns of the matrices are generator images.
struct Interleaving {
    FilteredComplex F, G;
    IntMatrix forward, backward;
    mpq_class s1, s2;
};

std::vector<std::string> validate_interleaving(const Interleaving& I);

// Deterministic small perturbations of C used by the Lipschitz suite:
// uniform action shifts and single-generator moves, identity on generators.
Interleaving make_test_interleaving(const FilteredComplex& C, std::uint64_t seed);

}  // namespace spectra
