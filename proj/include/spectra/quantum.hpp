#pragma once

#include "spectra/rings.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace spectra {

// Element of R[x, t, t^-1] / (x^{n+1} = t), finitely supported: a sum of
// monomials c * x^i t^j with 0 <= i <= n after reduction and j any integer.
// Grading: deg x = 2, deg t = 2(n+1).
struct QuantumClass {
    int n = 1;
    Ring ring;
    std::map<std::pair<int, long>, mpq_class> coeff;  // (i, j) -> c, no zeros stored

    bool operator==(const QuantumClass& o) const {
        return n == o.n && ring == o.ring && coeff == o.coeff;
    }
};

QuantumClass qzero(int n, const Ring& ring);
QuantumClass qone(int n, const Ring& ring);

// c * x^i t^j with i >= 0; x-exponents above n are reduced via x^{n+1} = t
QuantumClass qmono(int n, const Ring& ring, const mpq_class& c, int i, long j);

QuantumClass qadd(const QuantumClass& a, const QuantumClass& b);
QuantumClass qsub(const QuantumClass& a, const QuantumClass& b);
QuantumClass qmul(const QuantumClass& a, const QuantumClass& b);
QuantumClass qscale(const mpq_class& c, const QuantumClass& a);

// normalized coefficient of x^i t^j; 0 when the monomial is absent
mpq_class qcoeff(const QuantumClass& a, int i, long j);

// tau: the coefficient of the constant monomial x^0 t^0
mpq_class qtau(const QuantumClass& a);

// Pi(a, b): the coefficient of x^n t^0 in a * b
mpq_class qpairing(const QuantumClass& a, const QuantumClass& b);

// common grading 2i + 2(n+1)j of all monomials; nullopt for 0 or mixed input
std::optional<long> qdegree(const QuantumClass& a);

// largest t-exponent carrying a nonzero coefficient; a must be nonzero
long qvaluation(const QuantumClass& a);

// Multiplicative inverse over a field (Q or Z/p), by a linear solve over a
// t-window that grows up to a fixed bound; the result is verified to satisfy
// a * b = 1.  Throws std::domain_error when no finitely supported inverse
// exists in the searched windows (only monomials are units here).
QuantumClass qinverse(const QuantumClass& a);

// Polynomials in x, t, t^-1: "x^2*t^-1 + 3", "2*x - 5/2*t^2".  x-exponents
// must be >= 0 and are reduced after parsing; malformed input throws.
QuantumClass parse_quantum(int n, const Ring& ring, const std::string& text);
std::string quantum_str(const QuantumClass& a);

}  // namespace spectra
