#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace spectra {

// Coefficient rings the library computes over: Z, Q, Z/m (m >= 2, not
// necessarily prime; composite moduli are handled by lifting to Z).
enum class RingKind { Z, Q, Zmod };

struct Ring {
    RingKind kind = RingKind::Z;
    mpz_class modulus = 0;  // only for Zmod

    bool is_field() const {
        if (kind == RingKind::Q) return true;
        if (kind == RingKind::Zmod)
            return mpz_probab_prime_p(modulus.get_mpz_t(), 30) != 0;
        return false;
    }
    bool operator==(const Ring& o) const {
        return kind == o.kind && (kind != RingKind::Zmod || modulus == o.modulus);
    }
    std::string str() const {
        switch (kind) {
            case RingKind::Z: return "Z";
            case RingKind::Q: return "Q";
            default: return "Z/" + modulus.get_str();
        }
    }
};

inline Ring ring_Z() { return {RingKind::Z, 0}; }
inline Ring ring_Q() { return {RingKind::Q, 0}; }
inline Ring ring_mod(const mpz_class& m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    return {RingKind::Zmod, m};
}

// Accepts "Z", "Q", "Z/m". Used by the CLI and by check inputs.
inline std::optional<Ring> parse_ring(const std::string& s) {
    if (s == "Z") return ring_Z();
    if (s == "Q") return ring_Q();
    if (s.rfind("Z/", 0) == 0) {
        try {
            mpz_class m(s.substr(2));
            if (m >= 2) return ring_mod(m);
        } catch (const std::invalid_argument&) {}
    }
    return std::nullopt;
}

// Exact rational parsing, "p/q" or "p". Throws on malformed input.
inline mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return q;
}

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

// Representative in [0, m).
inline mpz_class mod_reduce(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of a mod m; nullopt when gcd(a, m) != 1.
inline std::optional<mpz_class> mod_inverse(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

}  // namespace spectra
