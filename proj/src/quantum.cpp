#include "spectra/quantum.hpp"

#include "spectra/int_matrix.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spectra {

namespace {

// coefficient in canonical form: reduced fraction over Q, integral over Z,
// representative in [0, m) over Z/m (fractions allowed when the denominator
// is invertible mod m)
mpq_class norm_coeff(const Ring& ring, const mpq_class& c) {
    mpq_class v = c;
    v.canonicalize();
    switch (ring.kind) {
        case RingKind::Q: return v;
        case RingKind::Z:
            if (v.get_den() != 1)
                throw std::invalid_argument("fractional coefficient over Z: " + v.get_str());
            return v;
        default: {
            mpz_class num = mod_reduce(v.get_num(), ring.modulus);
            if (v.get_den() != 1) {
                auto inv = mod_inverse(v.get_den(), ring.modulus);
                if (!inv)
                    throw std::invalid_argument("denominator " + v.get_den().get_str() +
                                                " not invertible mod " + ring.modulus.get_str());
                num = mod_reduce(num * *inv, ring.modulus);
            }
            return mpq_class(num);
        }
    }
}

void add_monomial(QuantumClass& a, int i, long j, const mpq_class& c) {
    auto key = std::make_pair(i, j);
    mpq_class v = norm_coeff(a.ring, a.coeff.count(key) ? a.coeff[key] + c : c);
    if (v == 0)
        a.coeff.erase(key);
    else
        a.coeff[key] = v;
}

void require_same(const QuantumClass& a, const QuantumClass& b) {
    if (a.n != b.n || !(a.ring == b.ring))
        throw std::invalid_argument("mismatched quantum rings: n=" + std::to_string(a.n) + " over " +
                                    a.ring.str() + " vs n=" + std::to_string(b.n) + " over " +
                                    b.ring.str());
}

}  // namespace

QuantumClass qzero(int n, const Ring& ring) {
    if (n < 1) throw std::invalid_argument("quantum ring needs n >= 1");
    return {n, ring, {}};
}

QuantumClass qone(int n, const Ring& ring) { return qmono(n, ring, 1, 0, 0); }

QuantumClass qmono(int n, const Ring& ring, const mpq_class& c, int i, long j) {
    QuantumClass a = qzero(n, ring);
    if (i < 0) throw std::invalid_argument("negative x exponent");
    while (i > n) {  // x^{n+1} = t
        i -= n + 1;
        ++j;
    }
    add_monomial(a, i, j, c);
    return a;
}

QuantumClass qadd(const QuantumClass& a, const QuantumClass& b) {
    require_same(a, b);
    QuantumClass out = a;
    for (const auto& [key, c] : b.coeff) add_monomial(out, key.first, key.second, c);
    return out;
}

QuantumClass qsub(const QuantumClass& a, const QuantumClass& b) { return qadd(a, qscale(-1, b)); }

QuantumClass qmul(const QuantumClass& a, const QuantumClass& b) {
    require_same(a, b);
    QuantumClass out = qzero(a.n, a.ring);
    for (const auto& [ka, ca] : a.coeff)
        for (const auto& [kb, cb] : b.coeff) {
            int i = ka.first + kb.first;
            long j = ka.second + kb.second;
            if (i > a.n) {  // one reduction step suffices: i <= 2n
                i -= a.n + 1;
                ++j;
            }
            add_monomial(out, i, j, ca * cb);
        }
    return out;
}

QuantumClass qscale(const mpq_class& c, const QuantumClass& a) {
    QuantumClass out = qzero(a.n, a.ring);
    for (const auto& [key, v] : a.coeff) add_monomial(out, key.first, key.second, c * v);
    return out;
}

mpq_class qcoeff(const QuantumClass& a, int i, long j) {
    auto it = a.coeff.find({i, j});
    return it == a.coeff.end() ? mpq_class(0) : it->second;
}

mpq_class qtau(const QuantumClass& a) { return qcoeff(a, 0, 0); }

mpq_class qpairing(const QuantumClass& a, const QuantumClass& b) {
    return qcoeff(qmul(a, b), a.n, 0);
}

std::optional<long> qdegree(const QuantumClass& a) {
    std::optional<long> deg;
    for (const auto& [key, c] : a.coeff) {
        long d = 2L * key.first + 2L * (a.n + 1) * key.second;
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

long qvaluation(const QuantumClass& a) {
    if (a.coeff.empty()) throw std::invalid_argument("qvaluation of zero");
    long hi = std::numeric_limits<long>::min();
    for (const auto& [key, c] : a.coeff) hi = std::max(hi, key.second);
    return hi;
}

QuantumClass qinverse(const QuantumClass& a) {
    if (!a.ring.is_field())
        throw std::invalid_argument("qinverse needs a field, got " + a.ring.str());
    if (a.coeff.empty()) throw std::domain_error("zero is not invertible");

    long jlo = std::numeric_limits<long>::max(), jhi = std::numeric_limits<long>::min();
    mpz_class den(1);
    for (const auto& [key, c] : a.coeff) {
        jlo = std::min(jlo, key.second);
        jhi = std::max(jhi, key.second);
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }

    // Only monomials c x^i t^j are units (the ring is K[x, t^{+-1}]/(x^{n+1}-t)
    // = K[x^{+-1}] via t -> x^{n+1}), and their inverses fit in the first
    // window; wider retries are kept so the search bound is explicit.
    for (long w = 0; w <= 3; ++w) {
        std::vector<std::pair<int, long>> slots;
        for (int i = 0; i <= a.n; ++i)
            for (long j = -jhi - 1 - w; j <= -jlo + w; ++j) slots.push_back({i, j});

        std::map<std::pair<int, long>, int> row_of;
        row_of[{0, 0}] = 0;  // the product must hit the constant monomial
        for (const auto& [ka, ca] : a.coeff)
            for (const auto& s : slots) {
                int i = ka.first + s.first;
                long j = ka.second + s.second;
                if (i > a.n) {
                    i -= a.n + 1;
                    ++j;
                }
                if (!row_of.count({i, j})) row_of[{i, j}] = int(row_of.size());
            }

        IntMatrix A(int(row_of.size()), int(slots.size()));
        for (const auto& [ka, ca] : a.coeff)
            for (size_t s = 0; s < slots.size(); ++s) {
                int i = ka.first + slots[s].first;
                long j = ka.second + slots[s].second;
                if (i > a.n) {
                    i -= a.n + 1;
                    ++j;
                }
                mpq_class scaled = ca * den;  // integral: den clears every denominator
                A.at(row_of[{i, j}], int(s)) += scaled.get_num();
            }
        std::vector<mpz_class> rhs(row_of.size(), 0);
        rhs[0] = den;

        auto x = solve_linear(A, rhs, a.ring);
        if (!x) continue;
        QuantumClass b = qzero(a.n, a.ring);
        for (size_t s = 0; s < slots.size(); ++s)
            if (x->q[s] != 0) add_monomial(b, slots[s].first, slots[s].second, x->q[s]);
        if (qmul(a, b) == qone(a.n, a.ring)) return b;
    }
    throw std::domain_error("not a unit: " + quantum_str(a));
}

QuantumClass parse_quantum(int n, const Ring& ring, const std::string& text) {
    QuantumClass out = qzero(n, ring);
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + what);
    };
    auto parse_exponent = [&]() -> long {
        skip();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) fail("expected exponent");
        return std::stol(text.substr(start, pos - start));
    };

    skip();
    if (pos >= text.size()) fail("empty expression");
    bool first = true;
    while (pos < text.size()) {
        skip();
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        // term: factors joined by '*', each a rational or x^e / t^e
        mpq_class c(sign);
        long xi = 0, tj = 0;
        while (true) {
            skip();
            if (pos >= text.size()) fail("expected factor");
            char ch = text[pos];
            if (ch == 'x' || ch == 't') {
                ++pos;
                long e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_exponent();
                }
                if (ch == 'x') {
                    if (e < 0) fail("negative x exponent");
                    xi += e;
                } else {
                    tj += e;
                }
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                size_t start = pos;
                while (pos < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                    ++pos;
                c *= parse_rational(text.substr(start, pos - start));
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (xi > std::numeric_limits<int>::max()) fail("x exponent too large");
        out = qadd(out, qmono(n, ring, c, int(xi), tj));
        first = false;
        skip();
    }
    return out;
}

std::string quantum_str(const QuantumClass& a) {
    if (a.coeff.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : a.coeff) {
        mpq_class v = c;
        bool neg = v < 0;
        if (!out.empty())
            out += neg ? " - " : " + ";
        else if (neg)
            out += "-";
        if (neg) v = -v;
        std::string term;
        if (v != 1 || (key.first == 0 && key.second == 0)) term = v.get_str();
        if (key.first != 0) {
            if (!term.empty()) term += "*";
            term += key.first == 1 ? "x" : "x^" + std::to_string(key.first);
        }
        if (key.second != 0) {
            if (!term.empty()) term += "*";
            term += key.second == 1 ? "t" : "t^" + std::to_string(key.second);
        }
        out += term;
    }
    return out;
}

}  // namespace spectra
