#include <algorithm>
#include <random>

#include "spectra/complex.hpp"

namespace spectra {

// All draws go through the raw engine so output is identical across standard
// library implementations.
namespace {

struct Draw {
    std::mt19937_64 rng;
    explicit Draw(std::uint64_t seed) : rng(seed) {}
    long upto(long n) { return long(rng() % std::uint64_t(n)); }  // [0, n)
    bool chance(double p) { return double(rng() % 10000) < p * 10000.0; }
    mpq_class rational(long span, long max_den) {
        long den = 1 + upto(max_den);
        mpq_class q(upto(span * den + 1), den);
        q.canonicalize();
        return q;
    }
};

}  // namespace

FilteredComplex random_complex(std::uint64_t seed, const RandomParams& params) {
    Draw d(seed);
    const long max_den = 4;
    std::vector<Generator> gens;
    std::vector<std::pair<int, std::pair<int, mpz_class>>> pairs;  // (x idx, (y idx, coeff))
    std::vector<int> room(params.max_degree + 1, params.gens_per_degree);

    auto add_gen = [&](int degree, const mpq_class& action) {
        gens.push_back({"g" + std::to_string(gens.size()), degree, action});
        return int(gens.size()) - 1;
    };

    // two-generator pieces d(x) = c*y across consecutive degrees
    for (int k = 0; k + 1 <= params.max_degree; ++k) {
        while (room[k] > 0 && room[k + 1] > 0 && d.chance(0.55)) {
            --room[k];
            --room[k + 1];
            mpq_class ay = d.rational(params.action_span, max_den);
            mpq_class ax = ay + d.rational(params.action_span / 2, max_den) +
                           mpq_class(1, 1 + d.upto(max_den));
            int y = add_gen(k, ay);
            int x = add_gen(k + 1, ax);
            mpz_class c;
            if (d.chance(params.torsion_bias))
                c = (2 + d.upto(5)) * (d.chance(0.5) ? 1 : -1);
            else
                c = d.upto(3) - 1;  // 0 or +-1
            if (c != 0) pairs.push_back({x, {y, c}});
        }
    }
    for (int k = 0; k <= params.max_degree; ++k)
        while (room[k]-- > 0) add_gen(k, d.rational(params.action_span, max_den));

    // shuffle file order, then rebuild the complex
    std::vector<int> perm(gens.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[d.upto(long(i))]);
    std::vector<int> pos(gens.size());
    for (size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = int(i);

    std::vector<Generator> shuffled;
    for (size_t i = 0; i < perm.size(); ++i) shuffled.push_back(gens[perm[i]]);
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, mpz_class>>>> diff;
    FilteredComplex C = make_complex(params.max_degree, shuffled, diff);
    for (const auto& [x, yc] : pairs)
        C.boundary[pos[x]].emplace_back(pos[yc.first], yc.second);

    // action-compatible changes of basis: hi += c * lo with action(lo) <
    // action(hi), same degree.  Keeps strict decrease and d*d = 0.
    int n = int(C.generators.size());
    for (int pass = 0; pass < 2 * n; ++pass) {
        int i = int(d.upto(n)), j = int(d.upto(n));
        if (i == j || C.generators[i].degree != C.generators[j].degree) continue;
        if (C.generators[i].action == C.generators[j].action) continue;
        int hi = C.generators[i].action > C.generators[j].action ? i : j;
        int lo = hi == i ? j : i;
        mpz_class c = d.upto(2) ? 1 : -1;
        if (d.chance(0.3)) c *= 2;
        // d(hi') = d(hi) + c * d(lo)
        std::map<int, mpz_class> acc;
        for (const auto& [t, v] : C.boundary[hi]) acc[t] += v;
        for (const auto& [t, v] : C.boundary[lo]) acc[t] += c * v;
        C.boundary[hi].clear();
        for (const auto& [t, v] : acc)
            if (v != 0) C.boundary[hi].emplace_back(t, v);
        // chains that hit hi now also hit lo with the opposite correction
        for (int w = 0; w < n; ++w) {
            mpz_class hit = 0;
            for (const auto& [t, v] : C.boundary[w])
                if (t == hi) hit = v;
            if (hit == 0) continue;
            std::map<int, mpz_class> acc2;
            for (const auto& [t, v] : C.boundary[w]) acc2[t] += v;
            acc2[lo] -= c * hit;
            C.boundary[w].clear();
            for (const auto& [t, v] : acc2)
                if (v != 0) C.boundary[w].emplace_back(t, v);
        }
    }
    return C;
}

}  // namespace spectra
