#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/spectral.hpp"

using namespace spectra;

namespace {

FilteredComplex e1() {
    return make_complex(1,
                        {{"u", 0, mpq_class(0)}, {"v", 0, mpq_class(1)}, {"x", 1, mpq_class(3)}},
                        {{"x", {{"u", 1}, {"v", -2}}}});
}

FilteredComplex e2() {
    return make_complex(1,
                        {{"y", 0, mpq_class(0)}, {"x", 1, mpq_class(2)}, {"w", 1, mpq_class(5)}},
                        {{"x", {{"y", 2}}}, {"w", {{"y", 1}}}});
}

std::vector<mpq_class> qv(std::vector<long> v) {
    return std::vector<mpq_class>(v.begin(), v.end());
}

// order of [a] in the quotient by (level image + relations): the least k >= 1
// with k*a in the lattice, or 0 if none.  Independent route to inf_k c(k a).
mpz_class level_order(const Analyzer& an, const HomologyClass& a, int idx) {
    const Presentation& F = an.full_homology(ring_Z(), a.degree);
    IntMatrix L = idx < 0 ? F.group.relations
                          : hstack(an.induced_matrix(ring_Z(), a.degree, idx, an.last_index()),
                                   F.group.relations);
    std::vector<mpz_class> v(a.coords.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_class(a.coords[i]);
    return element_order_mod_lattice(L, v).value_or(0);
}

SpectralValue inf_multiples_oracle(const Analyzer& an, const HomologyClass& a) {
    if (level_order(an, a, -1) != 0) return SpectralValue::neg_inf();
    for (int idx = 0; idx <= an.last_index(); ++idx)
        if (level_order(an, a, idx) != 0) return SpectralValue::of(an.critical()[idx]);
    return SpectralValue::pos_inf();
}

}  // namespace

TEST_CASE("extended values order and print") {
    SpectralValue ni = SpectralValue::neg_inf(), pi = SpectralValue::pos_inf();
    SpectralValue half = SpectralValue::of(mpq_class(1, 2));
    CHECK(ni < half);
    CHECK(half < pi);
    CHECK(ni < pi);
    CHECK(ni.str() == "-inf");
    CHECK(pi.str() == "inf");
    CHECK(half.str() == "1/2");
    CHECK(sv_add(half, half) == SpectralValue::of(1));
    CHECK(sv_add(ni, half) == ni);
    CHECK(sv_sub(half, ni) == pi);
    CHECK_THROWS_AS(sv_sub(ni, ni), std::invalid_argument);
    CHECK_THROWS_AS(sv_add(ni, pi), std::invalid_argument);
}

TEST_CASE("spectral invariants of the first fixture") {
    Analyzer an(e1());
    HomologyClass v = class_from_coords(an, ring_Z(), 0, 2, qv({0, 1}));
    HomologyClass v2 = class_from_coords(an, ring_Z(), 0, 2, qv({0, 2}));
    HomologyClass zero = class_from_coords(an, ring_Z(), 0, 2, qv({1, -2}));

    CHECK(spectral_invariant(an, v) == SpectralValue::of(1));
    CHECK(spectral_invariant(an, v2) == SpectralValue::of(0));
    CHECK(spectral_invariant(an, zero) == SpectralValue::neg_inf());
    CHECK(spectral_invariant(an, change_ring_class(an, v, ring_Q())) == SpectralValue::of(0));
    CHECK(spectral_invariant(an, change_ring_class(an, v, ring_mod(2))) == SpectralValue::of(1));
    CHECK(spectral_invariant(an, change_ring_class(an, v, ring_mod(3))) == SpectralValue::of(0));
    CHECK(spectral_invariant(an, change_ring_class(an, v, ring_mod(14))) == SpectralValue::of(1));

    DepthReport d = spectral_depth(an, v);
    CHECK(d.c_z == SpectralValue::of(1));
    CHECK(d.c_q == SpectralValue::of(0));
    CHECK(d.beta == SpectralValue::of(1));
    CHECK(d.witness == 2);
    CHECK(d.lcm_bound % d.witness == 0);
    CHECK(inf_multiples_oracle(an, v) == d.c_q);
    CHECK(level_order(an, v, 0) == d.witness);

    CHECK(spectral_depth(an, v2).beta == SpectralValue::of(0));
    CHECK(spectral_depth(an, v2).witness == 1);
    CHECK_THROWS_AS(spectral_depth(an, zero), std::invalid_argument);

    CHECK(torsion_depth(an, 0) == SpectralValue::of(0));
    CHECK(torsion_depth(an, 1) == SpectralValue::of(0));
    CHECK(torsion_depth(an) == SpectralValue::of(0));
}

TEST_CASE("norm and pairing of the first fixture") {
    FilteredComplex C = e1();
    Analyzer an(C), dn(dual_complex(C));
    HomologyClass v = class_from_coords(an, ring_Z(), 0, 2, qv({0, 1}));
    HomologyClass u = class_from_coords(an, ring_Z(), 0, 2, qv({1, 0}));
    auto ad = class_of_chain(dn, ring_Z(), 1, 2, qv({2, 1, 0}));  // 2u* + v*
    REQUIRE(ad.has_value());
    CHECK(!class_is_zero(dn, *ad));

    CHECK(spectral_invariant(dn, *ad) == SpectralValue::of(0));
    CHECK(spectral_norm(an, dn, v, *ad) == SpectralValue::of(1));
    CHECK(spectral_norm(an, dn, change_ring_class(an, v, ring_Q()),
                        change_ring_class(dn, *ad, ring_Q())) == SpectralValue::of(0));
    CHECK_THROWS_AS(spectral_norm(an, dn, class_from_coords(an, ring_Z(), 0, 2, qv({1, -2})), *ad),
                    std::invalid_argument);

    CHECK(pd_pairing(dn, an, *ad, u) == 2);
    CHECK(pd_pairing(dn, an, *ad, v) == 1);
    CHECK(pd_pairing(dn, an, change_ring_class(dn, *ad, ring_mod(2)),
                     change_ring_class(an, u, ring_mod(2))) == 0);
    CHECK_THROWS_AS(pd_pairing(dn, an, *ad, *ad), std::invalid_argument);
}

TEST_CASE("spectral invariants of the second fixture") {
    FilteredComplex C = e2();
    Analyzer an(C), dn(dual_complex(C));
    auto a = class_of_chain(an, ring_Z(), 1, 2, qv({0, 1, -2}));
    REQUIRE(a.has_value());

    CHECK(spectral_invariant(an, *a) == SpectralValue::of(5));
    CHECK(spectral_invariant(an, change_ring_class(an, *a, ring_Q())) == SpectralValue::of(5));
    CHECK(spectral_invariant(an, change_ring_class(an, *a, ring_mod(3))) == SpectralValue::of(5));
    // mod 2 the class becomes [x], already present at tau = 2
    CHECK(spectral_invariant(an, change_ring_class(an, *a, ring_mod(2))) == SpectralValue::of(2));

    DepthReport d = spectral_depth(an, *a);
    CHECK(d.c_z == SpectralValue::of(5));
    CHECK(d.c_q == SpectralValue::of(5));
    CHECK(d.beta == SpectralValue::of(0));
    CHECK(d.witness == 1);

    // y's class in the tau = 2 quotient is 2-torsion: beta jumps to +inf
    HomologyClass y0 = class_from_coords(an, ring_Z(), 0, 2, qv({1}));
    CHECK(class_is_zero(an, y0));  // full H_0 is trivial: relations 2y and y

    CHECK(torsion_depth(an, 0) == SpectralValue::of(3));
    CHECK(torsion_depth(an, 1) == SpectralValue::of(0));
    CHECK(torsion_depth(an) == SpectralValue::of(3));
    auto all = torsion_depth_all(an);
    CHECK(all[0] == SpectralValue::of(3));
    CHECK(all[1] == SpectralValue::of(0));

    // dual side: [x*] has c_Z = -2 but c_Q = -5, depth 3 with witness 2
    HomologyClass xd = class_from_coords(dn, ring_Z(), 0, 2, qv({1, 0}));
    DepthReport dd = spectral_depth(dn, xd);
    CHECK(dd.c_z == SpectralValue::of(-2));
    CHECK(dd.c_q == SpectralValue::of(-5));
    CHECK(dd.beta == SpectralValue::of(3));
    CHECK(dd.witness == 2);
    CHECK(inf_multiples_oracle(dn, xd) == dd.c_q);

    CHECK(spectral_norm(an, dn, *a, xd) == SpectralValue::of(3));
    CHECK(pd_pairing(dn, an, xd, *a) == mpq_class(mpz_class(a->coords[0])));  // +-1
    CHECK(torsion_depth(dn) == SpectralValue::of(0));

    // depth identity on this pair: gamma_Z = beta + beta_dual + gamma_Q
    SpectralValue gq = spectral_norm(an, dn, change_ring_class(an, *a, ring_Q()),
                                     change_ring_class(dn, xd, ring_Q()));
    CHECK(gq == SpectralValue::of(0));
    CHECK(spectral_norm(an, dn, *a, xd) == sv_add(sv_add(d.beta, dd.beta), gq));
}

TEST_CASE("torsion depth reacts to sliding the killer generator") {
    // moving w from action 5 to 4 shortens the Z/2 window [2, 5) to [2, 4)
    FilteredComplex G = make_complex(
        1, {{"y", 0, mpq_class(0)}, {"x", 1, mpq_class(2)}, {"w", 1, mpq_class(4)}},
        {{"x", {{"y", 2}}}, {"w", {{"y", 1}}}});
    Analyzer an(G);
    CHECK(torsion_depth(an, 0) == SpectralValue::of(2));
    CHECK(torsion_depth(an) == SpectralValue::of(2));
}

TEST_CASE("torsion surviving to the limit homology has infinite depth") {
    // d(x) = 5y leaves Z/5 in the limit: no level restriction ever kills it
    FilteredComplex P = make_complex(
        1, {{"y", 0, mpq_class(0)}, {"x", 1, mpq_class(3)}}, {{"x", {{"y", 5}}}});
    Analyzer an(P);
    CHECK(torsion_depth(an, 0) == SpectralValue::pos_inf());
    CHECK(torsion_depth(an, 1) == SpectralValue::of(0));
    CHECK(torsion_depth(an) == SpectralValue::pos_inf());

    // dual of the first fixture: a Z/2 lives on [-1, 0) and dies at 0
    Analyzer dn(dual_complex(e1()));
    CHECK(torsion_depth(dn, 0) == SpectralValue::of(1));
    CHECK(torsion_depth(dn) == SpectralValue::of(1));
}

TEST_CASE("depth certificates agree with the order oracle on the corpus") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomParams p;
        p.torsion_bias = double(seed % 5) / 5.0;
        Analyzer an(random_complex(seed, p));
        CAPTURE(seed);
        for (int d = 0; d <= an.complex().top_degree; ++d) {
            const Presentation& H = an.full_homology(ring_Z(), d);
            for (int j = 0; j < H.group.ngens; ++j) {
                std::vector<mpq_class> coords(H.group.ngens);
                coords[j] = 1;
                HomologyClass a = class_from_coords(an, ring_Z(), d, an.last_index(), coords);
                if (class_is_zero(an, a)) continue;
                DepthReport r = spectral_depth(an, a);
                CHECK(r.c_z == spectral_invariant(an, a));
                CHECK(inf_multiples_oracle(an, a) == r.c_q);
                CHECK(r.lcm_bound % r.witness == 0);
                // witness minimality: no smaller multiplier reaches the infimum
                if (r.c_q.kind == SpectralValue::NEG_INF) {
                    CHECK(level_order(an, a, -1) == r.witness);
                } else {
                    CHECK(level_order(an, a, an.level_index(Level::at(r.c_q.v))) == r.witness);
                }
                // scaling by the witness really lands at the infimum level
                HomologyClass ka = a;
                for (auto& c : ka.coords) c *= mpq_class(r.witness);
                CHECK(spectral_invariant(an, ka) == r.c_q);
                CHECK(r.c_q <= r.c_z);
            }
        }
    }
}

TEST_CASE("interleavings validate and bound the torsion depth drift") {
    // fixed pair: uniform shift of the second fixture by +1
    FilteredComplex F = e2(), G = e2();
    for (auto& g : G.generators) g.action += 1;
    Interleaving I{F, G, IntMatrix::identity(3), IntMatrix::identity(3), 1, 0};
    CHECK(validate_interleaving(I).empty());
    {
        Analyzer af(I.F), ag(I.G);
        SpectralValue bf = torsion_depth(af), bg = torsion_depth(ag);
        CHECK(bf.finite());
        CHECK(abs(bf.v - bg.v) <= I.s1 + I.s2);
    }

    // claiming a zero shift must fail: actions moved up by 1
    Interleaving bad = I;
    bad.s1 = 0;
    CHECK(!validate_interleaving(bad).empty());

    // the w: 5 -> 4 move with identity maps, shifts (0, 1): equality case
    FilteredComplex G2 = e2();
    G2.generators[2].action = 4;
    Interleaving J{F, G2, IntMatrix::identity(3), IntMatrix::identity(3), 0, 1};
    CHECK(validate_interleaving(J).empty());
    {
        Analyzer af(J.F), ag(J.G);
        SpectralValue bf = torsion_depth(af), bg = torsion_depth(ag);
        CHECK(bf.finite());
        CHECK(abs(bf.v - bg.v) == J.s1 + J.s2);
    }

    // maps that are not inverse on homology are rejected
    Interleaving Z{F, F, IntMatrix(3, 3), IntMatrix(3, 3), 0, 0};
    CHECK(!validate_interleaving(Z).empty());

    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomParams p;
        p.torsion_bias = double(seed % 5) / 5.0;
        FilteredComplex C = random_complex(seed, p);
        Interleaving K = make_test_interleaving(C, seed * 7 + 1);
        CAPTURE(seed);
        CHECK(validate_interleaving(K).empty());
        Analyzer af(K.F), ag(K.G);
        SpectralValue bf = torsion_depth(af), bg = torsion_depth(ag);
        CHECK(bf.finite() == bg.finite());
        if (bf.finite()) CHECK(abs(bf.v - bg.v) <= K.s1 + K.s2);
    }
}
