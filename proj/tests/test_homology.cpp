#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/homology.hpp"

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

// dimension of a Z/p homology presentation (p prime): all of it is p-torsion
int dim_modp(const Presentation& P, long p) {
    NormalForm nf = normal_form(P.group);
    CHECK(nf.rank == 0);
    for (const auto& d : nf.invariants) CHECK(d == p);
    return int(nf.invariants.size());
}

int count_div(const NormalForm& nf, long p) {
    int c = 0;
    for (const auto& d : nf.invariants)
        if (d % p == 0) ++c;
    return c;
}

std::vector<mpz_class> torsion_part(const NormalForm& nf) { return nf.invariants; }

}  // namespace

TEST_CASE("levels and slices") {
    Analyzer an(e2());
    CHECK(an.critical() == std::vector<mpq_class>{0, 2, 5});
    CHECK(an.last_index() == 2);
    CHECK(an.level_index(Level::full()) == 2);
    CHECK(an.level_index(Level::at(mpq_class(5, 2))) == 1);
    CHECK(an.level_index(Level::at(2)) == 1);
    CHECK(an.level_index(Level::at(-1)) == -1);
    CHECK(an.level_index(Level::at(7)) == 2);

    // out-of-range degrees and empty sublevels give the trivial presentation
    CHECK(an.homology(ring_Z(), -1, 2).group.ngens == 0);
    CHECK(an.homology(ring_Z(), 5, 2).group.ngens == 0);
    CHECK(an.homology(ring_Z(), 0, -1).group.ngens == 0);

    const IntMatrix& d1 = an.boundary_matrix(1, 2);
    REQUIRE(d1.rows == 1);
    REQUIRE(d1.cols == 2);
    CHECK(d1.at(0, 0) == 2);
    CHECK(d1.at(0, 1) == 1);
    CHECK(an.boundary_matrix(1, 1).cols == 1);
    CHECK(an.boundary_matrix(1, 0).cols == 0);
}

TEST_CASE("integral homology of the first fixture") {
    Analyzer an(e1());
    const Presentation& h0 = an.full_homology(ring_Z(), 0);
    CHECK(h0.chain_basis == std::vector<int>{0, 1});
    CHECK(h0.group.ngens == 2);
    NormalForm nf0 = normal_form(h0.group);
    CHECK(nf0.rank == 1);
    CHECK(nf0.invariants.empty());
    CHECK(an.full_homology(ring_Z(), 1).group.ngens == 0);

    CHECK(normal_form(an.homology(ring_Z(), 0, 0).group) == NormalForm{1, {}});
    CHECK(normal_form(an.homology(ring_Z(), 0, 1).group) == NormalForm{2, {}});

    // u includes as (1, 0); v's class is not in the level-0 image over Z
    const IntMatrix& inc = an.induced_matrix(ring_Z(), 0, 0, 2);
    REQUIRE(inc.rows == 2);
    REQUIRE(inc.cols == 1);
    CHECK(inc.at(0, 0) == 1);
    CHECK(inc.at(1, 0) == 0);

    HomologyClass v = class_from_coords(an, ring_Z(), 0, 2, qv({0, 1}));
    CHECK(!class_is_zero(an, v));
    CHECK(!in_level_image(an, v, 0));
    CHECK(in_level_image(an, v, 1));
    HomologyClass v2 = class_from_coords(an, ring_Z(), 0, 2, qv({0, 2}));
    CHECK(in_level_image(an, v2, 0));  // 2[v] = [u] - (u - 2v)
    HomologyClass rel = class_from_coords(an, ring_Z(), 0, 2, qv({1, -2}));
    CHECK(class_is_zero(an, rel));

    // over Q the level-0 image already contains [v]
    HomologyClass vq = change_ring_class(an, v, ring_Q());
    CHECK(in_level_image(an, vq, 0));
    CHECK(chain_of(an, vq) == chain_of(an, v));

    // over Z/2 it does not; over Z/3 it does
    HomologyClass v_2 = change_ring_class(an, v, ring_mod(2));
    CHECK(!in_level_image(an, v_2, 0));
    CHECK(in_level_image(an, v_2, 1));
    HomologyClass v_3 = change_ring_class(an, v, ring_mod(3));
    CHECK(in_level_image(an, v_3, 0));

    CHECK(normal_form(an.full_homology(ring_mod(2), 0).group) == NormalForm{0, {2}});
}

TEST_CASE("integral homology of the second fixture") {
    Analyzer an(e2());
    CHECK(normal_form(an.homology(ring_Z(), 0, 0).group) == NormalForm{1, {}});
    CHECK(normal_form(an.homology(ring_Z(), 0, 1).group) == NormalForm{0, {2}});
    CHECK(normal_form(an.homology(ring_Z(), 0, 2).group) == NormalForm{0, {}});
    CHECK(normal_form(an.homology(ring_Z(), 1, 1).group) == NormalForm{0, {}});

    // reduction Z<y> -> Z/2<y> as the induced map between the presentations
    GroupHom red = an.induced_hom(ring_Z(), 0, 0, 1);
    CHECK(hom_is_valid(red));
    REQUIRE(red.matrix.rows == 1);
    CHECK(red.matrix.at(0, 0) == 1);
    CHECK(!class_is_zero(an, class_from_coords(an, ring_Z(), 0, 1, qv({1}))));
    CHECK(class_is_zero(an, class_from_coords(an, ring_Z(), 0, 1, qv({2}))));

    // H_1(full) = Z generated by x - 2w
    const Presentation& h1 = an.full_homology(ring_Z(), 1);
    REQUIRE(h1.group.ngens == 1);
    CHECK(normal_form(h1.group) == NormalForm{1, {}});
    auto a = class_of_chain(an, ring_Z(), 1, 2, qv({0, 1, -2}));
    REQUIRE(a.has_value());
    CHECK(!class_is_zero(an, *a));
    CHECK(abs(mpz_class(a->coords[0])) == 1);
    CHECK(chain_of(an, *a) == qv({0, 1, -2}));

    // x is not a cycle over Z but is one mod 2, and spans H_1(tau = 2; Z/2)
    CHECK(!class_of_chain(an, ring_Z(), 1, 2, qv({0, 1, 0})).has_value());
    auto xm = class_of_chain(an, ring_mod(2), 1, 2, qv({0, 1, 0}));
    REQUIRE(xm.has_value());
    CHECK(!class_is_zero(an, *xm));
    CHECK(normal_form(an.full_homology(ring_mod(2), 1).group) == NormalForm{0, {2}});
    CHECK(normal_form(an.homology(ring_mod(2), 1, 1).group) == NormalForm{0, {2}});

    // mod 2 the generator of H_1 is [x], which the tau = 2 level already hits
    HomologyClass am = change_ring_class(an, *a, ring_mod(2));
    CHECK(!class_is_zero(an, am));
    CHECK(!in_level_image(an, am, 0));
    CHECK(in_level_image(an, am, 1));
    // mod 3 (and rationally) nothing of degree 1 exists below the top level
    HomologyClass a3 = change_ring_class(an, *a, ring_mod(3));
    CHECK(!in_level_image(an, a3, 1));
    HomologyClass aq = change_ring_class(an, *a, ring_Q());
    CHECK(!in_level_image(an, aq, 1));

    // unsupported chain: w lives above tau = 2
    CHECK(!class_of_chain(an, ring_Z(), 1, 1, qv({0, 1, -2})).has_value());
}

TEST_CASE("coefficient change validity") {
    Analyzer an(e2());
    HomologyClass y1 = class_from_coords(an, ring_Z(), 0, 1, qv({1}));
    HomologyClass y14 = change_ring_class(an, y1, ring_mod(14));
    HomologyClass y7 = change_ring_class(an, y14, ring_mod(7));
    CHECK(y7.ring.modulus == 7);
    CHECK(class_is_zero(an, change_ring_class(an, y14, ring_mod(2))) ==
          class_is_zero(an, change_ring_class(an, y1, ring_mod(2))));
    CHECK_THROWS_AS(change_ring_class(an, y14, ring_mod(4)), std::invalid_argument);
    CHECK_THROWS_AS(change_ring_class(an, y14, ring_Q()), std::invalid_argument);
    // reduced coordinates stay in [0, m)
    HomologyClass big = class_from_coords(an, ring_mod(14), 0, 1, qv({29}));
    CHECK(big.coords[0] == 1);
}

TEST_CASE("induced maps compose along levels") {
    for (std::uint64_t seed : {3u, 11u, 19u, 27u}) {
        RandomParams p;
        p.torsion_bias = double(seed % 5) / 5.0;
        Analyzer an(random_complex(seed, p));
        int last = an.last_index();
        int mid = last / 2;
        for (const Ring& ring : {ring_Z(), ring_mod(6)}) {
            for (int d = 0; d <= an.complex().top_degree; ++d) {
                GroupHom a = an.induced_hom(ring, d, 0, mid);
                GroupHom b = an.induced_hom(ring, d, mid, last);
                GroupHom c = an.induced_hom(ring, d, 0, last);
                CHECK(hom_is_valid(a));
                CHECK(hom_is_valid(b));
                CHECK(homs_equal(hom_compose(b, a), c));
            }
        }
    }
}

TEST_CASE("rank, torsion and duality across the corpus") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        RandomParams p;
        p.torsion_bias = double(seed % 5) / 5.0;
        FilteredComplex C = random_complex(seed, p);
        Analyzer an(C);
        Analyzer dn(dual_complex(C));
        CAPTURE(seed);

        int D = C.top_degree;
        long chi_gens = 0, chi_rank = 0;
        std::vector<NormalForm> z(D + 2);
        std::vector<int> qr(D + 1);
        for (int k = 0; k <= D; ++k) {
            z[k] = normal_form(an.full_homology(ring_Z(), k).group);
            qr[k] = q_rank(an.full_homology(ring_Q(), k));
            CHECK(z[k].rank == qr[k]);
            chi_rank += (k % 2 ? -1 : 1) * qr[k];
        }
        for (const auto& g : C.generators) chi_gens += (g.degree % 2 ? -1 : 1);
        CHECK(chi_gens == chi_rank);

        for (long pr : {2L, 3L}) {
            for (int k = 0; k <= D; ++k) {
                int expect = z[k].rank + count_div(z[k], pr) + (k ? count_div(z[k - 1], pr) : 0);
                CHECK(dim_modp(an.full_homology(ring_mod(pr), k), pr) == expect);
            }
        }

        for (int k = 0; k <= D; ++k) {
            CHECK(q_rank(dn.full_homology(ring_Q(), D - k)) == qr[k]);
            // torsion of H_k matches torsion of H_{D-k-1} of the dual
            std::vector<mpz_class> t = torsion_part(z[k]);
            std::vector<mpz_class> td = D - k - 1 >= 0
                ? torsion_part(normal_form(dn.full_homology(ring_Z(), D - k - 1).group))
                : std::vector<mpz_class>{};
            CHECK(t == td);
        }
    }
}
