#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spectra/abelian.hpp"

using namespace spectra;

static IntMatrix make(int r, int c, const std::vector<long>& e) {
    IntMatrix M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M.at(i, j) = e[size_t(i) * c + j];
    return M;
}

static mpz_class group_order(const FgAbelianGroup& G) {
    NormalForm nf = normal_form(G);
    REQUIRE(nf.rank == 0);
    mpz_class n = 1;
    for (auto& d : nf.invariants) n *= d;
    return n;
}

TEST_CASE("normal form: pinned cases") {
    // Z^2 / <(2,0),(0,1)>  =  Z/2
    auto nf = normal_form({2, make(2, 2, {2, 0, 0, 1})});
    CHECK(nf.rank == 0);
    REQUIRE(nf.invariants.size() == 1);
    CHECK(nf.invariants[0] == 2);

    // Z^2 / <(1,-2)>  =  Z  (E1-style quotient)
    auto nf2 = normal_form({2, make(2, 1, {1, -2})});
    CHECK(nf2.rank == 1);
    CHECK(nf2.invariants.empty());

    // Z/6 + Z/4 has invariant chain (2, 12)
    auto nf3 = normal_form({2, make(2, 2, {6, 0, 0, 4})});
    CHECK(nf3.rank == 0);
    REQUIRE(nf3.invariants.size() == 2);
    CHECK(nf3.invariants[0] == 2);
    CHECK(nf3.invariants[1] == 12);

    auto nf4 = normal_form(FgAbelianGroup::free_group(3));
    CHECK(nf4.rank == 3);
}

TEST_CASE("hom kernel/image/cokernel: Z/2 -> Z/4 by 1 -> 2") {
    GroupHom f{{1, make(1, 1, {2})}, {1, make(1, 1, {4})}, make(1, 1, {2})};
    REQUIRE(hom_is_valid(f));

    // element-level oracle: phi(x) = 2x on Z/2 -> Z/4
    int ker_count = 0;
    std::vector<bool> hit(4, false);
    for (int x = 0; x < 2; ++x) {
        int y = (2 * x) % 4;
        if (y == 0) ++ker_count;
        hit[y] = true;
    }
    int im_count = 0;
    for (bool b : hit) im_count += b;
    CHECK(ker_count == 1);
    CHECK(im_count == 2);

    CHECK(group_order(hom_kernel(f).group) == ker_count);
    CHECK(group_order(hom_image(f).group) == im_count);
    auto coker = normal_form(hom_cokernel(f));
    CHECK(coker.rank == 0);
    REQUIRE(coker.invariants.size() == 1);
    CHECK(coker.invariants[0] == 2);
}

TEST_CASE("hom validity catches bad maps") {
    // 1 -> 1 does not define a hom Z/2 -> Z/4
    GroupHom bad{{1, make(1, 1, {2})}, {1, make(1, 1, {4})}, make(1, 1, {1})};
    CHECK(!hom_is_valid(bad));
}

TEST_CASE("ext of cyclic groups") {
    // Ext(Z, Z) = 0
    auto e0 = ext_object(FgAbelianGroup::free_group(1));
    CHECK(normal_form(e0.group) == NormalForm{0, {}});
    // Ext(Z/n, Z) = Z/n
    for (long n : {2L, 6L, 15L}) {
        auto e = ext_object({1, make(1, 1, {n})});
        auto nf = normal_form(e.group);
        CHECK(nf.rank == 0);
        REQUIRE(nf.invariants.size() == 1);
        CHECK(nf.invariants[0] == n);
    }
}

TEST_CASE("ext is the torsion part: random presentations") {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 100; ++t) {
        int g = 1 + int(rng() % 4), r = int(rng() % 5);
        IntMatrix R(g, r);
        for (auto& v : R.a) v = long(rng() % 13) - 6;
        FgAbelianGroup G{g, R};
        NormalForm nf = normal_form(G);
        NormalForm ex = normal_form(ext_object(G).group);
        CHECK(ex.rank == 0);
        CHECK(ex.invariants == nf.invariants);
    }
}

TEST_CASE("ext_map of Z/2 -> Z/4 (1 -> 2) is reduction mod 2") {
    GroupHom f{{1, make(1, 1, {2})}, {1, make(1, 1, {4})}, make(1, 1, {2})};
    GroupHom ef = ext_map(f);
    // Ext(Z/4) = Z/4 -> Ext(Z/2) = Z/2, generator to generator
    CHECK(normal_form(ef.source) == NormalForm{0, {4}});
    CHECK(normal_form(ef.target) == NormalForm{0, {2}});
    REQUIRE(ef.matrix.rows == 1);
    REQUIRE(ef.matrix.cols == 1);
    CHECK(mod_reduce(ef.matrix.at(0, 0), 2) == 1);
    CHECK(hom_is_valid(ef));
}

// Random valid homs: pick M and source relations R freely, then let the target
// relations contain M*R by construction (plus padding to keep groups finite).
static GroupHom random_hom(std::mt19937_64& rng, long pad) {
    int g = 1 + int(rng() % 3), h = 1 + int(rng() % 3), r = int(rng() % 3);
    IntMatrix R(g, r);
    for (auto& v : R.a) v = long(rng() % 9) - 4;
    IntMatrix padS(g, g);
    for (int i = 0; i < g; ++i) padS.at(i, i) = pad;
    FgAbelianGroup src{g, hstack(R, padS)};
    IntMatrix M(h, g);
    for (auto& v : M.a) v = long(rng() % 9) - 4;
    IntMatrix padT(h, h);
    for (int i = 0; i < h; ++i) padT.at(i, i) = pad;
    FgAbelianGroup tgt{h, hstack(mat_mul(M, src.relations), padT)};
    return {src, tgt, M};
}

TEST_CASE("kernel-image multiplicativity on random finite homs") {
    std::mt19937_64 rng(5150);
    for (int t = 0; t < 120; ++t) {
        GroupHom f = random_hom(rng, 4 + long(rng() % 5));
        REQUIRE(hom_is_valid(f));
        CHECK(group_order(hom_kernel(f).group) * group_order(hom_image(f).group) ==
              group_order(f.source));
        // embed maps are valid homs into the ambient groups
        auto im = hom_image(f);
        GroupHom incl{im.group, f.target, im.embed};
        CHECK(hom_is_valid(incl));
        auto ker = hom_kernel(f);
        GroupHom inclk{ker.group, f.source, ker.embed};
        CHECK(hom_is_valid(inclk));
        // kernel elements really die in the target
        SnfSolver tgt(f.target.relations);
        for (int j = 0; j < ker.embed.cols; ++j)
            CHECK(tgt.solve(mat_vec(f.matrix, ker.embed.col(j))).has_value());
    }
}

TEST_CASE("ext_map functoriality on random composable homs") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 80; ++t) {
        GroupHom f = random_hom(rng, 6);
        // g out of f.target: same construction, source fixed to f.target
        int h2 = 1 + int(rng() % 3);
        IntMatrix M2(h2, f.target.ngens);
        for (auto& v : M2.a) v = long(rng() % 9) - 4;
        IntMatrix padT(h2, h2);
        for (int i = 0; i < h2; ++i) padT.at(i, i) = 6;
        GroupHom g{f.target, {h2, hstack(mat_mul(M2, f.target.relations), padT)}, M2};
        REQUIRE(hom_is_valid(g));

        GroupHom lhs = ext_map(hom_compose(g, f));
        GroupHom rhs = hom_compose(ext_map(f), ext_map(g));
        CHECK(hom_is_valid(lhs));
        CHECK(homs_equal(lhs, rhs));
    }
}

TEST_CASE("image_lattices_equal") {
    FgAbelianGroup z4{1, make(1, 1, {4})};
    FgAbelianGroup z2{1, make(1, 1, {2})};
    GroupHom a{z2, z4, make(1, 1, {2})};
    GroupHom b{z2, z4, make(1, 1, {-2})};
    GroupHom c{z2, z4, make(1, 1, {0})};
    CHECK(image_lattices_equal(a, b));
    CHECK(!image_lattices_equal(a, c));
    // adding target relations to a column never changes the image
    GroupHom d{z2, z4, make(1, 1, {6})};
    CHECK(image_lattices_equal(a, d));
}
