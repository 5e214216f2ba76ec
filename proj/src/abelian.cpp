#include "spectra/abelian.hpp"

#include <stdexcept>

namespace spectra {

NormalForm normal_form(const FgAbelianGroup& G) {
    SnfDecomposition s = smith_normal_form(G.relations);
    NormalForm nf;
    int r = 0;
    int n = std::min(s.D.rows, s.D.cols);
    for (int i = 0; i < n; ++i) {
        if (s.D.at(i, i) == 0) break;
        ++r;
        if (s.D.at(i, i) >= 2) nf.invariants.push_back(s.D.at(i, i));
    }
    nf.rank = G.ngens - r;
    return nf;
}

bool hom_is_valid(const GroupHom& f) {
    if (f.matrix.rows != f.target.ngens || f.matrix.cols != f.source.ngens) return false;
    SnfSolver tgt(f.target.relations);
    for (int j = 0; j < f.source.relations.cols; ++j)
        if (!tgt.solve(mat_vec(f.matrix, f.source.relations.col(j)))) return false;
    return true;
}

bool homs_equal(const GroupHom& f, const GroupHom& g) {
    if (f.matrix.rows != g.matrix.rows || f.matrix.cols != g.matrix.cols) return false;
    SnfSolver tgt(f.target.relations);
    for (int j = 0; j < f.matrix.cols; ++j) {
        std::vector<mpz_class> d(f.matrix.rows);
        for (int i = 0; i < f.matrix.rows; ++i) d[i] = f.matrix.at(i, j) - g.matrix.at(i, j);
        if (!tgt.solve(d)) return false;
    }
    return true;
}

GroupHom hom_compose(const GroupHom& g, const GroupHom& f) {
    return {f.source, g.target, mat_mul(g.matrix, f.matrix)};
}

// Generators x of Z^scols with M x inside colLattice(T): x-parts of ker[M | T].
static IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& T) {
    IntMatrix K0 = SnfSolver(hstack(M, T)).kernel();
    IntMatrix K(M.cols, K0.cols);
    for (int i = 0; i < M.cols; ++i)
        for (int j = 0; j < K0.cols; ++j) K.at(i, j) = K0.at(i, j);
    return K;
}

Subgroup hom_image(const GroupHom& f) {
    // image generated by the f-images of source generators; its relations are
    // exactly the coefficient vectors pulled back into the target lattice
    IntMatrix K = preimage_lattice(f.matrix, f.target.relations);
    return {FgAbelianGroup(f.source.ngens, K), f.matrix};
}

Subgroup hom_kernel(const GroupHom& f) {
    IntMatrix K = preimage_lattice(f.matrix, f.target.relations);
    // classes of K-columns generate ker(f) in the source group; their
    // relations are combinations landing in the source relation lattice
    IntMatrix R = preimage_lattice(K, f.source.relations);
    return {FgAbelianGroup(K.cols, R), K};
}

FgAbelianGroup hom_cokernel(const GroupHom& f) {
    return {f.target.ngens, hstack(f.target.relations, f.matrix)};
}

ExtGroup ext_object(const FgAbelianGroup& A) {
    // lattice basis of the relations: columns d_i * U^{-1} e_i from the SNF.
    // U^{-1} is recovered by solving U X = I rowwise-free via the unimodular
    // structure; cheaper: U^{-1} = V' where smith gives U A V = D, so
    // A V = U^{-1} D and the first r columns of A V are the basis.
    SnfDecomposition s = smith_normal_form(A.relations);
    int r = 0;
    int n = std::min(s.D.rows, s.D.cols);
    while (r < n && s.D.at(r, r) != 0) ++r;
    IntMatrix AV = mat_mul(A.relations, s.V);
    IntMatrix B(A.ngens, r);
    for (int i = 0; i < A.ngens; ++i)
        for (int j = 0; j < r; ++j) B.at(i, j) = AV.at(i, j);
    return {FgAbelianGroup(r, B.transpose()), B};
}

GroupHom ext_map(const GroupHom& f, const ExtGroup& ext_src, const ExtGroup& ext_tgt) {
    // chain-map lift phi0: resolution(source) -> resolution(target) with
    // B_tgt * phi0 = f * B_src, solved columnwise; Ext map is its transpose.
    const IntMatrix& Bs = ext_src.resolution;
    const IntMatrix& Bt = ext_tgt.resolution;
    SnfSolver tgt(Bt);
    IntMatrix phi0(Bt.cols, Bs.cols);
    for (int j = 0; j < Bs.cols; ++j) {
        auto x = tgt.solve(mat_vec(f.matrix, Bs.col(j)));
        if (!x) throw std::logic_error("ext_map: hom does not respect relations");
        phi0.set_col(j, *x);
    }
    return {ext_tgt.group, ext_src.group, phi0.transpose()};
}

GroupHom ext_map(const GroupHom& f) {
    return ext_map(f, ext_object(f.source), ext_object(f.target));
}

bool image_lattices_equal(const GroupHom& f, const GroupHom& g) {
    if (f.target.ngens != g.target.ngens) throw std::invalid_argument("image_lattices_equal: target mismatch");
    return hermite_basis(hstack(f.matrix, f.target.relations)) ==
           hermite_basis(hstack(g.matrix, g.target.relations));
}

}  // namespace spectra
