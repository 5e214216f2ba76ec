#pragma once

#include "spectra/int_matrix.hpp"

namespace spectra {

// Finitely generated abelian group presented as Z^ngens / colLattice(relations).
// Relation columns need not be independent.
struct FgAbelianGroup {
    int ngens = 0;
    IntMatrix relations;  // ngens x nrels

    FgAbelianGroup() = default;
    FgAbelianGroup(int n, IntMatrix rels) : ngens(n), relations(std::move(rels)) {}
    static FgAbelianGroup free_group(int n) { return {n, IntMatrix(n, 0)}; }
};

// Z^rank  +  Z/d1 + ... + Z/dk  with 2 <= d1 | d2 | ... | dk.
struct NormalForm {
    int rank = 0;
    std::vector<mpz_class> invariants;
    bool operator==(const NormalForm& o) const = default;
};

NormalForm normal_form(const FgAbelianGroup& G);

// Hom given on generators; columns are images of source generators.
struct GroupHom {
    FgAbelianGroup source, target;
    IntMatrix matrix;  // target.ngens x source.ngens
};

// f sends every source relation into the target relation lattice?
bool hom_is_valid(const GroupHom& f);

// Do f and g (same source/target presentations) agree as homs, i.e. do the
// matrices differ by target relations columnwise?
bool homs_equal(const GroupHom& f, const GroupHom& g);

GroupHom hom_compose(const GroupHom& g, const GroupHom& f);  // g after f

// A subgroup of some ambient presented group: abstract presentation plus the
// generator images in the ambient group's generators.
struct Subgroup {
    FgAbelianGroup group;
    IntMatrix embed;  // ambient.ngens x group.ngens
};

Subgroup hom_image(const GroupHom& f);
Subgroup hom_kernel(const GroupHom& f);
FgAbelianGroup hom_cokernel(const GroupHom& f);

// Ext(A, Z) presented as coker(B^T) for a free resolution
// 0 -> Z^r --B--> Z^ngens -> A -> 0 with B a lattice basis of the relations.
struct ExtGroup {
    FgAbelianGroup group;  // r gens, relations B^T (r x ngens)
    IntMatrix resolution;  // B, deterministic per input presentation
};

ExtGroup ext_object(const FgAbelianGroup& A);

// Contravariant induced map Ext(target f, Z) -> Ext(source f, Z), computed by
// lifting f to the chosen resolutions and transposing the lift.
GroupHom ext_map(const GroupHom& f);
// Same, reusing precomputed ext_object results (must match f's endpoints).
GroupHom ext_map(const GroupHom& f, const ExtGroup& ext_src, const ExtGroup& ext_tgt);

// Im(f) == Im(g) as subgroups of the shared target presentation.
bool image_lattices_equal(const GroupHom& f, const GroupHom& g);

}  // namespace spectra
