#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "spectra/abelian.hpp"
#include "spectra/complex.hpp"

namespace spectra {

// Sublevel parameter: finite cutoff or the full complex.
struct Level {
    std::optional<mpq_class> tau;
    static Level full() { return {}; }
    static Level at(const mpq_class& t) { return Level{t}; }
};

// Homology of one sublevel in one degree over one ring, with explicit cycle
// representatives.  Over Z/m the relations already contain the m-fold columns,
// so `group` is the honest underlying abelian group; over Q read `group`
// rationally (relations span a subspace).
struct Presentation {
    Ring ring;
    int degree = 0;
    int level_index = -1;          // index into critical(); -1 = empty sublevel
    FgAbelianGroup group;
    IntMatrix cycles;              // chain coords of each generator, rows follow chain_basis
    std::vector<int> chain_basis;  // global generator indices of the sublevel degree slice
};

struct HomologyClass {
    Ring ring;
    int degree = 0;
    int level_index = -1;
    std::vector<mpq_class> coords;  // integral unless ring = Q
};

// Per-complex computation cache.  The complex is immutable; all accessors are
// lazy and synchronized, so one Analyzer can serve several threads.
class Analyzer {
  public:
    explicit Analyzer(FilteredComplex C);

    const FilteredComplex& complex() const { return C_; }
    const std::vector<mpq_class>& critical() const { return crit_; }
    int last_index() const { return int(crit_.size()) - 1; }
    // largest index with critical()[i] <= tau (-1 if below all); full -> last
    int level_index(const Level& l) const;
    Level level_of(int idx) const;

    // local boundary matrix degree -> degree-1 of the sublevel at idx
    const IntMatrix& boundary_matrix(int degree, int idx) const;

    const Presentation& homology(const Ring& ring, int degree, int idx) const;
    const Presentation& full_homology(const Ring& ring, int degree) const;

    // H(idx1) -> H(idx2) on presentation generators (always integral)
    const IntMatrix& induced_matrix(const Ring& ring, int degree, int idx1, int idx2) const;
    GroupHom induced_hom(const Ring& ring, int degree, int idx1, int idx2) const;

    // solver for [induced(idx -> last) | relations(last)], i.e. membership in
    // Im(H(idx) -> H(full)) inside the full presentation
    const SnfSolver& image_solver(const Ring& ring, int degree, int idx) const;

    // Ext(H(Z, degree, idx), Z), cached with its resolution
    const ExtGroup& ext_at(int degree, int idx) const;

  private:
    FilteredComplex C_;
    std::vector<mpq_class> crit_;
    std::vector<std::vector<int>> by_degree_;  // global indices per degree, file order

    struct Key {
        int ring, degree, idx, idx2;
        std::string mod;
        bool operator<(const Key& o) const {
            return std::tie(ring, degree, idx, idx2, mod) <
                   std::tie(o.ring, o.degree, o.idx, o.idx2, o.mod);
        }
    };
    static Key key(const Ring& r, int degree, int idx, int idx2 = -2);

    mutable std::mutex mu_;
    mutable std::map<Key, std::unique_ptr<IntMatrix>> boundaries_;
    mutable std::map<Key, std::unique_ptr<Presentation>> homs_;
    mutable std::map<Key, std::unique_ptr<SnfSolver>> cycle_solvers_;
    mutable std::map<Key, std::unique_ptr<IntMatrix>> induced_;
    mutable std::map<Key, std::unique_ptr<SnfSolver>> image_solvers_;
    mutable std::map<Key, std::unique_ptr<ExtGroup>> exts_;

    const SnfSolver& cycle_solver(const Ring& ring, int degree, int idx) const;
    std::vector<int> basis_at(int degree, int idx) const;
};

// ---- classes -------------------------------------------------------------

HomologyClass class_from_coords(const Analyzer& an, const Ring& ring, int degree, int idx,
                                std::vector<mpq_class> coords);
bool class_is_zero(const Analyzer& an, const HomologyClass& a);

// dense global chain vector representing the class
std::vector<mpq_class> chain_of(const Analyzer& an, const HomologyClass& a);

// express a global chain as a class at (ring, degree, idx); nullopt when the
// chain is unsupported on the sublevel or is not a cycle over the ring
std::optional<HomologyClass> class_of_chain(const Analyzer& an, const Ring& ring, int degree,
                                            int idx, const std::vector<mpq_class>& chain);

// coefficient change along Z -> Q, Z -> Z/m, Z/m -> Z/d (d | m)
HomologyClass change_ring_class(const Analyzer& an, const HomologyClass& a, const Ring& to);

// is `a` (a full-level class) in the image of H(idx) -> H(full)?
bool in_level_image(const Analyzer& an, const HomologyClass& a, int idx);

// rank of a presentation read over Q
int q_rank(const Presentation& P);

}  // namespace spectra
