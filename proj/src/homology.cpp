#include "spectra/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace spectra {

Analyzer::Analyzer(FilteredComplex C) : C_(std::move(C)), crit_(critical_values(C_)) {
    by_degree_.resize(C_.top_degree + 2);
    for (size_t i = 0; i < C_.generators.size(); ++i) {
        int d = C_.generators[i].degree;
        if (d >= 0 && d <= C_.top_degree) by_degree_[d].push_back(int(i));
    }
}

int Analyzer::level_index(const Level& l) const {
    if (!l.tau) return last_index();
    int idx = -1;
    while (idx + 1 <= last_index() && crit_[idx + 1] <= *l.tau) ++idx;
    return idx;
}

Level Analyzer::level_of(int idx) const {
    if (idx < 0 || idx > last_index()) return Level::full();
    return Level::at(crit_[idx]);
}

Analyzer::Key Analyzer::key(const Ring& r, int degree, int idx, int idx2) {
    return {int(r.kind), degree, idx, idx2,
            r.kind == RingKind::Zmod ? r.modulus.get_str() : std::string()};
}

std::vector<int> Analyzer::basis_at(int degree, int idx) const {
    std::vector<int> v;
    if (degree < 0 || degree > C_.top_degree || idx < 0) return v;
    const mpq_class& tau = crit_[idx];
    for (int g : by_degree_[degree])
        if (C_.generators[g].action <= tau) v.push_back(g);
    return v;
}

const IntMatrix& Analyzer::boundary_matrix(int degree, int idx) const {
    std::lock_guard<std::mutex> lock(mu_);
    Key k = key(ring_Z(), degree, idx);
    auto it = boundaries_.find(k);
    if (it != boundaries_.end()) return *it->second;

    std::vector<int> rows = basis_at(degree - 1, idx), cols = basis_at(degree, idx);
    std::vector<int> rowpos(C_.generators.size(), -1);
    for (size_t i = 0; i < rows.size(); ++i) rowpos[rows[i]] = int(i);
    auto M = std::make_unique<IntMatrix>(int(rows.size()), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [t, c] : C_.boundary[cols[j]]) M->at(rowpos[t], int(j)) = c;
    return *boundaries_.emplace(k, std::move(M)).first->second;
}

const Presentation& Analyzer::homology(const Ring& ring, int degree, int idx) const {
    idx = std::min(idx, last_index());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = homs_.find(key(ring, degree, idx));
        if (it != homs_.end()) return *it->second;
    }
    auto P = std::make_unique<Presentation>();
    P->ring = ring;
    P->degree = degree;
    P->level_index = idx;
    P->chain_basis = basis_at(degree, idx);

    const IntMatrix& d_k = boundary_matrix(degree, idx);
    const IntMatrix& d_k1 = boundary_matrix(degree + 1, idx);
    P->cycles = kernel_basis(d_k, ring);

    SnfSolver zsolve(P->cycles);
    int nrel = d_k1.cols + (ring.kind == RingKind::Zmod ? int(P->chain_basis.size()) : 0);
    IntMatrix rels(P->cycles.cols, nrel);
    for (int j = 0; j < d_k1.cols; ++j) {
        auto x = zsolve.solve(d_k1.col(j));
        if (!x) throw std::logic_error("boundary column outside the cycle lattice");
        rels.set_col(j, *x);
    }
    if (ring.kind == RingKind::Zmod) {
        // m * e_i is a relation for every chain generator
        std::vector<mpz_class> me(P->chain_basis.size());
        for (size_t i = 0; i < P->chain_basis.size(); ++i) {
            std::fill(me.begin(), me.end(), 0);
            me[i] = ring.modulus;
            auto x = zsolve.solve(me);
            if (!x) throw std::logic_error("m-fold chain outside the mod-m cycle lattice");
            rels.set_col(d_k1.cols + int(i), *x);
        }
    }
    P->group = FgAbelianGroup(P->cycles.cols, std::move(rels));

    std::lock_guard<std::mutex> lock(mu_);
    return *homs_.emplace(key(ring, degree, idx), std::move(P)).first->second;
}

const Presentation& Analyzer::full_homology(const Ring& ring, int degree) const {
    return homology(ring, degree, last_index());
}

const SnfSolver& Analyzer::cycle_solver(const Ring& ring, int degree, int idx) const {
    const Presentation& P = homology(ring, degree, idx);
    std::lock_guard<std::mutex> lock(mu_);
    Key k = key(ring, degree, idx);
    auto it = cycle_solvers_.find(k);
    if (it != cycle_solvers_.end()) return *it->second;
    return *cycle_solvers_.emplace(k, std::make_unique<SnfSolver>(P.cycles)).first->second;
}

const IntMatrix& Analyzer::induced_matrix(const Ring& ring, int degree, int idx1, int idx2) const {
    idx1 = std::min(idx1, last_index());
    idx2 = std::min(idx2, last_index());
    if (idx1 > idx2) throw std::invalid_argument("induced_matrix: levels out of order");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = induced_.find(key(ring, degree, idx1, idx2));
        if (it != induced_.end()) return *it->second;
    }
    const Presentation& P1 = homology(ring, degree, idx1);
    const Presentation& P2 = homology(ring, degree, idx2);
    const SnfSolver& solver = cycle_solver(ring, degree, idx2);

    std::vector<int> pos(C_.generators.size(), -1);
    for (size_t i = 0; i < P2.chain_basis.size(); ++i) pos[P2.chain_basis[i]] = int(i);
    auto M = std::make_unique<IntMatrix>(P2.group.ngens, P1.group.ngens);
    for (int j = 0; j < P1.group.ngens; ++j) {
        std::vector<mpz_class> chain(P2.chain_basis.size());
        for (size_t i = 0; i < P1.chain_basis.size(); ++i)
            chain[pos[P1.chain_basis[i]]] = P1.cycles.at(int(i), j);
        auto x = solver.solve(chain);
        if (!x) throw std::logic_error("included cycle missed the cycle lattice");
        M->set_col(j, *x);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return *induced_.emplace(key(ring, degree, idx1, idx2), std::move(M)).first->second;
}

GroupHom Analyzer::induced_hom(const Ring& ring, int degree, int idx1, int idx2) const {
    return {homology(ring, degree, idx1).group, homology(ring, degree, idx2).group,
            induced_matrix(ring, degree, idx1, idx2)};
}

const SnfSolver& Analyzer::image_solver(const Ring& ring, int degree, int idx) const {
    idx = std::min(idx, last_index());
    const IntMatrix& M = induced_matrix(ring, degree, idx, last_index());
    const Presentation& F = full_homology(ring, degree);
    std::lock_guard<std::mutex> lock(mu_);
    Key k = key(ring, degree, idx);
    auto it = image_solvers_.find(k);
    if (it != image_solvers_.end()) return *it->second;
    return *image_solvers_.emplace(k, std::make_unique<SnfSolver>(hstack(M, F.group.relations)))
                .first->second;
}

const ExtGroup& Analyzer::ext_at(int degree, int idx) const {
    const Presentation& P = homology(ring_Z(), degree, idx);
    std::lock_guard<std::mutex> lock(mu_);
    Key k = key(ring_Z(), degree, idx);
    auto it = exts_.find(k);
    if (it != exts_.end()) return *it->second;
    return *exts_.emplace(k, std::make_unique<ExtGroup>(ext_object(P.group))).first->second;
}

// ---- classes -------------------------------------------------------------

static void require_integral(const std::vector<mpq_class>& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) throw std::invalid_argument("integral coordinates required");
}

HomologyClass class_from_coords(const Analyzer& an, const Ring& ring, int degree, int idx,
                                std::vector<mpq_class> coords) {
    const Presentation& P = an.homology(ring, degree, idx);
    if (int(coords.size()) != P.group.ngens)
        throw std::invalid_argument("class coordinate count mismatch");
    if (ring.kind != RingKind::Q) require_integral(coords);
    if (ring.kind == RingKind::Zmod)
        for (auto& x : coords) x = mod_reduce(mpz_class(x), ring.modulus);
    return {ring, degree, P.level_index, std::move(coords)};
}

bool class_is_zero(const Analyzer& an, const HomologyClass& a) {
    const Presentation& P = an.homology(a.ring, a.degree, a.level_index);
    if (a.ring.kind == RingKind::Q)
        return solve_rational(P.group.relations, a.coords).has_value();
    std::vector<mpz_class> v(a.coords.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_class(a.coords[i]);
    return solve_integer(P.group.relations, v).has_value();
}

std::vector<mpq_class> chain_of(const Analyzer& an, const HomologyClass& a) {
    const Presentation& P = an.homology(a.ring, a.degree, a.level_index);
    std::vector<mpq_class> chain(an.complex().generators.size());
    for (size_t i = 0; i < P.chain_basis.size(); ++i)
        for (int j = 0; j < P.group.ngens; ++j)
            if (P.cycles.at(int(i), j) != 0)
                chain[P.chain_basis[i]] += mpq_class(P.cycles.at(int(i), j)) * a.coords[j];
    return chain;
}

std::optional<HomologyClass> class_of_chain(const Analyzer& an, const Ring& ring, int degree,
                                            int idx, const std::vector<mpq_class>& chain) {
    const Presentation& P = an.homology(ring, degree, idx);
    // support must sit inside the sublevel slice
    std::vector<int> pos(an.complex().generators.size(), -1);
    for (size_t i = 0; i < P.chain_basis.size(); ++i) pos[P.chain_basis[i]] = int(i);
    std::vector<mpq_class> local(P.chain_basis.size());
    for (size_t g = 0; g < chain.size(); ++g) {
        if (chain[g] == 0) continue;
        if (pos[g] < 0) return std::nullopt;
        local[pos[g]] = chain[g];
    }
    const IntMatrix& d_k = an.boundary_matrix(degree, idx);
    if (ring.kind == RingKind::Q) {
        std::vector<mpq_class> img(d_k.rows);
        for (int i = 0; i < d_k.rows; ++i)
            for (int j = 0; j < d_k.cols; ++j)
                if (d_k.at(i, j) != 0) img[i] += mpq_class(d_k.at(i, j)) * local[j];
        for (const auto& x : img)
            if (x != 0) return std::nullopt;  // not a cycle
        auto coords = SnfSolver(P.cycles).solve_rational(local);
        if (!coords) return std::nullopt;
        return HomologyClass{ring, degree, P.level_index, *coords};
    }
    require_integral(local);
    std::vector<mpz_class> c(local.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = mpz_class(local[i]);
    std::vector<mpz_class> img = mat_vec(d_k, c);
    for (const auto& x : img) {
        if (ring.kind == RingKind::Z && x != 0) return std::nullopt;
        if (ring.kind == RingKind::Zmod && mod_reduce(x, ring.modulus) != 0) return std::nullopt;
    }
    auto coords = SnfSolver(P.cycles).solve(c);
    if (!coords) return std::nullopt;
    std::vector<mpq_class> q(coords->begin(), coords->end());
    return class_from_coords(an, ring, degree, idx, std::move(q));
}

HomologyClass change_ring_class(const Analyzer& an, const HomologyClass& a, const Ring& to) {
    const Ring& from = a.ring;
    bool ok = (from.kind == RingKind::Z && to.kind == RingKind::Q) ||
              (from.kind == RingKind::Z && to.kind == RingKind::Zmod) ||
              (from.kind == RingKind::Zmod && to.kind == RingKind::Zmod &&
               from.modulus % to.modulus == 0);
    if (!ok) throw std::invalid_argument("unsupported coefficient change " + from.str() + " -> " + to.str());
    auto cls = class_of_chain(an, to, a.degree, a.level_index, chain_of(an, a));
    if (!cls) throw std::logic_error("coefficient change failed to express the chain");
    return *cls;
}

bool in_level_image(const Analyzer& an, const HomologyClass& a, int idx) {
    if (a.level_index != an.last_index())
        throw std::invalid_argument("in_level_image expects a full-level class");
    const SnfSolver& solver = an.image_solver(a.ring, a.degree, idx);
    if (a.ring.kind == RingKind::Q) return solver.solve_rational(a.coords).has_value();
    std::vector<mpz_class> v(a.coords.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_class(a.coords[i]);
    return solver.solve(v).has_value();
}

int q_rank(const Presentation& P) {
    return P.group.ngens - SnfSolver(P.group.relations).rank();
}

}  // namespace spectra
