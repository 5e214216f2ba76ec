#include "spectra/spectral.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace spectra {

SpectralValue sv_add(const SpectralValue& a, const SpectralValue& b) {
    if (a.kind == SpectralValue::FINITE && b.kind == SpectralValue::FINITE)
        return SpectralValue::of(a.v + b.v);
    if ((a.kind == SpectralValue::NEG_INF && b.kind == SpectralValue::POS_INF) ||
        (a.kind == SpectralValue::POS_INF && b.kind == SpectralValue::NEG_INF))
        throw std::invalid_argument("indeterminate sum of opposite infinities");
    if (a.kind != SpectralValue::FINITE) return a;
    return b;
}

SpectralValue sv_sub(const SpectralValue& a, const SpectralValue& b) {
    SpectralValue nb = b;
    if (nb.kind == SpectralValue::NEG_INF)
        nb = SpectralValue::pos_inf();
    else if (nb.kind == SpectralValue::POS_INF)
        nb = SpectralValue::neg_inf();
    else
        nb.v = -nb.v;
    return sv_add(a, nb);
}

SpectralValue spectral_invariant(const Analyzer& an, const HomologyClass& a) {
    if (a.level_index != an.last_index())
        throw std::invalid_argument("spectral_invariant expects a full-level class");
    if (class_is_zero(an, a)) return SpectralValue::neg_inf();
    for (int idx = 0; idx <= an.last_index(); ++idx)
        if (in_level_image(an, a, idx)) return SpectralValue::of(an.critical()[idx]);
    throw std::logic_error("nonzero class missing from the full-level image");
}

static mpz_class lcm_denominators(const std::vector<mpq_class>& v, mpz_class k) {
    for (const auto& q : v) k = lcm(k, q.get_den());
    return k;
}

static std::vector<mpz_class> sorted_divisors(const mpz_class& n) {
    // trial-division factorization; bounds here are tiny (cleared denominators)
    mpz_class m = abs(n);
    std::vector<std::pair<mpz_class, int>> fac;
    for (mpz_class p = 2; p * p <= m; p == 2 ? p = 3 : p += 2) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e) fac.push_back({p, e});
    }
    if (m > 1) fac.push_back({m, 1});
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

static HomologyClass scale_class(const HomologyClass& a, const mpz_class& k) {
    HomologyClass b = a;
    for (auto& c : b.coords) c *= mpq_class(k);
    return b;
}

// does k*a land in Im(H(tau_q) -> H(full)) over Z (tau_idx = -1 means: is 0)?
static bool multiple_reaches(const Analyzer& an, const HomologyClass& a, const mpz_class& k,
                             int tau_idx) {
    HomologyClass ka = scale_class(a, k);
    if (tau_idx < 0) return class_is_zero(an, ka);
    return in_level_image(an, ka, tau_idx);
}

DepthReport spectral_depth(const Analyzer& an, const HomologyClass& a) {
    if (a.ring.kind != RingKind::Z) throw std::invalid_argument("spectral_depth works over Z");
    if (class_is_zero(an, a)) throw std::invalid_argument("spectral_depth: zero class");
    DepthReport r;
    r.c_z = spectral_invariant(an, a);
    HomologyClass aq = change_ring_class(an, a, ring_Q());
    r.c_q = spectral_invariant(an, aq);
    r.beta = sv_sub(r.c_z, r.c_q);

    int k = a.degree, last = an.last_index();
    const Presentation& PF = an.full_homology(ring_Z(), k);
    std::vector<int> pos(an.complex().generators.size(), -1);
    for (size_t i = 0; i < PF.chain_basis.size(); ++i) pos[PF.chain_basis[i]] = int(i);
    auto chain = chain_of(an, a);
    std::vector<mpq_class> x_local(PF.chain_basis.size());
    for (size_t g = 0; g < chain.size(); ++g)
        if (chain[g] != 0) x_local[pos[g]] = chain[g];
    const IntMatrix& B1 = an.boundary_matrix(k + 1, last);

    int tau_idx = -1;
    if (r.c_q.kind == SpectralValue::NEG_INF) {
        // torsion class: x is a rational boundary, clear the bounding chain
        auto delta = SnfSolver(B1).solve_rational(x_local);
        if (!delta) throw std::logic_error("rationally trivial class without bounding chain");
        r.lcm_bound = lcm_denominators(*delta, 1);
    } else {
        tau_idx = an.level_index(Level::at(r.c_q.v));
        const Presentation& PQ = an.homology(ring_Q(), k, tau_idx);
        // x = (cycle included from tau) + boundary, solved over Q
        IntMatrix A(int(PF.chain_basis.size()), PQ.group.ngens + B1.cols);
        for (int j = 0; j < PQ.group.ngens; ++j)
            for (size_t i = 0; i < PQ.chain_basis.size(); ++i)
                A.at(pos[PQ.chain_basis[i]], j) = PQ.cycles.at(int(i), j);
        for (int j = 0; j < B1.cols; ++j)
            for (int i = 0; i < B1.rows; ++i) A.at(i, PQ.group.ngens + j) = B1.at(i, j);
        auto sol = SnfSolver(A).solve_rational(x_local);
        if (!sol) throw std::logic_error("c_Q level does not express the class");
        std::vector<mpq_class> y(PF.chain_basis.size());
        for (int j = 0; j < PQ.group.ngens; ++j)
            for (size_t i = 0; i < PQ.chain_basis.size(); ++i)
                if (PQ.cycles.at(int(i), j) != 0)
                    y[pos[PQ.chain_basis[i]]] += mpq_class(PQ.cycles.at(int(i), j)) * (*sol)[j];
        r.lcm_bound = lcm_denominators(y, 1);
        std::vector<mpq_class> delta(sol->begin() + PQ.group.ngens, sol->end());
        r.lcm_bound = lcm_denominators(delta, r.lcm_bound);
    }

    for (const mpz_class& d : sorted_divisors(r.lcm_bound))
        if (multiple_reaches(an, a, d, tau_idx)) { r.witness = d; return r; }
    throw std::logic_error("lcm bound failed to certify the infimum");
}

// true when restriction kills every torsion functional of level s, i.e. the
// map Ext(H(s)) -> Ext(H(t)) is zero, t <= s
static bool ext_map_vanishes(const Analyzer& an, int degree, int t, int s) {
    GroupHom f = an.induced_hom(ring_Z(), degree, t, s);
    GroupHom e = ext_map(f, an.ext_at(degree, t), an.ext_at(degree, s));
    return hermite_basis(hstack(e.matrix, e.target.relations)) ==
           hermite_basis(e.target.relations);
}

SpectralValue torsion_depth(const Analyzer& an, int degree) {
    int last = an.last_index();
    if (last < 0) return SpectralValue::of(0);
    const auto& crit = an.critical();
    std::vector<mpq_class> cand{0};
    for (int i = 0; i <= last; ++i)
        for (int j = i + 1; j <= last; ++j) cand.push_back(crit[j] - crit[i]);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::map<std::pair<int, int>, bool> memo;
    auto dies = [&](int t, int s) {
        auto it = memo.find({t, s});
        if (it == memo.end())
            it = memo.emplace(std::make_pair(t, s), ext_map_vanishes(an, degree, t, s)).first;
        return it->second;
    };
    for (const mpq_class& kappa : cand) {
        bool ok = true;
        for (int t = 0; t <= last && ok; ++t)
            ok = dies(t, an.level_index(Level::at(crit[t] + kappa)));
        if (ok) return SpectralValue::of(kappa);
    }
    // torsion in the limit homology never dies under restriction
    return SpectralValue::pos_inf();
}

SpectralValue torsion_depth(const Analyzer& an) {
    SpectralValue best = SpectralValue::of(0);
    for (int d = 0; d <= an.complex().top_degree; ++d) {
        SpectralValue b = torsion_depth(an, d);
        if (best < b) best = b;
    }
    return best;
}

std::map<int, SpectralValue> torsion_depth_all(const Analyzer& an) {
    std::map<int, SpectralValue> m;
    for (int d = 0; d <= an.complex().top_degree; ++d) m[d] = torsion_depth(an, d);
    return m;
}

SpectralValue spectral_norm(const Analyzer& an, const Analyzer& dual_an, const HomologyClass& a,
                            const HomologyClass& a_dual) {
    if (class_is_zero(an, a) || class_is_zero(dual_an, a_dual))
        throw std::invalid_argument("spectral_norm: zero class");
    return sv_add(spectral_invariant(an, a), spectral_invariant(dual_an, a_dual));
}

mpq_class pd_pairing(const Analyzer& dual_an, const Analyzer& an, const HomologyClass& z,
                     const HomologyClass& w) {
    const FilteredComplex& C = an.complex();
    const FilteredComplex& D = dual_an.complex();
    if (C.generators.size() != D.generators.size() || C.top_degree != D.top_degree)
        throw std::invalid_argument("pd_pairing: complexes are not dual to each other");
    if (!(z.ring == w.ring)) throw std::invalid_argument("pd_pairing: ring mismatch");
    if (z.degree + w.degree != C.top_degree)
        throw std::invalid_argument("pd_pairing: degrees do not pair");
    auto zc = chain_of(dual_an, z), wc = chain_of(an, w);
    mpq_class s = 0;
    for (size_t i = 0; i < zc.size(); ++i) s += zc[i] * wc[i];
    if (z.ring.kind == RingKind::Zmod) s = mod_reduce(mpz_class(s.get_num()), z.ring.modulus);
    return s;
}

// global square boundary matrix of a complex
static IntMatrix global_boundary(const FilteredComplex& C) {
    int n = int(C.generators.size());
    IntMatrix B(n, n);
    for (int j = 0; j < n; ++j)
        for (const auto& [t, c] : C.boundary[j]) B.at(t, j) = c;
    return B;
}

static void check_chain_map(const FilteredComplex& F, const FilteredComplex& G,
                            const IntMatrix& phi, const mpq_class& shift, const char* name,
                            std::vector<std::string>& errs) {
    int nf = int(F.generators.size()), ng = int(G.generators.size());
    if (phi.rows != ng || phi.cols != nf) {
        errs.push_back(std::string(name) + ": matrix shape mismatch");
        return;
    }
    for (int j = 0; j < nf; ++j)
        for (int i = 0; i < ng; ++i) {
            if (phi.at(i, j) == 0) continue;
            if (G.generators[i].degree != F.generators[j].degree)
                errs.push_back(std::string(name) + ": degree broken at " + F.generators[j].id +
                               " -> " + G.generators[i].id);
            if (G.generators[i].action > F.generators[j].action + shift)
                errs.push_back(std::string(name) + ": action shift exceeded at " +
                               F.generators[j].id + " -> " + G.generators[i].id);
        }
    if (!(mat_mul(global_boundary(G), phi) == mat_mul(phi, global_boundary(F))))
        errs.push_back(std::string(name) + ": does not commute with the differential");
}

// matrix of the map induced on full homology in one degree
static std::optional<IntMatrix> induced_on_full(const Analyzer& from, const Analyzer& to,
                                                const IntMatrix& phi, int degree) {
    const Presentation& PF = from.full_homology(ring_Z(), degree);
    const Presentation& PT = to.full_homology(ring_Z(), degree);
    IntMatrix M(PT.group.ngens, PF.group.ngens);
    for (int j = 0; j < PF.group.ngens; ++j) {
        std::vector<mpq_class> chain(from.complex().generators.size());
        for (size_t i = 0; i < PF.chain_basis.size(); ++i)
            chain[PF.chain_basis[i]] = mpq_class(PF.cycles.at(int(i), j));
        std::vector<mpq_class> img(to.complex().generators.size());
        for (size_t g = 0; g < chain.size(); ++g)
            if (chain[g] != 0)
                for (int i = 0; i < phi.rows; ++i)
                    if (phi.at(i, int(g)) != 0) img[i] += mpq_class(phi.at(i, int(g))) * chain[g];
        auto cls = class_of_chain(to, ring_Z(), degree, to.last_index(), img);
        if (!cls) return std::nullopt;
        for (int i = 0; i < PT.group.ngens; ++i) M.at(i, j) = mpz_class(cls->coords[i]);
    }
    return M;
}

std::vector<std::string> validate_interleaving(const Interleaving& I) {
    std::vector<std::string> errs;
    for (auto& e : validate(I.F)) errs.push_back("F: " + e);
    for (auto& e : validate(I.G)) errs.push_back("G: " + e);
    if (I.s1 < 0 || I.s2 < 0) errs.push_back("shifts must be nonnegative");
    if (!errs.empty()) return errs;
    check_chain_map(I.F, I.G, I.forward, I.s1, "forward", errs);
    check_chain_map(I.G, I.F, I.backward, I.s2, "backward", errs);
    if (!errs.empty()) return errs;

    Analyzer af(I.F), ag(I.G);
    for (int d = 0; d <= I.F.top_degree; ++d) {
        auto mf = induced_on_full(af, ag, I.forward, d);
        auto mb = induced_on_full(ag, af, I.backward, d);
        if (!mf || !mb) {
            errs.push_back("chain map image is not a cycle in degree " + std::to_string(d));
            continue;
        }
        GroupHom fwd{af.full_homology(ring_Z(), d).group, ag.full_homology(ring_Z(), d).group, *mf};
        GroupHom bwd{ag.full_homology(ring_Z(), d).group, af.full_homology(ring_Z(), d).group, *mb};
        GroupHom idF{fwd.source, fwd.source, IntMatrix::identity(fwd.source.ngens)};
        GroupHom idG{bwd.source, bwd.source, IntMatrix::identity(bwd.source.ngens)};
        if (!homs_equal(hom_compose(bwd, fwd), idF) || !homs_equal(hom_compose(fwd, bwd), idG))
            errs.push_back("full homology maps are not mutually inverse in degree " +
                           std::to_string(d));
    }
    return errs;
}

Interleaving make_test_interleaving(const FilteredComplex& C, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x1f2e3d4c5b6a7988ULL);
    Interleaving I;
    I.F = C;
    I.G = C;
    int n = int(C.generators.size());
    I.forward = IntMatrix::identity(n);
    I.backward = IntMatrix::identity(n);
    I.s1 = I.s2 = 0;
    if (n == 0) return I;

    if (rng() % 2 == 0) {
        // uniform action shift
        long num = long(rng() % 9) - 4, den = 1 + long(rng() % 3);
        mpq_class c(num, den);
        c.canonicalize();
        for (auto& g : I.G.generators) g.action += c;
        if (c > 0) I.s1 = c; else I.s2 = -c;
        return I;
    }
    // move one generator within its admissible action window
    int g = int(rng() % n);
    mpq_class old = C.generators[g].action;
    bool has_lo = false, has_hi = false;
    mpq_class lo, hi;
    for (const auto& [t, c] : C.boundary[g]) {
        (void)c;
        if (!has_lo || C.generators[t].action > lo) lo = C.generators[t].action;
        has_lo = true;
    }
    for (int w = 0; w < n; ++w)
        for (const auto& [t, c] : C.boundary[w]) {
            (void)c;
            if (t != g) continue;
            if (!has_hi || C.generators[w].action < hi) hi = C.generators[w].action;
            has_hi = true;
        }
    if (!has_lo) lo = old - 2;
    if (!has_hi) hi = old + 2;
    mpq_class frac(1 + long(rng() % 3), 4);  // 1/4, 1/2, 3/4 across the window
    mpq_class fresh = lo + (hi - lo) * frac;
    I.G.generators[g].action = fresh;
    if (fresh > old) I.s1 = fresh - old;
    if (fresh < old) I.s2 = old - fresh;
    return I;
}

}  // namespace spectra
