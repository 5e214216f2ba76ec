#include "spectra/checks.hpp"

#include <algorithm>
#include <set>

namespace spectra {

namespace {

void put(CheckReport& r, const std::string& k, const std::string& v) {
    r.details.emplace_back(k, v);
}

std::string coords_str(const HomologyClass& a) {
    std::string s = "[";
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (i) s += ",";
        s += a.coords[i].get_str();
    }
    return s + "]";
}

std::vector<HomologyClass> nonzero_generator_classes(const Analyzer& an, const Ring& ring,
                                                     int degree) {
    std::vector<HomologyClass> out;
    const Presentation& P = an.full_homology(ring, degree);
    for (int j = 0; j < P.group.ngens; ++j) {
        std::vector<mpq_class> c(P.group.ngens);
        c[j] = 1;
        HomologyClass a = class_from_coords(an, ring, degree, an.last_index(), std::move(c));
        if (!class_is_zero(an, a)) out.push_back(std::move(a));
    }
    return out;
}

// least k >= 1 with k*a inside (level image + relations); 0 = no such k.
// idx = -1 uses relations alone (is some multiple of a zero?).
mpz_class level_order(const Analyzer& an, const HomologyClass& a, int idx) {
    const Presentation& F = an.full_homology(ring_Z(), a.degree);
    IntMatrix L = idx < 0 ? F.group.relations
                          : hstack(an.induced_matrix(ring_Z(), a.degree, idx, an.last_index()),
                                   F.group.relations);
    std::vector<mpz_class> v(a.coords.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_class(a.coords[i]);
    return element_order_mod_lattice(L, v).value_or(0);
}

// inf over k (restricted to p-free k when p > 1) of c_Z(k a), by level orders
SpectralValue inf_multiples(const Analyzer& an, const HomologyClass& a, long p = 1) {
    auto admits = [&](const mpz_class& g) { return g != 0 && (p == 1 || g % p != 0); };
    if (admits(level_order(an, a, -1))) return SpectralValue::neg_inf();
    for (int idx = 0; idx <= an.last_index(); ++idx)
        if (admits(level_order(an, a, idx))) return SpectralValue::of(an.critical()[idx]);
    return SpectralValue::pos_inf();
}

CheckReport finish(CheckReport r, int instances, int conclusive,
                   const std::vector<std::string>& viol) {
    put(r, "instances", std::to_string(instances));
    put(r, "conclusive", std::to_string(conclusive));
    put(r, "violations", std::to_string(viol.size()));
    if (!viol.empty()) {
        r.status = "fail";
        r.note = viol.front();
    } else if (conclusive == 0) {
        r.status = "inconclusive";
        if (r.note.empty()) r.note = "no class satisfied the hypotheses";
    } else {
        r.status = "pass";
    }
    return r;
}

// is the functional <a, -> nonzero on the image of level idx in degree kb?
bool functional_nonzero(const Analyzer& dn, const Analyzer& an, const HomologyClass& a,
                        const Ring& ring, int kb, int idx) {
    const Presentation& P = an.homology(ring, kb, idx);
    const IntMatrix& M = an.induced_matrix(ring, kb, idx, an.last_index());
    for (int j = 0; j < P.group.ngens; ++j) {
        std::vector<mpq_class> coords(M.rows);
        for (int i = 0; i < M.rows; ++i) coords[i] = mpq_class(M.at(i, j));
        HomologyClass b = class_from_coords(an, ring, kb, an.last_index(), std::move(coords));
        if (pd_pairing(dn, an, a, b) != 0) return true;
    }
    return false;
}

std::set<long> primes_of(const mpz_class& n0) {
    std::set<long> out;
    mpz_class n = abs(n0);
    for (mpz_class p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) out.insert(p.get_si());
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.insert(n.get_si());
    return out;
}

}  // namespace

CheckReport check_coeff_monotone(const Analyzer& an) {
    CheckReport r;
    r.check = "coeff-mono";
    std::vector<Ring> targets{ring_Q(), ring_mod(2), ring_mod(3), ring_mod(7), ring_mod(14)};
    int instances = 0, conclusive = 0;
    std::vector<std::string> viol;
    for (int d = 0; d <= an.complex().top_degree; ++d) {
        for (const HomologyClass& a : nonzero_generator_classes(an, ring_Z(), d)) {
            ++instances;
            SpectralValue cz = spectral_invariant(an, a);
            for (const Ring& R : targets) {
                SpectralValue cr = spectral_invariant(an, change_ring_class(an, a, R));
                if (!(cr <= cz))
                    viol.push_back("deg " + std::to_string(d) + " " + coords_str(a) + " over " +
                                   R.str() + ": " + cr.str() + " > " + cz.str());
            }
            HomologyClass a14 = change_ring_class(an, a, ring_mod(14));
            SpectralValue c14 = spectral_invariant(an, a14);
            for (long m : {2L, 7L}) {
                SpectralValue cm = spectral_invariant(an, change_ring_class(an, a14, ring_mod(m)));
                if (!(cm <= c14))
                    viol.push_back("deg " + std::to_string(d) + " " + coords_str(a) +
                                   " Z/14 -> Z/" + std::to_string(m) + ": " + cm.str() + " > " +
                                   c14.str());
            }
            ++conclusive;
        }
    }
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_z_vs_q(const Analyzer& an) {
    CheckReport r;
    r.check = "zq";
    int instances = 0, conclusive = 0;
    std::vector<std::string> viol;
    mpz_class max_witness = 1;
    for (int d = 0; d <= an.complex().top_degree; ++d) {
        for (const HomologyClass& a : nonzero_generator_classes(an, ring_Z(), d)) {
            ++instances;
            DepthReport rep = spectral_depth(an, a);
            std::string at = "deg " + std::to_string(d) + " " + coords_str(a);
            if (!(rep.c_q <= rep.c_z)) viol.push_back(at + ": infimum above c_Z");
            if (inf_multiples(an, a) != rep.c_q)
                viol.push_back(at + ": order oracle disagrees with c_Q = " + rep.c_q.str());
            if (rep.lcm_bound % rep.witness != 0)
                viol.push_back(at + ": witness outside its lcm bound");
            int tq = rep.c_q.kind == SpectralValue::NEG_INF ? -1
                                                            : an.level_index(Level::at(rep.c_q.v));
            if (level_order(an, a, tq) != rep.witness)
                viol.push_back(at + ": witness " + rep.witness.get_str() + " is not minimal");
            HomologyClass ka = a;
            for (auto& c : ka.coords) c *= mpq_class(rep.witness);
            if (!(spectral_invariant(an, ka) == rep.c_q))
                viol.push_back(at + ": witness multiple misses the infimum");
            max_witness = std::max(max_witness, rep.witness);
            ++conclusive;
        }
    }
    put(r, "max_witness", max_witness.get_str());
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_field_pd(const Analyzer& an, const Analyzer& dn) {
    CheckReport r;
    r.check = "pd-field";
    int D = an.complex().top_degree;
    int instances = 0, conclusive = 0;
    std::vector<std::string> viol;
    for (const Ring& K : {ring_Q(), ring_mod(2), ring_mod(3), ring_mod(7)}) {
        for (int k = 0; k <= D; ++k) {
            for (const HomologyClass& a : nonzero_generator_classes(dn, K, k)) {
                ++instances;
                SpectralValue lhs = spectral_invariant(dn, a);
                std::string at = K.str() + " deg " + std::to_string(k) + " " + coords_str(a);
                std::optional<mpq_class> rhs;
                for (int idx = 0; idx <= an.last_index() && !rhs; ++idx)
                    if (functional_nonzero(dn, an, a, K, D - k, idx)) rhs = an.critical()[idx];
                if (!rhs) {
                    viol.push_back(at + ": nonzero class pairs to nothing");
                } else if (!(lhs == SpectralValue::of(-*rhs))) {
                    viol.push_back(at + ": -c(dual) = " + sv_sub(SpectralValue::of(0), lhs).str() +
                                   " but first pairing level is " + rhs->get_str());
                } else {
                    ++conclusive;
                }
            }
        }
    }
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_corrected_pd(const Analyzer& an, const Analyzer& dn) {
    CheckReport r;
    r.check = "pd-z";
    int D = an.complex().top_degree;
    int instances = 0, conclusive = 0, equalities = 0;
    std::vector<std::string> viol;
    SpectralValue btor = torsion_depth(an);
    for (int k = 0; k <= D; ++k) {
        SpectralValue refined = torsion_depth(an, D - k - 1);
        for (const HomologyClass& a : nonzero_generator_classes(dn, ring_Z(), k)) {
            ++instances;
            std::string at = "deg " + std::to_string(k) + " " + coords_str(a);
            if (!functional_nonzero(dn, an, a, ring_Z(), D - k, an.last_index()))
                continue;  // torsion class: the functional vanishes identically
            std::optional<mpq_class> S;
            for (int idx = 0; idx <= an.last_index() && !S; ++idx)
                if (functional_nonzero(dn, an, a, ring_Z(), D - k, idx)) S = an.critical()[idx];
            SpectralValue sum = SpectralValue::of(spectral_invariant(dn, a).v + *S);
            if (sum.v < 0) viol.push_back(at + ": corrected sum " + sum.str() + " < 0");
            if (!(sum <= btor))
                viol.push_back(at + ": corrected sum " + sum.str() + " above depth " + btor.str());
            if (!(sum <= refined))
                viol.push_back(at + ": corrected sum " + sum.str() + " above refined depth " +
                               refined.str());
            if (sum == refined) ++equalities;
            ++conclusive;
        }
    }
    put(r, "equalities", std::to_string(equalities));
    if (conclusive == 0) r.note = "every class is torsion; the pairing functional vanishes";
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_prime_envelope(const Analyzer& an, const Analyzer& dn) {
    CheckReport r;
    r.check = "primes";
    std::set<long> torsion;
    for (const Analyzer* X : {&an, &dn}) {
        for (int d = 0; d <= X->complex().top_degree; ++d) {
            const IntMatrix& rels = X->full_homology(ring_Z(), d).group.relations;
            for (int idx = 0; idx <= X->last_index(); ++idx) {
                for (const auto& f : normal_form(X->homology(ring_Z(), d, idx).group).invariants)
                    for (long p : primes_of(f)) torsion.insert(p);
                IntMatrix obstruction =
                    hstack(X->induced_matrix(ring_Z(), d, idx, X->last_index()), rels);
                for (const auto& f : invariant_factors(smith_normal_form(obstruction)))
                    for (long p : primes_of(f)) torsion.insert(p);
            }
        }
    }
    // a class divisible by p in the free part of a level cokernel reduces to
    // zero there mod p without leaving any torsion trace; fold those primes in
    // so the outside prime is transparent for every tested class
    for (int d = 0; d <= an.complex().top_degree; ++d) {
        const IntMatrix& rels = an.full_homology(ring_Z(), d).group.relations;
        std::vector<SnfDecomposition> lattices;
        lattices.push_back(smith_normal_form(rels));
        for (int idx = 0; idx <= an.last_index(); ++idx)
            lattices.push_back(smith_normal_form(
                hstack(an.induced_matrix(ring_Z(), d, idx, an.last_index()), rels)));
        for (const HomologyClass& a : nonzero_generator_classes(an, ring_Z(), d)) {
            for (const SnfDecomposition& s : lattices) {
                int rank = 0;
                while (rank < std::min(s.D.rows, s.D.cols) && s.D.at(rank, rank) != 0) ++rank;
                mpz_class g = 0;
                for (int i = rank; i < s.U.rows; ++i) {
                    mpq_class w = 0;
                    for (int j = 0; j < s.U.cols; ++j)
                        w += mpq_class(s.U.at(i, j)) * a.coords[j];
                    g = gcd(g, w.get_num());
                }
                if (g != 0)
                    for (long p : primes_of(g)) torsion.insert(p);
            }
        }
    }

    long outside = 2;
    while (torsion.count(outside)) {
        ++outside;
        while (!primes_of(outside).count(outside)) ++outside;  // next prime
    }
    std::vector<long> P(torsion.begin(), torsion.end());
    P.push_back(outside);
    std::sort(P.begin(), P.end());
    std::string pstr;
    for (long p : P) pstr += (pstr.empty() ? "" : ",") + std::to_string(p);
    put(r, "P", "{" + pstr + "}");

    int instances = 0, conclusive = 0;
    std::vector<std::string> viol;
    for (int d = 0; d <= an.complex().top_degree; ++d) {
        for (const HomologyClass& a : nonzero_generator_classes(an, ring_Z(), d)) {
            ++instances;
            std::string at = "deg " + std::to_string(d) + " " + coords_str(a);
            SpectralValue cz = spectral_invariant(an, a);
            SpectralValue cq = spectral_invariant(an, change_ring_class(an, a, ring_Q()));
            SpectralValue lo = SpectralValue::pos_inf(), hi = SpectralValue::neg_inf();
            SpectralValue at_outside;
            for (long p : P) {
                SpectralValue cp =
                    spectral_invariant(an, change_ring_class(an, a, ring_mod(p)));
                lo = std::min(lo, cp);
                hi = std::max(hi, cp);
                if (p == outside) at_outside = cp;
            }
            if (!(lo <= cq)) viol.push_back(at + ": inf over P above c_Q");
            if (!(cq <= hi)) viol.push_back(at + ": c_Q above sup over P");
            if (!(hi <= cz)) viol.push_back(at + ": sup over P above c_Z");
            if (!(at_outside == cq))
                viol.push_back(at + ": c at the outside prime " + std::to_string(outside) +
                               " is " + at_outside.str() + ", want c_Q = " + cq.str());
            ++conclusive;
        }
    }
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_refinement(const Analyzer& an) {
    CheckReport r;
    r.check = "refine";
    int instances = 0, conclusive = 0;
    std::vector<std::string> viol;
    for (long p : {2L, 3L}) {
        for (int d = 0; d <= an.complex().top_degree; ++d) {
            for (const HomologyClass& a : nonzero_generator_classes(an, ring_Z(), d)) {
                ++instances;
                std::string at = "p=" + std::to_string(p) + " deg " + std::to_string(d) + " " +
                                 coords_str(a);
                SpectralValue cq = spectral_invariant(an, change_ring_class(an, a, ring_Q()));
                SpectralValue cp =
                    spectral_invariant(an, change_ring_class(an, a, ring_mod(p)));
                SpectralValue inf_all = inf_multiples(an, a);
                SpectralValue inf_pfree = inf_multiples(an, a, p);
                if (!(inf_all == cq)) {
                    viol.push_back(at + ": infimum " + inf_all.str() + " differs from c_Q");
                    continue;
                }
                if (cq < cp) {
                    if (!(inf_all < inf_pfree))
                        viol.push_back(at + ": c_{Z/p} > c_Q but a p-free multiple reaches " +
                                       inf_pfree.str());
                    ++conclusive;
                } else if (cp < cq) {
                    if (!(cp < inf_pfree))
                        viol.push_back(at + ": c_{Z/p} < c_Q but p-free infimum is " +
                                       inf_pfree.str());
                    ++conclusive;
                }
                // equality decides nothing
            }
        }
    }
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_depth_identity(const Analyzer& an, const Analyzer& dn) {
    CheckReport r;
    r.check = "depth-id";
    int D = an.complex().top_degree;
    int instances = 0, conclusive = 0, positive_depth = 0;
    std::vector<std::string> viol;
    for (int k = 0; k <= D; ++k) {
        for (const HomologyClass& a : nonzero_generator_classes(dn, ring_Z(), k)) {
            ++instances;
            std::string at = "deg " + std::to_string(k) + " " + coords_str(a);
            HomologyClass aq = change_ring_class(dn, a, ring_Q());
            if (class_is_zero(dn, aq)) continue;  // torsion: no rational partner
            DepthReport da = spectral_depth(dn, a);
            std::optional<int> idx_star;
            for (int idx = 0; idx <= an.last_index() && !idx_star; ++idx)
                if (functional_nonzero(dn, an, aq, ring_Q(), D - k, idx)) idx_star = idx;
            if (!idx_star) {
                viol.push_back(at + ": rationally nonzero class pairs to nothing");
                continue;
            }
            mpq_class tau = an.critical()[*idx_star];
            if (!(da.c_q == SpectralValue::of(-tau))) {
                viol.push_back(at + ": field formula gives " + tau.get_str() +
                               " but inf_k c_Z(dual, k a) = " + da.c_q.str());
                continue;
            }
            // integral partner from the witness level's cycle basis
            const Presentation& PQ = an.homology(ring_Q(), D - k, *idx_star);
            std::optional<HomologyClass> b;
            for (int j = 0; j < PQ.group.ngens && !b; ++j) {
                std::vector<mpq_class> chain(an.complex().generators.size());
                for (size_t i = 0; i < PQ.chain_basis.size(); ++i)
                    chain[PQ.chain_basis[i]] = mpq_class(PQ.cycles.at(int(i), j));
                auto cand = class_of_chain(an, ring_Z(), D - k, an.last_index(), chain);
                if (cand && pd_pairing(dn, an, a, *cand) != 0) b = cand;
            }
            if (!b) {
                viol.push_back(at + ": no integral witness at the pairing level");
                continue;
            }
            DepthReport db = spectral_depth(an, *b);
            if (!(db.c_q == SpectralValue::of(tau))) {
                viol.push_back(at + ": partner infimum " + db.c_q.str() + " != " + tau.get_str());
                continue;
            }
            // gamma_Z = beta + beta_dual + gamma_Q with gamma_Q = 0 for this pair
            SpectralValue gz = sv_add(db.c_z, da.c_z);
            SpectralValue sum = sv_add(db.beta, da.beta);
            if (!(gz == sum))
                viol.push_back(at + ": gamma_Z = " + gz.str() + " but depth sum = " + sum.str());
            if (sum.kind == SpectralValue::FINITE && sum.v > 0) ++positive_depth;
            ++conclusive;
        }
    }
    put(r, "positive_depth_pairs", std::to_string(positive_depth));
    if (conclusive == 0) r.note = "no rationally nonzero class on the dual side";
    return finish(std::move(r), instances, conclusive, viol);
}

CheckReport check_tor_lipschitz(const Interleaving& I) {
    CheckReport r;
    r.check = "lipschitz";
    std::vector<std::string> viol = validate_interleaving(I);
    if (!viol.empty()) return finish(std::move(r), 1, 0, viol);
    Analyzer af(I.F), ag(I.G);
    SpectralValue bf = torsion_depth(af), bg = torsion_depth(ag);
    put(r, "depth_F", bf.str());
    put(r, "depth_G", bg.str());
    put(r, "shift_sum", mpq_class(I.s1 + I.s2).get_str());
    if (bf.finite() != bg.finite()) {
        // interleaved complexes have isomorphic limit homology, so torsion
        // outliving every level appears on both sides or neither
        viol.push_back("one depth is infinite: " + bf.str() + " vs " + bg.str());
    } else if (bf.finite() && abs(bf.v - bg.v) > I.s1 + I.s2) {
        viol.push_back("depth drift " + mpq_class(abs(bf.v - bg.v)).get_str() +
                       " exceeds the shift sum");
    }
    return finish(std::move(r), 1, 1, viol);
}

std::vector<CheckReport> run_standard_checks(const FilteredComplex& C,
                                             std::uint64_t lipschitz_seed) {
    Analyzer an(C), dn(dual_complex(C));
    std::vector<CheckReport> v;
    v.push_back(check_coeff_monotone(an));
    v.push_back(check_z_vs_q(an));
    v.push_back(check_field_pd(an, dn));
    CheckReport sw = check_field_pd(dn, an);
    put(sw, "roles", "swapped");
    v.push_back(std::move(sw));
    v.push_back(check_corrected_pd(an, dn));
    CheckReport sw2 = check_corrected_pd(dn, an);
    put(sw2, "roles", "swapped");
    v.push_back(std::move(sw2));
    v.push_back(check_prime_envelope(an, dn));
    v.push_back(check_refinement(an));
    v.push_back(check_depth_identity(an, dn));
    v.push_back(check_tor_lipschitz(make_test_interleaving(C, lipschitz_seed)));
    return v;
}

}  // namespace spectra
