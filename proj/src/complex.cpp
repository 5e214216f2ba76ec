#include "spectra/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spectra {

FilteredComplex make_complex(int top_degree, std::vector<Generator> gens,
                             const std::vector<std::pair<std::string, std::vector<std::pair<std::string, mpz_class>>>>& diff) {
    FilteredComplex C;
    C.top_degree = top_degree;
    C.generators = std::move(gens);
    C.boundary.resize(C.generators.size());
    for (size_t i = 0; i < C.generators.size(); ++i) {
        if (!C.index.emplace(C.generators[i].id, int(i)).second)
            throw std::invalid_argument("duplicate generator id: " + C.generators[i].id);
    }
    for (const auto& [src, terms] : diff) {
        int s = C.find(src);
        if (s < 0) throw std::invalid_argument("differential of unknown generator: " + src);
        if (!C.boundary[s].empty()) throw std::invalid_argument("differential listed twice: " + src);
        std::set<int> seen;
        for (const auto& [tgt, coeff] : terms) {
            int t = C.find(tgt);
            if (t < 0) throw std::invalid_argument("unknown boundary target: " + tgt);
            if (!seen.insert(t).second) throw std::invalid_argument("repeated boundary target: " + tgt);
            C.boundary[s].emplace_back(t, coeff);
        }
    }
    return C;
}

std::vector<std::string> validate(const FilteredComplex& C) {
    std::vector<std::string> errs;
    int n = int(C.generators.size());
    for (int i = 0; i < n; ++i) {
        const Generator& g = C.generators[i];
        if (g.degree < 0 || g.degree > C.top_degree)
            errs.push_back(g.id + ": degree " + std::to_string(g.degree) + " outside [0, " +
                           std::to_string(C.top_degree) + "]");
        for (const auto& [t, c] : C.boundary[i]) {
            const Generator& h = C.generators[t];
            if (c == 0) errs.push_back(g.id + ": zero coefficient on " + h.id);
            if (h.degree != g.degree - 1)
                errs.push_back(g.id + " -> " + h.id + ": degree step " + std::to_string(g.degree) +
                               " -> " + std::to_string(h.degree) + " is not -1");
            if (!(h.action < g.action))
                errs.push_back(g.id + " -> " + h.id + ": action must strictly decrease (" +
                               g.action.get_str() + " -> " + h.action.get_str() + ")");
        }
    }
    // d(d(x)) accumulated sparsely
    for (int i = 0; i < n; ++i) {
        std::map<int, mpz_class> dd;
        for (const auto& [t, c] : C.boundary[i])
            for (const auto& [u, c2] : C.boundary[t]) dd[u] += c * c2;
        for (const auto& [u, v] : dd)
            if (v != 0)
                errs.push_back("d(d(" + C.generators[i].id + ")) has " + v.get_str() + " * " +
                               C.generators[u].id);
    }
    return errs;
}

FilteredComplex sublevel(const FilteredComplex& C, const mpq_class& tau) {
    FilteredComplex S;
    S.top_degree = C.top_degree;
    std::vector<int> remap(C.generators.size(), -1);
    for (size_t i = 0; i < C.generators.size(); ++i) {
        if (C.generators[i].action <= tau) {
            remap[i] = int(S.generators.size());
            S.generators.push_back(C.generators[i]);
            S.index[C.generators[i].id] = remap[i];
        }
    }
    S.boundary.resize(S.generators.size());
    for (size_t i = 0; i < C.generators.size(); ++i) {
        if (remap[i] < 0) continue;
        for (const auto& [t, c] : C.boundary[i])
            S.boundary[remap[i]].emplace_back(remap[t], c);  // targets have lower action
    }
    return S;
}

static std::string dual_id(const std::string& id) {
    if (!id.empty() && id.back() == '*') return id.substr(0, id.size() - 1);
    return id + "*";
}

FilteredComplex dual_complex(const FilteredComplex& C) {
    FilteredComplex D;
    D.top_degree = C.top_degree;
    int n = int(C.generators.size());
    for (int i = 0; i < n; ++i) {
        const Generator& g = C.generators[i];
        Generator d{dual_id(g.id), C.top_degree - g.degree, -g.action};
        if (!D.index.emplace(d.id, i).second)
            throw std::invalid_argument("dual id collision: " + d.id);
        D.generators.push_back(std::move(d));
    }
    D.boundary.resize(n);
    for (int i = 0; i < n; ++i)
        for (const auto& [t, c] : C.boundary[i]) D.boundary[t].emplace_back(i, c);
    return D;
}

std::vector<mpq_class> critical_values(const FilteredComplex& C) {
    std::vector<mpq_class> v;
    for (const auto& g : C.generators) v.push_back(g.action);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace spectra
