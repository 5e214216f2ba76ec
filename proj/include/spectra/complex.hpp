#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spectra/int_matrix.hpp"

namespace spectra {

struct Generator {
    std::string id;
    int degree = 0;
    mpq_class action;
};

// Chain complex of free modules with a strictly action-decreasing integer
// differential.  Generator order is file order and is preserved throughout.
struct FilteredComplex {
    int top_degree = 0;
    std::vector<Generator> generators;
    // boundary[g]: list of (generator index, coefficient), one entry per target
    std::vector<std::vector<std::pair<int, mpz_class>>> boundary;
    std::map<std::string, int> index;  // id -> position in generators

    int find(const std::string& id) const {
        auto it = index.find(id);
        return it == index.end() ? -1 : it->second;
    }
};

// Builds the index and boundary storage; throws std::invalid_argument on
// duplicate ids or unknown boundary targets.  Does not check the chain axioms;
// use validate() for that.
FilteredComplex make_complex(int top_degree, std::vector<Generator> gens,
                             const std::vector<std::pair<std::string, std::vector<std::pair<std::string, mpz_class>>>>& diff);

// Human-readable violations: degree range, zero coefficients, degree steps,
// strict action decrease along the differential, and d(d(x)) = 0.
std::vector<std::string> validate(const FilteredComplex& C);

// Subcomplex on the generators with action <= tau (always a subcomplex by the
// strict decrease axiom).
FilteredComplex sublevel(const FilteredComplex& C, const mpq_class& tau);

// Degree k -> top_degree - k, action a -> -a, transposed differential.
// Ids gain a trailing '*' (or lose one, so the dual is an involution).
FilteredComplex dual_complex(const FilteredComplex& C);

// Ascending distinct generator actions.
std::vector<mpq_class> critical_values(const FilteredComplex& C);

// --- JSON file format ---------------------------------------------------
// {"top_degree": D,
//  "generators": [{"id": "u", "degree": 0, "action": "0"}, ...],
//  "differential": {"x": [["u", 1], ["v", -2]], ...}}
// Actions are exact rationals as strings; differential coefficients are JSON
// integers (decimal strings accepted and emitted when they exceed 64 bits).
// Unknown fields are rejected.  save_complex emits the canonical form, which
// round-trips byte-for-byte.

FilteredComplex parse_complex(const std::string& json_text);
FilteredComplex load_complex(const std::string& path);
std::string save_complex(const FilteredComplex& C);
void write_complex(const FilteredComplex& C, const std::string& path);

// --- Seeded generator ----------------------------------------------------

struct RandomParams {
    int max_degree = 2;
    int gens_per_degree = 3;
    long action_span = 8;      // actions fall in [0, span + span/2]
    double torsion_bias = 0.0; // chance that a paired coefficient has |d| >= 2
};

// Deterministic in (seed, params): direct sum of lone generators and pairs
// d(x) = d*y, then action-compatible unimodular changes of basis.
FilteredComplex random_complex(std::uint64_t seed, const RandomParams& params);

}  // namespace spectra
