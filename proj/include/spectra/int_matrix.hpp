#pragma once

#include <gmpxx.h>
#include <optional>
#include <vector>

#include "spectra/rings.hpp"

namespace spectra {

// Dense integer matrix, row-major, arbitrary-precision entries.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    mpz_class& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static IntMatrix identity(int n);
    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    std::vector<mpz_class> col(int j) const;
    void set_col(int j, const std::vector<mpz_class>& v);
};

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
std::vector<mpz_class> mat_vec(const IntMatrix& A, const std::vector<mpz_class>& x);
// [A | B], equal row counts.
IntMatrix hstack(const IntMatrix& A, const IntMatrix& B);

// Fraction-free (Bareiss) determinant; square input.
mpz_class determinant(const IntMatrix& A);

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr >= 1,
// remaining diagonal zero.  Pivot choice: smallest nonzero absolute value in
// the working submatrix; rows/columns reduced by division with remainder until
// the pivot divides its whole row and column.
struct SnfDecomposition {
    IntMatrix U, D, V;
};

SnfDecomposition smith_normal_form(const IntMatrix& A);

// Diagonal entries of D that are != 0 (so 1 <= d1 | d2 | ...).
std::vector<mpz_class> invariant_factors(const SnfDecomposition& s);

// Solver wrapping one SNF of A, reused across many right-hand sides.
class SnfSolver {
  public:
    explicit SnfSolver(IntMatrix A);

    // A x = b over Z; nullopt when no integral solution.  Free coordinates 0.
    std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& b) const;
    // A x = b over Q.
    std::optional<std::vector<mpq_class>> solve_rational(const std::vector<mpq_class>& b) const;

    int rank() const { return rank_; }
    const SnfDecomposition& snf() const { return s_; }
    // Columns of V spanning ker A as a saturated lattice (also a Q-basis).
    IntMatrix kernel() const;

  private:
    IntMatrix A_;
    SnfDecomposition s_;
    int rank_ = 0;
};

std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& A, const std::vector<mpz_class>& b);
std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& A, const std::vector<mpq_class>& b);
// x with A x = b (mod m); entries reduced to [0, m).
std::optional<std::vector<mpz_class>> solve_mod(const IntMatrix& A, const std::vector<mpz_class>& b,
                                                const mpz_class& m);

// Ring-dispatched solve used by callers that hold integer data for any ring:
// for Z/m the returned vector is reduced mod m, for Q denominators may appear.
struct RingVector {
    std::vector<mpq_class> q;  // exact values; integral for Z and Z/m
};
std::optional<RingVector> solve_linear(const IntMatrix& A, const std::vector<mpz_class>& b,
                                       const Ring& ring);

// Lattice basis of ker(A) over Z (saturated) or the x-part basis of
// {x : A x = 0 mod m} for Z/m; over Q the Z-basis doubles as a Q-basis.
IntMatrix kernel_basis(const IntMatrix& A, const Ring& ring);

// v in the column lattice of M?
bool lattice_membership(const IntMatrix& M, const std::vector<mpz_class>& v);

// Canonical column-style Hermite basis of the column lattice of A: column
// echelon, pivots positive, entries left of each pivot reduced into [0, pivot).
// Unique per lattice, so lattice equality == matrix equality.
IntMatrix hermite_basis(const IntMatrix& A);

// Order of v in Z^n / colLattice(L): smallest k >= 1 with k*v in the lattice,
// nullopt when no such k (infinite order).
std::optional<mpz_class> element_order_mod_lattice(const IntMatrix& L, const std::vector<mpz_class>& v);

}  // namespace spectra
