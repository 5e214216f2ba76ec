#include "spectra/int_matrix.hpp"

#include <stdexcept>

namespace spectra {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

std::vector<mpz_class> IntMatrix::col(int j) const {
    std::vector<mpz_class> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

void IntMatrix::set_col(int j, const std::vector<mpz_class>& v) {
    for (int i = 0; i < rows; ++i) at(i, j) = v[i];
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const mpz_class& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

std::vector<mpz_class> mat_vec(const IntMatrix& A, const std::vector<mpz_class>& x) {
    if (int(x.size()) != A.cols) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<mpz_class> y(A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0) y[i] += A.at(i, j) * x[j];
    return y;
}

IntMatrix hstack(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

mpz_class determinant(const IntMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant: not square");
    int n = A.rows;
    if (n == 0) return 1;
    IntMatrix B = A;
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (B.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (B.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) swap(B.at(k, j), B.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = B.at(i, j) * B.at(k, k) - B.at(i, k) * B.at(k, j);
                mpz_divexact(B.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = B.at(k, k);
    }
    return sign * B.at(n - 1, n - 1);
}

namespace {

// In-place row/column primitives keeping U*A*V = D in sync.
struct SnfWork {
    IntMatrix D, U, V;

    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < D.cols; ++j) swap(D.at(r1, j), D.at(r2, j));
        for (int j = 0; j < U.cols; ++j) swap(U.at(r1, j), U.at(r2, j));
    }
    void swap_cols(int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < D.rows; ++i) swap(D.at(i, c1), D.at(i, c2));
        for (int i = 0; i < V.rows; ++i) swap(V.at(i, c1), V.at(i, c2));
    }
    // row r1 += q * row r2
    void add_row(int r1, int r2, const mpz_class& q) {
        if (q == 0) return;
        for (int j = 0; j < D.cols; ++j) D.at(r1, j) += q * D.at(r2, j);
        for (int j = 0; j < U.cols; ++j) U.at(r1, j) += q * U.at(r2, j);
    }
    // col c1 += q * col c2
    void add_col(int c1, int c2, const mpz_class& q) {
        if (q == 0) return;
        for (int i = 0; i < D.rows; ++i) D.at(i, c1) += q * D.at(i, c2);
        for (int i = 0; i < V.rows; ++i) V.at(i, c1) += q * V.at(i, c2);
    }
    void negate_row(int r) {
        for (int j = 0; j < D.cols; ++j) D.at(r, j) = -D.at(r, j);
        for (int j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
    }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& A) {
    SnfWork w{A, IntMatrix::identity(A.rows), IntMatrix::identity(A.cols)};
    int n = std::min(A.rows, A.cols);
    for (int s = 0; s < n; ++s) {
        for (;;) {
            // smallest nonzero |entry| in the remaining submatrix
            int pi = -1, pj = -1;
            for (int i = s; i < A.rows; ++i)
                for (int j = s; j < A.cols; ++j) {
                    const mpz_class& x = w.D.at(i, j);
                    if (x == 0) continue;
                    if (pi < 0 || mpz_cmpabs(x.get_mpz_t(), w.D.at(pi, pj).get_mpz_t()) < 0) { pi = i; pj = j; }
                }
            if (pi < 0) { s = n; break; }  // submatrix is zero
            w.swap_rows(s, pi);
            w.swap_cols(s, pj);

            bool clean = true;
            for (int i = s + 1; i < A.rows; ++i) {
                if (w.D.at(i, s) == 0) continue;
                mpz_class q = w.D.at(i, s) / w.D.at(s, s);  // truncated: |remainder| < |pivot|
                w.add_row(i, s, -q);
                if (w.D.at(i, s) != 0) clean = false;
            }
            for (int j = s + 1; j < A.cols; ++j) {
                if (w.D.at(s, j) == 0) continue;
                mpz_class q = w.D.at(s, j) / w.D.at(s, s);
                w.add_col(j, s, -q);
                if (w.D.at(s, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the rest of the submatrix or the chain breaks
            int bad = -1;
            for (int i = s + 1; i < A.rows && bad < 0; ++i)
                for (int j = s + 1; j < A.cols; ++j)
                    if (w.D.at(i, j) % w.D.at(s, s) != 0) { bad = i; break; }
            if (bad < 0) break;
            w.add_row(s, bad, 1);
        }
        if (s >= n) break;
    }
    for (int s = 0; s < n; ++s)
        if (w.D.at(s, s) < 0) w.negate_row(s);
    return {w.U, w.D, w.V};
}

std::vector<mpz_class> invariant_factors(const SnfDecomposition& s) {
    std::vector<mpz_class> f;
    int n = std::min(s.D.rows, s.D.cols);
    for (int i = 0; i < n; ++i)
        if (s.D.at(i, i) != 0) f.push_back(s.D.at(i, i));
    return f;
}

SnfSolver::SnfSolver(IntMatrix A) : A_(std::move(A)), s_(smith_normal_form(A_)) {
    int n = std::min(A_.rows, A_.cols);
    while (rank_ < n && s_.D.at(rank_, rank_) != 0) ++rank_;
}

std::optional<std::vector<mpz_class>> SnfSolver::solve(const std::vector<mpz_class>& b) const {
    if (int(b.size()) != A_.rows) throw std::invalid_argument("solve: size mismatch");
    std::vector<mpz_class> c = mat_vec(s_.U, b);
    std::vector<mpz_class> y(A_.cols);
    for (int i = 0; i < A_.rows; ++i) {
        if (i < rank_) {
            if (c[i] % s_.D.at(i, i) != 0) return std::nullopt;
            y[i] = c[i] / s_.D.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(s_.V, y);
}

std::optional<std::vector<mpq_class>> SnfSolver::solve_rational(const std::vector<mpq_class>& b) const {
    if (int(b.size()) != A_.rows) throw std::invalid_argument("solve_rational: size mismatch");
    std::vector<mpq_class> c(A_.rows);
    for (int i = 0; i < A_.rows; ++i)
        for (int j = 0; j < A_.rows; ++j)
            if (s_.U.at(i, j) != 0) c[i] += mpq_class(s_.U.at(i, j)) * b[j];
    std::vector<mpq_class> y(A_.cols);
    for (int i = 0; i < A_.rows; ++i) {
        if (i < rank_) {
            y[i] = c[i] / mpq_class(s_.D.at(i, i));
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<mpq_class> x(A_.cols);
    for (int i = 0; i < A_.cols; ++i)
        for (int j = 0; j < A_.cols; ++j)
            if (s_.V.at(i, j) != 0) x[i] += mpq_class(s_.V.at(i, j)) * y[j];
    return x;
}

IntMatrix SnfSolver::kernel() const {
    IntMatrix K(A_.cols, A_.cols - rank_);
    for (int j = rank_; j < A_.cols; ++j)
        for (int i = 0; i < A_.cols; ++i) K.at(i, j - rank_) = s_.V.at(i, j);
    return K;
}

std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& A, const std::vector<mpz_class>& b) {
    return SnfSolver(A).solve(b);
}

std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& A, const std::vector<mpq_class>& b) {
    return SnfSolver(A).solve_rational(b);
}

std::optional<std::vector<mpz_class>> solve_mod(const IntMatrix& A, const std::vector<mpz_class>& b,
                                                const mpz_class& m) {
    IntMatrix M(A.rows, A.rows);
    for (int i = 0; i < A.rows; ++i) M.at(i, i) = m;
    auto x = solve_integer(hstack(A, M), b);
    if (!x) return std::nullopt;
    std::vector<mpz_class> r(A.cols);
    for (int j = 0; j < A.cols; ++j) r[j] = mod_reduce((*x)[j], m);
    return r;
}

std::optional<RingVector> solve_linear(const IntMatrix& A, const std::vector<mpz_class>& b,
                                       const Ring& ring) {
    auto lift = [](const std::vector<mpz_class>& v) {
        RingVector r;
        r.q.assign(v.begin(), v.end());
        return r;
    };
    switch (ring.kind) {
        case RingKind::Z: {
            auto x = solve_integer(A, b);
            if (!x) return std::nullopt;
            return lift(*x);
        }
        case RingKind::Q: {
            std::vector<mpq_class> bq(b.begin(), b.end());
            auto x = solve_rational(A, bq);
            if (!x) return std::nullopt;
            return RingVector{*x};
        }
        default: {
            auto x = solve_mod(A, b, ring.modulus);
            if (!x) return std::nullopt;
            return lift(*x);
        }
    }
}

IntMatrix kernel_basis(const IntMatrix& A, const Ring& ring) {
    if (ring.kind != RingKind::Zmod) return SnfSolver(A).kernel();
    // x with A x = 0 (mod m): x-part of the integer kernel of [A | mI].  The
    // x-projection is injective (x = 0 forces m y = 0), so this is a basis.
    IntMatrix M(A.rows, A.rows);
    for (int i = 0; i < A.rows; ++i) M.at(i, i) = ring.modulus;
    IntMatrix K0 = SnfSolver(hstack(A, M)).kernel();
    IntMatrix K(A.cols, K0.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < K0.cols; ++j) K.at(i, j) = K0.at(i, j);
    return K;
}

bool lattice_membership(const IntMatrix& M, const std::vector<mpz_class>& v) {
    return solve_integer(M, v).has_value();
}

IntMatrix hermite_basis(const IntMatrix& A) {
    IntMatrix H = A;
    auto swap_cols = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < H.rows; ++i) swap(H.at(i, c1), H.at(i, c2));
    };
    auto add_col = [&](int c1, int c2, const mpz_class& q) {
        if (q == 0) return;
        for (int i = 0; i < H.rows; ++i) H.at(i, c1) += q * H.at(i, c2);
    };
    int c = 0;
    for (int i = 0; i < H.rows && c < H.cols; ++i) {
        for (;;) {
            int p = -1;
            for (int j = c; j < H.cols; ++j)
                if (H.at(i, j) != 0 && (p < 0 || mpz_cmpabs(H.at(i, j).get_mpz_t(), H.at(i, p).get_mpz_t()) < 0)) p = j;
            if (p < 0) break;
            swap_cols(c, p);
            bool clean = true;
            for (int j = c + 1; j < H.cols; ++j) {
                if (H.at(i, j) == 0) continue;
                mpz_class q = H.at(i, j) / H.at(i, c);
                add_col(j, c, -q);
                if (H.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(i, c) == 0) continue;  // no pivot in this row
        if (H.at(i, c) < 0)
            for (int r = 0; r < H.rows; ++r) H.at(r, c) = -H.at(r, c);
        for (int j = 0; j < c; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, j).get_mpz_t(), H.at(i, c).get_mpz_t());
            add_col(j, c, -q);
        }
        ++c;
    }
    IntMatrix R(H.rows, c);
    for (int i = 0; i < H.rows; ++i)
        for (int j = 0; j < c; ++j) R.at(i, j) = H.at(i, j);
    return R;
}

std::optional<mpz_class> element_order_mod_lattice(const IntMatrix& L, const std::vector<mpz_class>& v) {
    SnfDecomposition s = smith_normal_form(L);
    std::vector<mpz_class> c = mat_vec(s.U, v);
    int n = std::min(L.rows, L.cols);
    int rank = 0;
    while (rank < n && s.D.at(rank, rank) != 0) ++rank;
    for (int i = rank; i < L.rows; ++i)
        if (c[i] != 0) return std::nullopt;
    mpz_class k = 1;
    for (int i = 0; i < rank; ++i) {
        mpz_class g = gcd(s.D.at(i, i), c[i]);
        k = lcm(k, mpz_class(s.D.at(i, i) / g));
    }
    return k;
}

}  // namespace spectra
