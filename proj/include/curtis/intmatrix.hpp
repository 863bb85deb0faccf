// Exact integer matrices and lattice decision procedures: Hermite and Smith
// normal forms with unimodular transforms, integer linear solving with
// infeasibility certificates, and Z / Z[1/p] lattice comparison.
//
// Convention: lattice generators are COLUMNS.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtis/rational.hpp"

namespace curtis {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rws) {
        IntMatrix m(rws.size(), rws.empty() ? 0 : rws[0].size());
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (rws[i].size() != m.cols) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matmul shape");
        IntMatrix z(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                const Int& v = x.at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    IntMatrix take_columns(std::size_t n) const {
        IntMatrix m(rows, n);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = at(i, j);
        return m;
    }

    static IntMatrix hstack(const IntMatrix& x, const IntMatrix& y) {
        if (x.rows != y.rows) throw std::invalid_argument("hstack shape");
        IntMatrix z(x.rows, x.cols + y.cols);
        for (std::size_t i = 0; i < x.rows; ++i) {
            for (std::size_t j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
        }
        return z;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols) throw std::invalid_argument("apply shape");
        std::vector<Int> y(rows, Int(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }
};

// Column-style Hermite normal form: same column lattice, pivots positive and
// strictly descending row-wise; entries in a pivot row to the left of the
// pivot are reduced into [0, pivot). Zero columns are moved to the right.
inline IntMatrix hnf(const IntMatrix& A) {
    IntMatrix H = A;
    std::size_t c = 0;
    for (std::size_t r = 0; r < H.rows && c < H.cols; ++r) {
        // Euclid among columns c.. to kill row r except one pivot entry
        for (;;) {
            std::size_t jmin = H.cols;
            for (std::size_t j = c; j < H.cols; ++j) {
                if (H.at(r, j) == 0) continue;
                if (jmin == H.cols || abs(H.at(r, j)) < abs(H.at(r, jmin))) jmin = j;
            }
            if (jmin == H.cols) break;  // row r empty in the active block
            if (jmin != c)
                for (std::size_t i = 0; i < H.rows; ++i) std::swap(H.at(i, jmin), H.at(i, c));
            bool clean = true;
            for (std::size_t j = c + 1; j < H.cols; ++j) {
                if (H.at(r, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(r, j).get_mpz_t(), H.at(r, c).get_mpz_t());
                if (q != 0)
                    for (std::size_t i = 0; i < H.rows; ++i) H.at(i, j) -= q * H.at(i, c);
                if (H.at(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(r, c) == 0) continue;  // next row, same column position
        if (H.at(r, c) < 0)
            for (std::size_t i = 0; i < H.rows; ++i) H.at(i, c) = -H.at(i, c);
        for (std::size_t j = 0; j < c; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(r, j).get_mpz_t(), H.at(r, c).get_mpz_t());
            if (q != 0)
                for (std::size_t i = 0; i < H.rows; ++i) H.at(i, j) -= q * H.at(i, c);
        }
        ++c;
    }
    return H;
}

// Nonzero columns of the HNF (a lattice basis).
inline IntMatrix hnf_basis(const IntMatrix& A) {
    IntMatrix H = hnf(A);
    std::size_t n = 0;
    for (std::size_t j = 0; j < H.cols; ++j) {
        bool nz = false;
        for (std::size_t i = 0; i < H.rows; ++i)
            if (H.at(i, j) != 0) { nz = true; break; }
        if (nz) n = j + 1;
    }
    return H.take_columns(n);
}

struct SmithForm {
    IntMatrix D;                 // U * A * V = D, diagonal
    IntMatrix U, V;              // unimodular (det +-1)
    std::vector<Int> divisors;   // min(rows, cols) diagonal entries, d1 | d2 | ...
    std::size_t rank = 0;        // number of nonzero divisors
};

inline SmithForm snf(const IntMatrix& A) {
    SmithForm s;
    s.D = A;
    s.U = IntMatrix::identity(A.rows);
    s.V = IntMatrix::identity(A.cols);
    IntMatrix& D = s.D;
    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < D.cols; ++k) std::swap(D.at(i, k), D.at(j, k));
        for (std::size_t k = 0; k < s.U.cols; ++k) std::swap(s.U.at(i, k), s.U.at(j, k));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < D.rows; ++k) std::swap(D.at(k, i), D.at(k, j));
        for (std::size_t k = 0; k < s.V.rows; ++k) std::swap(s.V.at(k, i), s.V.at(k, j));
    };
    auto row_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t k = 0; k < D.cols; ++k) D.at(dst, k) += f * D.at(src, k);
        for (std::size_t k = 0; k < s.U.cols; ++k) s.U.at(dst, k) += f * s.U.at(src, k);
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t k = 0; k < D.rows; ++k) D.at(k, dst) += f * D.at(k, src);
        for (std::size_t k = 0; k < s.V.rows; ++k) s.V.at(k, dst) += f * s.V.at(k, src);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t k = 0; k < D.cols; ++k) D.at(i, k) = -D.at(i, k);
        for (std::size_t k = 0; k < s.U.cols; ++k) s.U.at(i, k) = -s.U.at(i, k);
    };

    std::size_t n = std::min(A.rows, A.cols);
    for (std::size_t t = 0; t < n; ++t) {
        // locate minimal nonzero entry in the trailing block
        std::size_t pi = D.rows, pj = D.cols;
        for (std::size_t i = t; i < D.rows; ++i)
            for (std::size_t j = t; j < D.cols; ++j) {
                if (D.at(i, j) == 0) continue;
                if (pi == D.rows || abs(D.at(i, j)) < abs(D.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi == D.rows) break;  // all zero
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < D.rows; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), D.at(i, t).get_mpz_t(), D.at(t, t).get_mpz_t());
                row_addmul(i, t, -q);
                if (D.at(i, t) != 0) { row_swap(i, t); again = true; }
            }
            for (std::size_t j = t + 1; j < D.cols; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), D.at(t, j).get_mpz_t(), D.at(t, t).get_mpz_t());
                col_addmul(j, t, -q);
                if (D.at(t, j) != 0) { col_swap(j, t); again = true; }
            }
            if (again) continue;
            // pivot must divide the whole trailing block for the divisor chain
            bool fixed = true;
            for (std::size_t i = t + 1; i < D.rows && fixed; ++i)
                for (std::size_t j = t + 1; j < D.cols && fixed; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        row_addmul(t, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (D.at(t, t) < 0) row_negate(t);
    }
    for (std::size_t t = 0; t < n; ++t) {
        s.divisors.push_back(D.at(t, t));
        if (D.at(t, t) != 0) s.rank = t + 1;
    }
    return s;
}

struct InfeasibilityCertificate {
    std::size_t snf_row;        // row index i of U with u.A = d_i e_i V^{-1}
    std::vector<Int> u_row;     // that row of U
    Int divisor;                // d_i (0 for a rational obstruction)
    Int value;                  // u_row . b, not divisible by divisor
};

struct IntSolveResult {
    std::optional<std::vector<Int>> x;
    std::optional<InfeasibilityCertificate> certificate;
    bool feasible_rational = false;
};

class SnfSolver {
  public:
    explicit SnfSolver(IntMatrix A) : A_(std::move(A)), s_(snf(A_)) {}

    const SmithForm& form() const { return s_; }
    const IntMatrix& matrix() const { return A_; }
    std::size_t rank() const { return s_.rank; }

    // Solve A x = b over Z; on failure produce a certificate row.
    IntSolveResult solve_integer(const std::vector<Int>& b) const {
        IntSolveResult res;
        std::vector<Int> c = s_.U.apply(b);
        std::vector<Int> y(A_.cols, Int(0));
        res.feasible_rational = true;
        for (std::size_t i = 0; i < A_.rows; ++i) {
            const Int& di = i < s_.divisors.size() ? s_.divisors[i] : Int(0);
            if (di == 0) {
                if (c[i] != 0) {
                    res.feasible_rational = false;
                    res.certificate = InfeasibilityCertificate{
                        i, s_.U.transposed().column(i), Int(0), c[i]};
                    return res;
                }
                continue;
            }
            if (c[i] % di != 0) {
                res.certificate = InfeasibilityCertificate{
                    i, s_.U.transposed().column(i), di, c[i]};
                return res;
            }
            if (i < y.size()) y[i] = c[i] / di;
        }
        res.x = s_.V.apply(y);
        return res;
    }

    // Solve A x = b over Q (empty optional if b is outside the column span).
    std::optional<std::vector<Rat>> solve_rational(const std::vector<Int>& b) const {
        std::vector<Int> c = s_.U.apply(b);
        std::vector<Rat> y(A_.cols, Rat(0));
        for (std::size_t i = 0; i < A_.rows; ++i) {
            const Int& di = i < s_.divisors.size() ? s_.divisors[i] : Int(0);
            if (di == 0) {
                if (c[i] != 0) return std::nullopt;
                continue;
            }
            if (i < y.size()) y[i] = make_rat(c[i], di);
        }
        std::vector<Rat> x(A_.cols, Rat(0));
        for (std::size_t i = 0; i < A_.cols; ++i)
            for (std::size_t j = 0; j < A_.cols; ++j)
                if (s_.V.at(i, j) != 0 && y[j] != 0) x[i] += Rat(s_.V.at(i, j)) * y[j];
        return x;
    }

    // Solve A x = b over Z[1/p]: rational solution whose denominators are p-powers.
    bool solve_p_local(const std::vector<Int>& b, const Int& p) const {
        std::vector<Int> c = s_.U.apply(b);
        for (std::size_t i = 0; i < A_.rows; ++i) {
            const Int& di = i < s_.divisors.size() ? s_.divisors[i] : Int(0);
            if (di == 0) {
                if (c[i] != 0) return false;
                continue;
            }
            if (!denominator_is_p_power(make_rat(c[i], di), p)) return false;
        }
        return true;
    }

  private:
    IntMatrix A_;
    SmithForm s_;
};

inline IntSolveResult solve_integer(const IntMatrix& A, const std::vector<Int>& b) {
    return SnfSolver(A).solve_integer(b);
}

struct LatticeComparison {
    bool span_equal = false;
    bool left_in_right = false;   // over Z
    bool right_in_left = false;   // over Z
    bool z_equal = false;
    bool p_saturated_equal = false;  // equal after inverting p
    std::vector<Int> divisors;    // transition elementary divisors (p-denominators cleared)
};

// Compare the column lattices of A and B, over Z and over Z[1/p].
inline LatticeComparison lattice_compare(const IntMatrix& A, const IntMatrix& B, const Int& p) {
    if (A.rows != B.rows) throw std::invalid_argument("lattice_compare: row mismatch");
    LatticeComparison cmp;
    SnfSolver solveB(B), solveA(A);
    std::size_t rankAB = snf(IntMatrix::hstack(A, B)).rank;
    cmp.span_equal = (solveA.rank() == rankAB) && (solveB.rank() == rankAB);

    bool lir = true, ril = true, lir_p = true, ril_p = true;
    for (std::size_t j = 0; j < A.cols && (lir || lir_p); ++j) {
        auto col = A.column(j);
        if (lir && !solveB.solve_integer(col).x) lir = false;
        if (lir_p && !solveB.solve_p_local(col, p)) lir_p = false;
    }
    for (std::size_t j = 0; j < B.cols && (ril || ril_p); ++j) {
        auto col = B.column(j);
        if (ril && !solveA.solve_integer(col).x) ril = false;
        if (ril_p && !solveA.solve_p_local(col, p)) ril_p = false;
    }
    cmp.left_in_right = lir;
    cmp.right_in_left = ril;
    cmp.z_equal = lir && ril;
    cmp.p_saturated_equal = cmp.span_equal && lir_p && ril_p;

    if (cmp.span_equal) {
        // transition H_B Y = H_A with p-denominators cleared, then SNF divisors
        IntMatrix HA = hnf_basis(A), HB = hnf_basis(B);
        SnfSolver sb(HB);
        std::size_t r = HA.cols;
        std::vector<std::vector<Rat>> ycols;
        Int pden = 1;
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) {
            auto y = sb.solve_rational(HA.column(j));
            if (!y) { ok = false; break; }
            for (const Rat& v : *y) {
                Int d = v.get_den();
                pden = int_lcm(pden, d);
            }
            ycols.push_back(std::move(*y));
        }
        if (ok) {
            IntMatrix Y(HB.cols, r);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < HB.cols; ++i) {
                    Rat v = ycols[j][i] * Rat(pden);
                    if (v.get_den() != 1) throw std::logic_error("transition clearing failed");
                    Y.at(i, j) = v.get_num();
                }
            cmp.divisors = snf(Y).divisors;
        }
    }
    return cmp;
}

// Generators of the lattice { x in Q^r : M x integral }, for rational M = N / den
// of full column rank; returned as integer matrix plus denominator.
struct QLattice {
    IntMatrix num;  // columns
    Int den = 1;
};

inline QLattice dual_constraint_lattice(const IntMatrix& N, const Int& den) {
    // x with (N/den) x integral  <=>  N x in den * Z^k
    SmithForm s = snf(N);
    std::size_t r = N.cols;
    if (s.rank != r) throw std::invalid_argument("dual_constraint_lattice: not full column rank");
    // x = V z, need d_i z_i in den Z, i < r  =>  z_i in (den / d_i) Z
    QLattice L;
    Int scale = 1;
    std::vector<Rat> factors(r);
    for (std::size_t i = 0; i < r; ++i) {
        factors[i] = make_rat(den, s.divisors[i]);
        scale = int_lcm(scale, factors[i].get_den());
    }
    L.den = scale;
    L.num = IntMatrix(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        Rat f = factors[j] * Rat(scale);
        if (f.get_den() != 1) throw std::logic_error("dual lattice scaling");
        for (std::size_t i = 0; i < r; ++i) L.num.at(i, j) = s.V.at(i, j) * f.get_num();
    }
    return L;
}

// Compare rational lattices (num/den pairs) after clearing to a common denominator.
inline LatticeComparison lattice_compare(const QLattice& A, const QLattice& B, const Int& p) {
    Int L = int_lcm(A.den, B.den);
    IntMatrix An = A.num, Bn = B.num;
    Int fa = L / A.den, fb = L / B.den;
    for (Int& v : An.a) v *= fa;
    for (Int& v : Bn.a) v *= fb;
    return lattice_compare(An, Bn, p);
}

}  // namespace curtis
