#include "multislice/intlinalg.hpp"

#include <utility>

namespace multislice {

namespace {

IntMatrix identity(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void row_axpy(IntMatrix& M, std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < M[dst].size(); ++j) M[dst][j] += f * M[src][j];
}

void col_axpy(IntMatrix& M, std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (auto& row : M) row[dst] += f * row[src];
}

void swap_cols(IntMatrix& M, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

IntMatrix transpose(const IntMatrix& A) {
    if (A.empty()) return {};
    IntMatrix T(A[0].size(), std::vector<BigInt>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

std::vector<BigInt> multiply(const IntMatrix& A, const std::vector<BigInt>& x) {
    std::vector<BigInt> y(A.size(), 0);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

SmithForm smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    SmithForm f;
    f.D = A;
    f.U = identity(m);
    f.V = identity(n);
    IntMatrix& D = f.D;
    std::size_t t = 0;
    while (t < m && t < n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D[i][j] != 0 && (pi == m || abs(D[i][j]) < abs(D[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        std::swap(D[t], D[pi]);
        std::swap(f.U[t], f.U[pi]);
        swap_cols(D, t, pj);
        swap_cols(f.V, t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            BigInt q = floor_div(D[i][t], D[t][t]);
            row_axpy(D, i, t, -q);
            row_axpy(f.U, i, t, -q);
            if (D[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            BigInt q = floor_div(D[t][j], D[t][t]);
            col_axpy(D, j, t, -q);
            col_axpy(f.V, j, t, -q);
            if (D[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // Pivot must divide the whole trailing block.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (D[i][j] % D[t][t] != 0) {
                    row_axpy(D, t, i, 1);
                    row_axpy(f.U, t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (D[t][t] < 0) {
            for (auto& v : D[t]) v = -v;
            for (auto& v : f.U[t]) v = -v;
        }
        f.invariants.push_back(D[t][t]);
        ++t;
    }
    f.rank = int(f.invariants.size());
    return f;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A,
                                                 const std::vector<BigInt>& b) {
    if (A.size() != b.size()) throw ValidationError("solve_integer: size mismatch");
    const std::size_t n = A.empty() ? 0 : A[0].size();
    SmithForm f = smith_normal_form(A);
    std::vector<BigInt> c = multiply(f.U, b);
    std::vector<BigInt> y(n, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (int(i) < f.rank) {
            if (c[i] % f.invariants[i] != 0) return std::nullopt;
            y[i] = c[i] / f.invariants[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return multiply(f.V, y);
}

bool is_unimodular_embedding(const IntMatrix& A) {
    if (A.empty()) return false;
    SmithForm f = smith_normal_form(A);
    if (f.rank != int(A[0].size())) return false;
    for (const auto& d : f.invariants)
        if (d != 1) return false;
    return true;
}

}  // namespace multislice
