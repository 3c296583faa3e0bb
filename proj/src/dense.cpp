// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace camg {

void DenseMatrix::set_col(index_t j, const Vector& v) {
    if (static_cast<index_t>(v.size()) != n_rows)
        throw std::invalid_argument("set_col dimension mismatch");
    std::copy(v.begin(), v.end(), col(j));
}

DenseMatrix dense_from_sparse(const SparseMatrix& a) {
    DenseMatrix d(a.n_rows, a.n_cols);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            d(i, a.col_indices[static_cast<std::size_t>(k)]) =
                a.values[static_cast<std::size_t>(k)];
    return d;
}

DenseMatrix dense_from_columns(const std::vector<Vector>& cols) {
    if (cols.empty()) return {};
    DenseMatrix d(static_cast<index_t>(cols.front().size()),
                  static_cast<index_t>(cols.size()));
    for (index_t j = 0; j < d.n_cols; ++j) d.set_col(j, cols[static_cast<std::size_t>(j)]);
    return d;
}

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n_cols != b.n_rows) throw std::invalid_argument("dense_matmul dimension mismatch");
    DenseMatrix c(a.n_rows, b.n_cols);
    for (index_t j = 0; j < b.n_cols; ++j)
        for (index_t k = 0; k < a.n_cols; ++k) {
            const real_t bkj = b(k, j);
            if (bkj == 0.0) continue;
            for (index_t i = 0; i < a.n_rows; ++i) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

DenseMatrix dense_transpose(const DenseMatrix& a) {
    DenseMatrix t(a.n_cols, a.n_rows);
    for (index_t j = 0; j < a.n_cols; ++j)
        for (index_t i = 0; i < a.n_rows; ++i) t(j, i) = a(i, j);
    return t;
}

Vector dense_matvec(const DenseMatrix& a, const Vector& x) {
    if (static_cast<index_t>(x.size()) != a.n_cols)
        throw std::invalid_argument("dense_matvec dimension mismatch");
    Vector y(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t j = 0; j < a.n_cols; ++j) {
        const real_t xj = x[static_cast<std::size_t>(j)];
        if (xj == 0.0) continue;
        const real_t* cj = a.col(j);
        for (index_t i = 0; i < a.n_rows; ++i) y[static_cast<std::size_t>(i)] += cj[i] * xj;
    }
    return y;
}

real_t dense_max_abs(const DenseMatrix& a) {
    real_t m = 0.0;
    for (const real_t v : a.values) m = std::max(m, std::fabs(v));
    return m;
}

CholeskyFactor cholesky(const DenseMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("cholesky requires a square matrix");
    const index_t n = a.n_rows;
    CholeskyFactor f;
    f.l = DenseMatrix(n, n);
    for (index_t j = 0; j < n; ++j) {
        real_t d = a(j, j);
        for (index_t k = 0; k < j; ++k) d -= f.l(j, k) * f.l(j, k);
        if (d <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
        const real_t ljj = std::sqrt(d);
        f.l(j, j) = ljj;
        for (index_t i = j + 1; i < n; ++i) {
            real_t s = a(i, j);
            for (index_t k = 0; k < j; ++k) s -= f.l(i, k) * f.l(j, k);
            f.l(i, j) = s / ljj;
        }
    }
    return f;
}

bool cholesky_ok(const DenseMatrix& a) {
    try {
        cholesky(a);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

Vector CholeskyFactor::solve(const Vector& b) const {
    const index_t n = l.n_rows;
    if (static_cast<index_t>(b.size()) != n)
        throw std::invalid_argument("cholesky solve dimension mismatch");
    Vector y(b);
    for (index_t i = 0; i < n; ++i) {
        real_t s = y[static_cast<std::size_t>(i)];
        for (index_t k = 0; k < i; ++k) s -= l(i, k) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = s / l(i, i);
    }
    for (index_t i = n - 1; i >= 0; --i) {
        real_t s = y[static_cast<std::size_t>(i)];
        for (index_t k = i + 1; k < n; ++k) s -= l(k, i) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = s / l(i, i);
    }
    return y;
}

Vector sym_eigenvalues(DenseMatrix a, real_t tol, index_t max_sweeps) {
    if (a.n_rows != a.n_cols)
        throw std::invalid_argument("sym_eigenvalues requires a square matrix");
    const index_t n = a.n_rows;
    const real_t scale = std::max(dense_max_abs(a), 1e-300);

    for (index_t sweep = 0; sweep < max_sweeps; ++sweep) {
        real_t off = 0.0;
        for (index_t p = 0; p < n; ++p)
            for (index_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
        if (off <= tol * scale) break;

        for (index_t p = 0; p < n; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                const real_t apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const real_t theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const real_t t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const real_t c = 1.0 / std::sqrt(t * t + 1.0);
                const real_t s = t * c;
                for (index_t k = 0; k < n; ++k) {
                    const real_t akp = a(k, p);
                    const real_t akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (index_t k = 0; k < n; ++k) {
                    const real_t apk = a(p, k);
                    const real_t aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Vector eig(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

DenseMatrix mgs_orthonormalize(const DenseMatrix& w, const std::vector<index_t>& order,
                               real_t drop_tol) {
    std::vector<index_t> cols(order);
    if (cols.empty()) {
        cols.resize(static_cast<std::size_t>(w.n_cols));
        std::iota(cols.begin(), cols.end(), index_t{0});
    }

    std::vector<Vector> kept;
    for (const index_t j : cols) {
        Vector v = w.col_vector(j);
        real_t orig = 0.0;
        for (const real_t x : v) orig += x * x;
        orig = std::sqrt(orig);
        if (orig == 0.0) continue;

        for (const Vector& q : kept) {
            real_t proj = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) proj += q[i] * v[i];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
        }
        real_t rn = 0.0;
        for (const real_t x : v) rn += x * x;
        rn = std::sqrt(rn);
        if (rn <= drop_tol * orig) continue;
        for (auto& x : v) x /= rn;
        kept.push_back(std::move(v));
    }
    return dense_from_columns(kept);
}

real_t orthonormality_defect(const DenseMatrix& w) {
    real_t defect = 0.0;
    for (index_t i = 0; i < w.n_cols; ++i) {
        for (index_t j = 0; j < w.n_cols; ++j) {
            real_t g = 0.0;
            const real_t* ci = w.col(i);
            const real_t* cj = w.col(j);
            for (index_t k = 0; k < w.n_rows; ++k) g += ci[k] * cj[k];
            defect = std::max(defect, std::fabs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return defect;
}

} // namespace camg
