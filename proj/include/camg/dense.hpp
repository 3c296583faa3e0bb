// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_DENSE_HPP
#define CAMG_DENSE_HPP

#include "camg/sparse.hpp"
#include "camg/types.hpp"

#include <vector>

namespace camg {

/// Small dense matrix, column-major.
struct DenseMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<real_t> values; // n_rows * n_cols, column-major

    DenseMatrix() = default;
    DenseMatrix(index_t rows, index_t cols)
        : n_rows(rows), n_cols(cols),
          values(static_cast<std::size_t>(rows * cols), 0.0) {}

    real_t& operator()(index_t i, index_t j) {
        return values[static_cast<std::size_t>(j * n_rows + i)];
    }
    real_t operator()(index_t i, index_t j) const {
        return values[static_cast<std::size_t>(j * n_rows + i)];
    }

    real_t* col(index_t j) { return values.data() + j * n_rows; }
    const real_t* col(index_t j) const { return values.data() + j * n_rows; }

    Vector col_vector(index_t j) const {
        return Vector(col(j), col(j) + n_rows);
    }
    void set_col(index_t j, const Vector& v);
};

DenseMatrix dense_from_sparse(const SparseMatrix& a);
DenseMatrix dense_from_columns(const std::vector<Vector>& cols);
DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_transpose(const DenseMatrix& a);
Vector dense_matvec(const DenseMatrix& a, const Vector& x);

/// Max |a_ij| over all entries.
real_t dense_max_abs(const DenseMatrix& a);

/// Lower Cholesky factor of an s.p.d. matrix; throws std::runtime_error
/// when a pivot is not strictly positive.
struct CholeskyFactor {
    DenseMatrix l;
    Vector solve(const Vector& b) const;
};

CholeskyFactor cholesky(const DenseMatrix& a);

bool cholesky_ok(const DenseMatrix& a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
Vector sym_eigenvalues(DenseMatrix a, real_t tol = 1e-14, index_t max_sweeps = 64);

/// In-place modified Gram-Schmidt over the columns of w, processed in the
/// given order (identity order when empty). Columns whose residual falls
/// below drop_tol times their original norm are removed. Returns the kept
/// matrix; kept columns are orthonormal in the euclidean inner product.
DenseMatrix mgs_orthonormalize(const DenseMatrix& w,
                               const std::vector<index_t>& order = {},
                               real_t drop_tol = 1e-12);

/// Max |(W^T W - I)_ij|, the orthonormality defect.
real_t orthonormality_defect(const DenseMatrix& w);

} // namespace camg

#endif // CAMG_DENSE_HPP
