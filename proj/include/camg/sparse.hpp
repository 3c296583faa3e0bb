// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_SPARSE_HPP
#define CAMG_SPARSE_HPP

#include "camg/types.hpp"

#include <memory>
#include <tuple>
#include <vector>

namespace camg {

/// Compressed-row sparse matrix with owned 64-bit index storage.
/// Symmetric matrices are stored fully (both triangles); within each row the
/// column indices are strictly increasing.
struct SparseMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<index_t> row_offsets; // length n_rows + 1
    std::vector<index_t> col_indices;
    std::vector<real_t> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Entry lookup by binary search; zero when not stored.
    real_t at(index_t i, index_t j) const;
};

using MatrixPtr = std::shared_ptr<const SparseMatrix>;

using Triplet = std::tuple<index_t, index_t, real_t>;

/// Builds a CSR matrix from unordered (row, col, value) entries.
/// Duplicate coordinates are summed; columns come out sorted.
SparseMatrix sparse_from_triplets(index_t n_rows, index_t n_cols,
                                  std::vector<Triplet> entries);

SparseMatrix sparse_identity(index_t n);

SparseMatrix sparse_diagonal(const Vector& d);

/// Throws std::invalid_argument when the structural invariants are violated
/// (monotone offsets, sorted in-range columns, consistent lengths).
void validate(const SparseMatrix& a);

/// Max |a_ij - a_ji| over stored entries; 0 for exactly symmetric matrices.
real_t symmetry_defect(const SparseMatrix& a);

bool is_symmetric(const SparseMatrix& a, real_t tol = 0.0);

/// Averages a with its transpose so that a_ij == a_ji holds exactly.
SparseMatrix symmetrize(const SparseMatrix& a);

Vector diagonal(const SparseMatrix& a);

/// y = A x
Vector spmv(const SparseMatrix& a, const Vector& x);
void spmv(const SparseMatrix& a, const Vector& x, Vector& y);

/// r = b - A x
Vector residual(const SparseMatrix& a, const Vector& b, const Vector& x);

SparseMatrix transpose(const SparseMatrix& a);

/// C = A B, row-by-row with a fixed accumulation order.
SparseMatrix spgemm(const SparseMatrix& a, const SparseMatrix& b);

/// Galerkin product P^T A P. All computed entries are kept (no drop
/// tolerance); the result is symmetrized when A is symmetric.
SparseMatrix triple_product(const SparseMatrix& p, const SparseMatrix& a);

/// alpha A + beta B over the union pattern.
SparseMatrix sparse_add(real_t alpha, const SparseMatrix& a, real_t beta,
                        const SparseMatrix& b);

/// Energy norm sqrt(v^T A v); throws when v^T A v is negative beyond
/// round-off ("matrix not positive definite on this vector").
real_t a_norm(const SparseMatrix& a, const Vector& v);

struct PowerMethodResult {
    real_t value = 0.0;      // dominant |eigenvalue| estimate
    bool converged = false;
    index_t iterations = 0;
};

/// Power iteration with a fixed-seed start vector; for symmetric A the
/// estimate approaches ||A||_2. Non-convergence returns the best estimate
/// with converged = false.
PowerMethodResult power_method(const SparseMatrix& a, real_t tol = 1e-6,
                               index_t max_iter = 1000);

} // namespace camg

#endif // CAMG_SPARSE_HPP
