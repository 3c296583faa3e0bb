// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_SMOOTHERS_HPP
#define CAMG_SMOOTHERS_HPP

#include "camg/dense.hpp"
#include "camg/sparse.hpp"

#include <string>
#include <vector>

namespace camg {

enum class SmootherKind {
    l1_jacobi,
    forward_gs,
    backward_gs,
    symmetric_gs,
    weighted_jacobi,
    block_jacobi,
};

std::string to_string(SmootherKind kind);
SmootherKind smoother_kind_from_string(const std::string& name);

/// forward_gs <-> backward_gs; the s.p.d. kinds are their own transpose.
SmootherKind transpose_kind(SmootherKind kind);

bool is_spd_kind(SmootherKind kind);

struct SmootherState {
    SmootherKind kind = SmootherKind::l1_jacobi;
    Vector diag_data;      // l1 row sums, or the matrix diagonal
    real_t omega = 2.0 / 3.0;
    std::vector<index_t> block_offsets;        // block_jacobi boundaries
    std::vector<CholeskyFactor> block_factors; // factored blocks
};

/// Prepares smoother data for A. Block Jacobi uses contiguous blocks of
/// `block_size` rows (remainder block at the end); each diagonal block is
/// augmented by the l1 row sums of its off-block entries so that
/// v^T B v >= v^T A v holds for every kind that defines an s.p.d. B.
SmootherState build_smoother(const SparseMatrix& a, SmootherKind kind,
                             index_t block_size = 0, real_t omega = 2.0 / 3.0);

/// Same, with explicit (possibly non-uniform) block boundaries.
SmootherState build_block_jacobi(const SparseMatrix& a,
                                 std::vector<index_t> block_offsets);

/// x <- x + B^{-1}(b - A x), `sweeps` times. symmetric_gs does a forward
/// then a backward pass per application. `transposed` applies B^T instead
/// (swaps the Gauss-Seidel direction; no-op for symmetric kinds).
void smoother_apply(const SmootherState& s, const SparseMatrix& a, const Vector& b,
                    Vector& x, index_t sweeps = 1, bool transposed = false);

struct NormBound {
    real_t norm_b = 0.0; // ||B||, exact for l1 / weighted Jacobi / block Jacobi
    real_t c0 = 0.0;     // ||B|| / ||A|| with ||A|| from the power method
};

/// Throws for kinds that do not define an s.p.d. B (forward/backward GS).
NormBound smoother_norm_bound(const SmootherState& s, const SparseMatrix& a);

} // namespace camg

#endif // CAMG_SMOOTHERS_HPP
