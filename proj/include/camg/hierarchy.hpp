// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_HIERARCHY_HPP
#define CAMG_HIERARCHY_HPP

#include "camg/coarsening.hpp"
#include "camg/dense.hpp"
#include "camg/smoothers.hpp"
#include "camg/sparse.hpp"

#include <vector>

namespace camg {

struct HierarchyParams {
    index_t mu = 1;            // cycle parameter (1 = V, 2 = W)
    index_t nu = 1;            // total smoothing sweeps per level
    real_t gamma = 8.0;        // coarsening factor
    index_t n_sa = 1;          // candidate count
    real_t omega = 2.0 / 3.0;  // interpolation smoothing weight
    index_t coarse_size = 64;  // direct-solve threshold
    SmootherKind fine_smoother = SmootherKind::l1_jacobi;
    bool skip_finest_smoothing = false; // unsmoothed finest-level interpolation
};

/// Result of per-aggregate orthonormalization of the candidates.
struct TentativeInterp {
    SparseMatrix p;                       // n x n_coarse block-orthonormal
    DenseMatrix coarse_candidates;        // R with P R = W per aggregate
    std::vector<index_t> coarse_offsets;  // coarse DOFs per aggregate, size n_agg+1
    index_t deficiency = 0;               // locally dropped candidate columns
};

TentativeInterp tentative_interp(const Aggregation& agg, const DenseMatrix& w);

/// (I - omega D^{-1} A) P as a sparse product; throws on zero diagonal.
SparseMatrix smooth_interp(const SparseMatrix& a, const SparseMatrix& p, real_t omega);

struct Level {
    MatrixPtr op;                 // A_l
    SparseMatrix interp;          // smoothed interpolation (empty on coarsest)
    SparseMatrix restriction;     // interp^T
    SparseMatrix tentative;       // unsmoothed interpolation
    DenseMatrix candidates;       // W_l used to build this level's coarsening
    DenseMatrix coarse_candidates;
    SmootherState smoother;
    Aggregation agg;
    std::vector<index_t> coarse_offsets;
    index_t deficiency = 0;
};

/// Multilevel smoothed-aggregation structure for one solver component.
struct Hierarchy {
    std::vector<Level> levels; // last entry is the coarsest (operator only)
    CholeskyFactor coarse_factor;
    HierarchyParams params;

    index_t depth() const { return static_cast<index_t>(levels.size()); }
    index_t total_nnz() const;
    /// total nnz over all level operators relative to the finest.
    real_t grid_complexity() const;
};

/// Aggregates with the coarsening module, orthonormalizes candidates per
/// aggregate, smooths the interpolation and assembles Galerkin coarse
/// operators until the direct-solve threshold; throws when the finest level
/// cannot be coarsened at all.
Hierarchy build_hierarchy(MatrixPtr a, const DenseMatrix& w, HierarchyParams params);

/// One mu-cycle at `level` applied to A x = b, updating x in place.
/// `adjoint` runs the reverse cycle (transposed smoothers, swapped
/// pre/post counts) realizing the transpose solver application.
void mu_cycle(const Hierarchy& h, index_t level, const Vector& b, Vector& x,
              bool adjoint = false);

/// One cycle from a zero initial guess: the action of B_k^{-1}.
Vector hierarchy_apply(const Hierarchy& h, const Vector& b);
Vector hierarchy_apply_adjoint(const Hierarchy& h, const Vector& b);

} // namespace camg

#endif // CAMG_HIERARCHY_HPP
