// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_COMPOSITE_HPP
#define CAMG_COMPOSITE_HPP

#include "camg/dense.hpp"
#include "camg/hierarchy.hpp"
#include "camg/smoothers.hpp"
#include "camg/sparse.hpp"

#include <cstdint>
#include <vector>

namespace camg {

/// Ordered multiplicative composition of a base smoother B_0 with component
/// hierarchies B_1..B_m. One application realizes the s.p.d. operator whose
/// error propagator is the symmetric sandwich
///   (I - B_m^{-T}A) ... (I - B_1^{-T}A)(I - B_0^{-1}A)(I - B_1^{-1}A) ... (I - B_m^{-1}A).
struct CompositeSolver {
    SmootherState base;
    MatrixPtr a;
    std::vector<Hierarchy> components;

    index_t n_components() const { return static_cast<index_t>(components.size()); }
    /// Solver components counting the base; one iteration costs
    /// 2 * solver_k() - 1 cycles.
    index_t solver_k() const { return n_components() + 1; }
};

CompositeSolver make_base_solver(MatrixPtr a, SmootherKind kind = SmootherKind::l1_jacobi);

/// x = B^{-1} b via the error-propagation form: components m..1, the base,
/// then components 1..m applied through their adjoint cycles.
Vector composite_apply(const CompositeSolver& c, const Vector& b);

/// Average operator complexity C_k: nonzeros of all hierarchies (the base
/// counts the fine matrix) over solver_k times the fine nonzeros.
real_t operator_complexity(const CompositeSolver& c);

struct TesterOptions {
    real_t stall_threshold = 0.999;
    index_t stall_persistence = 3;
    bool early_exit = true;
};

struct TesterResult {
    real_t rho_b = 0.0;  // ||x_m||_A / ||x_{m-1}||_A
    Vector w;            // euclidean-normalized candidate
    Vector history;      // A-norms per step, history[0] = ||x_0||_A
    bool exact = false;  // iterate vanished: nothing left to find
    index_t steps = 0;
};

/// Stationary iteration on A x = 0 from a seeded random start; exposes the
/// error components the solver cannot damp.
TesterResult tester(const CompositeSolver& c, index_t m, std::uint64_t seed,
                    const TesterOptions& opts = {});

struct TheoremCheck {
    bool holds = false;
    real_t ratio = 0.0; // ||A w||^2 / (norm_b * delta * ||w||_A^2)
    real_t delta = 0.0; // 1 - rho_b^2, clamped away from zero
    bool delta_clamped = false;
};

/// Near-null bound check: ||A w||^2 <= norm_b * (1 - rho_b^2) * ||w||_A^2.
TheoremCheck theorem_check(const SparseMatrix& a, const Vector& w, real_t rho_b,
                           real_t norm_b, real_t tol = 1e-8);

struct NearNullBasis {
    DenseMatrix columns;             // euclidean-orthonormal
    std::vector<index_t> provenance; // originating tester chain per column
    bool exact = false;
};

/// Runs n_vectors tester chains in lockstep, re-orthonormalizing by modified
/// Gram-Schmidt in A-norm-descending column order every ortho_period steps
/// and at the end; zero columns are dropped.
NearNullBasis multi_tester(const CompositeSolver& c, index_t m, index_t n_vectors,
                           index_t ortho_period, std::uint64_t seed);

struct AdaptiveConfig {
    real_t target_rho = 0.25;
    index_t tester_iters = 10;
    index_t n_sa = 1;
    real_t gamma = 8.0;
    index_t mu = 1;
    index_t nu = 1;
    real_t omega = 2.0 / 3.0;
    index_t max_components = 8;
    index_t coarse_size = 64;
    std::uint64_t seed = 1234;
    SmootherKind base_kind = SmootherKind::l1_jacobi;
    SmootherKind level_smoother = SmootherKind::l1_jacobi;
    index_t ortho_period = 5;
    TesterOptions tester_options = {};
    bool skip_finest_smoothing = false;
};

struct LevelSummary {
    index_t dim = 0;
    index_t nnz = 0;
    index_t aggregates = 0;
    index_t deficiency = 0;
};

struct ComponentRecord {
    index_t index = 0;        // component number, 1-based
    real_t rho_before = 0.0;  // factor of the composite this component answers
    real_t theorem_ratio = 0.0;
    bool theorem_holds = false;
    std::vector<LevelSummary> levels;
    real_t hierarchy_complexity = 0.0;
    real_t wall_seconds = 0.0;
};

struct BuildLog {
    std::uint64_t seed = 0;
    real_t norm_b0 = 0.0;          // ||B_0||, exact for the l1 base
    real_t a_norm_estimate = 0.0;  // power-method ||A||
    std::vector<ComponentRecord> components;
    real_t final_rho = 0.0;
    bool target_reached = false;
    index_t final_k = 0;           // solver components counting the base
    real_t final_complexity = 0.0; // C_k
};

/// Adaptive loop: test the current composite, stop at the target factor,
/// otherwise harvest candidates (tester or multi_tester) and append a new
/// modularity-matching hierarchy built from them.
std::pair<CompositeSolver, BuildLog> adaptive_build(MatrixPtr a, const AdaptiveConfig& config);

struct OverlapScore {
    real_t score = 0.0; // nuclear norm of Q^T W over cols(Q), in [0, 1]
    Vector per_vector;  // ||W^T q_i|| per column of Q
};

/// Overlap of two column-orthonormal bases; throws when either input is not
/// orthonormal to 1e-8.
OverlapScore subspace_overlap(const DenseMatrix& q, const DenseMatrix& w);

} // namespace camg

#endif // CAMG_COMPOSITE_HPP
