// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_SOLVE_HPP
#define CAMG_SOLVE_HPP

#include "camg/composite.hpp"

#include <string>
#include <vector>

namespace camg {

enum class SolveMode { stationary, pcg };

std::string to_string(SolveMode mode);

struct ConvergenceReport {
    SolveMode mode = SolveMode::stationary;
    std::vector<real_t> residual_history; // relative, starts at 1
    std::vector<real_t> rho_per_cycle;    // ratio^(1/(2k-1)) per iteration
    index_t components = 0;               // k, counting the base solver
    real_t complexity = 0.0;              // C_k
    index_t iterations = 0;               // composite / PCG iterations
    index_t cycles = 0;                   // iterations * (2k - 1)
    bool converged = false;
    real_t wall_seconds = 0.0;
};

struct SolveResult {
    Vector x;
    ConvergenceReport report;
};

/// x <- x + B^{-1}(b - A x) from x = 0 until the relative residual reaches
/// tol; throws on divergence (relative residual above 1e3).
SolveResult stationary_solve(const CompositeSolver& c, const Vector& b, real_t tol = 1e-12,
                             index_t max_iter = 100000);

/// Preconditioned conjugate gradient with M^{-1} = composite_apply.
SolveResult pcg_solve(const CompositeSolver& c, const Vector& b, real_t tol = 1e-12,
                      index_t max_iter = 100000);

/// Tail convergence factor per cycle: geometric mean of the last few
/// residual ratios raised to 1/(2k-1).
real_t asymptotic_rho(const ConvergenceReport& report, index_t tail = 5);

struct Metrics {
    index_t k = 0;
    real_t complexity = 0.0;
    real_t stationary_rho = 0.0;
    real_t pcg_rho = 0.0;
    index_t stationary_iterations = 0;
    index_t pcg_iterations = 0;
    index_t stationary_cycles = 0;
    index_t pcg_cycles = 0;
};

Metrics compute_metrics(const CompositeSolver& c, const ConvergenceReport& stationary,
                        const ConvergenceReport& pcg);

/// Composite that reuses the first m component hierarchies of `c` (shared
/// fine matrix and base smoother); m = 0 gives the base solver alone.
CompositeSolver prefix_composite(const CompositeSolver& c, index_t m);

} // namespace camg

#endif // CAMG_SOLVE_HPP
