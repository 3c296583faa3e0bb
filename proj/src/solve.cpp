// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/solve.hpp"
#include "camg/vector_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace camg {

std::string to_string(SolveMode mode) {
    return mode == SolveMode::stationary ? "stationary" : "pcg";
}

namespace {

real_t cycle_exponent(const CompositeSolver& c) {
    return 1.0 / static_cast<real_t>(2 * c.solver_k() - 1);
}

} // namespace

SolveResult stationary_solve(const CompositeSolver& c, const Vector& b, real_t tol,
                             index_t max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const SparseMatrix& a = *c.a;
    const auto start = std::chrono::steady_clock::now();

    SolveResult out;
    out.report.mode = SolveMode::stationary;
    out.report.components = c.solver_k();
    out.report.complexity = operator_complexity(c);
    out.report.residual_history.push_back(1.0);
    out.x = zeros(a.n_rows);

    const real_t bn = nrm2(b);
    if (bn == 0.0) {
        out.report.converged = true;
        return out;
    }

    const real_t exponent = cycle_exponent(c);
    real_t prev = 1.0;
    for (index_t it = 1; it <= max_iter; ++it) {
        const Vector r = residual(a, b, out.x);
        axpy(1.0, composite_apply(c, r), out.x);

        const real_t relres = nrm2(residual(a, b, out.x)) / bn;
        out.report.residual_history.push_back(relres);
        out.report.rho_per_cycle.push_back(std::pow(relres / prev, exponent));
        prev = relres;
        out.report.iterations = it;

        if (relres > 1e3)
            throw std::runtime_error("stationary iteration diverged (relative residual > 1e3)");
        if (relres <= tol) {
            out.report.converged = true;
            break;
        }
    }
    out.report.cycles = out.report.iterations * (2 * c.solver_k() - 1);
    out.report.wall_seconds =
        std::chrono::duration<real_t>(std::chrono::steady_clock::now() - start).count();
    return out;
}

SolveResult pcg_solve(const CompositeSolver& c, const Vector& b, real_t tol,
                      index_t max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const SparseMatrix& a = *c.a;
    const auto start = std::chrono::steady_clock::now();

    SolveResult out;
    out.report.mode = SolveMode::pcg;
    out.report.components = c.solver_k();
    out.report.complexity = operator_complexity(c);
    out.report.residual_history.push_back(1.0);
    out.x = zeros(a.n_rows);

    const real_t bn = nrm2(b);
    if (bn == 0.0) {
        out.report.converged = true;
        return out;
    }

    Vector r = b;
    Vector z = composite_apply(c, r);
    Vector p = z;
    real_t rz = dot(r, z);
    if (rz <= 0.0) throw std::runtime_error("matrix or preconditioner not s.p.d.");

    const real_t exponent = cycle_exponent(c);
    real_t prev = 1.0;
    for (index_t it = 1; it <= max_iter; ++it) {
        const Vector ap = spmv(a, p);
        const real_t pap = dot(p, ap);
        if (pap <= 0.0) throw std::runtime_error("matrix or preconditioner not s.p.d.");
        const real_t alpha = rz / pap;
        axpy(alpha, p, out.x);
        axpy(-alpha, ap, r);

        const real_t relres = nrm2(r) / bn;
        out.report.residual_history.push_back(relres);
        out.report.rho_per_cycle.push_back(std::pow(relres / prev, exponent));
        prev = relres;
        out.report.iterations = it;

        if (relres <= tol) {
            out.report.converged = true;
            break;
        }
        z = composite_apply(c, r);
        const real_t rz_next = dot(r, z);
        if (rz_next <= 0.0) throw std::runtime_error("matrix or preconditioner not s.p.d.");
        const real_t beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    out.report.cycles = out.report.iterations * (2 * c.solver_k() - 1);
    out.report.wall_seconds =
        std::chrono::duration<real_t>(std::chrono::steady_clock::now() - start).count();
    return out;
}

real_t asymptotic_rho(const ConvergenceReport& report, index_t tail) {
    const auto& h = report.residual_history;
    if (h.size() < 2) return 0.0;
    const std::size_t steps = std::min<std::size_t>(static_cast<std::size_t>(tail), h.size() - 1);
    const real_t first = h[h.size() - 1 - steps];
    const real_t last = h.back();
    if (first <= 0.0 || last <= 0.0) return 0.0;
    const real_t per_iter = std::pow(last / first, 1.0 / static_cast<real_t>(steps));
    const real_t exponent = 1.0 / static_cast<real_t>(2 * report.components - 1);
    return std::pow(per_iter, exponent);
}

Metrics compute_metrics(const CompositeSolver& c, const ConvergenceReport& stationary,
                        const ConvergenceReport& pcg) {
    Metrics m;
    m.k = c.solver_k();
    m.complexity = operator_complexity(c);
    m.stationary_rho = asymptotic_rho(stationary);
    m.pcg_rho = asymptotic_rho(pcg);
    m.stationary_iterations = stationary.iterations;
    m.pcg_iterations = pcg.iterations;
    m.stationary_cycles = stationary.cycles;
    m.pcg_cycles = pcg.cycles;
    return m;
}

CompositeSolver prefix_composite(const CompositeSolver& c, index_t m) {
    if (m < 0 || m > c.n_components())
        throw std::invalid_argument("prefix_composite: invalid component count");
    CompositeSolver p;
    p.base = c.base;
    p.a = c.a;
    p.components.assign(c.components.begin(), c.components.begin() + m);
    return p;
}

} // namespace camg
