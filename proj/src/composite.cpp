// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/composite.hpp"
#include "camg/vector_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace camg {

namespace {

std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
    return rng.next_u64();
}

} // namespace

CompositeSolver make_base_solver(MatrixPtr a, SmootherKind kind) {
    if (!a) throw std::invalid_argument("null matrix");
    if (!is_spd_kind(kind))
        throw std::invalid_argument("base solver must be an s.p.d. smoother kind");
    CompositeSolver c;
    c.base = build_smoother(*a, kind);
    c.a = std::move(a);
    return c;
}

Vector composite_apply(const CompositeSolver& c, const Vector& b) {
    const SparseMatrix& a = *c.a;
    if (static_cast<index_t>(b.size()) != a.n_rows)
        throw std::invalid_argument("composite_apply dimension mismatch");

    Vector x = zeros(a.n_rows);
    const index_t m = c.n_components();

    for (index_t k = m; k >= 1; --k) {
        const Vector r = residual(a, b, x);
        axpy(1.0, hierarchy_apply(c.components[static_cast<std::size_t>(k - 1)], r), x);
    }
    {
        const Vector r = residual(a, b, x);
        Vector z = zeros(a.n_rows);
        smoother_apply(c.base, a, r, z, 1);
        axpy(1.0, z, x);
    }
    for (index_t k = 1; k <= m; ++k) {
        const Vector r = residual(a, b, x);
        axpy(1.0, hierarchy_apply_adjoint(c.components[static_cast<std::size_t>(k - 1)], r), x);
    }
    return x;
}

real_t operator_complexity(const CompositeSolver& c) {
    const real_t fine_nnz = static_cast<real_t>(c.a->nnz());
    real_t total = fine_nnz; // the base solver lives on the fine matrix
    for (const auto& h : c.components) total += static_cast<real_t>(h.total_nnz());
    return total / (static_cast<real_t>(c.solver_k()) * fine_nnz);
}

TesterResult tester(const CompositeSolver& c, index_t m, std::uint64_t seed,
                    const TesterOptions& opts) {
    if (m < 2) throw std::invalid_argument("tester needs m >= 2");
    const SparseMatrix& a = *c.a;

    Rng rng(seed);
    Vector x = rng.uniform_vector(a.n_rows);

    TesterResult res;
    real_t anorm = a_norm(a, x);
    if (anorm == 0.0) {
        res.exact = true;
        res.w = zeros(a.n_rows);
        return res;
    }
    scal(1.0 / anorm, x); // iterate kept at unit A-norm; ratios accumulate
    res.history.push_back(anorm);

    index_t stall_count = 0;
    real_t ratio = 0.0;
    for (index_t s = 1; s <= m; ++s) {
        Vector ax = spmv(a, x);
        scal(-1.0, ax);
        axpy(1.0, composite_apply(c, ax), x);
        res.steps = s;

        ratio = a_norm(a, x); // previous iterate had unit A-norm
        res.history.push_back(res.history.back() * ratio);
        if (ratio < 1e-12 || nrm2(x) == 0.0) {
            res.exact = true;
            res.rho_b = 0.0;
            res.w = zeros(a.n_rows);
            return res;
        }
        scal(1.0 / ratio, x);

        if (opts.early_exit && ratio >= opts.stall_threshold) {
            if (++stall_count >= opts.stall_persistence) break;
        } else {
            stall_count = 0;
        }
    }
    res.rho_b = ratio;
    const real_t en = nrm2(x);
    scal(1.0 / en, x);
    res.w = std::move(x);
    return res;
}

TheoremCheck theorem_check(const SparseMatrix& a, const Vector& w, real_t rho_b,
                           real_t norm_b, real_t tol) {
    TheoremCheck tc;
    tc.delta = 1.0 - rho_b * rho_b;
    if (tc.delta <= 0.0) {
        tc.delta = std::numeric_limits<real_t>::epsilon();
        tc.delta_clamped = true;
    }
    const Vector aw = spmv(a, w);
    const real_t lhs = dot(aw, aw);
    const real_t wa = a_norm(a, w);
    const real_t rhs = norm_b * tc.delta * wa * wa;
    tc.ratio = rhs > 0.0 ? lhs / rhs : std::numeric_limits<real_t>::infinity();
    tc.holds = tc.ratio <= 1.0 + tol;
    return tc;
}

NearNullBasis multi_tester(const CompositeSolver& c, index_t m, index_t n_vectors,
                           index_t ortho_period, std::uint64_t seed) {
    if (n_vectors < 1) throw std::invalid_argument("multi_tester needs n_vectors >= 1");
    if (ortho_period < 1) ortho_period = 5;
    const SparseMatrix& a = *c.a;

    std::vector<Vector> chains;
    std::vector<index_t> origin(static_cast<std::size_t>(n_vectors));
    for (index_t v = 0; v < n_vectors; ++v) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(v)));
        Vector x = rng.uniform_vector(a.n_rows);
        scal(1.0 / nrm2(x), x);
        chains.push_back(std::move(x));
        origin[static_cast<std::size_t>(v)] = v;
    }

    NearNullBasis basis;
    auto orthonormalize = [&]() {
        DenseMatrix w = dense_from_columns(chains);
        std::vector<index_t> order(static_cast<std::size_t>(w.n_cols));
        std::iota(order.begin(), order.end(), index_t{0});
        std::vector<real_t> anorms(static_cast<std::size_t>(w.n_cols));
        for (index_t j = 0; j < w.n_cols; ++j)
            anorms[static_cast<std::size_t>(j)] = a_norm(a, w.col_vector(j));
        std::stable_sort(order.begin(), order.end(), [&](index_t i, index_t j) {
            return anorms[static_cast<std::size_t>(i)] > anorms[static_cast<std::size_t>(j)];
        });

        // modified Gram-Schmidt in A-norm-descending order, zero columns dropped
        std::vector<Vector> kept;
        std::vector<index_t> kept_origin;
        for (const index_t j : order) {
            Vector v = w.col_vector(j);
            const real_t orig = nrm2(v);
            if (orig == 0.0) continue;
            for (const Vector& q : kept) axpy(-dot(q, v), q, v);
            const real_t rn = nrm2(v);
            if (rn <= 1e-12 * orig) continue;
            scal(1.0 / rn, v);
            kept_origin.push_back(origin[static_cast<std::size_t>(j)]);
            kept.push_back(std::move(v));
        }
        chains = kept;
        origin = kept_origin;
    };

    for (index_t s = 1; s <= m && !chains.empty(); ++s) {
        for (Vector& x : chains) {
            Vector ax = spmv(a, x);
            scal(-1.0, ax);
            axpy(1.0, composite_apply(c, ax), x);
            const real_t en = nrm2(x);
            if (en > 0.0) scal(1.0 / en, x);
        }
        if (s % ortho_period == 0 || s == m) orthonormalize();
    }

    if (chains.empty()) {
        basis.exact = true;
        return basis;
    }
    basis.columns = dense_from_columns(chains);
    basis.provenance = origin;
    return basis;
}

std::pair<CompositeSolver, BuildLog> adaptive_build(MatrixPtr a, const AdaptiveConfig& config) {
    if (!a) throw std::invalid_argument("null matrix");
    if (!(config.target_rho > 0.0 && config.target_rho < 1.0))
        throw std::invalid_argument("target rho must lie in (0, 1)");
    if (!is_symmetric(*a, 0.0))
        throw std::runtime_error("adaptive_build: matrix not symmetric");

    CompositeSolver c = make_base_solver(a, config.base_kind);

    BuildLog log;
    log.seed = config.seed;
    {
        const NormBound nb = smoother_norm_bound(c.base, *a);
        log.norm_b0 = nb.norm_b;
        log.a_norm_estimate = nb.norm_b / nb.c0;
    }

    HierarchyParams hp;
    hp.mu = config.mu;
    hp.nu = config.nu;
    hp.gamma = config.gamma;
    hp.n_sa = config.n_sa;
    hp.omega = config.omega;
    hp.coarse_size = config.coarse_size;
    hp.fine_smoother = config.level_smoother;
    hp.skip_finest_smoothing = config.skip_finest_smoothing;

    for (index_t k = 0;; ++k) {
        const TesterResult t = tester(c, config.tester_iters,
                                      substream(config.seed, static_cast<std::uint64_t>(2 * k)),
                                      config.tester_options);
        log.final_rho = t.rho_b;
        if (t.exact || t.rho_b <= config.target_rho) {
            log.target_reached = true;
            break;
        }
        if (k >= config.max_components) break;

        const auto start = std::chrono::steady_clock::now();

        ComponentRecord rec;
        rec.index = k + 1;
        rec.rho_before = t.rho_b;
        const TheoremCheck tc = theorem_check(*a, t.w, t.rho_b, log.norm_b0);
        rec.theorem_ratio = tc.ratio;
        rec.theorem_holds = tc.holds;

        DenseMatrix w;
        if (config.n_sa <= 1) {
            w = dense_from_columns({t.w});
        } else {
            const NearNullBasis basis =
                multi_tester(c, config.tester_iters, config.n_sa, config.ortho_period,
                             substream(config.seed, static_cast<std::uint64_t>(2 * k + 1)));
            if (basis.exact) {
                log.target_reached = true;
                break;
            }
            w = basis.columns;
        }

        Hierarchy h = build_hierarchy(a, w, hp);
        for (std::size_t l = 0; l < h.levels.size(); ++l) {
            const Level& lv = h.levels[l];
            LevelSummary ls;
            ls.dim = lv.op->n_rows;
            ls.nnz = lv.op->nnz();
            ls.aggregates = lv.agg.n_agg;
            ls.deficiency = lv.deficiency;
            rec.levels.push_back(ls);
        }
        rec.hierarchy_complexity = h.grid_complexity();
        c.components.push_back(std::move(h));

        rec.wall_seconds =
            std::chrono::duration<real_t>(std::chrono::steady_clock::now() - start).count();
        log.components.push_back(std::move(rec));
    }

    log.final_k = c.solver_k();
    log.final_complexity = operator_complexity(c);
    return {std::move(c), std::move(log)};
}

OverlapScore subspace_overlap(const DenseMatrix& q, const DenseMatrix& w) {
    if (q.n_rows != w.n_rows) throw std::invalid_argument("subspace_overlap row mismatch");
    if (orthonormality_defect(q) > 1e-8 || orthonormality_defect(w) > 1e-8)
        throw std::invalid_argument("subspace_overlap requires orthonormal inputs");

    const DenseMatrix qtw = dense_matmul(dense_transpose(q), w);
    // nuclear norm through the eigenvalues of (Q^T W)(Q^T W)^T
    const DenseMatrix gram = dense_matmul(qtw, dense_transpose(qtw));
    const Vector eig = sym_eigenvalues(gram);

    OverlapScore s;
    for (const real_t lambda : eig) s.score += std::sqrt(std::max(lambda, 0.0));
    s.score /= static_cast<real_t>(q.n_cols);

    s.per_vector.resize(static_cast<std::size_t>(q.n_cols));
    for (index_t i = 0; i < q.n_cols; ++i) {
        real_t sum = 0.0;
        for (index_t j = 0; j < w.n_cols; ++j) sum += qtw(i, j) * qtw(i, j);
        s.per_vector[static_cast<std::size_t>(i)] = std::sqrt(sum);
    }
    return s;
}

} // namespace camg
