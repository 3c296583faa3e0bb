// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/hierarchy.hpp"
#include "camg/vector_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace camg {

TentativeInterp tentative_interp(const Aggregation& agg, const DenseMatrix& w) {
    validate(agg);
    const index_t n = static_cast<index_t>(agg.vertex_to_agg.size());
    if (w.n_rows != n || w.n_cols < 1)
        throw std::invalid_argument("tentative_interp: candidate block shape mismatch");
    const index_t k = w.n_cols;

    std::vector<std::vector<index_t>> members(static_cast<std::size_t>(agg.n_agg));
    for (index_t i = 0; i < n; ++i)
        members[static_cast<std::size_t>(agg.vertex_to_agg[static_cast<std::size_t>(i)])]
            .push_back(i);

    TentativeInterp out;
    out.coarse_offsets.assign(static_cast<std::size_t>(agg.n_agg) + 1, 0);

    std::vector<Triplet> p_entries;
    std::vector<std::vector<real_t>> r_rows; // coarse candidate rows, k wide

    constexpr real_t kDropTol = 1e-13;
    for (index_t a = 0; a < agg.n_agg; ++a) {
        const auto& rows = members[static_cast<std::size_t>(a)];
        const index_t s = static_cast<index_t>(rows.size());

        // Local modified Gram-Schmidt over the candidate columns restricted
        // to this aggregate; dependent columns are dropped locally.
        std::vector<Vector> q;
        for (index_t c = 0; c < k; ++c) {
            Vector v(static_cast<std::size_t>(s));
            real_t orig = 0.0;
            for (index_t r = 0; r < s; ++r) {
                v[static_cast<std::size_t>(r)] = w(rows[static_cast<std::size_t>(r)], c);
                orig += v[static_cast<std::size_t>(r)] * v[static_cast<std::size_t>(r)];
            }
            orig = std::sqrt(orig);
            if (orig == 0.0) {
                ++out.deficiency;
                continue;
            }
            for (const Vector& qt : q) {
                real_t proj = 0.0;
                for (index_t r = 0; r < s; ++r)
                    proj += qt[static_cast<std::size_t>(r)] * v[static_cast<std::size_t>(r)];
                for (index_t r = 0; r < s; ++r)
                    v[static_cast<std::size_t>(r)] -= proj * qt[static_cast<std::size_t>(r)];
            }
            real_t rn = 0.0;
            for (const real_t x : v) rn += x * x;
            rn = std::sqrt(rn);
            if (rn <= kDropTol * orig) {
                ++out.deficiency;
                continue;
            }
            for (auto& x : v) x /= rn;
            q.push_back(std::move(v));
        }

        const index_t rank = static_cast<index_t>(q.size());
        const index_t col0 = out.coarse_offsets[static_cast<std::size_t>(a)];
        out.coarse_offsets[static_cast<std::size_t>(a) + 1] = col0 + rank;

        for (index_t t = 0; t < rank; ++t)
            for (index_t r = 0; r < s; ++r)
                p_entries.emplace_back(rows[static_cast<std::size_t>(r)], col0 + t,
                                       q[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)]);

        // R rows: coefficients of the original candidates in the local basis.
        for (index_t t = 0; t < rank; ++t) {
            std::vector<real_t> row(static_cast<std::size_t>(k), 0.0);
            for (index_t c = 0; c < k; ++c) {
                real_t proj = 0.0;
                for (index_t r = 0; r < s; ++r)
                    proj += q[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)] *
                            w(rows[static_cast<std::size_t>(r)], c);
                row[static_cast<std::size_t>(c)] = proj;
            }
            r_rows.push_back(std::move(row));
        }
    }

    const index_t n_coarse = out.coarse_offsets.back();
    if (n_coarse == 0)
        throw std::runtime_error("tentative_interp: all candidate columns degenerate");

    out.p = sparse_from_triplets(n, n_coarse, std::move(p_entries));
    out.coarse_candidates = DenseMatrix(n_coarse, k);
    for (index_t i = 0; i < n_coarse; ++i)
        for (index_t c = 0; c < k; ++c)
            out.coarse_candidates(i, c) =
                r_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    return out;
}

SparseMatrix smooth_interp(const SparseMatrix& a, const SparseMatrix& p, real_t omega) {
    if (a.n_rows != a.n_cols || a.n_cols != p.n_rows)
        throw std::invalid_argument("smooth_interp dimension mismatch");
    if (omega == 0.0) return p;

    SparseMatrix scaled = a; // D^{-1} A
    for (index_t i = 0; i < a.n_rows; ++i) {
        const real_t d = a.at(i, i);
        if (d == 0.0) throw std::runtime_error("smooth_interp: zero diagonal entry");
        for (index_t k = scaled.row_offsets[static_cast<std::size_t>(i)];
             k < scaled.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            scaled.values[static_cast<std::size_t>(k)] /= d;
    }
    return sparse_add(1.0, p, -omega, spgemm(scaled, p));
}

index_t Hierarchy::total_nnz() const {
    index_t s = 0;
    for (const auto& level : levels) s += level.op->nnz();
    return s;
}

real_t Hierarchy::grid_complexity() const {
    if (levels.empty()) return 0.0;
    return static_cast<real_t>(total_nnz()) /
           static_cast<real_t>(levels.front().op->nnz());
}

namespace {

SmootherState build_level_smoother(const SparseMatrix& a, const HierarchyParams& params,
                                   bool finest, const std::vector<index_t>& block_offsets) {
    if (finest || params.n_sa <= 1)
        return build_smoother(a, params.fine_smoother, 0, params.omega);
    return build_block_jacobi(a, block_offsets);
}

// Coarse DOFs of one aggregate become one starting group on the next level.
Aggregation initial_groups(const std::vector<index_t>& coarse_offsets) {
    Aggregation agg;
    agg.vertex_to_agg.resize(static_cast<std::size_t>(coarse_offsets.back()));
    index_t group = 0;
    for (std::size_t a = 0; a + 1 < coarse_offsets.size(); ++a) {
        if (coarse_offsets[a + 1] == coarse_offsets[a]) continue; // empty aggregate
        for (index_t i = coarse_offsets[a]; i < coarse_offsets[a + 1]; ++i)
            agg.vertex_to_agg[static_cast<std::size_t>(i)] = group;
        ++group;
    }
    agg.n_agg = group;
    return agg;
}

std::vector<index_t> nonempty_blocks(const std::vector<index_t>& offsets) {
    std::vector<index_t> out;
    out.push_back(0);
    for (std::size_t a = 0; a + 1 < offsets.size(); ++a)
        if (offsets[a + 1] > offsets[a]) out.push_back(offsets[a + 1]);
    return out;
}

} // namespace

Hierarchy build_hierarchy(MatrixPtr a, const DenseMatrix& w, HierarchyParams params) {
    if (!a) throw std::invalid_argument("build_hierarchy: null matrix");
    if (a->n_rows != a->n_cols) throw std::invalid_argument("build_hierarchy: matrix not square");
    if (!is_symmetric(*a, 0.0))
        throw std::runtime_error("build_hierarchy: matrix not symmetric");
    if (w.n_rows != a->n_rows || w.n_cols < 1)
        throw std::invalid_argument("build_hierarchy: candidate block shape mismatch");
    params.n_sa = w.n_cols;

    Hierarchy h;
    h.params = params;

    MatrixPtr cur = std::move(a);
    DenseMatrix cur_w = w;
    std::optional<Aggregation> initial;
    std::vector<index_t> block_offsets; // groups that formed the current level

    constexpr index_t kMaxLevels = 64;
    while (static_cast<index_t>(h.levels.size()) < kMaxLevels) {
        if (cur->n_rows <= params.coarse_size) break;

        Aggregation agg = aggregate(*cur, cur_w, params.gamma, initial);
        if (agg.n_agg >= cur->n_rows) {
            if (h.levels.empty())
                throw std::runtime_error("matrix not coarsenable with given candidates");
            break;
        }

        TentativeInterp tent = tentative_interp(agg, cur_w);
        const bool finest = h.levels.empty();
        const SparseMatrix interp =
            (finest && params.skip_finest_smoothing)
                ? tent.p
                : smooth_interp(*cur, tent.p, params.omega);
        SparseMatrix coarse_op = triple_product(interp, *cur);
        for (index_t i = 0; i < coarse_op.n_rows; ++i)
            if (coarse_op.at(i, i) <= 0.0)
                throw std::runtime_error("build_hierarchy: interpolation lost rank");

        Level level;
        level.op = cur;
        level.interp = interp;
        level.restriction = transpose(interp);
        level.tentative = std::move(tent.p);
        level.candidates = cur_w;
        level.coarse_candidates = tent.coarse_candidates;
        level.agg = std::move(agg);
        level.coarse_offsets = tent.coarse_offsets;
        level.deficiency = tent.deficiency;
        level.smoother = build_level_smoother(*cur, params, finest, block_offsets);
        h.levels.push_back(std::move(level));

        initial = initial_groups(tent.coarse_offsets);
        block_offsets = nonempty_blocks(tent.coarse_offsets);
        cur = std::make_shared<const SparseMatrix>(std::move(coarse_op));
        cur_w = std::move(tent.coarse_candidates);
    }

    Level coarsest;
    coarsest.op = cur;
    h.levels.push_back(std::move(coarsest));
    h.coarse_factor = cholesky(dense_from_sparse(*cur));
    return h;
}

void mu_cycle(const Hierarchy& h, index_t level, const Vector& b, Vector& x, bool adjoint) {
    if (level < 0 || level >= h.depth()) throw std::invalid_argument("invalid level");
    const Level& lv = h.levels[static_cast<std::size_t>(level)];

    if (level + 1 == h.depth()) {
        // direct solve of the residual equation on the coarsest level
        const Vector r = residual(*lv.op, b, x);
        const Vector z = h.coarse_factor.solve(r);
        axpy(1.0, z, x);
        return;
    }

    const index_t nu = h.params.nu;
    index_t pre = (nu + 1) / 2;
    index_t post = nu - pre;
    if (adjoint) std::swap(pre, post);

    // The cycle pre-smooths with the smoother as built and post-smooths with
    // its transpose; the adjoint cycle keeps that pattern with the sweep
    // counts swapped, which realizes the exact A-adjoint of the cycle.
    if (pre > 0) smoother_apply(lv.smoother, *lv.op, b, x, pre, false);

    const Vector r = residual(*lv.op, b, x);
    const Vector rc = spmv(lv.restriction, r);
    Vector xc = zeros(static_cast<index_t>(rc.size()));
    for (index_t visit = 0; visit < h.params.mu; ++visit)
        mu_cycle(h, level + 1, rc, xc, adjoint);
    const Vector correction = spmv(lv.interp, xc);
    axpy(1.0, correction, x);

    if (post > 0) smoother_apply(lv.smoother, *lv.op, b, x, post, true);
}

Vector hierarchy_apply(const Hierarchy& h, const Vector& b) {
    Vector x = zeros(static_cast<index_t>(b.size()));
    mu_cycle(h, 0, b, x, false);
    return x;
}

Vector hierarchy_apply_adjoint(const Hierarchy& h, const Vector& b) {
    Vector x = zeros(static_cast<index_t>(b.size()));
    mu_cycle(h, 0, b, x, true);
    return x;
}

} // namespace camg
