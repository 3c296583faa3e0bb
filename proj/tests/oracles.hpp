// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, kept independent of the library
// kernels they are used to check.

#ifndef CAMG_TESTS_ORACLES_HPP
#define CAMG_TESTS_ORACLES_HPP

#include "camg/coarsening.hpp"
#include "camg/dense.hpp"
#include "camg/sparse.hpp"
#include "camg/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

namespace oracles {

using camg::DenseMatrix;
using camg::index_t;
using camg::real_t;
using camg::SparseMatrix;
using camg::Vector;

// Dense P^T A P by three nested loops.
inline DenseMatrix dense_triple_product(const SparseMatrix& p, const SparseMatrix& a) {
    const DenseMatrix dp = camg::dense_from_sparse(p);
    const DenseMatrix da = camg::dense_from_sparse(a);
    DenseMatrix out(dp.n_cols, dp.n_cols);
    for (index_t r = 0; r < dp.n_cols; ++r)
        for (index_t c = 0; c < dp.n_cols; ++c) {
            real_t s = 0.0;
            for (index_t i = 0; i < da.n_rows; ++i)
                for (index_t j = 0; j < da.n_cols; ++j)
                    s += dp(i, r) * da(i, j) * dp(j, c);
            out(r, c) = s;
        }
    return out;
}

// Textbook in-place Cholesky, separate from the library routine.
inline bool spd_by_cholesky(const SparseMatrix& a) {
    DenseMatrix m = camg::dense_from_sparse(a);
    const index_t n = m.n_rows;
    for (index_t j = 0; j < n; ++j) {
        real_t d = m(j, j);
        for (index_t k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
        if (d <= 0.0) return false;
        const real_t ljj = std::sqrt(d);
        m(j, j) = ljj;
        for (index_t i = j + 1; i < n; ++i) {
            real_t s = m(i, j);
            for (index_t k = 0; k < j; ++k) s -= m(i, k) * m(j, k);
            m(i, j) = s / ljj;
        }
    }
    return true;
}

// Exhaustive locally-maximal matching under the tie rule: an edge wins iff
// (weight, then smaller lexicographic id) beats every edge sharing a vertex.
inline std::set<std::pair<index_t, index_t>>
brute_force_local_max(const std::vector<camg::WeightedEdge>& edges) {
    std::set<std::pair<index_t, index_t>> matched;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].weight <= 0.0) continue;
        bool wins = true;
        for (std::size_t f = 0; f < edges.size() && wins; ++f) {
            if (f == e) continue;
            const bool share = edges[f].i == edges[e].i || edges[f].i == edges[e].j ||
                               edges[f].j == edges[e].i || edges[f].j == edges[e].j;
            if (!share) continue;
            if (edges[f].weight > edges[e].weight) wins = false;
            if (edges[f].weight == edges[e].weight &&
                std::make_pair(edges[f].i, edges[f].j) < std::make_pair(edges[e].i, edges[e].j))
                wins = false;
        }
        if (wins) matched.insert({edges[e].i, edges[e].j});
    }
    return matched;
}

// Q by direct summation over all vertex pairs of every aggregate (raw
// rowsums, matching the diagnostic definition).
inline real_t brute_force_modularity(const camg::ModularityGraph& g,
                                     const camg::Aggregation& agg) {
    const index_t n = g.adjacency.n_rows;
    real_t q = 0.0;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            if (agg.vertex_to_agg[static_cast<std::size_t>(i)] !=
                agg.vertex_to_agg[static_cast<std::size_t>(j)])
                continue;
            q += g.adjacency.at(i, j) -
                 g.rowsums[static_cast<std::size_t>(i)] *
                     g.rowsums[static_cast<std::size_t>(j)] / g.total_raw;
        }
    return q / g.total_raw;
}

// Random sparse diagonally-dominant s.p.d. matrix (symmetric pattern).
inline SparseMatrix random_spd(index_t n, camg::Rng& rng, real_t density = 0.2,
                               bool m_matrix = false) {
    std::vector<camg::Triplet> entries;
    std::vector<real_t> offdiag_sum(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j) {
            const real_t u = 0.5 * (rng.uniform() + 1.0); // [0,1)
            if (u > density) continue;
            real_t v = rng.uniform();
            if (m_matrix) v = -std::fabs(v);
            entries.emplace_back(i, j, v);
            entries.emplace_back(j, i, v);
            offdiag_sum[static_cast<std::size_t>(i)] += std::fabs(v);
            offdiag_sum[static_cast<std::size_t>(j)] += std::fabs(v);
        }
    for (index_t i = 0; i < n; ++i) {
        const real_t bump = 0.05 + 0.5 * (rng.uniform() + 1.0);
        entries.emplace_back(i, i, offdiag_sum[static_cast<std::size_t>(i)] + bump);
    }
    return camg::sparse_from_triplets(n, n, std::move(entries));
}

inline real_t max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    real_t m = 0.0;
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t j = 0; j < a.n_cols; ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

} // namespace oracles

#endif // CAMG_TESTS_ORACLES_HPP
