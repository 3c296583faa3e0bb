// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/coarsening.hpp"
#include "camg/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace camg {

Aggregation singleton_aggregation(index_t n) {
    Aggregation agg;
    agg.vertex_to_agg.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) agg.vertex_to_agg[static_cast<std::size_t>(i)] = i;
    agg.n_agg = n;
    return agg;
}

void validate(const Aggregation& agg) {
    std::vector<char> seen(static_cast<std::size_t>(agg.n_agg), 0);
    for (const index_t a : agg.vertex_to_agg) {
        if (a < 0 || a >= agg.n_agg)
            throw std::invalid_argument("aggregate index out of range");
        seen[static_cast<std::size_t>(a)] = 1;
    }
    for (const char s : seen)
        if (!s) throw std::invalid_argument("aggregation not surjective");
}

ModularityGraph make_modularity_graph(SparseMatrix adjacency) {
    Vector rowsums(static_cast<std::size_t>(adjacency.n_rows), 0.0);
    for (index_t i = 0; i < adjacency.n_rows; ++i) {
        real_t s = 0.0;
        for (index_t k = adjacency.row_offsets[static_cast<std::size_t>(i)];
             k < adjacency.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            s += adjacency.values[static_cast<std::size_t>(k)];
        rowsums[static_cast<std::size_t>(i)] = s;
    }
    real_t total = 0.0;
    for (const real_t r : rowsums) total += std::max(r, 0.0);
    return make_modularity_graph(std::move(adjacency), std::move(rowsums), total);
}

ModularityGraph make_modularity_graph(SparseMatrix adjacency, Vector rowsums, real_t total) {
    if (static_cast<index_t>(rowsums.size()) != adjacency.n_rows)
        throw std::invalid_argument("rowsums length mismatch");
    if (total <= 0.0)
        throw std::runtime_error("modularity graph has non-positive total weight");
    ModularityGraph g;
    g.adjacency = std::move(adjacency);
    g.rowsums = std::move(rowsums);
    g.rowsums_pos.resize(g.rowsums.size());
    g.total_raw = 0.0;
    for (std::size_t i = 0; i < g.rowsums.size(); ++i) {
        g.rowsums_pos[i] = std::max(g.rowsums[i], 0.0);
        g.total_raw += g.rowsums[i];
    }
    g.total = total;
    return g;
}

real_t modularity_weight(const ModularityGraph& g, index_t i, index_t j) {
    return g.adjacency.at(i, j) -
           g.rowsums_pos[static_cast<std::size_t>(i)] *
               g.rowsums_pos[static_cast<std::size_t>(j)] / g.total;
}

real_t modularity_functional(const ModularityGraph& g, const Aggregation& agg) {
    if (static_cast<index_t>(agg.vertex_to_agg.size()) != g.adjacency.n_rows)
        throw std::invalid_argument("aggregation does not cover the graph");

    // Diagnostic of the mathematical modularity matrix: raw row sums, so the
    // all-in-one partition scores exactly zero by the zero-rowsum property.
    // The clamping policy applies to matching weights only.
    const real_t total = g.total_raw != 0.0 ? g.total_raw : g.total;

    real_t internal = 0.0;
    const SparseMatrix& a = g.adjacency;
    for (index_t i = 0; i < a.n_rows; ++i) {
        const index_t ai = agg.vertex_to_agg[static_cast<std::size_t>(i)];
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            if (agg.vertex_to_agg[static_cast<std::size_t>(j)] == ai)
                internal += a.values[static_cast<std::size_t>(k)];
        }
    }
    Vector agg_rowsum(static_cast<std::size_t>(agg.n_agg), 0.0);
    for (std::size_t i = 0; i < g.rowsums.size(); ++i)
        agg_rowsum[static_cast<std::size_t>(agg.vertex_to_agg[i])] += g.rowsums[i];
    real_t penalty = 0.0;
    for (const real_t s : agg_rowsum) penalty += s * s;
    return (internal - penalty / total) / total;
}

real_t modularity_rowsum_defect(const ModularityGraph& g) {
    real_t defect = 0.0;
    for (index_t i = 0; i < g.adjacency.n_rows; ++i) {
        real_t s = 0.0;
        for (index_t k = g.adjacency.row_offsets[static_cast<std::size_t>(i)];
             k < g.adjacency.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            s += g.adjacency.values[static_cast<std::size_t>(k)];
        defect = std::max(defect, std::fabs(s - g.rowsums[static_cast<std::size_t>(i)]));
    }
    return defect;
}

namespace {

// Strictly "better" under the tie rule: larger weight wins, equal weights go
// to the lexicographically smaller (i, j).
bool edge_beats(const WeightedEdge& a, const WeightedEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

} // namespace

Matching match_on_weights(index_t n_vertices, const std::vector<WeightedEdge>& edges) {
    // best[v] = index of the dominant positive edge at v, or -1.
    std::vector<index_t> best(static_cast<std::size_t>(n_vertices), -1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].weight <= 0.0) continue;
        for (const index_t v : {edges[e].i, edges[e].j}) {
            index_t& bv = best[static_cast<std::size_t>(v)];
            if (bv < 0 || edge_beats(edges[e], edges[static_cast<std::size_t>(bv)]))
                bv = static_cast<index_t>(e);
        }
    }
    Matching m;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].weight <= 0.0) continue;
        const auto idx = static_cast<index_t>(e);
        if (best[static_cast<std::size_t>(edges[e].i)] == idx &&
            best[static_cast<std::size_t>(edges[e].j)] == idx)
            m.pairs.emplace_back(edges[e].i, edges[e].j);
    }
    return m;
}

Matching luby_match(const ModularityGraph& g) {
    std::vector<WeightedEdge> edges;
    const SparseMatrix& a = g.adjacency;
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            if (j <= i) continue; // upper triangle, self-loops carry no pairing
            const real_t b = a.values[static_cast<std::size_t>(k)] -
                             g.rowsums_pos[static_cast<std::size_t>(i)] *
                                 g.rowsums_pos[static_cast<std::size_t>(j)] / g.total;
            if (b > 0.0) edges.push_back({i, j, b});
        }
    }
    return match_on_weights(a.n_rows, edges);
}

SparseMatrix strength_graph(const SparseMatrix& a, const DenseMatrix& w) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("strength_graph: matrix not square");
    if (w.n_rows != a.n_rows || w.n_cols < 1)
        throw std::invalid_argument("strength_graph: candidate block shape mismatch");
    for (index_t c = 0; c < w.n_cols; ++c) {
        bool nonzero = false;
        const real_t* col = w.col(c);
        for (index_t i = 0; i < w.n_rows && !nonzero; ++i) nonzero = col[i] != 0.0;
        if (!nonzero) throw std::runtime_error("strength_graph: all-zero candidate column");
    }

    SparseMatrix s;
    s.n_rows = s.n_cols = a.n_rows;
    s.row_offsets.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            if (j == i) continue;
            real_t v = 0.0;
            for (index_t c = 0; c < w.n_cols; ++c)
                v += -w(i, c) * a.values[static_cast<std::size_t>(k)] * w(j, c);
            s.col_indices.push_back(j);
            s.values.push_back(v);
        }
        s.row_offsets[static_cast<std::size_t>(i) + 1] =
            static_cast<index_t>(s.values.size());
    }
    return s;
}

namespace {

// Relabels aggregate ids to 0..n_agg-1 in order of first appearance by
// vertex index.
void compress_labels(Aggregation& agg) {
    std::vector<index_t> remap(agg.vertex_to_agg.size(), -1);
    index_t next = 0;
    for (auto& a : agg.vertex_to_agg) {
        if (remap[static_cast<std::size_t>(a)] < 0) remap[static_cast<std::size_t>(a)] = next++;
        a = remap[static_cast<std::size_t>(a)];
    }
    agg.n_agg = next;
}

Vector restrict_rowsums(const Aggregation& agg, const Vector& r) {
    Vector rc(static_cast<std::size_t>(agg.n_agg), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        rc[static_cast<std::size_t>(agg.vertex_to_agg[i])] += r[i];
    return rc;
}

} // namespace

Aggregation aggregate(const SparseMatrix& a, const DenseMatrix& w, real_t gamma,
                      const std::optional<Aggregation>& initial, AggregateTrace* trace) {
    if (gamma < 2.0) throw std::invalid_argument("gamma must be at least 2");

    const index_t n = a.n_rows;
    Aggregation agg = initial ? *initial : singleton_aggregation(n);
    validate(agg);

    SparseMatrix strength = strength_graph(a, w);
    ModularityGraph g;
    try {
        g = make_modularity_graph(std::move(strength));
    } catch (const std::runtime_error&) {
        Aggregation fallback = singleton_aggregation(n);
        fallback.warning_disconnected = true;
        return fallback;
    }
    if (trace) trace->total = g.total;

    while (static_cast<real_t>(n) < gamma * static_cast<real_t>(agg.n_agg)) {
        // Coarse graph of the current aggregation: adjacency P^T A P with
        // row sums restricted exactly (keeps T fixed across rounds).
        const SparseMatrix p = piecewise_constant_P(agg);
        const SparseMatrix coarse_adj = triple_product(p, g.adjacency);
        const Vector coarse_r = restrict_rowsums(agg, g.rowsums);
        const ModularityGraph gc =
            make_modularity_graph(coarse_adj, coarse_r, g.total);

        if (trace) {
            trace->rowsum_defects.push_back(modularity_rowsum_defect(gc));
            trace->agg_counts.push_back(agg.n_agg);
        }

        // One round: repeat the parallel local-max selection on the
        // remaining vertices until the matching is maximal, with the edge
        // weights fixed. Weights are only recomputed between rounds. Stop
        // committing passes once the coarsening factor is reached.
        std::vector<WeightedEdge> edges;
        const SparseMatrix& ac = gc.adjacency;
        for (index_t i = 0; i < ac.n_rows; ++i)
            for (index_t k = ac.row_offsets[static_cast<std::size_t>(i)];
                 k < ac.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
                const index_t j = ac.col_indices[static_cast<std::size_t>(k)];
                if (j <= i) continue;
                const real_t b = ac.values[static_cast<std::size_t>(k)] -
                                 gc.rowsums_pos[static_cast<std::size_t>(i)] *
                                     gc.rowsums_pos[static_cast<std::size_t>(j)] / gc.total;
                if (b > 0.0) edges.push_back({i, j, b});
            }

        std::vector<char> taken(static_cast<std::size_t>(agg.n_agg), 0);
        std::vector<std::pair<index_t, index_t>> merges;
        std::vector<WeightedEdge> free_edges = edges;
        while (static_cast<real_t>(n) <
               gamma * static_cast<real_t>(agg.n_agg - static_cast<index_t>(merges.size()))) {
            const Matching pass = match_on_weights(agg.n_agg, free_edges);
            if (pass.pairs.empty()) break;
            for (const auto& [u, v] : pass.pairs) {
                taken[static_cast<std::size_t>(u)] = 1;
                taken[static_cast<std::size_t>(v)] = 1;
                merges.emplace_back(u, v);
            }
            std::vector<WeightedEdge> remaining;
            remaining.reserve(free_edges.size());
            for (const auto& e : free_edges)
                if (!taken[static_cast<std::size_t>(e.i)] && !taken[static_cast<std::size_t>(e.j)])
                    remaining.push_back(e);
            free_edges.swap(remaining);
        }
        if (merges.empty()) break;

        std::vector<index_t> merge(static_cast<std::size_t>(agg.n_agg));
        for (index_t i = 0; i < agg.n_agg; ++i) merge[static_cast<std::size_t>(i)] = i;
        for (const auto& [u, v] : merges)
            merge[static_cast<std::size_t>(std::max(u, v))] = std::min(u, v);
        for (auto& va : agg.vertex_to_agg) va = merge[static_cast<std::size_t>(va)];
        compress_labels(agg);
    }
    compress_labels(agg);
    return agg;
}

SparseMatrix piecewise_constant_P(const Aggregation& agg) {
    validate(agg);
    SparseMatrix p;
    p.n_rows = static_cast<index_t>(agg.vertex_to_agg.size());
    p.n_cols = agg.n_agg;
    p.row_offsets.resize(static_cast<std::size_t>(p.n_rows) + 1);
    p.col_indices.resize(static_cast<std::size_t>(p.n_rows));
    p.values.assign(static_cast<std::size_t>(p.n_rows), 1.0);
    for (index_t i = 0; i <= p.n_rows; ++i) p.row_offsets[static_cast<std::size_t>(i)] = i;
    for (index_t i = 0; i < p.n_rows; ++i)
        p.col_indices[static_cast<std::size_t>(i)] = agg.vertex_to_agg[static_cast<std::size_t>(i)];
    return p;
}

void dump_aggregation(const std::string& path, const Aggregation& agg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < agg.vertex_to_agg.size(); ++i)
        out << i << " " << agg.vertex_to_agg[i] << "\n";
}

} // namespace camg
