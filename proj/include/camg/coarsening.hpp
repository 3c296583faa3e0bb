// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_COARSENING_HPP
#define CAMG_COARSENING_HPP

#include "camg/dense.hpp"
#include "camg/sparse.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace camg {

/// Surjective vertex -> aggregate map; induces the piecewise-constant
/// tentative interpolation.
struct Aggregation {
    std::vector<index_t> vertex_to_agg;
    index_t n_agg = 0;
    bool warning_disconnected = false;
};

Aggregation singleton_aggregation(index_t n);
void validate(const Aggregation& agg);

/// Disjoint matched vertex pairs.
struct Matching {
    std::vector<std::pair<index_t, index_t>> pairs;
};

/// Strength graph plus the data needed to evaluate modularity weights
/// b_ij = a_ij - r_i r_j / T on its edges without materializing them.
/// Negative row sums (imperfect candidates) contribute zero to T and make
/// their vertex matchable only through raw positive edges.
struct ModularityGraph {
    SparseMatrix adjacency; // symmetric; diagonal participates in row sums only
    Vector rowsums;         // raw r_i, includes any stored diagonal
    Vector rowsums_pos;     // max(r_i, 0), used in the weight formula
    real_t total = 0.0;     // T = sum of rowsums_pos
    real_t total_raw = 0.0;
};

/// Builds the graph from an adjacency matrix, computing row sums from the
/// stored entries. Throws when the clamped total is not positive.
ModularityGraph make_modularity_graph(SparseMatrix adjacency);

/// Same, with externally supplied row sums and total (coarse levels keep
/// the fine-level total).
ModularityGraph make_modularity_graph(SparseMatrix adjacency, Vector rowsums, real_t total);

/// b_ij for a stored edge of the adjacency.
real_t modularity_weight(const ModularityGraph& g, index_t i, index_t j);

/// Q = (1/T) sum over aggregates of sum_{i,j in agg} b_ij, diagonal terms
/// included; diagnostic only.
real_t modularity_functional(const ModularityGraph& g, const Aggregation& agg);

/// max_i |sum_j adjacency_ij - rowsums_i|; zero-rowsum defect of the
/// implicit modularity matrix (exactly 0 at the finest level, measures the
/// coarsening algebra on coarse graphs).
real_t modularity_rowsum_defect(const ModularityGraph& g);

/// One round of local-max weighted matching over explicit edges: an edge is
/// matched iff its weight strictly exceeds every neighboring edge's weight;
/// ties go to the lexicographically smallest (i, j). Only edges with
/// positive weight participate.
struct WeightedEdge {
    index_t i;
    index_t j;
    real_t weight;
};
Matching match_on_weights(index_t n_vertices, const std::vector<WeightedEdge>& edges);

/// match_on_weights over the off-diagonal positive-modularity edges of g.
Matching luby_match(const ModularityGraph& g);

/// Off-diagonal strength matrix with entries sum_c (-w^c_i a_ij w^c_j) over
/// the candidate columns; diagonal zeroed; output symmetric when A is.
SparseMatrix strength_graph(const SparseMatrix& a, const DenseMatrix& w);

/// Per-round diagnostics collected by aggregate().
struct AggregateTrace {
    std::vector<index_t> agg_counts;      // after each matching round
    std::vector<real_t> rowsum_defects;   // coarse-graph zero-rowsum defect
    real_t total = 0.0;                   // T of the strength graph
};

/// Builds aggregates by recursive matching on coarse modularity graphs,
/// starting from `initial` (or singletons) and stopping when
/// n / n_agg >= gamma or a round matches nothing.
Aggregation aggregate(const SparseMatrix& a, const DenseMatrix& w, real_t gamma,
                      const std::optional<Aggregation>& initial = std::nullopt,
                      AggregateTrace* trace = nullptr);

/// n x n_agg 0-1 matrix with one unit entry per row.
SparseMatrix piecewise_constant_P(const Aggregation& agg);

/// Text dump, one "vertex_index aggregate_index" pair per line.
void dump_aggregation(const std::string& path, const Aggregation& agg);

} // namespace camg

#endif // CAMG_COARSENING_HPP
