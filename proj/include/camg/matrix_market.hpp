// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_MATRIX_MARKET_HPP
#define CAMG_MATRIX_MARKET_HPP

#include "camg/sparse.hpp"

#include <string>

namespace camg {

/// Reads a Matrix Market coordinate file (real field, "general" or
/// "symmetric"). Symmetric input is expanded to full storage; duplicate
/// entries are summed. Indices are 1-based on disk, 0-based in memory.
SparseMatrix load_matrix_market(const std::string& path);

/// Writes coordinate format; symmetric matrices are stored as the lower
/// triangle with the "symmetric" qualifier.
void save_matrix_market(const std::string& path, const SparseMatrix& a);

/// Plain text vector: one value per line, '%' comments allowed.
Vector load_vector(const std::string& path);

} // namespace camg

#endif // CAMG_MATRIX_MARKET_HPP
