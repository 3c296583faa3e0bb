// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace camg {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

} // namespace

SparseMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::string banner;
    if (!std::getline(in, banner) || banner.rfind("%%MatrixMarket", 0) != 0)
        throw std::runtime_error("malformed Matrix Market header in '" + path + "'");

    std::istringstream bs(banner);
    std::string tag, object, format, field, symmetry;
    bs >> tag >> object >> format >> field >> symmetry;
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);

    if (object != "matrix") throw std::runtime_error("unsupported Matrix Market object: " + object);
    if (format != "coordinate")
        throw std::runtime_error("unsupported Matrix Market format: " + format);
    if (field != "real")
        throw std::runtime_error("unsupported Matrix Market field: " + field + " (real required)");
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        throw std::runtime_error("unsupported Matrix Market symmetry: " + symmetry);

    std::string line;
    if (!next_data_line(in, line)) throw std::runtime_error("missing size line in '" + path + "'");
    index_t n_rows = 0, n_cols = 0, n_entries = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n_rows >> n_cols >> n_entries) || n_rows <= 0 || n_cols <= 0 || n_entries < 0)
            throw std::runtime_error("malformed size line in '" + path + "'");
    }

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(symmetric ? 2 * n_entries : n_entries));
    for (index_t k = 0; k < n_entries; ++k) {
        if (!next_data_line(in, line))
            throw std::runtime_error("unexpected end of file in '" + path + "'");
        std::istringstream ls(line);
        index_t i = 0, j = 0;
        real_t v = 0.0;
        if (!(ls >> i >> j >> v))
            throw std::runtime_error("malformed entry at data line " + std::to_string(k + 1));
        if (i < 1 || i > n_rows || j < 1 || j > n_cols)
            throw std::runtime_error("index out of bounds at data line " + std::to_string(k + 1));
        entries.emplace_back(i - 1, j - 1, v);
        if (symmetric && i != j) entries.emplace_back(j - 1, i - 1, v);
    }
    return sparse_from_triplets(n_rows, n_cols, std::move(entries));
}

void save_matrix_market(const std::string& path, const SparseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.precision(17);

    const bool symmetric = a.n_rows == a.n_cols && is_symmetric(a, 0.0);
    out << "%%MatrixMarket matrix coordinate real "
        << (symmetric ? "symmetric" : "general") << "\n";

    index_t count = 0;
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            if (!symmetric || a.col_indices[static_cast<std::size_t>(k)] <= i) ++count;

    out << a.n_rows << " " << a.n_cols << " " << count << "\n";
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            if (symmetric && j > i) continue;
            out << (i + 1) << " " << (j + 1) << " "
                << a.values[static_cast<std::size_t>(k)] << "\n";
        }
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

Vector load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Vector v;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '%') continue;
        std::istringstream ls(line);
        real_t x;
        while (ls >> x) v.push_back(x);
    }
    if (v.empty()) throw std::runtime_error("no values in vector file '" + path + "'");
    return v;
}

} // namespace camg
