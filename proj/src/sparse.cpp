// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/sparse.hpp"
#include "camg/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camg {

real_t SparseMatrix::at(index_t i, index_t j) const {
    const auto begin = col_indices.begin() + row_offsets[i];
    const auto end = col_indices.begin() + row_offsets[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values[static_cast<std::size_t>(it - col_indices.begin())];
}

SparseMatrix sparse_from_triplets(index_t n_rows, index_t n_cols,
                                  std::vector<Triplet> entries) {
    for (const auto& [i, j, v] : entries) {
        (void)v;
        if (i < 0 || i >= n_rows || j < 0 || j >= n_cols)
            throw std::invalid_argument("triplet index out of bounds");
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Triplet& a, const Triplet& b) {
                         return std::tie(std::get<0>(a), std::get<1>(a)) <
                                std::tie(std::get<0>(b), std::get<1>(b));
                     });

    SparseMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);

    std::size_t k = 0;
    while (k < entries.size()) {
        const index_t i = std::get<0>(entries[k]);
        const index_t j = std::get<1>(entries[k]);
        real_t v = std::get<2>(entries[k]);
        ++k;
        while (k < entries.size() && std::get<0>(entries[k]) == i &&
               std::get<1>(entries[k]) == j) {
            v += std::get<2>(entries[k]);
            ++k;
        }
        m.col_indices.push_back(j);
        m.values.push_back(v);
        ++m.row_offsets[static_cast<std::size_t>(i) + 1];
    }
    for (index_t i = 0; i < n_rows; ++i)
        m.row_offsets[static_cast<std::size_t>(i) + 1] +=
            m.row_offsets[static_cast<std::size_t>(i)];
    return m;
}

SparseMatrix sparse_identity(index_t n) {
    SparseMatrix m;
    m.n_rows = m.n_cols = n;
    m.row_offsets.resize(static_cast<std::size_t>(n) + 1);
    m.col_indices.resize(static_cast<std::size_t>(n));
    m.values.assign(static_cast<std::size_t>(n), 1.0);
    for (index_t i = 0; i <= n; ++i) m.row_offsets[static_cast<std::size_t>(i)] = i;
    for (index_t i = 0; i < n; ++i) m.col_indices[static_cast<std::size_t>(i)] = i;
    return m;
}

SparseMatrix sparse_diagonal(const Vector& d) {
    SparseMatrix m = sparse_identity(static_cast<index_t>(d.size()));
    m.values = d;
    return m;
}

void validate(const SparseMatrix& a) {
    if (a.n_rows < 0 || a.n_cols < 0)
        throw std::invalid_argument("negative dimension");
    if (a.row_offsets.size() != static_cast<std::size_t>(a.n_rows) + 1)
        throw std::invalid_argument("row_offsets length must be n_rows + 1");
    if (a.row_offsets.front() != 0)
        throw std::invalid_argument("row_offsets[0] must be 0");
    if (a.row_offsets.back() != static_cast<index_t>(a.values.size()))
        throw std::invalid_argument("row_offsets[n_rows] must equal nnz");
    if (a.col_indices.size() != a.values.size())
        throw std::invalid_argument("col_indices/values length mismatch");
    for (index_t i = 0; i < a.n_rows; ++i) {
        const index_t lo = a.row_offsets[static_cast<std::size_t>(i)];
        const index_t hi = a.row_offsets[static_cast<std::size_t>(i) + 1];
        if (hi < lo) throw std::invalid_argument("row_offsets not monotone");
        for (index_t k = lo; k < hi; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            if (j < 0 || j >= a.n_cols)
                throw std::invalid_argument("column index out of range");
            if (k > lo && a.col_indices[static_cast<std::size_t>(k) - 1] >= j)
                throw std::invalid_argument("column indices not strictly increasing");
        }
    }
}

real_t symmetry_defect(const SparseMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("matrix not square");
    real_t defect = 0.0;
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            defect = std::max(defect,
                              std::fabs(a.values[static_cast<std::size_t>(k)] - a.at(j, i)));
        }
    }
    return defect;
}

bool is_symmetric(const SparseMatrix& a, real_t tol) {
    return a.n_rows == a.n_cols && symmetry_defect(a) <= tol;
}

SparseMatrix symmetrize(const SparseMatrix& a) {
    const SparseMatrix at = transpose(a);
    std::vector<Triplet> entries;
    entries.reserve(2 * a.values.size());
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            entries.emplace_back(i, a.col_indices[static_cast<std::size_t>(k)],
                                 0.5 * a.values[static_cast<std::size_t>(k)]);
        for (index_t k = at.row_offsets[static_cast<std::size_t>(i)];
             k < at.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            entries.emplace_back(i, at.col_indices[static_cast<std::size_t>(k)],
                                 0.5 * at.values[static_cast<std::size_t>(k)]);
    }
    return sparse_from_triplets(a.n_rows, a.n_cols, std::move(entries));
}

Vector diagonal(const SparseMatrix& a) {
    Vector d(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) d[static_cast<std::size_t>(i)] = a.at(i, i);
    return d;
}

void spmv(const SparseMatrix& a, const Vector& x, Vector& y) {
    if (static_cast<index_t>(x.size()) != a.n_cols)
        throw std::invalid_argument("spmv dimension mismatch");
    y.assign(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        real_t s = 0.0;
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            s += a.values[static_cast<std::size_t>(k)] *
                 x[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = s;
    }
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
    Vector y;
    spmv(a, x, y);
    return y;
}

Vector residual(const SparseMatrix& a, const Vector& b, const Vector& x) {
    Vector r = spmv(a, x);
    if (b.size() != r.size()) throw std::invalid_argument("residual dimension mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

SparseMatrix transpose(const SparseMatrix& a) {
    SparseMatrix t;
    t.n_rows = a.n_cols;
    t.n_cols = a.n_rows;
    t.row_offsets.assign(static_cast<std::size_t>(a.n_cols) + 1, 0);
    t.col_indices.resize(a.values.size());
    t.values.resize(a.values.size());

    for (const index_t j : a.col_indices)
        ++t.row_offsets[static_cast<std::size_t>(j) + 1];
    for (index_t j = 0; j < a.n_cols; ++j)
        t.row_offsets[static_cast<std::size_t>(j) + 1] +=
            t.row_offsets[static_cast<std::size_t>(j)];

    std::vector<index_t> next(t.row_offsets.begin(), t.row_offsets.end() - 1);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            const index_t pos = next[static_cast<std::size_t>(j)]++;
            t.col_indices[static_cast<std::size_t>(pos)] = i;
            t.values[static_cast<std::size_t>(pos)] = a.values[static_cast<std::size_t>(k)];
        }
    }
    return t;
}

SparseMatrix spgemm(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.n_cols != b.n_rows) throw std::invalid_argument("spgemm dimension mismatch");

    SparseMatrix c;
    c.n_rows = a.n_rows;
    c.n_cols = b.n_cols;
    c.row_offsets.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);

    std::vector<real_t> accum(static_cast<std::size_t>(b.n_cols), 0.0);
    std::vector<index_t> marker(static_cast<std::size_t>(b.n_cols), -1);
    std::vector<index_t> touched;
    touched.reserve(64);

    for (index_t i = 0; i < a.n_rows; ++i) {
        touched.clear();
        for (index_t ka = a.row_offsets[static_cast<std::size_t>(i)];
             ka < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++ka) {
            const index_t j = a.col_indices[static_cast<std::size_t>(ka)];
            const real_t av = a.values[static_cast<std::size_t>(ka)];
            for (index_t kb = b.row_offsets[static_cast<std::size_t>(j)];
                 kb < b.row_offsets[static_cast<std::size_t>(j) + 1]; ++kb) {
                const index_t col = b.col_indices[static_cast<std::size_t>(kb)];
                if (marker[static_cast<std::size_t>(col)] != i) {
                    marker[static_cast<std::size_t>(col)] = i;
                    accum[static_cast<std::size_t>(col)] = 0.0;
                    touched.push_back(col);
                }
                accum[static_cast<std::size_t>(col)] +=
                    av * b.values[static_cast<std::size_t>(kb)];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (const index_t col : touched) {
            c.col_indices.push_back(col);
            c.values.push_back(accum[static_cast<std::size_t>(col)]);
        }
        c.row_offsets[static_cast<std::size_t>(i) + 1] =
            static_cast<index_t>(c.values.size());
    }
    return c;
}

SparseMatrix triple_product(const SparseMatrix& p, const SparseMatrix& a) {
    if (a.n_rows != a.n_cols || a.n_rows != p.n_rows)
        throw std::invalid_argument("triple_product dimension mismatch");
    const SparseMatrix ap = spgemm(a, p);
    SparseMatrix c = spgemm(transpose(p), ap);
    if (is_symmetric(a, 0.0)) c = symmetrize(c);
    return c;
}

SparseMatrix sparse_add(real_t alpha, const SparseMatrix& a, real_t beta,
                        const SparseMatrix& b) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
        throw std::invalid_argument("sparse_add dimension mismatch");
    std::vector<Triplet> entries;
    entries.reserve(a.values.size() + b.values.size());
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            entries.emplace_back(i, a.col_indices[static_cast<std::size_t>(k)],
                                 alpha * a.values[static_cast<std::size_t>(k)]);
    for (index_t i = 0; i < b.n_rows; ++i)
        for (index_t k = b.row_offsets[static_cast<std::size_t>(i)];
             k < b.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            entries.emplace_back(i, b.col_indices[static_cast<std::size_t>(k)],
                                 beta * b.values[static_cast<std::size_t>(k)]);
    return sparse_from_triplets(a.n_rows, a.n_cols, std::move(entries));
}

real_t a_norm(const SparseMatrix& a, const Vector& v) {
    const real_t s = dot(v, spmv(a, v));
    if (s < 0.0) {
        const real_t scale = dot(v, v);
        real_t dmax = 0.0;
        for (const real_t x : a.values) dmax = std::max(dmax, std::fabs(x));
        if (s < -1e-13 * scale * std::max(dmax, 1.0))
            throw std::runtime_error("matrix not positive definite on this vector");
        return 0.0;
    }
    return std::sqrt(s);
}

PowerMethodResult power_method(const SparseMatrix& a, real_t tol, index_t max_iter) {
    if (a.n_rows != a.n_cols || a.n_rows == 0)
        throw std::invalid_argument("power_method requires a square nonempty matrix");

    Rng rng(0x1234ABCDu);
    Vector x = rng.uniform_vector(a.n_rows);
    real_t xn = nrm2(x);
    scal(1.0 / xn, x);

    PowerMethodResult res;
    real_t lambda = 0.0;
    for (index_t it = 1; it <= max_iter; ++it) {
        Vector y = spmv(a, x);
        const real_t rayleigh = dot(x, y);
        const real_t yn = nrm2(y);
        res.iterations = it;
        if (yn == 0.0) {
            res.value = 0.0;
            res.converged = true;
            return res;
        }
        scal(1.0 / yn, y);
        x.swap(y);
        if (it > 1 && std::fabs(rayleigh - lambda) <= tol * std::fabs(rayleigh)) {
            res.value = std::fabs(rayleigh);
            res.converged = true;
            return res;
        }
        lambda = rayleigh;
    }
    res.value = std::fabs(lambda);
    res.converged = false;
    return res;
}

} // namespace camg
