// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/smoothers.hpp"
#include "camg/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camg {

std::string to_string(SmootherKind kind) {
    switch (kind) {
        case SmootherKind::l1_jacobi: return "l1_jacobi";
        case SmootherKind::forward_gs: return "forward_gs";
        case SmootherKind::backward_gs: return "backward_gs";
        case SmootherKind::symmetric_gs: return "symmetric_gs";
        case SmootherKind::weighted_jacobi: return "weighted_jacobi";
        case SmootherKind::block_jacobi: return "block_jacobi";
    }
    return "unknown";
}

SmootherKind smoother_kind_from_string(const std::string& name) {
    if (name == "l1_jacobi" || name == "l1") return SmootherKind::l1_jacobi;
    if (name == "forward_gs") return SmootherKind::forward_gs;
    if (name == "backward_gs") return SmootherKind::backward_gs;
    if (name == "symmetric_gs" || name == "sgs") return SmootherKind::symmetric_gs;
    if (name == "weighted_jacobi" || name == "jacobi") return SmootherKind::weighted_jacobi;
    if (name == "block_jacobi") return SmootherKind::block_jacobi;
    throw std::invalid_argument("unknown smoother kind '" + name + "'");
}

SmootherKind transpose_kind(SmootherKind kind) {
    if (kind == SmootherKind::forward_gs) return SmootherKind::backward_gs;
    if (kind == SmootherKind::backward_gs) return SmootherKind::forward_gs;
    return kind;
}

bool is_spd_kind(SmootherKind kind) {
    return kind != SmootherKind::forward_gs && kind != SmootherKind::backward_gs;
}

namespace {

Vector l1_row_sums(const SparseMatrix& a) {
    Vector d(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        real_t s = 0.0;
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            s += std::fabs(a.values[static_cast<std::size_t>(k)]);
        if (s <= 0.0) throw std::runtime_error("l1 smoother: empty matrix row");
        d[static_cast<std::size_t>(i)] = s;
    }
    return d;
}

Vector positive_diagonal(const SparseMatrix& a) {
    Vector d = diagonal(a);
    for (const real_t v : d)
        if (v <= 0.0) throw std::runtime_error("smoother requires a positive diagonal");
    return d;
}

void factor_blocks(const SparseMatrix& a, SmootherState& s) {
    const std::size_t nb = s.block_offsets.size() - 1;
    s.block_factors.reserve(nb);
    for (std::size_t blk = 0; blk < nb; ++blk) {
        const index_t lo = s.block_offsets[blk];
        const index_t hi = s.block_offsets[blk + 1];
        DenseMatrix m(hi - lo, hi - lo);
        for (index_t i = lo; i < hi; ++i) {
            real_t outside = 0.0;
            for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
                 k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
                const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                const real_t v = a.values[static_cast<std::size_t>(k)];
                if (j >= lo && j < hi)
                    m(i - lo, j - lo) = v;
                else
                    outside += std::fabs(v);
            }
            // l1 augmentation of the block diagonal keeps B spectrally
            // above A; it vanishes when a single block covers the matrix.
            m(i - lo, i - lo) += outside;
        }
        try {
            s.block_factors.push_back(cholesky(m));
        } catch (const std::runtime_error&) {
            throw std::runtime_error("block Jacobi: singular or indefinite block");
        }
    }
}

} // namespace

SmootherState build_smoother(const SparseMatrix& a, SmootherKind kind,
                             index_t block_size, real_t omega) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("smoother requires a square matrix");
    SmootherState s;
    s.kind = kind;
    s.omega = omega;
    switch (kind) {
        case SmootherKind::l1_jacobi:
            s.diag_data = l1_row_sums(a);
            break;
        case SmootherKind::weighted_jacobi:
            if (!(omega > 0.0 && omega < 2.0))
                throw std::invalid_argument("weighted Jacobi needs 0 < omega < 2");
            s.diag_data = positive_diagonal(a);
            break;
        case SmootherKind::forward_gs:
        case SmootherKind::backward_gs:
        case SmootherKind::symmetric_gs:
            s.diag_data = positive_diagonal(a);
            break;
        case SmootherKind::block_jacobi: {
            if (block_size <= 0) block_size = a.n_rows;
            s.block_offsets.push_back(0);
            while (s.block_offsets.back() < a.n_rows)
                s.block_offsets.push_back(std::min(a.n_rows, s.block_offsets.back() + block_size));
            factor_blocks(a, s);
            break;
        }
    }
    return s;
}

SmootherState build_block_jacobi(const SparseMatrix& a, std::vector<index_t> block_offsets) {
    if (block_offsets.size() < 2 || block_offsets.front() != 0 ||
        block_offsets.back() != a.n_rows)
        throw std::invalid_argument("invalid block boundaries");
    SmootherState s;
    s.kind = SmootherKind::block_jacobi;
    s.block_offsets = std::move(block_offsets);
    factor_blocks(a, s);
    return s;
}

namespace {

void gauss_seidel_sweep(const SparseMatrix& a, const Vector& b, Vector& x, bool forward) {
    const index_t n = a.n_rows;
    for (index_t step = 0; step < n; ++step) {
        const index_t i = forward ? step : n - 1 - step;
        real_t s = b[static_cast<std::size_t>(i)];
        real_t diag = 0.0;
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            const real_t v = a.values[static_cast<std::size_t>(k)];
            if (j == i)
                diag = v;
            else
                s -= v * x[static_cast<std::size_t>(j)];
        }
        x[static_cast<std::size_t>(i)] = s / diag;
    }
}

void scaled_residual_update(const SparseMatrix& a, const Vector& b, Vector& x,
                            const Vector& d, real_t omega) {
    const Vector r = residual(a, b, x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * r[i] / d[i];
}

} // namespace

void smoother_apply(const SmootherState& s, const SparseMatrix& a, const Vector& b,
                    Vector& x, index_t sweeps, bool transposed) {
    if (static_cast<index_t>(b.size()) != a.n_rows ||
        static_cast<index_t>(x.size()) != a.n_rows)
        throw std::invalid_argument("smoother_apply dimension mismatch");

    const SmootherKind kind = transposed ? transpose_kind(s.kind) : s.kind;
    for (index_t sweep = 0; sweep < sweeps; ++sweep) {
        switch (kind) {
            case SmootherKind::l1_jacobi:
                scaled_residual_update(a, b, x, s.diag_data, 1.0);
                break;
            case SmootherKind::weighted_jacobi:
                scaled_residual_update(a, b, x, s.diag_data, s.omega);
                break;
            case SmootherKind::forward_gs:
                gauss_seidel_sweep(a, b, x, true);
                break;
            case SmootherKind::backward_gs:
                gauss_seidel_sweep(a, b, x, false);
                break;
            case SmootherKind::symmetric_gs:
                gauss_seidel_sweep(a, b, x, true);
                gauss_seidel_sweep(a, b, x, false);
                break;
            case SmootherKind::block_jacobi: {
                const Vector r = residual(a, b, x);
                for (std::size_t blk = 0; blk + 1 < s.block_offsets.size(); ++blk) {
                    const index_t lo = s.block_offsets[blk];
                    const index_t hi = s.block_offsets[blk + 1];
                    Vector rb(r.begin() + lo, r.begin() + hi);
                    const Vector z = s.block_factors[blk].solve(rb);
                    for (index_t i = lo; i < hi; ++i)
                        x[static_cast<std::size_t>(i)] += z[static_cast<std::size_t>(i - lo)];
                }
                break;
            }
        }
    }
}

NormBound smoother_norm_bound(const SmootherState& s, const SparseMatrix& a) {
    if (!is_spd_kind(s.kind)) throw std::runtime_error("smoother not s.p.d.");

    NormBound nb;
    switch (s.kind) {
        case SmootherKind::l1_jacobi: {
            real_t m = 0.0;
            for (const real_t d : s.diag_data) m = std::max(m, d);
            nb.norm_b = m;
            break;
        }
        case SmootherKind::weighted_jacobi: {
            real_t m = 0.0;
            for (const real_t d : s.diag_data) m = std::max(m, d);
            nb.norm_b = m / s.omega;
            break;
        }
        case SmootherKind::block_jacobi: {
            // ||B|| = max over blocks of lambda_max(block); B = L L^T.
            real_t m = 0.0;
            for (const auto& f : s.block_factors) {
                const DenseMatrix blk =
                    dense_matmul(f.l, dense_transpose(f.l));
                const Vector eig = sym_eigenvalues(blk);
                m = std::max(m, eig.back());
            }
            nb.norm_b = m;
            break;
        }
        case SmootherKind::symmetric_gs: {
            // B = (D + L) D^{-1} (D + U); estimate ||B|| by power iteration
            // on the explicit product.
            Rng rng(0x5E0FACEDu);
            Vector x = rng.uniform_vector(a.n_rows);
            scal(1.0 / nrm2(x), x);
            real_t lambda = 0.0;
            for (index_t it = 0; it < 200; ++it) {
                // y = (D + U) x
                Vector y(static_cast<std::size_t>(a.n_rows), 0.0);
                for (index_t i = 0; i < a.n_rows; ++i)
                    for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
                         k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
                        const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                        if (j >= i)
                            y[static_cast<std::size_t>(i)] +=
                                a.values[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(j)];
                    }
                for (index_t i = 0; i < a.n_rows; ++i)
                    y[static_cast<std::size_t>(i)] /= s.diag_data[static_cast<std::size_t>(i)];
                // z = (D + L) y
                Vector z(static_cast<std::size_t>(a.n_rows), 0.0);
                for (index_t i = 0; i < a.n_rows; ++i)
                    for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
                         k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
                        const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                        if (j <= i)
                            z[static_cast<std::size_t>(i)] +=
                                a.values[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(j)];
                    }
                const real_t rayleigh = dot(x, z);
                const real_t zn = nrm2(z);
                if (zn == 0.0) break;
                scal(1.0 / zn, z);
                x.swap(z);
                if (it > 0 && std::fabs(rayleigh - lambda) <= 1e-8 * std::fabs(rayleigh)) {
                    lambda = rayleigh;
                    break;
                }
                lambda = rayleigh;
            }
            nb.norm_b = std::fabs(lambda);
            break;
        }
        default:
            break;
    }
    const PowerMethodResult pm = power_method(a, 1e-8, 2000);
    nb.c0 = nb.norm_b / pm.value;
    return nb;
}

} // namespace camg
