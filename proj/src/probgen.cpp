// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#include "camg/probgen.hpp"

#include <cmath>
#include <stdexcept>

namespace camg {

namespace {

// Two-point Gauss rule on [0,1], exact through cubic polynomials.
constexpr real_t kGaussHalfWidth = 0.288675134594812882; // 1/(2*sqrt(3))
const real_t kGaussPts[2] = {0.5 - kGaussHalfWidth, 0.5 + kGaussHalfWidth};

// Quadrature sums ke[a][b] and ke[b][a] in different orders; averaging once
// makes the assembled matrix exactly symmetric.
template <std::size_t N>
void symmetrize_element(std::array<std::array<real_t, N>, N>& ke) {
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b) {
            const real_t avg = 0.5 * (ke[a][b] + ke[b][a]);
            ke[a][b] = avg;
            ke[b][a] = avg;
        }
}

// Element stiffness for bilinear quads on a square cell; the h factors
// cancel in 2-D so the result is mesh-size independent.
std::array<std::array<real_t, 4>, 4>
element_matrix_2d(const std::array<std::array<real_t, 2>, 2>& k) {
    std::array<std::array<real_t, 4>, 4> ke{};
    for (const real_t xi : kGaussPts) {
        for (const real_t eta : kGaussPts) {
            // corners (dx, dy) with dx = c & 1, dy = c >> 1 mapped to
            // tensor-product basis (1-xi or xi) * (1-eta or eta)
            real_t grad[4][2];
            for (int c = 0; c < 4; ++c) {
                const int dx = c & 1;
                const int dy = (c >> 1) & 1;
                const real_t gx = dx ? 1.0 : -1.0;
                const real_t gy = dy ? 1.0 : -1.0;
                const real_t vx = dx ? xi : 1.0 - xi;
                const real_t vy = dy ? eta : 1.0 - eta;
                grad[c][0] = gx * vy;
                grad[c][1] = vx * gy;
            }
            const real_t w = 0.25; // (1/2)^2 Gauss weights
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    real_t s = 0.0;
                    for (int r = 0; r < 2; ++r)
                        for (int c = 0; c < 2; ++c)
                            s += grad[a][r] * k[static_cast<std::size_t>(r)]
                                              [static_cast<std::size_t>(c)] * grad[b][c];
                    ke[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += w * s;
                }
        }
    }
    symmetrize_element(ke);
    return ke;
}

std::array<std::array<real_t, 8>, 8>
element_matrix_3d(const std::array<std::array<real_t, 3>, 3>& k, real_t h) {
    std::array<std::array<real_t, 8>, 8> ke{};
    for (const real_t xi : kGaussPts) {
        for (const real_t eta : kGaussPts) {
            for (const real_t zeta : kGaussPts) {
                real_t grad[8][3];
                const real_t coord[3] = {xi, eta, zeta};
                for (int c = 0; c < 8; ++c) {
                    const int d[3] = {c & 1, (c >> 1) & 1, (c >> 2) & 1};
                    for (int axis = 0; axis < 3; ++axis) {
                        real_t g = d[axis] ? 1.0 : -1.0;
                        for (int other = 0; other < 3; ++other) {
                            if (other == axis) continue;
                            g *= d[other] ? coord[other] : 1.0 - coord[other];
                        }
                        grad[c][axis] = g;
                    }
                }
                const real_t w = 0.125 * h; // weights times h^3 / h^2
                for (int a = 0; a < 8; ++a)
                    for (int b = 0; b < 8; ++b) {
                        real_t s = 0.0;
                        for (int r = 0; r < 3; ++r)
                            for (int c = 0; c < 3; ++c)
                                s += grad[a][r] * k[static_cast<std::size_t>(r)]
                                                  [static_cast<std::size_t>(c)] * grad[b][c];
                        ke[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += w * s;
                    }
            }
        }
    }
    symmetrize_element(ke);
    return ke;
}

} // namespace

void validate(const AnisotropyParams& p) {
    if (p.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (p.n < 2) throw std::invalid_argument("n must be at least 2");
}

std::array<std::array<real_t, 2>, 2> anisotropy_tensor_2d(const AnisotropyParams& p) {
    const real_t bx = std::cos(p.theta);
    const real_t by = std::sin(p.theta);
    return {{{p.epsilon + bx * bx, bx * by}, {bx * by, p.epsilon + by * by}}};
}

std::array<std::array<real_t, 3>, 3> anisotropy_tensor_3d(const AnisotropyParams& p) {
    const real_t b[3] = {std::cos(p.theta) * std::cos(p.phi),
                         std::sin(p.theta) * std::cos(p.phi), std::sin(p.phi)};
    std::array<std::array<real_t, 3>, 3> k{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            k[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                (r == c ? p.epsilon : 0.0) + b[r] * b[c];
    return k;
}

SparseMatrix gen_anisotropic_2d(const AnisotropyParams& p) {
    validate(p);
    const index_t n = p.n;
    const index_t m = n - 1;
    const auto ke = element_matrix_2d(anisotropy_tensor_2d(p));

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(16 * n * n));
    for (index_t cy = 0; cy < n; ++cy) {
        for (index_t cx = 0; cx < n; ++cx) {
            index_t vid[4];
            bool interior[4];
            for (int c = 0; c < 4; ++c) {
                const index_t vx = cx + (c & 1);
                const index_t vy = cy + ((c >> 1) & 1);
                interior[c] = vx >= 1 && vx <= m && vy >= 1 && vy <= m;
                vid[c] = interior[c] ? grid_index_2d(n, vx, vy) : -1;
            }
            for (int a = 0; a < 4; ++a) {
                if (!interior[a]) continue;
                for (int b = 0; b < 4; ++b) {
                    if (!interior[b]) continue;
                    entries.emplace_back(vid[a], vid[b],
                                         ke[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                }
            }
        }
    }
    return sparse_from_triplets(m * m, m * m, std::move(entries));
}

SparseMatrix gen_anisotropic_3d(const AnisotropyParams& p) {
    validate(p);
    const index_t n = p.n;
    const index_t m = n - 1;
    const real_t h = 1.0 / static_cast<real_t>(n);
    const auto ke = element_matrix_3d(anisotropy_tensor_3d(p), h);

    const auto vertex_id = [m](index_t vx, index_t vy, index_t vz) {
        return ((vz - 1) * m + (vy - 1)) * m + (vx - 1);
    };

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(64 * n * n * n));
    for (index_t cz = 0; cz < n; ++cz) {
        for (index_t cy = 0; cy < n; ++cy) {
            for (index_t cx = 0; cx < n; ++cx) {
                index_t vid[8];
                bool interior[8];
                for (int c = 0; c < 8; ++c) {
                    const index_t vx = cx + (c & 1);
                    const index_t vy = cy + ((c >> 1) & 1);
                    const index_t vz = cz + ((c >> 2) & 1);
                    interior[c] = vx >= 1 && vx <= m && vy >= 1 && vy <= m && vz >= 1 && vz <= m;
                    vid[c] = interior[c] ? vertex_id(vx, vy, vz) : -1;
                }
                for (int a = 0; a < 8; ++a) {
                    if (!interior[a]) continue;
                    for (int b = 0; b < 8; ++b) {
                        if (!interior[b]) continue;
                        entries.emplace_back(vid[a], vid[b],
                                             ke[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                    }
                }
            }
        }
    }
    return sparse_from_triplets(m * m * m, m * m * m, std::move(entries));
}

SparseMatrix gen_laplace(index_t n, int dim) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    const index_t m = n - 1;
    std::vector<Triplet> entries;
    if (dim == 1) {
        for (index_t i = 0; i < m; ++i) {
            entries.emplace_back(i, i, 2.0);
            if (i > 0) entries.emplace_back(i, i - 1, -1.0);
            if (i + 1 < m) entries.emplace_back(i, i + 1, -1.0);
        }
        return sparse_from_triplets(m, m, std::move(entries));
    }
    if (dim == 2) {
        for (index_t iy = 1; iy <= m; ++iy) {
            for (index_t ix = 1; ix <= m; ++ix) {
                const index_t id = grid_index_2d(n, ix, iy);
                entries.emplace_back(id, id, 4.0);
                if (ix > 1) entries.emplace_back(id, grid_index_2d(n, ix - 1, iy), -1.0);
                if (ix < m) entries.emplace_back(id, grid_index_2d(n, ix + 1, iy), -1.0);
                if (iy > 1) entries.emplace_back(id, grid_index_2d(n, ix, iy - 1), -1.0);
                if (iy < m) entries.emplace_back(id, grid_index_2d(n, ix, iy + 1), -1.0);
            }
        }
        return sparse_from_triplets(m * m, m * m, std::move(entries));
    }
    throw std::invalid_argument("gen_laplace supports dim 1 or 2");
}

Vector fe_load_constant(index_t n, int dim) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    const index_t m = n - 1;
    const real_t h = 1.0 / static_cast<real_t>(n);
    index_t size = m;
    real_t value = h * h; // unscaled 1-D stencil absorbs one h
    if (dim == 2) {
        size = m * m;
        value = h * h;
    } else if (dim == 3) {
        size = m * m * m;
        value = h * h * h;
    } else if (dim != 1) {
        throw std::invalid_argument("fe_load_constant supports dim 1, 2 or 3");
    }
    return Vector(static_cast<std::size_t>(size), value);
}

} // namespace camg
