// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_PROBGEN_HPP
#define CAMG_PROBGEN_HPP

#include "camg/sparse.hpp"

#include <array>

namespace camg {

/// Parameters of the rotated anisotropic diffusion tensor
/// K = epsilon*I + beta*beta^T on the unit square/cube.
struct AnisotropyParams {
    real_t epsilon = 1e-6; // cross-direction diffusivity
    real_t theta = 0.0;    // radians
    real_t phi = 0.0;      // radians, 3-D only
    index_t n = 8;         // cells per axis
};

void validate(const AnisotropyParams& p);

std::array<std::array<real_t, 2>, 2> anisotropy_tensor_2d(const AnisotropyParams& p);
std::array<std::array<real_t, 3>, 3> anisotropy_tensor_3d(const AnisotropyParams& p);

/// Bilinear finite elements (9-point stencil) for -div(K grad u) on an
/// n x n cell grid of the unit square, homogeneous Dirichlet rows
/// eliminated; (n-1)^2 unknowns, x index fastest.
SparseMatrix gen_anisotropic_2d(const AnisotropyParams& p);

/// Trilinear elements (27-point stencil) on the unit cube, (n-1)^3 unknowns.
SparseMatrix gen_anisotropic_3d(const AnisotropyParams& p);

/// Unscaled 3-point / 5-point Dirichlet Laplacian, (n-1)^dim unknowns.
SparseMatrix gen_laplace(index_t n, int dim);

/// Finite-element load vector for the constant source f = 1 (entries h^dim).
Vector fe_load_constant(index_t n, int dim);

/// Interior-vertex linear index for the generators above (1 <= ix,iy <= n-1).
inline index_t grid_index_2d(index_t n, index_t ix, index_t iy) {
    return (iy - 1) * (n - 1) + (ix - 1);
}
inline std::array<index_t, 2> grid_coords_2d(index_t n, index_t id) {
    return {id % (n - 1) + 1, id / (n - 1) + 1};
}

} // namespace camg

#endif // CAMG_PROBGEN_HPP
