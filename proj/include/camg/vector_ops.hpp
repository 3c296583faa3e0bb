// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_VECTOR_OPS_HPP
#define CAMG_VECTOR_OPS_HPP

#include "camg/types.hpp"

#include <cmath>
#include <stdexcept>

namespace camg {

inline void check_same_size(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
}

inline real_t dot(const Vector& u, const Vector& v) {
    check_same_size(u, v);
    real_t s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline real_t nrm2(const Vector& u) { return std::sqrt(dot(u, u)); }

/// y += alpha * x
inline void axpy(real_t alpha, const Vector& x, Vector& y) {
    check_same_size(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scal(real_t alpha, Vector& x) {
    for (auto& xi : x) xi *= alpha;
}

inline Vector zeros(index_t n) { return Vector(static_cast<std::size_t>(n), 0.0); }

} // namespace camg

#endif // CAMG_VECTOR_OPS_HPP
