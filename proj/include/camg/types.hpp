// Copyright (c) 2026 the camg authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CAMG_TYPES_HPP
#define CAMG_TYPES_HPP

#include <cstdint>
#include <vector>

namespace camg {

using index_t = std::int64_t;
using real_t = double;

using Vector = std::vector<real_t>;

/// Deterministic pseudo-random stream (splitmix64); all randomness in the
/// library flows from explicit seeds so runs are reproducible bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [-1, 1).
    real_t uniform() {
        const real_t u01 = static_cast<real_t>(next_u64() >> 11) * 0x1.0p-53;
        return 2.0 * u01 - 1.0;
    }

    Vector uniform_vector(index_t n) {
        Vector v(static_cast<std::size_t>(n));
        for (auto& x : v) x = uniform();
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace camg

#endif // CAMG_TYPES_HPP
