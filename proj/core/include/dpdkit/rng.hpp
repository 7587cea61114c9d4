// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPDKIT_RNG_HPP
#define DPDKIT_RNG_HPP

#include <cstdint>
#include <random>

namespace dpdkit {

/// splitmix64 mixing step; used to derive independent per-fold and
/// per-trial seeds from one root seed so parallel and serial runs agree.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return mix64(root ^ mix64(stream + 1));
}

using Rng = std::mt19937_64;

}  // namespace dpdkit

#endif  // DPDKIT_RNG_HPP
