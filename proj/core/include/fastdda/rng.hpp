// Copyright 2026 The fastdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace fastdda {

// Every random stream in the library is a 64-bit Mersenne twister seeded from
// a derived 64-bit seed. Child seeds are derived by hashing (parent, label)
// through std::seed_seq, whose output is fully specified by the standard, so
// seeds are identical across platforms and independent of scheduling.
using Rng = std::mt19937_64;

// 64-bit FNV-1a. Used for config fingerprints and for turning string labels
// into seed material.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t value);

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);

// Path-style helper: derive_seed_path(root, "matrix", "OSLA", 3) ==
// derive_seed(derive_seed(derive_seed(root, "matrix"), "OSLA"), 3).
template <typename... Parts>
std::uint64_t derive_seed_path(std::uint64_t root, const Parts&... parts) {
  std::uint64_t seed = root;
  ((seed = derive_seed(seed, parts)), ...);
  return seed;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform integer in [lo, hi] (inclusive).
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Uniform index in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace fastdda
