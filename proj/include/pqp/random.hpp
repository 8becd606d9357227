// Copyright 2026 The pqp Authors
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

#ifndef PQP_RANDOM_HPP
#define PQP_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pqp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable sub-seed from a master seed and a path of stream indices. Every
/// random draw in the library goes through this so results do not depend
/// on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

inline double draw_poisson(double mean, std::uint64_t seed) {
  if (mean <= 0.0) return 0.0;
  std::mt19937_64 engine(seed);
  std::poisson_distribution<long long> dist(mean);
  return static_cast<double>(dist(engine));
}

// Stream identifiers for derive_seed.
namespace stream {
inline constexpr std::uint64_t kSignal = 1;
inline constexpr std::uint64_t kCalibration = 2;
inline constexpr std::uint64_t kBootstrap = 3;
inline constexpr std::uint64_t kDip = 4;
inline constexpr std::uint64_t kSuite = 5;
}  // namespace stream

}  // namespace pqp

#endif  // PQP_RANDOM_HPP
