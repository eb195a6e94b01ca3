// Copyright 2026 The nfpassoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfpassoc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace nfpassoc {
namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

uint64_t Rng::uniform_index(uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Largest multiple of n that fits in 2^64; draws at or above it are biased.
  const uint64_t limit = n * ((~uint64_t{0}) / n);
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  // Poisson(a + b) == Poisson(a) + Poisson(b) for independent draws, so large
  // means are split into chunks where exp(-chunk) stays well above DBL_MIN.
  constexpr double kChunk = 256.0;
  int total = 0;
  while (mean > kChunk) {
    total += poisson(kChunk);
    mean -= kChunk;
  }
  const double threshold = std::exp(-mean);
  double product = uniform();
  int count = 0;
  while (product > threshold) {
    ++count;
    product *= uniform();
  }
  return total + count;
}

uint64_t substream_seed(uint64_t master_seed, std::string_view label,
                        uint64_t index) {
  uint64_t state = master_seed ^ fnv1a64(label);
  uint64_t mixed = splitmix64(state);
  state = mixed ^ (index * 0x9e3779b97f4a7c15ULL);
  return splitmix64(state);
}

}  // namespace nfpassoc
