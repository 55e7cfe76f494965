//
// Copyright 2026 The skipseq Authors
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
//

#ifndef SKIPSEQ_RNG_H_
#define SKIPSEQ_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace skipseq {

// Seedable generator with platform-stable output. Draws are derived from the
// raw 64-bit mt19937_64 stream only; the <random> distributions are avoided
// because their algorithms differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform on {0, ..., n - 1}; n > 0.
  std::uint64_t Index(std::uint64_t n);
  // Number of successes in n Bernoulli(p) trials.
  std::uint64_t Binomial(std::uint64_t n, double p);
  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Index(i)]);
    }
  }

  // Independent stream for sub-task `stream` of a run seeded with `seed`.
  static std::uint64_t Derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace skipseq

#endif  // SKIPSEQ_RNG_H_
