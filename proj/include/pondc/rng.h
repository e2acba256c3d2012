// Copyright 2026 The pondc Authors
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

#ifndef PONDC_RNG_H_
#define PONDC_RNG_H_

#include <cstdint>
#include <random>

namespace pondc {

// Seedable generator with identical output on every conforming platform.
// The engine is std::mt19937_64, whose output sequence the standard fixes;
// the standard distributions are not portable, so bounded integers are drawn
// by unbiased rejection sampling on the raw 64-bit output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi]; requires lo <= hi.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range + 1) % range;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw > limit);
    return lo + static_cast<std::int64_t>(draw % range);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pondc

#endif  // PONDC_RNG_H_
