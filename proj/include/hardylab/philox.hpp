// Copyright 2026 The hardylab Authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hardylab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

/// Random draws addressed by (seed, stream, sample, step). Every address maps
/// to its own Philox block, so samples can be generated in any order.
class CounterRng {
 public:
  enum class Stream : std::uint32_t { kExitTime = 1, kWalkOnSpheres = 2 };

  CounterRng(std::uint64_t seed, Stream stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(static_cast<std::uint32_t>(stream)) {}

  Philox4x32::Block block(std::uint64_t sample, std::uint64_t step) const {
    // The top byte of the step counter carries the stream tag.
    const std::uint64_t hi = (step >> 32) ^ (std::uint64_t{stream_} << 24);
    return Philox4x32::generate({static_cast<std::uint32_t>(step),
                                 static_cast<std::uint32_t>(hi),
                                 static_cast<std::uint32_t>(sample),
                                 static_cast<std::uint32_t>(sample >> 32)},
                                key_);
  }

  /// Two uniforms in (0, 1) with 53-bit resolution.
  std::pair<double, double> uniforms(std::uint64_t sample, std::uint64_t step) const {
    const auto b = block(sample, step);
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
  }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normals(std::uint64_t sample, std::uint64_t step) const {
    const auto [u1, u2] = uniforms(sample, step);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  static double to_unit(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t bits = ((std::uint64_t{a} << 32) | b) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_;
};

}  // namespace hardylab
