// Counter-based generator: known-answer vectors and stream independence.

#include <cmath>
#include <set>

#include "doctest.h"
#include "hardylab/philox.hpp"

using namespace hardylab;

TEST_CASE("Philox4x32-10 known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal draws") {
  const CounterRng rng(7, CounterRng::Stream::kExitTime);
  const CounterRng other(7, CounterRng::Stream::kWalkOnSpheres);
  CHECK(rng.normals(3, 11) == rng.normals(3, 11));
  CHECK(rng.normals(3, 11) != rng.normals(4, 11));
  CHECK(rng.normals(3, 11) != other.normals(3, 11));

  double s1 = 0, s2 = 0, s4 = 0, cross = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = rng.normals(static_cast<std::uint64_t>(i), 0);
    s1 += a + b;
    s2 += a * a + b * b;
    s4 += a * a * a * a + b * b * b * b;
    cross += a * b;
  }
  CHECK(std::abs(s1 / (2 * n)) < 0.01);
  CHECK(std::abs(s2 / (2 * n) - 1.0) < 0.01);
  CHECK(std::abs(s4 / (2 * n) - 3.0) < 0.05);
  CHECK(std::abs(cross / n) < 0.01);

  std::set<double> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto [u, v] = rng.uniforms(0, static_cast<std::uint64_t>(i));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(v > 0.0);
    seen.insert(u);
  }
  CHECK(seen.size() == 1000);
}
