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

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hardylab {

using Index = std::int64_t;

/// One symmetric pair of vertical rays {x + iy : |y| >= b}.
struct Tooth {
  Index n = 0;
  double x = 0.0;
  double b = 1.0;

  /// Distance from the origin to the ray tips (x, +-b).
  double tip_radius() const;
  /// True iff the rays meet the circle |z| = t. This is the single crossing
  /// predicate used by every circle query.
  bool crosses(double t) const { return tip_radius() <= t; }
};

/// x_n = n, b_0 = 1, b_n = |n| tan(theta/2).
struct Case1Rule {
  double theta = 0.0;
};
/// x_n = n, b_n = n^2 + 1.
struct Case2Rule {};
/// x_n = n, b_n = 1.
struct Case3Rule {};

/// Continuation of an explicit tooth list past its last represented index on
/// either side: constant spacing `gap` and constant half-gap `b`.
struct TailExtension {
  double gap = 1.0;
  double b = 1.0;
};

/// Teeth for n in [-N, N], stored in index order.
struct ExplicitRule {
  std::vector<Tooth> teeth;
  std::optional<TailExtension> extension;
};

using CombRule = std::variant<ExplicitRule, Case1Rule, Case2Rule, Case3Rule>;

/// Rule-based description of a comb domain C \ U {x_n + iy : |y| >= b_n}.
///
/// Infinite families are evaluated on demand. Explicit lists carry a hard
/// index bound and any query that would need a tooth beyond it throws
/// IndexOutOfRange, unless a TailExtension is attached.
class CombSpec {
 public:
  static CombSpec case1(double theta);
  static CombSpec case2();
  static CombSpec case3();
  static CombSpec from_teeth(std::vector<Tooth> teeth, double min_gap,
                             std::optional<TailExtension> extension = {});

  const CombRule& rule() const { return rule_; }
  double min_gap() const { return min_gap_; }
  bool is_explicit() const { return std::holds_alternative<ExplicitRule>(rule_); }
  std::optional<double> case1_theta() const;

  Tooth tooth(Index n) const;
  /// N for an explicit list without extension (the largest representable
  /// |n|); empty when every index is representable.
  std::optional<Index> index_bound() const;
  double b0() const { return tooth(0).b; }

  /// Index range [lo, hi] of the teeth with xlo <= x_n <= xhi (lo > hi when
  /// empty). Throws IndexOutOfRange if an unrepresented tooth could lie in the
  /// window.
  std::pair<Index, Index> teeth_in(double xlo, double xhi) const;

  /// Index of the tooth whose abscissa is nearest to x.
  Index nearest_index(double x) const;

  /// The crossing tooth with the largest abscissa at radius t; its crossing
  /// angles bound the arc J_t. Empty when no tooth meets the circle.
  std::optional<Tooth> blocker(double t) const;

  /// Smallest radius > t at which blocker() may change (+inf if never).
  /// May report radii where the blocker stays the same.
  double next_breakpoint(double t) const;

 private:
  CombSpec(CombRule rule, double min_gap);
  void build_staircase();
  std::optional<Tooth> explicit_blocker(double t) const;
  double explicit_next_breakpoint(double t) const;

  CombRule rule_;
  double min_gap_ = 1.0;
  // Explicit rule only: (tip radius, index) pairs at which the largest
  // crossing abscissa among the listed teeth increases.
  std::vector<std::pair<double, Index>> staircase_;
};

}  // namespace hardylab
