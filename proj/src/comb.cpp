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

#include "hardylab/comb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Index to_index(double v) { return static_cast<Index>(v); }

// Largest n >= 0 with tooth(n).crosses(t), starting from the estimate `guess`.
// Valid for the symmetric families whose tip radius grows with |n|.
template <typename ToothFn>
Index correct_family_index(Index guess, double t, ToothFn&& tooth_at) {
  Index n = std::max<Index>(guess, 0);
  while (tooth_at(n + 1).crosses(t)) ++n;
  while (n >= 0 && !tooth_at(n).crosses(t)) --n;
  return n;
}

}  // namespace

double Tooth::tip_radius() const { return std::hypot(x, b); }

CombSpec::CombSpec(CombRule rule, double min_gap)
    : rule_(std::move(rule)), min_gap_(min_gap) {}

CombSpec CombSpec::case1(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidParam, "theta must be in (0, pi)");
  }
  return CombSpec(Case1Rule{theta}, 1.0);
}

CombSpec CombSpec::case2() { return CombSpec(Case2Rule{}, 1.0); }

CombSpec CombSpec::case3() { return CombSpec(Case3Rule{}, 1.0); }

CombSpec CombSpec::from_teeth(std::vector<Tooth> teeth, double min_gap,
                              std::optional<TailExtension> extension) {
  if (!(min_gap > 0.0) || !std::isfinite(min_gap)) {
    throw Error(ErrorCode::kValidation, "min_gap must be positive");
  }
  if (teeth.empty() || teeth.size() % 2 == 0) {
    throw Error(ErrorCode::kValidation,
                "explicit teeth must cover n = -N..N (odd count)");
  }
  std::sort(teeth.begin(), teeth.end(),
            [](const Tooth& a, const Tooth& c) { return a.n < c.n; });
  const Index big_n = static_cast<Index>(teeth.size() / 2);
  for (std::size_t i = 0; i < teeth.size(); ++i) {
    const Tooth& t = teeth[i];
    if (t.n != static_cast<Index>(i) - big_n) {
      throw Error(ErrorCode::kValidation,
                  "explicit teeth indices must be contiguous -N..N");
    }
    if (!(t.b > 0.0) || !std::isfinite(t.b) || !std::isfinite(t.x)) {
      throw Error(ErrorCode::kValidation,
                  "b_n must be positive (n = " + std::to_string(t.n) + ")");
    }
    if (i > 0 && !(t.x - teeth[i - 1].x >= min_gap)) {
      throw Error(ErrorCode::kValidation,
                  "x_n - x_{n-1} must be >= min_gap (n = " +
                      std::to_string(t.n) + ")");
    }
  }
  if (teeth[static_cast<std::size_t>(big_n)].x != 0.0) {
    throw Error(ErrorCode::kValidation, "x_0 must be 0");
  }
  if (extension) {
    if (!(extension->gap >= min_gap) || !std::isfinite(extension->gap)) {
      throw Error(ErrorCode::kValidation, "extension gap must be >= min_gap");
    }
    if (!(extension->b > 0.0) || !std::isfinite(extension->b)) {
      throw Error(ErrorCode::kValidation, "extension b must be positive");
    }
  }
  CombSpec spec(ExplicitRule{std::move(teeth), extension}, min_gap);
  spec.build_staircase();
  return spec;
}

std::optional<double> CombSpec::case1_theta() const {
  if (const auto* r = std::get_if<Case1Rule>(&rule_)) return r->theta;
  return std::nullopt;
}

Tooth CombSpec::tooth(Index n) const {
  return std::visit(
      [n](const auto& r) -> Tooth {
        using R = std::decay_t<decltype(r)>;
        const double x = static_cast<double>(n);
        if constexpr (std::is_same_v<R, Case1Rule>) {
          if (n == 0) return {0, 0.0, 1.0};
          return {n, x, std::abs(x) * std::tan(r.theta / 2.0)};
        } else if constexpr (std::is_same_v<R, Case2Rule>) {
          return {n, x, x * x + 1.0};
        } else if constexpr (std::is_same_v<R, Case3Rule>) {
          return {n, x, 1.0};
        } else {
          const Index big_n = static_cast<Index>(r.teeth.size() / 2);
          if (n >= -big_n && n <= big_n) {
            return r.teeth[static_cast<std::size_t>(n + big_n)];
          }
          if (!r.extension) {
            throw Error(ErrorCode::kIndexOutOfRange,
                        "tooth " + std::to_string(n) + " outside [-" +
                            std::to_string(big_n) + ", " +
                            std::to_string(big_n) + "]");
          }
          if (n > big_n) {
            return {n, r.teeth.back().x +
                           static_cast<double>(n - big_n) * r.extension->gap,
                    r.extension->b};
          }
          return {n, r.teeth.front().x -
                         static_cast<double>(-big_n - n) * r.extension->gap,
                  r.extension->b};
        }
      },
      rule_);
}

std::optional<Index> CombSpec::index_bound() const {
  const auto* ex = std::get_if<ExplicitRule>(&rule_);
  if (ex == nullptr || ex->extension) return std::nullopt;
  return static_cast<Index>(ex->teeth.size() / 2);
}

std::pair<Index, Index> CombSpec::teeth_in(double xlo, double xhi) const {
  const auto* ex = std::get_if<ExplicitRule>(&rule_);
  if (ex == nullptr) {
    return {to_index(std::ceil(xlo)), to_index(std::floor(xhi))};
  }
  const auto& teeth = ex->teeth;
  const Index big_n = static_cast<Index>(teeth.size() / 2);
  const double x_first = teeth.front().x;
  const double x_last = teeth.back().x;

  Index lo = 0;
  if (xlo <= x_first) {
    if (ex->extension) {
      lo = -big_n - to_index(std::floor((x_first - xlo) / ex->extension->gap));
      while (tooth(lo).x < xlo) ++lo;
      while (tooth(lo - 1).x >= xlo) --lo;
    } else if (xlo <= x_first - min_gap_) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "query reaches beyond the first listed tooth");
    } else {
      lo = -big_n;
    }
  } else {
    auto it = std::lower_bound(
        teeth.begin(), teeth.end(), xlo,
        [](const Tooth& t, double v) { return t.x < v; });
    lo = it == teeth.end() ? big_n + 1 : it->n;
  }

  Index hi = 0;
  if (xhi >= x_last) {
    if (ex->extension) {
      hi = big_n + to_index(std::floor((xhi - x_last) / ex->extension->gap));
      while (tooth(hi).x > xhi) --hi;
      while (tooth(hi + 1).x <= xhi) ++hi;
    } else if (xhi >= x_last + min_gap_) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "query reaches beyond the last listed tooth");
    } else {
      hi = big_n;
    }
  } else {
    auto it = std::upper_bound(
        teeth.begin(), teeth.end(), xhi,
        [](double v, const Tooth& t) { return v < t.x; });
    hi = it == teeth.begin() ? -big_n - 1 : std::prev(it)->n;
  }
  return {lo, hi};
}

Index CombSpec::nearest_index(double x) const {
  const auto* ex = std::get_if<ExplicitRule>(&rule_);
  if (ex == nullptr) return to_index(std::llround(x));
  const auto& teeth = ex->teeth;
  const Index big_n = static_cast<Index>(teeth.size() / 2);
  Index below = 0;
  if (x >= teeth.back().x) {
    if (!ex->extension) return big_n;
    below = big_n + to_index(std::floor((x - teeth.back().x) / ex->extension->gap));
  } else if (x < teeth.front().x) {
    if (!ex->extension) return -big_n;
    below = -big_n - to_index(std::ceil((teeth.front().x - x) / ex->extension->gap));
  } else {
    auto it = std::upper_bound(
        teeth.begin(), teeth.end(), x,
        [](double v, const Tooth& t) { return v < t.x; });
    below = std::prev(it)->n;
  }
  while (tooth(below).x > x) --below;
  while (tooth(below + 1).x <= x) ++below;
  const double d_lo = x - tooth(below).x;
  const double d_hi = tooth(below + 1).x - x;
  return d_hi < d_lo ? below + 1 : below;
}

void CombSpec::build_staircase() {
  const auto& teeth = std::get<ExplicitRule>(rule_).teeth;
  std::vector<std::pair<double, Index>> by_radius;
  by_radius.reserve(teeth.size());
  for (const Tooth& t : teeth) by_radius.emplace_back(t.tip_radius(), t.n);
  std::sort(by_radius.begin(), by_radius.end());
  staircase_.clear();
  double best_x = -kInf;
  for (const auto& [rho, n] : by_radius) {
    const double x = tooth(n).x;
    if (x > best_x) {
      best_x = x;
      staircase_.emplace_back(rho, n);
    }
  }
}

std::optional<Tooth> CombSpec::explicit_blocker(double t) const {
  const auto& ex = std::get<ExplicitRule>(rule_);
  const auto& teeth = ex.teeth;
  const Index big_n = static_cast<Index>(teeth.size() / 2);
  if (!ex.extension) {
    const double reach = std::min(teeth.back().x, -teeth.front().x) + min_gap_;
    if (t >= reach) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "radius " + std::to_string(t) +
                      " reaches beyond the listed teeth");
    }
  } else {
    // Right extension teeth: tip radius increases with the offset j.
    const double gap = ex.extension->gap;
    const double b = ex.extension->b;
    const double reach = t * t - b * b;
    Index j = 0;
    if (reach > 0.0) {
      j = std::max<Index>(
          0, to_index(std::floor((std::sqrt(reach) - teeth.back().x) / gap)));
    }
    while (tooth(big_n + j + 1).crosses(t)) ++j;
    while (j >= 1 && !tooth(big_n + j).crosses(t)) --j;
    if (j >= 1) return tooth(big_n + j);
  }
  auto it = std::upper_bound(
      staircase_.begin(), staircase_.end(), t,
      [](double v, const std::pair<double, Index>& s) { return v < s.first; });
  if (it != staircase_.begin()) return tooth(std::prev(it)->second);
  if (ex.extension && tooth(-big_n - 1).crosses(t)) return tooth(-big_n - 1);
  return std::nullopt;
}

double CombSpec::explicit_next_breakpoint(double t) const {
  const auto& ex = std::get<ExplicitRule>(rule_);
  const Index big_n = static_cast<Index>(ex.teeth.size() / 2);
  double next = kInf;
  auto it = std::upper_bound(
      staircase_.begin(), staircase_.end(), t,
      [](double v, const std::pair<double, Index>& s) { return v < s.first; });
  if (it != staircase_.end()) next = it->first;
  if (ex.extension) {
    auto b = explicit_blocker(t);
    Index j = (b && b->n > big_n) ? b->n - big_n : 0;
    next = std::min(next, tooth(big_n + j + 1).tip_radius());
    const double left = tooth(-big_n - 1).tip_radius();
    if (left > t) next = std::min(next, left);
  }
  return next;
}

std::optional<Tooth> CombSpec::blocker(double t) const {
  if (std::holds_alternative<ExplicitRule>(rule_)) return explicit_blocker(t);
  if (!tooth(0).crosses(t)) return std::nullopt;
  const Index guess = std::visit(
      [t](const auto& r) -> Index {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Case1Rule>) {
          return to_index(std::floor(t * std::cos(r.theta / 2.0)));
        } else if constexpr (std::is_same_v<R, Case2Rule>) {
          // n^2 + (n^2 + 1)^2 <= t^2  <=>  u^2 + 3u + 1 <= t^2 with u = n^2.
          const double u = (-3.0 + std::sqrt(5.0 + 4.0 * t * t)) / 2.0;
          return to_index(std::floor(std::sqrt(std::max(u, 0.0))));
        } else {
          return to_index(std::floor(std::sqrt(std::max(t * t - 1.0, 0.0))));
        }
      },
      rule_);
  const Index n =
      correct_family_index(guess, t, [this](Index k) { return tooth(k); });
  return tooth(n);
}

double CombSpec::next_breakpoint(double t) const {
  if (std::holds_alternative<ExplicitRule>(rule_)) {
    return explicit_next_breakpoint(t);
  }
  const auto b = blocker(t);
  return tooth(b ? b->n + 1 : 0).tip_radius();
}

}  // namespace hardylab
