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

#include "hardylab/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool comb_source(HardySource s) {
  return s == HardySource::kMainTheoremCase1 || s == HardySource::kMainTheoremCase2 ||
         s == HardySource::kMainTheoremCase3;
}

// Smallest b_n / (x_n - v) over the given inclusive index range, skipping
// teeth at or left of the vertex.
double min_ratio(const CombSpec& spec, double v, Index lo, Index hi) {
  double best = kInf;
  for (Index n = lo; n <= hi; ++n) {
    const Tooth t = spec.tooth(n);
    if (t.x <= v) continue;
    best = std::min(best, t.b / (t.x - v));
  }
  return best;
}

}  // namespace

std::optional<Family> parse_family(std::string_view name) {
  if (name == "case1") return Family::kCase1;
  if (name == "case2") return Family::kCase2;
  if (name == "case3") return Family::kCase3;
  if (name == "sector") return Family::kSector;
  if (name == "slitplane") return Family::kSlitPlane;
  if (name == "halfplane") return Family::kHalfPlane;
  return std::nullopt;
}

std::string_view to_string(HardySource source) {
  switch (source) {
    case HardySource::kSectorExact: return "sector-exact";
    case HardySource::kStarlikeFormula: return "starlike-formula";
    case HardySource::kMainTheoremCase1: return "main-theorem-case1";
    case HardySource::kMainTheoremCase2: return "main-theorem-case2";
    case HardySource::kMainTheoremCase3: return "main-theorem-case3";
    case HardySource::kContainmentBound: return "containment-bound";
  }
  return "unknown";
}

TheoreticalHardy::TheoreticalHardy(double value, HardySource source)
    : value_(value), source_(source) {
  if (!(value >= 0.5)) {
    throw Error(ErrorCode::kOutOfRange, "a Hardy number is at least 1/2");
  }
  if (comb_source(source) && !(value >= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "a comb's Hardy number is at least 1");
  }
}

DomainRef build(Family family, const BuildParams& params) {
  const auto need_theta = [&]() {
    if (!params.theta) throw Error(ErrorCode::kInvalidParam, "theta is required");
    return *params.theta;
  };
  switch (family) {
    case Family::kCase1: return DomainRef::comb(CombSpec::case1(need_theta()));
    case Family::kCase2: return DomainRef::comb(CombSpec::case2());
    case Family::kCase3: return DomainRef::comb(CombSpec::case3());
    case Family::kSector: return DomainRef::sector(need_theta(), params.vertex_x);
    case Family::kSlitPlane:
      if (!params.b0) throw Error(ErrorCode::kInvalidParam, "b0 is required");
      return DomainRef::slit_plane(*params.b0);
    case Family::kHalfPlane: return DomainRef::upper_half_plane();
  }
  throw Error(ErrorCode::kInvalidParam, "unknown family");
}

double alpha_profile(const SlitPlaneDomain& d, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kBadRange, "radius must be positive");
  // The circle meets the slits at +-it as soon as t reaches b0.
  return t >= d.b0 ? kPi : 2.0 * kPi;
}

TheoreticalHardy starlike_hardy(double alpha_limit) {
  if (!(alpha_limit > 0.0 && alpha_limit <= 2.0 * kPi)) {
    throw Error(ErrorCode::kInvalidAlpha, "alpha must be in (0, 2 pi]");
  }
  return TheoreticalHardy(kPi / alpha_limit, HardySource::kStarlikeFormula);
}

double inscribed_sector_angle(const CombSpec& spec, double vertex_x) {
  if (!contains(DomainRef::comb(spec), Complex(vertex_x, 0.0))) {
    throw Error(ErrorCode::kInvalidParam, "vertex must lie inside the comb");
  }
  const Index first = static_cast<Index>(std::floor(vertex_x)) + 1;
  double ratio = kInf;
  if (const auto* c1 = std::get_if<Case1Rule>(&spec.rule())) {
    // For n >= 1 the ratio n T / (n - v) is monotone in n with limit T, so
    // only the teeth up to n = 1 and the limit can be smallest.
    const double slope = std::tan(c1->theta / 2.0);
    if (vertex_x == 0.0) return c1->theta;
    ratio = std::min(slope, min_ratio(spec, vertex_x, first, std::max<Index>(first, 1)));
  } else if (std::holds_alternative<Case2Rule>(spec.rule())) {
    // (n^2 + 1) / (n - v) is convex in n > v; walk to its minimum.
    double prev = kInf;
    for (Index n = first;; ++n) {
      const double r = min_ratio(spec, vertex_x, n, n);
      if (r > prev) break;
      prev = r;
    }
    ratio = prev;
  } else if (std::holds_alternative<Case3Rule>(spec.rule())) {
    return 0.0;
  } else {
    const auto& ex = std::get<ExplicitRule>(spec.rule());
    if (ex.extension) return 0.0;
    const Index big_n = static_cast<Index>(ex.teeth.size() / 2);
    ratio = min_ratio(spec, vertex_x, -big_n, big_n);
    if (ratio == kInf) {
      throw Error(ErrorCode::kEmptyRight, "no tooth lies right of the vertex");
    }
  }
  return 2.0 * std::atan(ratio);
}

SectorFit sector_fit_n(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kPi)) {
    throw Error(ErrorCode::kInvalidParam, "epsilon must be in (0, pi)");
  }
  SectorFit fit;
  fit.alpha = std::tan((kPi - epsilon) / 2.0);
  const double threshold = (fit.alpha * fit.alpha - 4.0) / (4.0 * fit.alpha);
  fit.n = std::max<Index>(1, static_cast<Index>(std::floor(threshold)) + 1);
  fit.discriminant =
      fit.alpha * fit.alpha - 4.0 * (1.0 + fit.alpha * static_cast<double>(fit.n));
  return fit;
}

TheoreticalHardy theoretical_hardy(const DomainRef& d) {
  return std::visit(
      [](const auto& k) -> TheoreticalHardy {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CombSpec>) {
          if (const auto theta = k.case1_theta()) {
            return {kPi / *theta, HardySource::kMainTheoremCase1};
          }
          if (std::holds_alternative<Case2Rule>(k.rule())) {
            return {1.0, HardySource::kMainTheoremCase2};
          }
          if (std::holds_alternative<Case3Rule>(k.rule())) {
            return {kInf, HardySource::kMainTheoremCase3};
          }
          throw Error(ErrorCode::kUnknownDomain,
                      "no closed-form Hardy number for an explicit comb");
        } else if constexpr (std::is_same_v<K, SectorDomain>) {
          return {kPi / k.theta, HardySource::kSectorExact};
        } else if constexpr (std::is_same_v<K, SlitPlaneDomain>) {
          return starlike_hardy(alpha_profile(k, 2.0 * k.b0));
        } else {
          return {1.0, HardySource::kSectorExact};
        }
      },
      d.kind());
}

HardyBounds hardy_bounds(const DomainRef& d) {
  const CombSpec* spec = d.comb_spec();
  if (spec == nullptr || !spec->is_explicit()) {
    const auto h = theoretical_hardy(d);
    return {h.value(), h.value(), h.source()};
  }
  const double angle = inscribed_sector_angle(*spec, 0.0);
  return {1.0, angle > 0.0 ? kPi / angle : kInf, HardySource::kContainmentBound};
}

}  // namespace hardylab
