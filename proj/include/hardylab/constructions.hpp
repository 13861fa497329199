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

#include <optional>
#include <string_view>

#include "hardylab/comb.hpp"
#include "hardylab/domain.hpp"

namespace hardylab {

enum class Family { kCase1, kCase2, kCase3, kSector, kSlitPlane, kHalfPlane };

std::optional<Family> parse_family(std::string_view name);

enum class HardySource {
  kSectorExact,
  kStarlikeFormula,
  kMainTheoremCase1,
  kMainTheoremCase2,
  kMainTheoremCase3,
  kContainmentBound,
};

std::string_view to_string(HardySource source);

/// A Hardy number with its provenance; value may be +inf.
class TheoreticalHardy {
 public:
  /// Throws OutOfRange below 1/2, or below 1 for comb-derived sources.
  TheoreticalHardy(double value, HardySource source);

  double value() const { return value_; }
  HardySource source() const { return source_; }

 private:
  double value_;
  HardySource source_;
};

/// [lower, upper] enclosure of h(D); lower == upper when the value is known.
struct HardyBounds {
  double lower = 1.0;
  double upper = 1.0;
  HardySource source = HardySource::kContainmentBound;
};

struct BuildParams {
  std::optional<double> theta;
  std::optional<double> b0;
  double vertex_x = 0.0;
};

/// Throws InvalidParam when a parameter is missing or out of range.
DomainRef build(Family family, const BuildParams& params = {});

/// Largest angular measure of an arc of the slit plane's circle section.
double alpha_profile(const SlitPlaneDomain& d, double t);

/// pi / alpha for a starlike domain whose arc profile tends to alpha.
TheoreticalHardy starlike_hardy(double alpha_limit);

/// Supremum opening of a right-opening sector with vertex (vertex_x, 0) that
/// fits inside the comb. Teeth at the vertex abscissa are ignored; the result
/// is 0 when the teeth flatten out relative to their distance (b_n / x_n -> 0).
double inscribed_sector_angle(const CombSpec& spec, double vertex_x);

struct SectorFit {
  Index n = 1;
  double alpha = 0.0;
  double discriminant = 0.0;  // alpha^2 - 4 (1 + alpha n), always negative
};

/// Smallest natural n with n > (alpha^2 - 4) / (4 alpha), alpha = tan((pi - eps)/2).
/// The lines y = +-alpha (x - n) then miss the parabolas y = +-(x^2 + 1).
SectorFit sector_fit_n(double epsilon);

/// Exact Hardy number for the built families; UnknownDomain for explicit combs.
TheoreticalHardy theoretical_hardy(const DomainRef& d);

/// Exact value as a degenerate interval, or [1, pi / inscribed angle at 0] for
/// explicit combs.
HardyBounds hardy_bounds(const DomainRef& d);

}  // namespace hardylab
