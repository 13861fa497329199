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

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "hardylab/comb.hpp"

namespace hardylab {

using Complex = std::complex<double>;

/// {v + r e^{i phi} : r > 0, |phi| < theta/2} with v = vertex_x on the real axis.
struct SectorDomain {
  double theta = 0.0;
  double vertex_x = 0.0;
};

/// C \ {iy : |y| >= b0}.
struct SlitPlaneDomain {
  double b0 = 1.0;
};

/// {Im z > 0}.
struct UpperHalfPlaneDomain {};

using DomainKind =
    std::variant<CombSpec, SectorDomain, SlitPlaneDomain, UpperHalfPlaneDomain>;

class DomainRef {
 public:
  static DomainRef comb(CombSpec spec) { return DomainRef(std::move(spec)); }
  static DomainRef sector(double theta, double vertex_x = 0.0);
  static DomainRef slit_plane(double b0);
  static DomainRef upper_half_plane() { return DomainRef(UpperHalfPlaneDomain{}); }

  const DomainKind& kind() const { return kind_; }
  const CombSpec* comb_spec() const { return std::get_if<CombSpec>(&kind_); }
  bool is_comb() const { return comb_spec() != nullptr; }
  std::string kind_name() const;

 private:
  explicit DomainRef(DomainKind kind) : kind_(std::move(kind)) {}
  DomainKind kind_;
};

/// A boundary ray: for combs `id` is the tooth index and `sign` picks the
/// upper (+1) or lower (-1) ray; the other domains number their rays the same
/// way starting from 0.
struct Feature {
  Index id = 0;
  int sign = 1;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct NearestBoundary {
  double distance = 0.0;
  Feature feature;
  Complex point;
};

struct BoundaryCrossing {
  /// Fraction of the segment travelled before the hit, in [0, 1].
  double fraction = 0.0;
  Feature feature;
  Complex point;
};

bool contains(const DomainRef& d, Complex z);

/// Euclidean distance to the boundary; throws OutsideDomain if !contains.
double boundary_distance(const DomainRef& d, Complex z);

/// Nearest boundary point and its feature. Does not check membership.
NearestBoundary nearest_boundary(const DomainRef& d, Complex z);

/// First point where the segment a -> b meets the boundary, if any. Touching
/// a ray counts as a crossing.
std::optional<BoundaryCrossing> first_crossing(const DomainRef& d, Complex a,
                                               Complex b);

}  // namespace hardylab
