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

#include <vector>

#include "hardylab/comb.hpp"
#include "hardylab/domain.hpp"

namespace hardylab {

/// Open arc {t e^{i phi} : phi_lo < phi < phi_hi} of the circle |z| = t.
///
/// phi_lo lies in (-pi, pi]; phi_hi = phi_lo + length, so phi_hi > pi exactly
/// when the arc wraps across the negative real axis. A full circle is stored
/// as (-pi, pi) with full_circle set.
struct CircleArc {
  double t = 0.0;
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  bool wraps = false;
  bool full_circle = false;

  double length() const { return phi_hi - phi_lo; }
  bool contains_angle(double phi) const;
};

/// The components of D ∩ {|z| = t}, ordered by phi_lo.
struct ArcDecomposition {
  double t = 0.0;
  std::vector<CircleArc> arcs;
  std::vector<double> crossing_angles;

  /// Index of the arc containing angle phi, or -1 when phi is a crossing
  /// angle or lies outside the domain.
  int arc_index(double phi) const;
};

ArcDecomposition circle_arcs(const CombSpec& spec, double t);
ArcDecomposition circle_arcs(const DomainRef& d, double t);

struct ThetaProfile {
  CircleArc j_arc;
  double theta = 0.0;
};

/// J_t, the arc of the comb's circle section through the positive real axis,
/// and its angular width.
ThetaProfile theta_profile(const CombSpec& spec, double t);

/// Component of the circle section at radius t that separates 0 from
/// `target` (a component at a larger radius). Found as the arc crossed by
/// the path that runs along the real axis to the midpoint abscissa of the
/// target's channel and then vertically up or down to the target; that path
/// meets the circle |z| = t exactly once.
CircleArc separating_arc(const CombSpec& spec, double t, const CircleArc& target);

struct ChannelMargin {
  double l_channel = 0.0;  // length of the in-channel arc between rays k, k+1
  double l_j = 0.0;        // length of J_t
  double phi = 0.0;        // angular width of the in-channel arc
};

/// Channel-arc versus J_t comparison for a Case 1 comb. Throws NoCrossing if
/// either ray x_k, x_{k+1} misses the circle.
ChannelMargin channel_margin(const CombSpec& spec, double t, Index k);

/// Radius past which phi(t) <= theta is certified by phi(t) <= 1/(t sin(theta/2)).
double r0_threshold(double theta);

struct ThetaGap {
  double gap = 0.0;    // Theta(t) - theta
  double bound = 0.0;  // 2 / (t sin(theta/2))
};

ThetaGap theta_gap(const CombSpec& spec, double t);

}  // namespace hardylab
