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

#include "hardylab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;

const Case1Rule& require_case1(const CombSpec& spec) {
  const auto* r = std::get_if<Case1Rule>(&spec.rule());
  if (r == nullptr) {
    throw Error(ErrorCode::kInvalidParam, "operation requires a Case 1 comb");
  }
  return *r;
}

CircleArc full_circle(double t) { return {t, -kPi, kPi, false, true}; }

// Arcs between consecutive sorted crossing angles, keeping those for which
// `inside(mid_angle)` holds.
template <typename Inside>
ArcDecomposition assemble(double t, std::vector<double> angles, Inside&& inside) {
  ArcDecomposition out;
  out.t = t;
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  out.crossing_angles = angles;
  if (angles.empty()) {
    if (inside(0.0)) out.arcs.push_back(full_circle(t));
    return out;
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double lo = angles[i];
    const bool last = i + 1 == angles.size();
    const double hi = last ? angles[0] + 2.0 * kPi : angles[i + 1];
    if (!inside(0.5 * (lo + hi))) continue;
    out.arcs.push_back(CircleArc{t, lo, hi, hi > kPi, false});
  }
  return out;
}

bool same_arc(const CircleArc& a, const CircleArc& b) {
  constexpr double kTol = 1e-12;
  if (a.full_circle || b.full_circle) return a.full_circle == b.full_circle;
  return std::abs(a.phi_lo - b.phi_lo) <= kTol && std::abs(a.phi_hi - b.phi_hi) <= kTol;
}

}  // namespace

bool CircleArc::contains_angle(double phi) const {
  if (full_circle) return true;
  double p = phi;
  while (p <= phi_lo) p += 2.0 * kPi;
  while (p > phi_lo + 2.0 * kPi) p -= 2.0 * kPi;
  return p < phi_hi;
}

int ArcDecomposition::arc_index(double phi) const {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].contains_angle(phi)) return static_cast<int>(i);
  }
  return -1;
}

ArcDecomposition circle_arcs(const CombSpec& spec, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kBadRange, "radius must be positive");
  std::vector<double> angles;
  const auto [lo, hi] = spec.teeth_in(-t, t);
  for (Index n = lo; n <= hi; ++n) {
    const Tooth tooth = spec.tooth(n);
    if (!tooth.crosses(t)) continue;
    const double a = std::acos(tooth.x / t);
    angles.push_back(a);
    angles.push_back(-a);
  }
  return assemble(t, std::move(angles), [](double) { return true; });
}

ArcDecomposition circle_arcs(const DomainRef& d, double t) {
  if (const CombSpec* spec = d.comb_spec()) return circle_arcs(*spec, t);
  if (!(t > 0.0)) throw Error(ErrorCode::kBadRange, "radius must be positive");
  std::vector<double> angles;
  if (const auto* s = std::get_if<SectorDomain>(&d.kind())) {
    const double v = s->vertex_x;
    for (double psi : {s->theta / 2.0, -s->theta / 2.0}) {
      // |v + r e^{i psi}| = t for r >= 0.
      const double c = std::cos(psi);
      const double disc = v * v * c * c - v * v + t * t;
      if (disc < 0.0) continue;
      for (double r : {-v * c + std::sqrt(disc), -v * c - std::sqrt(disc)}) {
        if (r >= 0.0) angles.push_back(std::arg(Complex(v, 0.0) + std::polar(r, psi)));
      }
    }
  } else if (const auto* sp = std::get_if<SlitPlaneDomain>(&d.kind())) {
    if (t >= sp->b0) {
      angles.push_back(kPi / 2.0);
      angles.push_back(-kPi / 2.0);
    }
  } else {
    angles.push_back(0.0);
    angles.push_back(kPi);
  }
  return assemble(t, std::move(angles),
                  [&](double phi) { return contains(d, std::polar(t, phi)); });
}

ThetaProfile theta_profile(const CombSpec& spec, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kBadRange, "radius must be positive");
  const auto b = spec.blocker(t);
  if (!b) return {full_circle(t), 2.0 * kPi};
  const double a = std::acos(b->x / t);
  return {CircleArc{t, -a, a, false, false}, 2.0 * a};
}

CircleArc separating_arc(const CombSpec& spec, double t, const CircleArc& target) {
  const double r = target.t;
  if (!(t > 0.0) || !(r > t)) {
    throw Error(ErrorCode::kInvalidTarget, "target radius must exceed t");
  }
  const ArcDecomposition at_r = circle_arcs(spec, r);
  const bool is_component =
      std::any_of(at_r.arcs.begin(), at_r.arcs.end(),
                  [&](const CircleArc& a) { return same_arc(a, target); });
  if (!is_component) {
    throw Error(ErrorCode::kInvalidTarget,
                "target is not a component of the circle section at its radius");
  }

  double phi = 0.0;
  if (target.full_circle || target.contains_angle(0.0)) {
    phi = 0.0;
  } else if (target.contains_angle(kPi)) {
    phi = kPi;
  } else {
    // The arc lies in one open half-plane between two rays of the same
    // channel; walk the real axis to the channel midpoint, then vertically.
    const int sign = std::sin(0.5 * (target.phi_lo + target.phi_hi)) > 0.0 ? 1 : -1;
    const double mid_x = 0.5 * r * (std::cos(target.phi_lo) + std::cos(target.phi_hi));
    if (t <= std::abs(mid_x)) {
      phi = mid_x > 0.0 ? 0.0 : kPi;
    } else {
      phi = sign * std::acos(mid_x / t);
    }
  }
  const ArcDecomposition at_t = circle_arcs(spec, t);
  const int idx = at_t.arc_index(phi);
  if (idx < 0) {
    throw Error(ErrorCode::kInvalidTarget, "channel path meets a ray at radius t");
  }
  return at_t.arcs[static_cast<std::size_t>(idx)];
}

ChannelMargin channel_margin(const CombSpec& spec, double t, Index k) {
  require_case1(spec);
  if (k < 1) throw Error(ErrorCode::kInvalidParam, "channel index must be >= 1");
  const Tooth left = spec.tooth(k);
  const Tooth right = spec.tooth(k + 1);
  if (!left.crosses(t) || !right.crosses(t)) {
    throw Error(ErrorCode::kNoCrossing,
                "rays x_" + std::to_string(k) + ", x_" + std::to_string(k + 1) +
                    " do not both meet |z| = " + std::to_string(t));
  }
  ChannelMargin m;
  m.phi = std::acos(left.x / t) - std::acos(right.x / t);
  m.l_channel = t * m.phi;
  m.l_j = t * theta_profile(spec, t).theta;
  return m;
}

double r0_threshold(double theta) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorCode::kInvalidAngle, "theta must be in (0, pi)");
  }
  constexpr double kMinGap = 1.0;
  return std::max(1.0 + kMinGap, 1.0 / (theta * std::sin(theta / 2.0)));
}

ThetaGap theta_gap(const CombSpec& spec, double t) {
  const double theta = require_case1(spec).theta;
  if (!(t > 1.0)) throw Error(ErrorCode::kBadRange, "theta_gap needs t > 1");
  return {theta_profile(spec, t).theta - theta, 2.0 / (t * std::sin(theta / 2.0))};
}

}  // namespace hardylab
