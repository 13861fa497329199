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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hardylab/domain.hpp"

namespace hardylab {

struct SimConfig {
  double step_factor = 0.1;  // Euler step dt = step_factor * dist^2
  double dt_max = 0.01;      // may be +inf
  double eps_absorb = 1e-4;
  double t_cap = 1e4;
  std::optional<double> r_stop;
  std::uint64_t master_seed = 0;

  /// Throws InvalidParam on out-of-range fields.
  void validate() const;
};

enum class HitKind { kRay, kCircle, kCapped };

std::string_view to_string(HitKind kind);

struct ExitSample {
  double tau = 0.0;
  Complex exit_point;
  HitKind hit = HitKind::kCapped;
  Index hit_id = 0;  // tooth index / ray number, or arc id on the stop circle
  int hit_sign = 0;  // ray side (+1 upper, -1 lower); 0 otherwise
  std::uint64_t n_steps = 0;

  bool capped() const { return hit == HitKind::kCapped; }
  friend bool operator==(const ExitSample&, const ExitSample&) = default;
};

struct SampleBatch {
  DomainRef domain;
  Complex z0;
  SimConfig config;
  std::vector<ExitSample> samples;

  std::size_t size() const { return samples.size(); }
  double capped_fraction() const;
};

/// Default start point: 1 for a sector with vertex 0 (the vertex itself is
/// on the boundary), the origin otherwise.
Complex default_start(const DomainRef& d);

/// One Brownian path from z0 until it leaves the domain, reaches the stop
/// circle, or accumulates t_cap. Deterministic in (master_seed, index).
ExitSample sample_exit(const DomainRef& d, Complex z0, const SimConfig& cfg,
                       std::uint64_t index);

/// Thread count from HARDYLAB_THREADS, else the hardware concurrency.
unsigned default_threads();

/// Samples 0..count-1. The result does not depend on `threads` (0 = default).
SampleBatch run_batch(const DomainRef& d, Complex z0, const SimConfig& cfg,
                      std::size_t count, unsigned threads = 0);

/// Mean exit time from the disk of radius rho about 0, with r_stop = rho in
/// a slit plane whose slits stay 10 rho away.
double calibrate_disk(double rho, std::size_t count, SimConfig cfg, unsigned threads = 0);

struct ArcProbability {
  int arc_id = 0;
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  double p = 0.0;
  double ci95 = 0.0;
};

struct HMEstimate {
  double r = 0.0;
  std::vector<ArcProbability> arcs;  // components of D ∩ {|z| = r}
  double boundary_p = 0.0;           // absorbed on the domain's own boundary
  double boundary_ci95 = 0.0;
  std::size_t count = 0;

  double circle_p() const;
  /// Half-width for the total circle probability.
  double circle_ci95() const;
};

/// Walk-on-spheres in D ∩ {|z| < r}: jump to a uniform point on the largest
/// circle about z inside the stopped domain until within eps of its boundary.
HMEstimate harmonic_measure_wos(const DomainRef& d, Complex z0, double r,
                                std::size_t count, double eps,
                                std::uint64_t seed = 0, unsigned threads = 0);

}  // namespace hardylab
