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
#include <span>
#include <vector>

#include "hardylab/comb.hpp"
#include "hardylab/domain.hpp"

namespace hardylab {

struct IntegralResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t segments = 0;  // accepted quadrature panels
  std::vector<double> breakpoints_used;
};

struct QuadratureOptions {
  std::size_t max_panels = 1'000'000;
};

/// Integral of dt / (t * Theta(t)) over [r1, r2].
///
/// The range is cut at every radius where the blocking tooth changes, and
/// each piece is integrated with adaptive Gauss-Legendre panels refined by
/// halving until the estimated error fits the piece's share of tol.
/// Throws BadRange unless 0 < r1 < r2, ToleranceUnreachable past the panel cap.
IntegralResult beurling_integral(const CombSpec& spec, double r1, double r2,
                                 double tol, const QuadratureOptions& opts = {});

struct HardyEstimate {
  double r1 = 0.0;
  double r2 = 0.0;
  IntegralResult integral;
  double h_window = 0.0;
  double d_lower = 0.0;
  double omega_upper = 0.0;
  // log of omega_upper, finite even when omega_upper underflows to 0.
  double log_omega_upper = 0.0;
};

/// pi * integral / log(r2 / r1). Requires b0 <= r1 < r2.
HardyEstimate hardy_window(const CombSpec& spec, double r1, double r2, double tol,
                           const QuadratureOptions& opts = {});

/// log(1/4) + pi * integral from dist(0, boundary) to r.
double hyp_distance_lower(const CombSpec& spec, double r, double tol = 1e-10);

/// (8/pi) exp(-pi * integral from dist(0, boundary) to R).
double harmonic_measure_upper(const CombSpec& spec, double R, double tol = 1e-10);

/// log(2/pi) - log(omega); throws InvalidOmega outside (0, 1].
double hyp_lower_from_omega(double omega);

/// Twice the quasihyperbolic length of a polyline from 0 to the circle |z| = r.
/// Throws PathOutsideDomain if the path touches the boundary and BadRange if
/// it does not run from 0 to radius r.
double quasihyperbolic_upper(const CombSpec& spec, double r,
                             std::span<const Complex> path, double tol = 1e-9);

/// Critical exit-time moment order h/2; throws OutOfRange below 1/2.
double burkholder_convert(double h);

/// Hardy number from a critical moment order.
double burkholder_inverse(double moment);

}  // namespace hardylab
