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
#include <optional>
#include <string_view>

#include "hardylab/stochastic.hpp"

namespace hardylab {

enum class TailMethod { kHill, kSurvivalLs };

std::optional<TailMethod> parse_tail_method(std::string_view name);
std::string_view to_string(TailMethod method);

struct TailParams {
  std::optional<std::size_t> k;  // Hill order; default floor(sqrt(M))
  double q_lo = 0.80;            // survival-ls quantile window
  double q_hi = 0.99;
  // Hill only: treat capped samples in the top k as right-censored at t_cap.
  // When false, any capped sample in the top k is CapContamination.
  bool censored = true;
};

struct TailFit {
  TailMethod method = TailMethod::kHill;
  std::size_t k = 0;             // Hill order
  std::size_t k_uncensored = 0;  // Hill: top-k samples that exited
  double q_lo = 0.0;
  double q_hi = 0.0;
  double t_lo = 0.0;  // threshold / window in time units
  double t_hi = 0.0;
  double alpha_hat = 0.0;
  double std_error = 0.0;
  double capped_fraction = 0.0;
};

/// Tail exponent of the exit-time law. Hill: alpha = (k - c) / sum log(tau_i /
/// tau_(M-k)) over the top k with capped samples entering at t_cap and c of
/// them; stderr alpha / sqrt(k - c). Survival-ls: least-squares slope of the
/// log empirical survival against log t over the quantile window.
/// Throws CapContamination when the threshold or window reaches capped
/// samples, InsufficientSamples when the batch is too small.
TailFit tail_fit(const SampleBatch& batch, TailMethod method, const TailParams& params = {});

/// True when the two estimates differ by more than two joint standard errors.
bool tail_fits_disagree(const TailFit& a, const TailFit& b);

struct MomentEstimate {
  double value = 0.0;
  bool stable = false;
  double quarter = 0.0;  // running means over the first M/4 and M/2 samples
  double half = 0.0;
};

/// Mean of tau^p over uncapped samples, with a drift check across the nested
/// prefixes M/4, M/2 and M (stable when the spread is below 10% of the mean).
MomentEstimate moment_estimate(const SampleBatch& batch, double p);

struct HardyMc {
  double h_hat = 0.0;
  double std_error = 0.0;
  bool below_floor = false;  // h < 1/2 cannot occur for a simply connected domain
};

HardyMc hardy_mc(const TailFit& fit);

}  // namespace hardylab
