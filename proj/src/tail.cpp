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

#include "hardylab/tail.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

// Exit times ascending; capped samples enter at t_cap.
std::vector<std::pair<double, bool>> sorted_times(const SampleBatch& batch) {
  std::vector<std::pair<double, bool>> out;
  out.reserve(batch.size());
  for (const auto& s : batch.samples) {
    out.emplace_back(s.capped() ? batch.config.t_cap : s.tau, s.capped());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TailFit hill(const SampleBatch& batch, const TailParams& params) {
  const std::size_t m = batch.size();
  const std::size_t k =
      params.k.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(m)))));
  if (k < 2 || k >= m) {
    throw Error(ErrorCode::kInsufficientSamples, "Hill order must satisfy 2 <= k < M");
  }
  const auto times = sorted_times(batch);
  const auto [threshold, threshold_capped] = times[m - k - 1];
  if (threshold_capped || !(threshold > 0.0)) {
    throw Error(ErrorCode::kCapContamination, "Hill threshold is a capped sample");
  }
  double log_sum = 0.0;
  std::size_t exited = 0;
  for (std::size_t i = m - k; i < m; ++i) {
    if (times[i].second) {
      if (!params.censored) {
        throw Error(ErrorCode::kCapContamination, "capped sample among the top k");
      }
    } else {
      ++exited;
    }
    log_sum += std::log(times[i].first / threshold);
  }
  if (exited == 0 || !(log_sum > 0.0)) {
    throw Error(ErrorCode::kInsufficientSamples, "top k samples carry no tail information");
  }
  TailFit fit;
  fit.method = TailMethod::kHill;
  fit.k = k;
  fit.k_uncensored = exited;
  fit.t_lo = threshold;
  fit.t_hi = times.back().first;
  fit.alpha_hat = static_cast<double>(exited) / log_sum;
  fit.std_error = fit.alpha_hat / std::sqrt(static_cast<double>(exited));
  return fit;
}

TailFit survival_ls(const SampleBatch& batch, const TailParams& params) {
  if (!(params.q_lo > 0.0 && params.q_lo < params.q_hi && params.q_hi < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "quantile window must satisfy 0 < q_lo < q_hi < 1");
  }
  const std::size_t m = batch.size();
  const auto times = sorted_times(batch);
  const auto lo = static_cast<std::size_t>(std::ceil(params.q_lo * static_cast<double>(m)));
  const auto hi = static_cast<std::size_t>(std::floor(params.q_hi * static_cast<double>(m)));
  if (m < 10 || hi <= lo + 1 || hi >= m) {
    throw Error(ErrorCode::kInsufficientSamples, "quantile window holds too few samples");
  }
  for (std::size_t i = lo; i <= hi; ++i) {
    if (times[i].second) {
      throw Error(ErrorCode::kCapContamination, "quantile window reaches capped samples");
    }
  }
  // Points (log tau_(i), log S) with S = (M - i - 1/2) / M at the i-th order
  // statistic (0-based).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (!(times[i].first > 0.0)) continue;
    const double x = std::log(times[i].first);
    const double y = std::log((static_cast<double>(m - i) - 0.5) / static_cast<double>(m));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  const double var = sxx - sx * sx / n;
  if (n < 3 || !(var > 0.0)) {
    throw Error(ErrorCode::kInsufficientSamples, "quantile window has no spread in time");
  }
  const double slope = (sxy - sx * sy / n) / var;

  TailFit fit;
  fit.method = TailMethod::kSurvivalLs;
  fit.q_lo = params.q_lo;
  fit.q_hi = params.q_hi;
  fit.t_lo = times[lo].first;
  fit.t_hi = times[hi].first;
  fit.alpha_hat = -slope;
  // Delta-method error of the two-point slope log(S_lo / S_hi) / log(t_hi / t_lo).
  const double s_lo = 1.0 - params.q_lo;
  const double s_hi = 1.0 - params.q_hi;
  fit.std_error = std::sqrt((1.0 / s_hi - 1.0 / s_lo) / static_cast<double>(m)) /
                std::log(fit.t_hi / fit.t_lo);
  if (!(fit.alpha_hat > 0.0)) {
    throw Error(ErrorCode::kInsufficientSamples, "survival curve is not decreasing");
  }
  return fit;
}

}  // namespace

std::optional<TailMethod> parse_tail_method(std::string_view name) {
  if (name == "hill") return TailMethod::kHill;
  if (name == "ls" || name == "survival-ls") return TailMethod::kSurvivalLs;
  return std::nullopt;
}

std::string_view to_string(TailMethod method) {
  return method == TailMethod::kHill ? "hill" : "survival-ls";
}

TailFit tail_fit(const SampleBatch& batch, TailMethod method, const TailParams& params) {
  TailFit fit = method == TailMethod::kHill ? hill(batch, params) : survival_ls(batch, params);
  fit.capped_fraction = batch.capped_fraction();
  return fit;
}

bool tail_fits_disagree(const TailFit& a, const TailFit& b) {
  const double joint = std::hypot(a.std_error, b.std_error);
  return std::abs(a.alpha_hat - b.alpha_hat) > 2.0 * joint;
}

MomentEstimate moment_estimate(const SampleBatch& batch, double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::kInvalidParam, "moment order must be positive");
  const std::size_t m = batch.size();
  const auto prefix_mean = [&](std::size_t count) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& s = batch.samples[i];
      if (s.capped()) continue;
      sum += std::pow(s.tau, p);
      ++used;
    }
    return used == 0 ? 0.0 : sum / static_cast<double>(used);
  };
  MomentEstimate est;
  est.quarter = prefix_mean(m / 4);
  est.half = prefix_mean(m / 2);
  est.value = prefix_mean(m);
  const double hi = std::max({est.quarter, est.half, est.value});
  const double lo = std::min({est.quarter, est.half, est.value});
  est.stable = m >= 4 && est.value > 0.0 && (hi - lo) < 0.1 * est.value;
  return est;
}

HardyMc hardy_mc(const TailFit& fit) {
  HardyMc out;
  out.h_hat = 2.0 * fit.alpha_hat;
  out.std_error = 2.0 * fit.std_error;
  out.below_floor = out.h_hat < 0.5;
  return out;
}

}  // namespace hardylab
