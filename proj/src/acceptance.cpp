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

#include "hardylab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <unistd.h>

#include "hardylab/arcs.hpp"
#include "hardylab/constructions.hpp"
#include "hardylab/error.hpp"
#include "hardylab/estimators.hpp"
#include "hardylab/io.hpp"
#include "hardylab/stochastic.hpp"
#include "hardylab/tail.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CriterionResult start_result(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

// Width of the arc through angle 0 from plain ray enumeration over |n| <= t+1.
double ray_enumeration_theta(const CombSpec& spec, double t) {
  const auto lim = static_cast<Index>(std::ceil(t)) + 1;
  double nearest = kPi;
  bool any = false;
  for (Index n = -lim; n <= lim; ++n) {
    const Tooth tooth = spec.tooth(n);
    if (std::abs(tooth.x) < t && std::sqrt(t * t - tooth.x * tooth.x) >= tooth.b) {
      nearest = std::min(nearest, std::acos(tooth.x / t));
      any = true;
    }
  }
  return any ? 2.0 * nearest : 2.0 * kPi;
}

// Exit-time configuration for the tail criteria: exact free-space Gaussian
// steps (no dt_max clamp) so 10^5 heavy-tailed paths fit on one core.
SimConfig tail_config(std::uint64_t seed, double t_cap) {
  SimConfig cfg;
  cfg.dt_max = kInf;
  cfg.t_cap = t_cap;
  cfg.master_seed = seed;
  return cfg;
}

CriterionResult geometry_oracle() {
  CriterionResult r = start_result(1, "Theta spot values vs ray enumeration");
  const auto c3 = CombSpec::case3();
  const auto c1 = CombSpec::case1(kPi / 2);
  const double a = theta_profile(c3, 0.5).theta;
  const double b = theta_profile(c3, 2.0).theta;
  const double c = theta_profile(c1, 3.0).theta;
  double oracle_gap = std::max({std::abs(a - ray_enumeration_theta(c3, 0.5)),
                                std::abs(b - ray_enumeration_theta(c3, 2.0)),
                                std::abs(c - ray_enumeration_theta(c1, 3.0))});
  r.pass = a == 2.0 * kPi && std::abs(b - 2.0 * kPi / 3.0) <= 1e-12 &&
           std::abs(c - 2.0 * std::acos(2.0 / 3.0)) <= 1e-12 && oracle_gap <= 1e-12;
  r.measured = fmt("Theta=%.15g, %.15g, %.15g; max oracle gap %.2g", a, b, c, oracle_gap);
  r.target = "2pi exact, 2pi/3 and 2acos(2/3) within 1e-12";
  return r;
}

CriterionResult case1_window(double& seconds_out) {
  CriterionResult r = start_result(2, "Case 1 window estimate over [1e3, 1e6]");
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string values;
  for (double th : {kPi / 3, kPi / 2, 3 * kPi / 4}) {
    const double h = hardy_window(CombSpec::case1(th), 1e3, 1e6, 1e-10).h_window;
    worst = std::max(worst, std::abs(h - kPi / th));
    values += fmt("%s%.5f/%.5f", values.empty() ? "" : ", ", h, kPi / th);
  }
  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = worst <= 0.01 && seconds_out < 10.0;
  r.measured = fmt("h/theory = %s; max dev %.2g; %.1f s", values.c_str(), worst, seconds_out);
  r.target = "|h - pi/theta| <= 0.01, < 10 s";
  return r;
}

CriterionResult theta_gap_bound() {
  CriterionResult r = start_result(3, "Theta gap bound on [2, 1e6]");
  int violations = 0;
  double worst_low = kInf;
  double worst_ratio = 0.0;
  for (double th : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const auto spec = CombSpec::case1(th);
    for (double t : log_grid(2.0, 1e6, 200)) {
      const double gap = theta_profile(spec, t).theta - th;
      const double bound = 2.0 / (t * std::sin(th / 2));
      if (!(gap >= 0.0 && gap <= bound)) ++violations;
      worst_low = std::min(worst_low, gap);
      worst_ratio = std::max(worst_ratio, gap / bound);
    }
  }
  r.pass = violations == 0;
  r.measured = fmt("%d violations of 600; min gap %.3g; max gap/bound %.3f", violations,
                   worst_low, worst_ratio);
  r.target = "0 <= Theta - theta <= 2/(t sin(theta/2)), no tolerance";
  return r;
}

CriterionResult channel_arcs(std::uint64_t seed) {
  CriterionResult r = start_result(4, "channel arc never exceeds J_t");
  const double th = kPi / 2;
  const auto spec = CombSpec::case1(th);
  const double r0 = r0_threshold(th);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> logt(std::log(r0), std::log(1e6));
  int checked = 0;
  int failures = 0;
  double worst = 0.0;
  while (checked < 1000) {
    const double t = std::exp(logt(gen));
    // Rays k and k+1 both reach the circle iff k+1 <= t cos(theta/2).
    Index kmax = static_cast<Index>(std::floor(t * std::cos(th / 2)));
    while (kmax >= 0 && !spec.tooth(kmax).crosses(t)) --kmax;
    if (kmax < 2) continue;
    const Index k = std::uniform_int_distribution<Index>(1, kmax - 1)(gen);
    const ChannelMargin m = channel_margin(spec, t, k);
    if (!(m.l_channel <= m.l_j)) ++failures;
    worst = std::max(worst, m.l_channel / m.l_j);
    ++checked;
  }
  r.pass = failures == 0;
  r.measured = fmt("%d failures of %d; max l_I/l_J %.4f", failures, checked, worst);
  r.target = "l_I <= l_J in every case";
  return r;
}

CriterionResult lower_bound(std::uint64_t seed) {
  CriterionResult r = start_result(5, "random explicit combs: Theta <= pi, h_window >= 1");
  std::mt19937_64 gen(seed + 5);
  std::uniform_real_distribution<double> gap(1.0, 3.0);
  std::uniform_real_distribution<double> half(0.5, 50.0);
  int theta_fail = 0;
  double min_h = kInf;
  double max_theta = 0.0;
  for (int s = 0; s < 20; ++s) {
    std::vector<Tooth> teeth(101);
    teeth[50] = {0, 0.0, half(gen)};
    for (int n = 1; n <= 50; ++n) {
      teeth[50 + n] = {n, teeth[49 + n].x + gap(gen), half(gen)};
      teeth[50 - n] = {-n, teeth[51 - n].x - gap(gen), half(gen)};
    }
    const auto spec = CombSpec::from_teeth(teeth, 1.0, TailExtension{gap(gen), half(gen)});
    const double tip = spec.tooth(0).tip_radius();
    std::vector<double> ts = log_grid(tip, 1e3 * tip, 200);
    std::uniform_real_distribution<double> extra(tip, 1e3 * tip);
    for (int i = 0; i < 200; ++i) ts.push_back(extra(gen));
    for (double t : ts) {
      const double theta = theta_profile(spec, t).theta;
      max_theta = std::max(max_theta, theta);
      if (!(theta <= kPi)) ++theta_fail;
    }
    min_h = std::min(min_h, hardy_window(spec, tip, 1e3 * tip, 1e-10).h_window);
  }
  r.pass = theta_fail == 0 && min_h >= 1.0 - 1e-6;
  r.measured = fmt("max Theta %.15g (%d > pi); min h_window %.9f", max_theta, theta_fail, min_h);
  r.target = "Theta <= pi; h_window >= 1 - 1e-6";
  return r;
}

CriterionResult case3_growth() {
  CriterionResult r = start_result(6, "Case 3 window estimates grow without bound");
  const auto spec = CombSpec::case3();
  const double h4 = hardy_window(spec, 1e2, 1e4, 1e-8).h_window;
  const double h3 = hardy_window(spec, 1e2, 1e3, 1e-8).h_window;
  const double h5 = hardy_window(spec, 1e2, 1e5, 1e-8).h_window;
  r.pass = h4 >= 40.0 && h3 < h4 && h4 < h5;
  r.measured = fmt("h[1e2,1e3]=%.2f h[1e2,1e4]=%.2f h[1e2,1e5]=%.2f", h3, h4, h5);
  r.target = "h[1e2,1e4] >= 40, increasing";
  return r;
}

CriterionResult disk(const SuiteOptions& o) {
  CriterionResult r = start_result(7, "disk calibration E[tau] = 1/2");
  SimConfig cfg;
  cfg.master_seed = o.seed;
  const auto start = std::chrono::steady_clock::now();
  const double mean = calibrate_disk(1.0, 100000, cfg, o.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = mean >= 0.49 && mean <= 0.51 && secs < 60.0;
  r.measured = fmt("mean tau %.5f in %.1f s", mean, secs);
  r.target = "[0.49, 0.51], < 60 s";
  return r;
}

CriterionResult sector_tail(const SuiteOptions& o) {
  CriterionResult r = start_result(8, "sector(pi/2) tail exponent");
  const SampleBatch b = run_batch(DomainRef::sector(kPi / 2), {1.0, 0.0},
                                  tail_config(o.seed, 1e4), 100000, o.threads);
  const TailFit fit = tail_fit(b, TailMethod::kHill, {.k = 1000});
  const HardyMc h = hardy_mc(fit);
  r.pass = fit.alpha_hat >= 0.85 && fit.alpha_hat <= 1.15 && h.h_hat >= 1.7 && h.h_hat <= 2.3;
  r.measured = fmt("alpha %.4f +- %.4f, h %.3f, capped %.2g", fit.alpha_hat, fit.std_error,
                   h.h_hat, fit.capped_fraction);
  r.target = "alpha in [0.85, 1.15], h in [1.7, 2.3]";
  return r;
}

// Caps for the comb batches are set far above the largest of 10^5 draws
// (about M^(1/alpha)), so moment drift is not hidden by truncation.
constexpr double kUntruncatedCap = 1e10;

CriterionResult case1_tail(const SuiteOptions& o, double h_window) {
  CriterionResult r = start_result(9, "Case 1 comb tail vs window estimate");
  const SampleBatch b = run_batch(DomainRef::comb(CombSpec::case1(kPi / 2)), {0.0, 0.0},
                                  tail_config(o.seed, kUntruncatedCap), 100000, o.threads);
  const TailFit fit = tail_fit(b, TailMethod::kHill, {.k = 1000});
  const HardyMc h = hardy_mc(fit);
  const MomentEstimate below = moment_estimate(b, 0.5);
  const MomentEstimate above = moment_estimate(b, 2.0);
  r.pass = h.h_hat >= 1.6 && h.h_hat <= 2.4 && below.stable && !above.stable;
  r.measured = fmt("h_mc %.3f +- %.3f (window %.3f); E tau^0.5 %s, E tau^2 %s", h.h_hat,
                   h.std_error, h_window, below.stable ? "stable" : "unstable",
                   above.stable ? "stable" : "unstable");
  r.target = "h_mc in [1.6, 2.4]; p=0.5 stable, q=2 unstable";
  return r;
}

CriterionResult case2_tail(const SuiteOptions& o) {
  CriterionResult r = start_result(10, "Case 2 comb tail exponent 1/2");
  const SampleBatch b = run_batch(DomainRef::comb(CombSpec::case2()), {0.0, 0.0},
                                  tail_config(o.seed, kUntruncatedCap), 100000, o.threads);
  const TailFit fit = tail_fit(b, TailMethod::kHill, {.k = 1000});
  const MomentEstimate low = moment_estimate(b, 0.25);
  const MomentEstimate one = moment_estimate(b, 1.0);
  r.pass = fit.alpha_hat >= 0.35 && fit.alpha_hat <= 0.65 && low.stable && !one.stable;
  r.measured = fmt("alpha %.4f +- %.4f; p=0.25 %s; p=1 %s (means %.4g, %.4g, %.4g)",
                   fit.alpha_hat, fit.std_error, low.stable ? "stable" : "unstable",
                   one.stable ? "stable" : "unstable", one.quarter, one.half, one.value);
  r.target = "alpha in [0.35, 0.65]; p=0.25 stable, p=1 unstable";
  return r;
}

CriterionResult case3_tail(const SuiteOptions& o) {
  CriterionResult r = start_result(11, "Case 3 comb light tail");
  const SampleBatch b = run_batch(DomainRef::comb(CombSpec::case3()), {0.0, 0.0},
                                  tail_config(o.seed, 1e3), 100000, o.threads);
  const MomentEstimate m = moment_estimate(b, 3.0);
  r.pass = b.capped_fraction() < 1e-3 && m.stable;
  r.measured = fmt("capped %.2g; E tau^3 = %.4g (%s)", b.capped_fraction(), m.value,
                   m.stable ? "stable" : "unstable");
  r.target = "capped < 1e-3; p=3 stable";
  return r;
}

CriterionResult wos_comb(const SuiteOptions& o) {
  CriterionResult r = start_result(12, "harmonic measure of F_20 vs upper bound");
  const auto spec = CombSpec::case1(kPi / 2);
  const HMEstimate est = harmonic_measure_wos(DomainRef::comb(spec), {0.0, 0.0}, 20.0, 1000000,
                                              1e-5, o.seed, o.threads);
  const double bound = harmonic_measure_upper(spec, 20.0);
  r.pass = est.circle_p() <= bound + 3.0 * est.circle_ci95();
  r.measured = fmt("omega %.6f +- %.6f, bound %.6f", est.circle_p(), est.circle_ci95(), bound);
  r.target = "omega <= bound + 3 ci95";
  return r;
}

CriterionResult wos_halfplane(const SuiteOptions& o) {
  CriterionResult r = start_result(13, "half-plane harmonic measure floor");
  const HMEstimate est = harmonic_measure_wos(DomainRef::upper_half_plane(), {0.0, 1.0}, 10.0,
                                              1000000, 1e-5, o.seed, o.threads);
  const double floor = 2.0 / (10.0 * kPi);
  r.pass = est.circle_p() >= floor - 3.0 * est.circle_ci95();
  r.measured = fmt("omega %.5f +- %.5f, floor %.5f", est.circle_p(), est.circle_ci95(), floor);
  r.target = "omega >= 2/(10 pi) - 3 ci95";
  return r;
}

CriterionResult sector_fit() {
  CriterionResult r = start_result(14, "parabola comb sector fit");
  const SectorFit base = sector_fit_n(kPi / 2);
  bool ok = base.n == 1 && std::abs(base.alpha - 1.0) < 1e-12 &&
            std::abs(base.discriminant + 7.0) < 1e-12;
  int bad = 0;
  for (int i = 1; i <= 50; ++i) {
    const SectorFit f = sector_fit_n(kPi * i / 51.0);
    if (!(f.discriminant < 0.0)) ++bad;
    for (Index m = -10000; m <= 10000; ++m) {
      const double x = static_cast<double>(m);
      if (!(x * x + 1.0 >= f.alpha * (x - static_cast<double>(f.n)))) {
        ++bad;
        break;
      }
    }
  }
  r.pass = ok && bad == 0;
  r.measured = fmt("pi/2 -> n=%lld alpha=%.3g disc=%.3g; %d failing grid points",
                   static_cast<long long>(base.n), base.alpha, base.discriminant, bad);
  r.target = "(1, 1, -7); all 50 grid points valid";
  return r;
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return status;
}

CriterionResult determinism(const SuiteOptions& o) {
  CriterionResult r = start_result(15, "exit-times output independent of threads");
  r.target = "byte-identical batch files for --threads 1 and 8";
  if (o.cli_path.empty()) {
    r.measured = "no hardylab executable available";
    return r;
  }
  namespace fs = std::filesystem;
  const fs::path dir = o.work_dir.empty()
                           ? fs::temp_directory_path() / fmt("hardylab_accept_%d", ::getpid())
                           : fs::path(o.work_dir);
  fs::create_directories(dir);
  const std::string exe = "\"" + o.cli_path + "\"";
  const std::string domain = (dir / "case1.json").string();
  const auto quiet = std::string(" > ") + (dir / "log.txt").string() + " 2>&1";
  int rc = run_command(exe + " construct --family case1 --theta 1.5707963267948966 --out \"" +
                       domain + "\"" + quiet);
  std::string outputs[2];
  int i = 0;
  for (int threads : {1, 8}) {
    const std::string out = (dir / fmt("batch_t%d.csv", threads)).string();
    rc |= run_command(exe + " exit-times --domain \"" + domain +
                      "\" --samples 5000 --t-cap 100 --seed 7 --threads " +
                      std::to_string(threads) + " --out \"" + out + "\"" + quiet);
    if (rc == 0) outputs[i] = read_file(out) + read_file(out + ".json");
    ++i;
  }
  r.pass = rc == 0 && !outputs[0].empty() && outputs[0] == outputs[1];
  r.measured = rc != 0 ? "command failed"
                       : fmt("%zu bytes each, digests %s / %s", outputs[0].size(),
                             fnv1a_hex(outputs[0]).c_str(), fnv1a_hex(outputs[1]).c_str());
  if (o.work_dir.empty()) fs::remove_all(dir);
  return r;
}

template <class F>
CriterionResult timed(int id, const char* name, const F& fn) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = start_result(id, name);
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  return fmt("%s %2d  %-50s %s | target: %s | %.1f s", r.pass ? "PASS" : "FAIL", r.id,
             r.name.c_str(), r.measured.c_str(), r.target.c_str(), r.seconds);
}

std::vector<CriterionResult> run_acceptance(
    const SuiteOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  const auto add = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  double window_seconds = 0.0;
  add(timed(1, "Theta spot values", geometry_oracle));
  add(timed(2, "Case 1 window", [&] { return case1_window(window_seconds); }));
  add(timed(3, "Theta gap bound", theta_gap_bound));
  add(timed(4, "channel arcs", [&] { return channel_arcs(opts.seed); }));
  add(timed(5, "explicit combs", [&] { return lower_bound(opts.seed); }));
  add(timed(6, "Case 3 windows", case3_growth));
  if (opts.full) {
    add(timed(7, "disk calibration", [&] { return disk(opts); }));
    add(timed(8, "sector tail", [&] { return sector_tail(opts); }));
    const double h_window = [] {
      try {
        return hardy_window(CombSpec::case1(kPi / 2), 1e3, 1e6, 1e-10).h_window;
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    }();
    add(timed(9, "Case 1 tail", [&] { return case1_tail(opts, h_window); }));
    add(timed(10, "Case 2 tail", [&] { return case2_tail(opts); }));
    add(timed(11, "Case 3 tail", [&] { return case3_tail(opts); }));
    add(timed(12, "harmonic measure bound", [&] { return wos_comb(opts); }));
    add(timed(13, "harmonic measure floor", [&] { return wos_halfplane(opts); }));
  }
  add(timed(14, "sector fit", sector_fit));
  if (opts.full) add(timed(15, "determinism", [&] { return determinism(opts); }));
  return out;
}

}  // namespace hardylab
