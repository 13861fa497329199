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

// Command-line front end: build domains, profile and estimate them, sample
// exit times, fit tails, and run the acceptance suite.
//
// Exit codes: 0 ok, 1 usage or validation, 2 numeric failure, 3 verification
// failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardylab/acceptance.hpp"
#include "hardylab/arcs.hpp"
#include "hardylab/constructions.hpp"
#include "hardylab/error.hpp"
#include "hardylab/estimators.hpp"
#include "hardylab/io.hpp"
#include "hardylab/stochastic.hpp"
#include "hardylab/tail.hpp"
#include "json.hpp"

using namespace hardylab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;
constexpr int kVerifyFailed = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kToleranceUnreachable:
    case ErrorCode::kCapContamination:
    case ErrorCode::kInsufficientSamples:
    case ErrorCode::kNoCrossing:
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kUnknownDomain:
    case ErrorCode::kOutsideDomain:
    case ErrorCode::kOutOfRange:
      return kNumeric;
    default:
      return kUsage;
  }
}

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

json hardy_json(const DomainRef& d) {
  const HardyBounds b = hardy_bounds(d);
  json out = {{"kind", d.kind_name()}, {"source", std::string(to_string(b.source))}};
  if (b.lower == b.upper) {
    out["h_theory"] = num(b.lower);
    out["critical_moment"] = num(burkholder_convert(b.lower));
  } else {
    out["h_lower"] = num(b.lower);
    out["h_upper"] = num(b.upper);
    out["critical_moment_lower"] = num(burkholder_convert(b.lower));
    out["critical_moment_upper"] = num(burkholder_convert(b.upper));
  }
  return out;
}

// --teeth file: a JSON list of [n, x, b] rows.
std::vector<Tooth> load_teeth(const std::string& path) {
  json rows;
  try {
    rows = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("teeth file is not valid JSON: ") + e.what());
  }
  if (!rows.is_array()) throw Error(ErrorCode::kValidation, "teeth file must be a list of [n, x, b]");
  std::vector<Tooth> teeth;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != 3 || !r[0].is_number_integer() || !r[1].is_number() ||
        !r[2].is_number()) {
      throw Error(ErrorCode::kValidation, "each tooth must be [n, x, b] with integer n");
    }
    teeth.push_back({r[0].get<Index>(), r[1].get<double>(), r[2].get<double>()});
  }
  return teeth;
}

std::optional<Complex> parse_point(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
    return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidParam, "point must be 'x' or 'x,y'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardylab: comb domains, Hardy numbers and Brownian exit times"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "write a domain file");
  std::string family;
  std::optional<double> theta, b0, ext_gap, ext_b;
  double vertex_x = 0.0;
  double min_gap = 1.0;
  std::string teeth_path, out_path;
  construct->add_option("--family", family, "case1|case2|case3|sector|slitplane|halfplane|explicit")
      ->required();
  construct->add_option("--theta", theta, "opening angle in radians");
  construct->add_option("--b0", b0, "slit gap half-width");
  construct->add_option("--vertex-x", vertex_x, "sector vertex on the real axis");
  construct->add_option("--teeth", teeth_path, "JSON list of [n, x, b] for explicit combs");
  construct->add_option("--min-gap", min_gap, "minimum tooth spacing for explicit combs");
  construct->add_option("--ext-gap", ext_gap, "spacing of teeth continuing the list");
  construct->add_option("--ext-b", ext_b, "half-gap of teeth continuing the list");
  construct->add_option("--out", out_path, "output domain file");

  // theta-profile
  auto* profile = app.add_subcommand("theta-profile", "tabulate the real-axis arc width");
  std::string domain_path;
  double t_min = 0.0, t_max = 0.0;
  int points = 100;
  bool log_spaced = false;
  profile->add_option("--domain", domain_path)->required();
  profile->add_option("--t-min", t_min)->required();
  profile->add_option("--t-max", t_max)->required();
  profile->add_option("--points", points)->check(CLI::PositiveNumber);
  profile->add_flag("--log", log_spaced, "log-spaced radii");
  profile->add_option("--out", out_path);

  // hardy-estimate
  auto* estimate = app.add_subcommand("hardy-estimate", "window estimate of the Hardy number");
  double r1 = 0.0, r2 = 0.0, tol = 1e-8;
  estimate->add_option("--domain", domain_path)->required();
  estimate->add_option("--r1", r1)->required();
  estimate->add_option("--r2", r2)->required();
  estimate->add_option("--tol", tol);

  // exit-times
  auto* exits = app.add_subcommand("exit-times", "sample Brownian exit times");
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  SimConfig cfg;
  std::string z0_text;
  std::optional<double> r_stop;
  exits->add_option("--domain", domain_path)->required();
  exits->add_option("--samples", samples)->required();
  exits->add_option("--seed", seed)->required();
  exits->add_option("--t-cap", cfg.t_cap);
  exits->add_option("--dt-max", cfg.dt_max, "largest time step (inf for none)");
  exits->add_option("--step-factor", cfg.step_factor);
  exits->add_option("--eps", cfg.eps_absorb, "absorption distance");
  exits->add_option("--r-stop", r_stop, "also stop on this circle");
  exits->add_option("--z0", z0_text, "start point x,y");
  exits->add_option("--threads", threads, "workers (default HARDYLAB_THREADS or all cores)");
  exits->add_option("--out", out_path)->required();

  // tail-fit
  auto* fit = app.add_subcommand("tail-fit", "fit the exit-time tail exponent");
  std::string batch_path, method_name;
  std::optional<std::size_t> k;
  std::vector<double> window;
  bool strict = false;
  fit->add_option("--batch", batch_path)->required();
  fit->add_option("--method", method_name, "hill|ls")->required();
  fit->add_option("--k", k, "Hill order (default floor(sqrt(M)))");
  fit->add_option("--window", window, "survival quantile window q1,q2")->delimiter(',')->expected(2);
  fit->add_flag("--strict", strict, "reject capped samples among the top k");

  // harmonic-measure
  auto* hm = app.add_subcommand("harmonic-measure", "walk-on-spheres harmonic measure of F_r");
  double radius = 0.0, eps = 1e-5;
  bool with_bound = false;
  hm->add_option("--domain", domain_path)->required();
  hm->add_option("--r", radius)->required();
  hm->add_option("--samples", samples)->required();
  hm->add_option("--eps", eps);
  hm->add_option("--seed", seed);
  hm->add_option("--z0", z0_text);
  hm->add_option("--threads", threads);
  hm->add_flag("--with-bound", with_bound, "include the integral upper bound");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::string suite = "fast";
  std::uint64_t verify_seed = 7;
  verify->add_option("--suite", suite)->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--seed", verify_seed);
  verify->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) {
      BuildParams params{theta, b0, vertex_x};
      DomainRef d = DomainRef::upper_half_plane();
      if (family == "explicit") {
        if (teeth_path.empty()) throw Error(ErrorCode::kValidation, "--teeth is required");
        std::optional<TailExtension> ext;
        if (ext_gap || ext_b) {
          if (!ext_gap || !ext_b) {
            throw Error(ErrorCode::kValidation, "--ext-gap and --ext-b go together");
          }
          ext = TailExtension{*ext_gap, *ext_b};
        }
        d = DomainRef::comb(CombSpec::from_teeth(load_teeth(teeth_path), min_gap, ext));
      } else {
        const auto fam = parse_family(family);
        if (!fam) throw Error(ErrorCode::kInvalidParam, "unknown family '" + family + "'");
        d = build(*fam, params);
      }
      if (!out_path.empty()) save_domain(out_path, d);
      print(hardy_json(d));
    } else if (*profile) {
      const DomainRef d = load_domain(domain_path);
      const CombSpec* spec = d.comb_spec();
      if (spec == nullptr) {
        std::cerr << "profile requires a comb\n";
        return kNumeric;
      }
      if (!(t_min > 0.0 && t_max >= t_min)) {
        throw Error(ErrorCode::kBadRange, "need 0 < t-min <= t-max");
      }
      std::string csv = "t,theta,arc_count,bound\n";
      const auto theta_case1 = spec->case1_theta();
      for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const double t = log_spaced ? t_min * std::pow(t_max / t_min, f) : t_min + f * (t_max - t_min);
        const ThetaProfile p = theta_profile(*spec, t);
        const std::size_t arcs = circle_arcs(*spec, t).arcs.size();
        std::string bound;
        if (theta_case1) bound = format_double(*theta_case1 + 2.0 / (t * std::sin(*theta_case1 / 2)));
        csv += format_double(t) + "," + format_double(p.theta) + "," + std::to_string(arcs) + "," +
               bound + "\n";
      }
      emit(out_path, csv);
    } else if (*estimate) {
      const DomainRef d = load_domain(domain_path);
      const CombSpec* spec = d.comb_spec();
      if (spec == nullptr) throw Error(ErrorCode::kUnknownDomain, "estimate requires a comb");
      const HardyEstimate e = hardy_window(*spec, r1, r2, tol);
      print({{"r1", e.r1},
             {"r2", e.r2},
             {"integral", e.integral.value},
             {"error_bound", e.integral.error_bound},
             {"segments", e.integral.segments},
             {"h_window", e.h_window},
             {"d_lower", e.d_lower},
             {"omega_upper", e.omega_upper},
             {"log_omega_upper", e.log_omega_upper}});
    } else if (*exits) {
      const DomainRef d = load_domain(domain_path);
      cfg.master_seed = seed;
      cfg.r_stop = r_stop;
      const Complex z0 = parse_point(z0_text).value_or(default_start(d));
      const SampleBatch batch = run_batch(d, z0, cfg, samples, threads);
      save_batch(out_path, batch);
      print({{"samples", batch.size()},
             {"capped_fraction", batch.capped_fraction()},
             {"out", out_path}});
    } else if (*fit) {
      const auto method = parse_tail_method(method_name);
      if (!method) throw Error(ErrorCode::kInvalidParam, "method must be hill or ls");
      TailParams params;
      params.k = k;
      params.censored = !strict;
      if (window.size() == 2) {
        params.q_lo = window[0];
        params.q_hi = window[1];
      }
      const SampleBatch batch = load_batch(batch_path);
      const TailFit f = tail_fit(batch, *method, params);
      const HardyMc h = hardy_mc(f);
      json out = {{"method", std::string(to_string(f.method))},
                  {"alpha_hat", f.alpha_hat},
                  {"stderr", f.std_error},
                  {"h_hat", h.h_hat},
                  {"h_stderr", h.std_error},
                  {"capped_fraction", f.capped_fraction}};
      if (f.method == TailMethod::kHill) {
        out["k"] = f.k;
        out["k_uncensored"] = f.k_uncensored;
      } else {
        out["window"] = {f.q_lo, f.q_hi};
      }
      if (h.below_floor) out["warning"] = "h below 1/2 is impossible for a simply connected domain";
      print(out);
    } else if (*hm) {
      const DomainRef d = load_domain(domain_path);
      const Complex z0 = parse_point(z0_text).value_or(default_start(d));
      const HMEstimate e = harmonic_measure_wos(d, z0, radius, samples, eps, seed, threads);
      json arcs = json::array();
      for (const auto& a : e.arcs) {
        arcs.push_back({{"arc", a.arc_id}, {"phi_lo", a.phi_lo}, {"phi_hi", a.phi_hi},
                        {"p", a.p}, {"ci95", a.ci95}});
      }
      json out = {{"r", e.r},
                  {"samples", e.count},
                  {"arcs", arcs},
                  {"boundary_p", e.boundary_p},
                  {"mc_total", e.circle_p()},
                  {"mc_ci95", e.circle_ci95()}};
      if (with_bound) {
        const CombSpec* spec = d.comb_spec();
        if (spec == nullptr) throw Error(ErrorCode::kUnknownDomain, "the bound requires a comb");
        const double bound = harmonic_measure_upper(*spec, radius);
        out["bound"] = bound;
        out["within_bound"] = e.circle_p() <= bound + 3.0 * e.circle_ci95();
      }
      print(out);
    } else if (*verify) {
      SuiteOptions opts;
      opts.full = suite == "full";
      opts.seed = verify_seed;
      opts.threads = threads;
      std::error_code ec;
      opts.cli_path = std::filesystem::read_symlink("/proc/self/exe", ec).string();
      if (ec) opts.cli_path = argv[0];
      bool all = true;
      run_acceptance(opts, [&](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
        all = all && r.pass;
      });
      std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
      return all ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
