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

#include "hardylab/estimators.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 4> kNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kWeights = {
    0.3626837833783619829651504, 0.3137066238593374021598478,
    0.2223810344533744705443560, 0.1012285362903762591525314};

template <class F>
double gauss8(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    s += kWeights[i] * (f(mid - half * kNodes[i]) + f(mid + half * kNodes[i]));
  }
  return s * half;
}

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Panel {
  double a;
  double b;
  double whole;
  int depth;
};

class AdaptiveGauss {
 public:
  AdaptiveGauss(Accumulator& value, Accumulator& error, std::size_t& panels,
                std::size_t cap)
      : value_(value), error_(error), panels_(panels), cap_(cap) {}

  // Integrates f over [a, b] aiming at an absolute error of budget. Panels are
  // processed left to right so the summation order is fixed.
  template <class F>
  void run(const F& f, double a, double b, double budget) {
    stack_.clear();
    stack_.push_back({a, b, gauss8(f, a, b), 0});
    while (!stack_.empty()) {
      const Panel p = stack_.back();
      stack_.pop_back();
      const double mid = 0.5 * (p.a + p.b);
      const double left = gauss8(f, p.a, mid);
      const double right = gauss8(f, mid, p.b);
      const double err = std::abs(left + right - p.whole);
      const double share = budget * std::ldexp(1.0, -p.depth);
      const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::abs(left + right);
      if (err <= std::max(share, floor) || p.depth >= 60) {
        if (++panels_ > cap_) {
          throw Error(ErrorCode::kToleranceUnreachable,
                      "quadrature exceeded the panel cap");
        }
        value_.add(left + right);
        error_.add(err);
        continue;
      }
      stack_.push_back({mid, p.b, right, p.depth + 1});
      stack_.push_back({p.a, mid, left, p.depth + 1});
    }
  }

 private:
  Accumulator& value_;
  Accumulator& error_;
  std::size_t& panels_;
  std::size_t cap_;
  std::vector<Panel> stack_;
};

}  // namespace

IntegralResult beurling_integral(const CombSpec& spec, double r1, double r2,
                                 double tol, const QuadratureOptions& opts) {
  if (!(r1 > 0.0) || !(r1 < r2) || !std::isfinite(r2)) {
    throw Error(ErrorCode::kBadRange, "integration range must satisfy 0 < r1 < r2");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidParam, "tol must be positive");

  IntegralResult out;
  Accumulator value;
  Accumulator error;
  AdaptiveGauss quad(value, error, out.segments, opts.max_panels);
  const double log_span = std::log(r2 / r1);

  double a = r1;
  while (a < r2) {
    const std::optional<Tooth> blocker = spec.blocker(a);
    const double b = std::min(spec.next_breakpoint(a), r2);
    const double budget = tol * std::log(b / a) / log_span;
    if (!blocker) {
      // Full circle: Theta = 2 pi.
      value.add(std::log(b / a) / (2.0 * kPi));
      ++out.segments;
    } else if (blocker->x == 0.0) {
      value.add(std::log(b / a) / kPi);
      ++out.segments;
    } else {
      // With u = acos(x/t) the integrand dt / (2 t u) becomes tan(u) / (2u) du,
      // which stays smooth up to the left end where x/t may approach 1.
      const double x = blocker->x;
      const double ua = std::acos(std::clamp(x / a, -1.0, 1.0));
      const double ub = std::acos(std::clamp(x / b, -1.0, 1.0));
      const auto f = [](double u) { return std::tan(u) / (2.0 * u); };
      if (ua < ub) {
        quad.run(f, ua, ub, budget);
      } else {
        // x < 0: u decreases with t and tan(u) < 0, so the orientation flips.
        const auto g = [&f](double u) { return -f(u); };
        quad.run(g, ub, ua, budget);
      }
    }
    if (out.segments > opts.max_panels) {
      throw Error(ErrorCode::kToleranceUnreachable, "quadrature exceeded the panel cap");
    }
    if (b < r2) out.breakpoints_used.push_back(b);
    a = b;
  }
  out.value = value.value();
  out.error_bound = error.value();
  if (out.error_bound > tol) {
    throw Error(ErrorCode::kToleranceUnreachable, "error estimate exceeds tol");
  }
  return out;
}

namespace {

double origin_distance(const CombSpec& spec) {
  return boundary_distance(DomainRef::comb(spec), Complex(0.0, 0.0));
}

double integral_from_origin(const CombSpec& spec, double r, double tol) {
  const double r0 = origin_distance(spec);
  if (!(r > r0)) {
    throw Error(ErrorCode::kBadRange, "radius must exceed dist(0, boundary)");
  }
  return beurling_integral(spec, r0, r, tol).value;
}

}  // namespace

HardyEstimate hardy_window(const CombSpec& spec, double r1, double r2, double tol,
                           const QuadratureOptions& opts) {
  const double tip = spec.tooth(0).tip_radius();
  if (!(r1 >= tip)) {
    throw Error(ErrorCode::kBadRange, "r1 must be at least the tip radius of tooth 0");
  }
  HardyEstimate est;
  est.r1 = r1;
  est.r2 = r2;
  est.integral = beurling_integral(spec, r1, r2, tol, opts);
  est.h_window = kPi * est.integral.value / std::log(r2 / r1);

  // dist(0, boundary) <= b0 <= r1, so the origin integral splits at r1.
  const double r0 = origin_distance(spec);
  double head = 0.0;
  if (r0 < r1) head = beurling_integral(spec, r0, r1, tol, opts).value;
  const double total = head + est.integral.value;
  est.d_lower = std::log(0.25) + kPi * total;
  est.log_omega_upper = std::log(8.0 / kPi) - kPi * total;
  est.omega_upper = std::exp(est.log_omega_upper);
  return est;
}

double hyp_distance_lower(const CombSpec& spec, double r, double tol) {
  return std::log(0.25) + kPi * integral_from_origin(spec, r, tol);
}

double harmonic_measure_upper(const CombSpec& spec, double R, double tol) {
  return (8.0 / kPi) * std::exp(-kPi * integral_from_origin(spec, R, tol));
}

double hyp_lower_from_omega(double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) {
    throw Error(ErrorCode::kInvalidOmega, "omega must be in (0, 1]");
  }
  return std::log(2.0 / kPi) - std::log(omega);
}

double quasihyperbolic_upper(const CombSpec& spec, double r,
                             std::span<const Complex> path, double tol) {
  if (path.size() < 2 || std::abs(path.front()) > 1e-12) {
    throw Error(ErrorCode::kBadRange, "path must start at 0");
  }
  const double end = std::abs(path.back());
  if (!(r > 0.0) || std::abs(end - r) > 1e-9 * std::max(1.0, r)) {
    throw Error(ErrorCode::kBadRange, "path must end on the circle |z| = r");
  }
  const DomainRef d = DomainRef::comb(spec);
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!contains(d, path[i]) || first_crossing(d, path[i], path[i + 1])) {
      throw Error(ErrorCode::kPathOutsideDomain, "path leaves the domain");
    }
    length += std::abs(path[i + 1] - path[i]);
  }
  if (!contains(d, path.back())) {
    throw Error(ErrorCode::kPathOutsideDomain, "path leaves the domain");
  }
  if (length == 0.0) throw Error(ErrorCode::kBadRange, "path has zero length");

  Accumulator value;
  Accumulator error;
  std::size_t panels = 0;
  AdaptiveGauss quad(value, error, panels, 1'000'000);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Complex a = path[i];
    const Complex b = path[i + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    const auto f = [&](double s) {
      return len / boundary_distance(d, a + (b - a) * s);
    };
    quad.run(f, 0.0, 1.0, tol * len / length);
  }
  return 2.0 * value.value();
}

double burkholder_convert(double h) {
  if (!(h >= 0.5)) throw Error(ErrorCode::kOutOfRange, "Hardy number below 1/2");
  return h / 2.0;
}

double burkholder_inverse(double moment) {
  if (!(moment >= 0.25)) throw Error(ErrorCode::kOutOfRange, "moment order below 1/4");
  return 2.0 * moment;
}

}  // namespace hardylab
