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

#include "hardylab/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "hardylab/arcs.hpp"
#include "hardylab/error.hpp"
#include "hardylab/philox.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest s in [0, 1] with |a + s (b - a)| = r, given |a| < r.
std::optional<double> circle_exit(Complex a, Complex b, double r) {
  if (std::abs(b) < r) return std::nullopt;
  const Complex d = b - a;
  const double qa = std::norm(d);
  const double qb = 2.0 * (a.real() * d.real() + a.imag() * d.imag());
  const double qc = std::norm(a) - r * r;
  const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
  // qc < 0, so the roots have opposite signs; take the positive one stably.
  const double s = qb >= 0.0 ? (2.0 * qc) / (-qb - std::sqrt(disc))
                             : (-qb + std::sqrt(disc)) / (2.0 * qa);
  return std::clamp(s, 0.0, 1.0);
}

Index circle_arc_id(const DomainRef& d, double r, Complex z) {
  return circle_arcs(d, r).arc_index(std::arg(z));
}

// Runs body(i) for i in [0, count) on `threads` workers. Rethrows the failure
// with the smallest index so errors do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, const Body& body) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, count);
  const auto worker = [&](unsigned w) {
    for (;;) {
      const std::size_t start = next.fetch_add(kChunk);
      if (start >= count) return;
      const std::size_t stop = std::min(count, start + kChunk);
      for (std::size_t i = start; i < stop; ++i) {
        try {
          body(i);
        } catch (...) {
          if (i < error_index[w]) {
            error_index[w] = i;
            errors[w] = std::current_exception();
          }
        }
      }
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  const auto first = std::min_element(error_index.begin(), error_index.end());
  if (*first < count) std::rethrow_exception(errors[first - error_index.begin()]);
}

}  // namespace

void SimConfig::validate() const {
  if (!(step_factor > 0.0 && step_factor <= 0.5)) {
    throw Error(ErrorCode::kInvalidParam, "step_factor must be in (0, 0.5]");
  }
  if (!(dt_max > 0.0)) throw Error(ErrorCode::kInvalidParam, "dt_max must be positive");
  if (!(eps_absorb > 0.0 && std::isfinite(eps_absorb))) {
    throw Error(ErrorCode::kInvalidParam, "eps_absorb must be positive");
  }
  if (!(t_cap > 0.0)) throw Error(ErrorCode::kInvalidParam, "t_cap must be positive");
  if (r_stop && !(*r_stop > 0.0 && std::isfinite(*r_stop))) {
    throw Error(ErrorCode::kInvalidParam, "r_stop must be positive");
  }
}

std::string_view to_string(HitKind kind) {
  switch (kind) {
    case HitKind::kRay: return "ray";
    case HitKind::kCircle: return "circle";
    case HitKind::kCapped: return "capped";
  }
  return "unknown";
}

double SampleBatch::capped_fraction() const {
  if (samples.empty()) return 0.0;
  const auto capped = std::count_if(samples.begin(), samples.end(),
                                    [](const ExitSample& s) { return s.capped(); });
  return static_cast<double>(capped) / static_cast<double>(samples.size());
}

Complex default_start(const DomainRef& d) {
  if (const auto* s = std::get_if<SectorDomain>(&d.kind())) {
    return {s->vertex_x + 1.0, 0.0};
  }
  if (std::holds_alternative<UpperHalfPlaneDomain>(d.kind())) return {0.0, 1.0};
  return {0.0, 0.0};
}

ExitSample sample_exit(const DomainRef& d, Complex z0, const SimConfig& cfg,
                       std::uint64_t index) {
  cfg.validate();
  if (!contains(d, z0) || (cfg.r_stop && std::abs(z0) >= *cfg.r_stop)) {
    throw Error(ErrorCode::kStartOutsideDomain, "start point is not inside the domain");
  }
  const CounterRng rng(cfg.master_seed, CounterRng::Stream::kExitTime);
  const double r_stop = cfg.r_stop.value_or(kInf);

  ExitSample out;
  Complex z = z0;
  double tau = 0.0;
  std::uint64_t step = 0;
  for (;;) {
    if (tau >= cfg.t_cap) {
      out.hit = HitKind::kCapped;
      out.exit_point = z;
      break;
    }
    const NearestBoundary nb = nearest_boundary(d, z);
    const double circle_room = r_stop - std::abs(z);
    if (nb.distance < cfg.eps_absorb && nb.distance <= circle_room) {
      out.hit = HitKind::kRay;
      out.hit_id = nb.feature.id;
      out.hit_sign = nb.feature.sign;
      out.exit_point = nb.point;
      break;
    }
    if (circle_room < cfg.eps_absorb) {
      out.hit = HitKind::kCircle;
      out.exit_point = z * (r_stop / std::abs(z));
      out.hit_id = circle_arc_id(d, r_stop, out.exit_point);
      break;
    }

    const double reach = std::min(nb.distance, circle_room);
    const double dt = std::min(cfg.step_factor * reach * reach, cfg.dt_max);
    const auto [g1, g2] = rng.normals(index, step++);
    const Complex next = z + std::sqrt(dt) * Complex(g1, g2);

    const auto ray = first_crossing(d, z, next);
    const auto circle = cfg.r_stop ? circle_exit(z, next, r_stop) : std::nullopt;
    if (!ray && !circle) {
      tau += dt;
      z = next;
      continue;
    }
    // Brownian scaling: time to cover a fraction s of the step is s^2 dt.
    if (ray && (!circle || ray->fraction <= *circle)) {
      tau += ray->fraction * ray->fraction * dt;
      out.hit = HitKind::kRay;
      out.hit_id = ray->feature.id;
      out.hit_sign = ray->feature.sign;
      out.exit_point = ray->point;
    } else {
      tau += *circle * *circle * dt;
      const Complex p = z + (next - z) * *circle;
      out.hit = HitKind::kCircle;
      out.exit_point = p * (r_stop / std::abs(p));
      out.hit_id = circle_arc_id(d, r_stop, out.exit_point);
    }
    if (tau >= cfg.t_cap) {
      out = ExitSample{};
      out.exit_point = z;
    }
    break;
  }
  out.tau = tau;
  out.n_steps = step;
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("HARDYLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SampleBatch run_batch(const DomainRef& d, Complex z0, const SimConfig& cfg,
                      std::size_t count, unsigned threads) {
  cfg.validate();
  if (!contains(d, z0) || (cfg.r_stop && std::abs(z0) >= *cfg.r_stop)) {
    throw Error(ErrorCode::kStartOutsideDomain, "start point is not inside the domain");
  }
  SampleBatch batch{d, z0, cfg, std::vector<ExitSample>(count)};
  parallel_for(count, threads, [&](std::size_t i) {
    batch.samples[i] = sample_exit(d, z0, cfg, i);
  });
  return batch;
}

double calibrate_disk(double rho, std::size_t count, SimConfig cfg, unsigned threads) {
  if (!(rho > 0.0 && std::isfinite(rho))) {
    throw Error(ErrorCode::kInvalidParam, "rho must be positive");
  }
  cfg.r_stop = rho;
  const SampleBatch batch =
      run_batch(DomainRef::slit_plane(10.0 * rho), Complex(0.0, 0.0), cfg, count, threads);
  double sum = 0.0;
  for (const auto& s : batch.samples) sum += s.tau;
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double HMEstimate::circle_p() const {
  double p = 0.0;
  for (const auto& a : arcs) p += a.p;
  return p;
}

double HMEstimate::circle_ci95() const {
  const double p = circle_p();
  return count == 0 ? 0.0 : 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

HMEstimate harmonic_measure_wos(const DomainRef& d, Complex z0, double r,
                                std::size_t count, double eps, std::uint64_t seed,
                                unsigned threads) {
  if (!contains(d, z0)) {
    throw Error(ErrorCode::kStartOutsideDomain, "start point is not inside the domain");
  }
  if (!(r > std::abs(z0))) {
    throw Error(ErrorCode::kRadiusTooSmall, "stop radius must exceed |z0|");
  }
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidParam, "eps must be positive");

  const ArcDecomposition section = circle_arcs(d, r);
  const CounterRng rng(seed, CounterRng::Stream::kWalkOnSpheres);
  // Per-sample outcome: arc index, or -1 for the domain boundary.
  std::vector<int> outcome(count, -1);
  parallel_for(count, threads, [&](std::size_t i) {
    Complex z = z0;
    for (std::uint64_t step = 0;; ++step) {
      const double to_boundary = nearest_boundary(d, z).distance;
      const double to_circle = r - std::abs(z);
      const double radius = std::min(to_boundary, to_circle);
      if (radius < eps) {
        if (to_circle < to_boundary) outcome[i] = section.arc_index(std::arg(z));
        return;
      }
      const double u = rng.uniforms(i, step).first;
      z += std::polar(radius, 2.0 * std::numbers::pi * u);
    }
  });

  HMEstimate est;
  est.r = r;
  est.count = count;
  std::vector<std::size_t> hits(section.arcs.size(), 0);
  std::size_t boundary = 0;
  for (int o : outcome) {
    if (o < 0) {
      ++boundary;
    } else {
      ++hits[static_cast<std::size_t>(o)];
    }
  }
  const double m = static_cast<double>(count);
  const auto ci = [m](double p) { return m == 0 ? 0.0 : 1.96 * std::sqrt(p * (1.0 - p) / m); };
  for (std::size_t a = 0; a < section.arcs.size(); ++a) {
    const double p = count == 0 ? 0.0 : static_cast<double>(hits[a]) / m;
    est.arcs.push_back({static_cast<int>(a), section.arcs[a].phi_lo, section.arcs[a].phi_hi, p, ci(p)});
  }
  est.boundary_p = count == 0 ? 0.0 : static_cast<double>(boundary) / m;
  est.boundary_ci95 = ci(est.boundary_p);
  return est;
}

}  // namespace hardylab
