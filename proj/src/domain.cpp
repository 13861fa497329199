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

#include "hardylab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

double cross(Complex p, Complex q) { return p.real() * q.imag() - p.imag() * q.real(); }

int side_of(double y) { return y >= 0.0 ? 1 : -1; }

double tooth_dist2(const Tooth& t, double x, double abs_y) {
  const double dx = x - t.x;
  const double dy = std::max(0.0, t.b - abs_y);
  return dx * dx + dy * dy;
}

NearestBoundary tooth_nearest(const Tooth& t, Complex z) {
  const int sign = side_of(z.imag());
  const Complex p(t.x, sign * std::max(t.b, std::abs(z.imag())));
  return {std::abs(z - p), Feature{t.n, sign}, p};
}

// Minimizer over the integers in [lo, hi] of a convex function.
template <typename F>
Index convex_argmin(Index lo, Index hi, F&& f) {
  while (hi - lo > 4) {
    const Index m1 = lo + (hi - lo) / 3;
    const Index m2 = hi - (hi - lo) / 3;
    const double f1 = f(m1);
    const double f2 = f(m2);
    if (f1 < f2) {
      hi = m2;
    } else if (f1 > f2) {
      lo = m1;
    } else {
      lo = m1;
      hi = m2;
    }
  }
  Index best = lo;
  double best_f = f(lo);
  for (Index n = lo + 1; n <= hi; ++n) {
    const double v = f(n);
    if (v < best_f) {
      best_f = v;
      best = n;
    }
  }
  return best;
}

NearestBoundary comb_nearest(const CombSpec& spec, Complex z) {
  const double x = z.real();
  const double abs_y = std::abs(z.imag());
  const auto dist2 = [&](Index n) { return tooth_dist2(spec.tooth(n), x, abs_y); };
  // For the families the squared distance is convex in n (b_n is convex in n
  // apart from the n = 0 tooth of Case 1), with its minimizer between 0 and x.
  const Index lo = std::min<Index>(0, static_cast<Index>(std::floor(x))) - 1;
  const Index hi = std::max<Index>(0, static_cast<Index>(std::ceil(x))) + 1;
  if (std::holds_alternative<Case3Rule>(spec.rule()) ||
      std::holds_alternative<Case2Rule>(spec.rule())) {
    const Index n = std::holds_alternative<Case3Rule>(spec.rule())
                        ? spec.nearest_index(x)
                        : convex_argmin(lo, hi, dist2);
    return tooth_nearest(spec.tooth(n), z);
  }
  if (const auto* c1 = std::get_if<Case1Rule>(&spec.rule())) {
    const double slope = std::tan(c1->theta / 2.0);
    const auto g = [&](Index n) {
      const double dx = x - static_cast<double>(n);
      const double dy = std::max(0.0, std::abs(static_cast<double>(n)) * slope - abs_y);
      return dx * dx + dy * dy;
    };
    const Index ng = convex_argmin(lo, hi, g);
    Index best = 0;
    double best_d = dist2(0);
    for (Index n : {ng - 1, ng, ng + 1, Index{-1}, Index{1}}) {
      if (n == 0) continue;
      const double v = dist2(n);
      if (v < best_d) {
        best_d = v;
        best = n;
      }
    }
    return tooth_nearest(spec.tooth(best), z);
  }

  // Explicit list: widen outward from the nearest abscissa until the
  // horizontal offset alone exceeds the running minimum.
  const Index n0 = spec.nearest_index(x);
  Index best = n0;
  double best_d = std::sqrt(dist2(n0));
  const auto bound = spec.index_bound();
  for (int dir : {1, -1}) {
    for (Index n = n0 + dir;; n += dir) {
      if (bound && (n > *bound || n < -*bound)) {
        // Any unlisted tooth is at least min_gap per index step further out.
        const Index edge = dir > 0 ? *bound : -*bound;
        const double edge_x = spec.tooth(edge).x +
                              dir * spec.min_gap() * static_cast<double>(std::abs(n - edge));
        if (std::abs(edge_x - x) > best_d) break;
        throw Error(ErrorCode::kIndexOutOfRange,
                    "boundary distance needs teeth beyond the listed range");
      }
      const Tooth t = spec.tooth(n);
      if (std::abs(t.x - x) > best_d) break;
      const double d = std::sqrt(tooth_dist2(t, x, abs_y));
      if (d < best_d) {
        best_d = d;
        best = n;
      }
    }
  }
  return tooth_nearest(spec.tooth(best), z);
}

NearestBoundary ray_nearest(Complex origin, Complex dir, Complex z, Feature f) {
  const Complex w = z - origin;
  const double s = (w * std::conj(dir)).real();
  const Complex p = s > 0.0 ? origin + s * dir : origin;
  return {std::abs(z - p), f, p};
}

std::optional<BoundaryCrossing> ray_crossing(Complex origin, Complex dir,
                                             Complex a, Complex b, Feature f) {
  const Complex e = b - a;
  const double denom = cross(e, dir);
  if (denom == 0.0) return std::nullopt;
  const Complex w = origin - a;
  const double u = cross(w, dir) / denom;
  const double s = cross(w, e) / denom;
  if (u < 0.0 || u > 1.0 || s < 0.0) return std::nullopt;
  return BoundaryCrossing{u, f, origin + s * dir};
}

// Crossing of segment a -> b with the ray pair of one tooth.
std::optional<BoundaryCrossing> tooth_crossing(const Tooth& t, Complex a, Complex b) {
  const double ex = b.real() - a.real();
  if (ex == 0.0) {
    if (a.real() != t.x || std::abs(b.imag()) < t.b) return std::nullopt;
    const double y = side_of(b.imag()) * t.b;
    const double u = (y - a.imag()) / (b.imag() - a.imag());
    return BoundaryCrossing{u, Feature{t.n, side_of(y)}, Complex(t.x, y)};
  }
  const double u = (t.x - a.real()) / ex;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const double y = a.imag() + u * (b.imag() - a.imag());
  if (std::abs(y) < t.b) return std::nullopt;
  return BoundaryCrossing{u, Feature{t.n, side_of(y)}, Complex(t.x, y)};
}

void keep_first(std::optional<BoundaryCrossing>& best,
                const std::optional<BoundaryCrossing>& c) {
  if (c && (!best || c->fraction < best->fraction)) best = c;
}

}  // namespace

DomainRef DomainRef::sector(double theta, double vertex_x) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidParam, "theta must be in (0, pi)");
  }
  if (!std::isfinite(vertex_x)) {
    throw Error(ErrorCode::kInvalidParam, "vertex_x must be finite");
  }
  return DomainRef(SectorDomain{theta, vertex_x});
}

DomainRef DomainRef::slit_plane(double b0) {
  if (!(b0 > 0.0) || !std::isfinite(b0)) {
    throw Error(ErrorCode::kInvalidParam, "b0 must be positive");
  }
  return DomainRef(SlitPlaneDomain{b0});
}

std::string DomainRef::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CombSpec>) return "comb";
        else if constexpr (std::is_same_v<K, SectorDomain>) return "sector";
        else if constexpr (std::is_same_v<K, SlitPlaneDomain>) return "slitplane";
        else return "halfplane";
      },
      kind_);
}

bool contains(const DomainRef& d, Complex z) {
  const double x = z.real();
  const double y = z.imag();
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CombSpec>) {
          const auto [lo, hi] = k.teeth_in(x, x);
          for (Index n = lo; n <= hi; ++n) {
            if (std::abs(y) >= k.tooth(n).b) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<K, SectorDomain>) {
          const Complex w = z - Complex(k.vertex_x, 0.0);
          if (w == Complex(0.0, 0.0)) return false;
          return std::abs(std::arg(w)) < k.theta / 2.0;
        } else if constexpr (std::is_same_v<K, SlitPlaneDomain>) {
          return !(x == 0.0 && std::abs(y) >= k.b0);
        } else {
          return y > 0.0;
        }
      },
      d.kind());
}

NearestBoundary nearest_boundary(const DomainRef& d, Complex z) {
  return std::visit(
      [&](const auto& k) -> NearestBoundary {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CombSpec>) {
          return comb_nearest(k, z);
        } else if constexpr (std::is_same_v<K, SectorDomain>) {
          const Complex v(k.vertex_x, 0.0);
          const auto up = ray_nearest(v, std::polar(1.0, k.theta / 2.0), z, {0, 1});
          const auto down = ray_nearest(v, std::polar(1.0, -k.theta / 2.0), z, {0, -1});
          return up.distance <= down.distance ? up : down;
        } else if constexpr (std::is_same_v<K, SlitPlaneDomain>) {
          return tooth_nearest(Tooth{0, 0.0, k.b0}, z);
        } else {
          const Complex p(z.real(), 0.0);
          return {std::abs(z.imag()), Feature{0, side_of(z.real())}, p};
        }
      },
      d.kind());
}

double boundary_distance(const DomainRef& d, Complex z) {
  if (!contains(d, z)) {
    throw Error(ErrorCode::kOutsideDomain, "point is not inside the domain");
  }
  return nearest_boundary(d, z).distance;
}

std::optional<BoundaryCrossing> first_crossing(const DomainRef& d, Complex a,
                                               Complex b) {
  return std::visit(
      [&](const auto& k) -> std::optional<BoundaryCrossing> {
        using K = std::decay_t<decltype(k)>;
        std::optional<BoundaryCrossing> best;
        if constexpr (std::is_same_v<K, CombSpec>) {
          const auto [lo, hi] = k.teeth_in(std::min(a.real(), b.real()),
                                           std::max(a.real(), b.real()));
          for (Index n = lo; n <= hi; ++n) keep_first(best, tooth_crossing(k.tooth(n), a, b));
        } else if constexpr (std::is_same_v<K, SectorDomain>) {
          const Complex v(k.vertex_x, 0.0);
          keep_first(best, ray_crossing(v, std::polar(1.0, k.theta / 2.0), a, b, {0, 1}));
          keep_first(best, ray_crossing(v, std::polar(1.0, -k.theta / 2.0), a, b, {0, -1}));
        } else if constexpr (std::is_same_v<K, SlitPlaneDomain>) {
          keep_first(best, tooth_crossing(Tooth{0, 0.0, k.b0}, a, b));
        } else {
          if (b.imag() <= 0.0) {
            const double u = a.imag() / (a.imag() - b.imag());
            const double x = a.real() + u * (b.real() - a.real());
            best = BoundaryCrossing{u, Feature{0, side_of(x)}, Complex(x, 0.0)};
          }
        }
        return best;
      },
      d.kind());
}

}  // namespace hardylab
