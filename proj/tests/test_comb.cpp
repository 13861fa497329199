// Geometry kernel: teeth, membership, boundary distance, circle sections.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "hardylab/arcs.hpp"
#include "hardylab/comb.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/error.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

// Independent tooth table for the families, written from the definitions.
double family_b(int family, double theta, long n) {
  const double an = std::abs(static_cast<double>(n));
  switch (family) {
    case 1: return n == 0 ? 1.0 : an * std::tan(theta / 2.0);
    case 2: return an * an + 1.0;
    default: return 1.0;
  }
}

// Ray-enumeration oracle: all crossing angles +-arccos(x_n/t) over |n| <= t+1.
std::vector<double> oracle_angles(int family, double theta, double t) {
  std::vector<double> out;
  const long lim = static_cast<long>(std::ceil(t)) + 1;
  for (long n = -lim; n <= lim; ++n) {
    const double x = static_cast<double>(n);
    const double b = family_b(family, theta, n);
    if (std::abs(x) < t && std::sqrt(t * t - x * x) >= b) {
      out.push_back(std::acos(x / t));
      out.push_back(-std::acos(x / t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double oracle_theta(int family, double theta, double t) {
  double a = pi;
  bool any = false;
  for (double phi : oracle_angles(family, theta, t)) {
    if (phi > 0.0) {
      a = std::min(a, phi);
      any = true;
    }
  }
  return any ? 2.0 * a : 2.0 * pi;
}

double brute_distance(const CombSpec& spec, Complex z, long lim) {
  double best = 1e300;
  for (long n = -lim; n <= lim; ++n) {
    const Tooth t = spec.tooth(n);
    best = std::min(best, std::hypot(z.real() - t.x, std::max(0.0, t.b - std::abs(z.imag()))));
  }
  return best;
}

}  // namespace

TEST_CASE("tooth rules") {
  const auto c1 = CombSpec::case1(pi / 2);
  CHECK(c1.tooth(3).x == 3.0);
  CHECK(c1.tooth(3).b == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(c1.tooth(0).b == 1.0);
  CHECK(c1.tooth(-4).b == doctest::Approx(4.0).epsilon(1e-15));
  const auto c2 = CombSpec::case2();
  CHECK(c2.tooth(2).x == 2.0);
  CHECK(c2.tooth(2).b == 5.0);
  CHECK(CombSpec::case3().tooth(-7).b == 1.0);
  CHECK_THROWS_AS(CombSpec::case1(4.0), Error);
  CHECK_THROWS_AS(CombSpec::case1(0.0), Error);
}

TEST_CASE("explicit specs validate and bound their index range") {
  std::vector<Tooth> teeth{{-1, -2.0, 1.0}, {0, 0.0, 2.0}, {1, 1.5, 0.5}};
  const auto spec = CombSpec::from_teeth(teeth, 1.0);
  CHECK(spec.tooth(1).x == 1.5);
  try {
    spec.tooth(2);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndexOutOfRange);
  }
  // x_0 must be 0, gaps >= min_gap, b > 0.
  CHECK_THROWS_AS(CombSpec::from_teeth({{-1, -2.0, 1.0}, {0, 0.5, 2.0}, {1, 1.5, 0.5}}, 1.0), Error);
  CHECK_THROWS_AS(CombSpec::from_teeth({{-1, -2.0, 1.0}, {0, 0.0, 2.0}, {1, 0.5, 0.5}}, 1.0), Error);
  CHECK_THROWS_AS(CombSpec::from_teeth({{-1, -2.0, 1.0}, {0, 0.0, -2.0}, {1, 1.5, 0.5}}, 1.0), Error);

  const auto ext = CombSpec::from_teeth(teeth, 1.0, TailExtension{2.0, 3.0});
  CHECK(ext.tooth(3).x == 5.5);
  CHECK(ext.tooth(3).b == 3.0);
  CHECK(ext.tooth(-3).x == -6.0);
  const auto [lo, hi] = ext.teeth_in(-6.0, 5.5);
  CHECK(lo == -3);
  CHECK(hi == 3);

  // Circle queries past the listed teeth are errors without an extension.
  CHECK_NOTHROW(theta_profile(spec, 2.4));
  CHECK_THROWS_AS(theta_profile(spec, 2.6), Error);
  CHECK_NOTHROW(theta_profile(ext, 200.0));
}

TEST_CASE("membership") {
  const auto c3 = DomainRef::comb(CombSpec::case3());
  CHECK(contains(c3, {0.0, 0.0}));
  CHECK_FALSE(contains(c3, {1.0, 2.0}));
  CHECK_FALSE(contains(c3, {1.0, -1.0}));
  CHECK(contains(c3, {1.0, 0.999}));
  CHECK(contains(c3, {1.5, 40.0}));
  const auto sec = DomainRef::sector(pi / 2, 0.0);
  CHECK_FALSE(contains(sec, {-1.0, 0.0}));
  CHECK(contains(sec, {1.0, 0.5}));
  CHECK_FALSE(contains(sec, {0.0, 0.0}));
  const auto slit = DomainRef::slit_plane(1.0);
  CHECK(contains(slit, {0.0, 0.5}));
  CHECK_FALSE(contains(slit, {0.0, -1.0}));
  CHECK(contains(DomainRef::upper_half_plane(), {0.0, 1.0}));
  CHECK_FALSE(contains(DomainRef::upper_half_plane(), {3.0, 0.0}));
}

TEST_CASE("boundary distance spot values") {
  const auto c3 = DomainRef::comb(CombSpec::case3());
  CHECK(boundary_distance(c3, {0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(boundary_distance(c3, {0.5, 0.0}) == doctest::Approx(std::sqrt(1.25)));
  CHECK(boundary_distance(c3, {0.5, 2.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(boundary_distance(c3, {1.0, 3.0}), Error);
  CHECK(boundary_distance(DomainRef::sector(pi / 2), {1.0, 0.0}) ==
        doctest::Approx(std::sqrt(0.5)));
  CHECK(boundary_distance(DomainRef::upper_half_plane(), {3.0, 2.5}) == 2.5);
  CHECK(boundary_distance(DomainRef::slit_plane(2.0), {0.0, 0.0}) == 2.0);
}

TEST_CASE("boundary distance agrees with brute force over all teeth") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> ux(-40.0, 40.0);
  std::uniform_real_distribution<double> uy(-60.0, 60.0);
  std::vector<CombSpec> specs{CombSpec::case1(pi / 3), CombSpec::case1(pi / 2),
                              CombSpec::case1(2.5), CombSpec::case2(), CombSpec::case3()};
  std::vector<Tooth> teeth;
  for (long n = -20; n <= 20; ++n) teeth.push_back({n, 1.7 * n, 0.5 + std::abs(std::sin(1.3 * n)) * 9});
  specs.push_back(CombSpec::from_teeth(teeth, 1.6, TailExtension{1.9, 4.0}));
  for (const auto& spec : specs) {
    const auto d = DomainRef::comb(spec);
    for (int i = 0; i < 1000; ++i) {
      const Complex z(ux(rng), uy(rng));
      if (!contains(d, z)) continue;
      const double got = boundary_distance(d, z);
      // |x_n| <= |Re z| + 80 contains every tooth that could be nearer.
      const double want = brute_distance(spec, z, 140);
      REQUIRE(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("explicit distance needs the listed range") {
  const auto spec = CombSpec::from_teeth({{-1, -1.0, 1.0}, {0, 0.0, 1.0}, {1, 1.0, 1.0}}, 1.0);
  const auto d = DomainRef::comb(spec);
  CHECK(boundary_distance(d, {0.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(boundary_distance(d, {1.5, 0.0}), Error);
}

TEST_CASE("circle arcs match the ray-enumeration oracle") {
  SUBCASE("Case3 t=0.5 is a full circle") {
    const auto dec = circle_arcs(CombSpec::case3(), 0.5);
    REQUIRE(dec.arcs.size() == 1);
    CHECK(dec.arcs[0].full_circle);
    CHECK(theta_profile(CombSpec::case3(), 0.5).theta == 2 * pi);
  }
  SUBCASE("Case3 t=2 has six arcs") {
    const auto dec = circle_arcs(CombSpec::case3(), 2.0);
    CHECK(dec.arcs.size() == 6);
    const auto want = oracle_angles(3, 0.0, 2.0);
    REQUIRE(dec.crossing_angles.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(dec.crossing_angles[i] == want[i]);
    CHECK(std::abs(dec.crossing_angles[3] - pi / 3) < 1e-15);
    CHECK(std::abs(theta_profile(CombSpec::case3(), 2.0).theta - 2 * pi / 3) < 1e-12);
  }
  SUBCASE("Case1(pi/2) t=3 is blocked by tooth 2") {
    const auto dec = circle_arcs(CombSpec::case1(pi / 2), 3.0);
    const double a = std::acos(2.0 / 3.0);
    CHECK(std::find(dec.crossing_angles.begin(), dec.crossing_angles.end(), a) !=
          dec.crossing_angles.end());
    CHECK(std::abs(theta_profile(CombSpec::case1(pi / 2), 3.0).theta - 2 * a) < 1e-12);
  }
  SUBCASE("random radii") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lt(std::log(0.3), std::log(300.0));
    for (int family : {1, 2, 3}) {
      for (double theta : {pi / 3, pi / 2, 2 * pi / 3}) {
        const CombSpec spec = family == 1   ? CombSpec::case1(theta)
                              : family == 2 ? CombSpec::case2()
                                            : CombSpec::case3();
        for (int i = 0; i < 200; ++i) {
          const double t = std::exp(lt(rng));
          const auto dec = circle_arcs(spec, t);
          const auto want = oracle_angles(family, theta, t);
          REQUIRE(dec.crossing_angles.size() == want.size());
          double sum = 0.0;
          for (const auto& a : dec.arcs) sum += a.length();
          CHECK(std::abs(sum - 2 * pi) < 1e-12);
          for (double phi : dec.crossing_angles) {
            // Closed-form membership of every reported crossing.
            const double x = t * std::cos(phi);
            const long n = std::lround(x);
            CHECK(std::abs(x - n) <= 1e-12 * std::max(1.0, t));
            CHECK(t * std::abs(std::sin(phi)) >= family_b(family, theta, n) * (1 - 1e-12));
          }
          const auto prof = theta_profile(spec, t);
          CHECK(std::abs(prof.theta - oracle_theta(family, theta, t)) < 1e-12);
          // J_t is the decomposition's arc through angle 0.
          const int j = dec.arc_index(0.0);
          REQUIRE(j >= 0);
          CHECK(dec.arcs[static_cast<std::size_t>(j)].length() == prof.theta);
        }
      }
    }
  }
}

TEST_CASE("Theta profile shape") {
  for (double theta : {pi / 3, pi / 2, 3 * pi / 4}) {
    const auto spec = CombSpec::case1(theta);
    double t = 1.0;
    for (int i = 0; i < 300; ++i) {
      const double next = spec.next_breakpoint(t);
      // Theta drops (weakly) across every breakpoint and rises inside pieces.
      const double before = theta_profile(spec, std::nextafter(next, 0.0)).theta;
      const double after = theta_profile(spec, next).theta;
      CHECK(after <= before);
      const double mid = theta_profile(spec, 0.5 * (t + next)).theta;
      CHECK(mid >= theta_profile(spec, t).theta);
      // At a breakpoint the new blocking tooth sits exactly on the sector's
      // edge, so equality holds up to rounding.
      CHECK(after >= theta - 1e-15);
      CHECK(mid > theta);
      CHECK(after <= pi);
      t = next;
    }
  }
  // Theta <= pi once the x = 0 tooth meets the circle.
  for (double t : {1.0, 1.3, 7.7, 1234.5}) {
    CHECK(theta_profile(CombSpec::case2(), t).theta <= pi);
    CHECK(theta_profile(CombSpec::case3(), t).theta <= pi);
  }
}

TEST_CASE("separating arcs") {
  const auto spec = CombSpec::case1(pi / 2);
  const auto f10 = circle_arcs(spec, 10.0);
  const auto& real_arc = f10.arcs[static_cast<std::size_t>(f10.arc_index(0.0))];

  const auto s1 = separating_arc(spec, 3.0, real_arc);
  const auto j3 = theta_profile(spec, 3.0).j_arc;
  CHECK(s1.phi_lo == j3.phi_lo);
  CHECK(s1.phi_hi == j3.phi_hi);

  // Any first-quadrant component of F_10 is separated by J_t near t = 1.
  for (const auto& arc : f10.arcs) {
    if (arc.phi_lo < 0.0 || arc.phi_hi > pi / 2) continue;
    const auto s = separating_arc(spec, 1.05, arc);
    const auto j = theta_profile(spec, 1.05).j_arc;
    CHECK(s.phi_lo == j.phi_lo);
    CHECK(s.phi_hi == j.phi_hi);
  }

  // Channel between teeth 5 and 6.
  const double target_phi = 0.5 * (std::acos(5.0 / 10.0) + std::acos(6.0 / 10.0));
  const auto& channel = f10.arcs[static_cast<std::size_t>(f10.arc_index(target_phi))];
  CHECK(channel.phi_lo == std::acos(6.0 / 10.0));
  const auto s3 = separating_arc(spec, 9.9, channel);
  CHECK(s3.phi_lo == doctest::Approx(std::acos(6.0 / 9.9)).epsilon(1e-14));
  CHECK(s3.phi_hi == doctest::Approx(std::acos(5.0 / 9.9)).epsilon(1e-14));
  // Below the channel midpoint abscissa the path is still on the real axis.
  const auto s4 = separating_arc(spec, 5.4, channel);
  CHECK(s4.contains_angle(0.0));

  CHECK_THROWS_AS(separating_arc(spec, 11.0, channel), Error);
  CircleArc bogus = channel;
  bogus.phi_lo += 0.01;
  CHECK_THROWS_AS(separating_arc(spec, 5.0, bogus), Error);
}

TEST_CASE("channel arc margin") {
  const auto spec = CombSpec::case1(pi / 2);
  const auto m = channel_margin(spec, 10.0, 3);
  const double phi = std::acos(0.3) - std::acos(0.4);
  CHECK(m.phi == doctest::Approx(phi).epsilon(1e-14));
  CHECK(m.phi == doctest::Approx(0.10682419205).epsilon(1e-9));
  CHECK(m.phi <= 1.0 / (10.0 * std::sin(pi / 4)));
  CHECK(m.l_channel < m.l_j);
  try {
    channel_margin(CombSpec::case1(pi / 3), 2.0, 5);
    FAIL("expected NoCrossing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoCrossing);
  }
  CHECK_THROWS_AS(channel_margin(CombSpec::case3(), 10.0, 3), Error);
}

TEST_CASE("r0 threshold") {
  CHECK(r0_threshold(pi / 2) == 2.0);
  CHECK(r0_threshold(pi / 100) == doctest::Approx(2026.4).epsilon(1e-4));
  for (double theta = 0.01; theta < pi; theta += 0.05) {
    const double r = r0_threshold(theta);
    CHECK(1.0 / (r * std::sin(theta / 2)) <= theta * (1 + 1e-15));
  }
  CHECK_THROWS_AS(r0_threshold(0.0), Error);
  CHECK_THROWS_AS(r0_threshold(pi), Error);
}

TEST_CASE("Theta gap bound") {
  const auto g = theta_gap(CombSpec::case1(pi / 2), 3.0);
  CHECK(g.gap == doctest::Approx(2 * std::acos(2.0 / 3.0) - pi / 2));
  CHECK(g.gap == doctest::Approx(0.1113).epsilon(1e-3));
  CHECK(g.bound == doctest::Approx(2.0 / (3.0 * std::sin(pi / 4))));
  const auto far = theta_gap(CombSpec::case1(pi / 2), 1e4);
  CHECK(far.bound <= 2.83e-4);
  CHECK(far.gap >= 0.0);
  CHECK(far.gap <= far.bound);
}
