// Hardy-number constructions and the deterministic integral estimates.

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "hardylab/arcs.hpp"
#include "hardylab/constructions.hpp"
#include "hardylab/error.hpp"
#include "hardylab/estimators.hpp"
#include "oracles.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kValidation;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("build and theoretical values") {
  CHECK(theoretical_hardy(build(Family::kCase1, {.theta = pi / 2})).value() ==
        doctest::Approx(2.0));
  CHECK(theoretical_hardy(build(Family::kCase2)).value() == 1.0);
  CHECK(theoretical_hardy(build(Family::kCase3)).value() == kInf);
  CHECK(theoretical_hardy(build(Family::kSlitPlane, {.b0 = 1.0})).value() == 1.0);
  CHECK(theoretical_hardy(build(Family::kSlitPlane, {.b0 = 7.5})).value() == 1.0);
  CHECK(theoretical_hardy(build(Family::kSector, {.theta = pi / 3})).value() ==
        doctest::Approx(3.0));
  CHECK(theoretical_hardy(build(Family::kHalfPlane)).value() == 1.0);
  CHECK(theoretical_hardy(build(Family::kCase1, {.theta = pi / 3})).source() ==
        HardySource::kMainTheoremCase1);

  CHECK(code_of([] { build(Family::kCase1, {.theta = 4.0}); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { build(Family::kCase1); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { build(Family::kSector, {.theta = pi}); }) == ErrorCode::kInvalidParam);
  CHECK(code_of([] { build(Family::kSlitPlane, {.b0 = 0.0}); }) == ErrorCode::kInvalidParam);

  CHECK(code_of([] { TheoreticalHardy(0.9, HardySource::kMainTheoremCase2); }) ==
        ErrorCode::kOutOfRange);
  CHECK(code_of([] { TheoreticalHardy(0.4, HardySource::kSectorExact); }) ==
        ErrorCode::kOutOfRange);
  CHECK(TheoreticalHardy(0.5, HardySource::kStarlikeFormula).value() == 0.5);
}

TEST_CASE("explicit combs get a bound pair") {
  std::vector<Tooth> teeth;
  for (int n = -3; n <= 3; ++n) teeth.push_back({n, 2.0 * n, n == 0 ? 1.0 : 2.0 * std::abs(n)});
  const auto spec = CombSpec::from_teeth(teeth, 1.0);
  CHECK(code_of([&] { theoretical_hardy(DomainRef::comb(spec)); }) ==
        ErrorCode::kUnknownDomain);
  const HardyBounds b = hardy_bounds(DomainRef::comb(spec));
  CHECK(b.lower == 1.0);
  CHECK(b.upper == doctest::Approx(2.0));  // every tip on the line y = x
  CHECK(b.source == HardySource::kContainmentBound);

  const auto extended = CombSpec::from_teeth(teeth, 1.0, TailExtension{2.0, 3.0});
  CHECK(hardy_bounds(DomainRef::comb(extended)).upper == kInf);
  CHECK(hardy_bounds(DomainRef::comb(CombSpec::case2())).upper == 1.0);
}

TEST_CASE("slit plane profile and starlike formula") {
  const SlitPlaneDomain s1{1.0};
  CHECK(alpha_profile(s1, 0.5) == doctest::Approx(2 * pi));
  CHECK(alpha_profile(s1, 2.0) == doctest::Approx(pi));
  CHECK(alpha_profile(SlitPlaneDomain{3.0}, 3.0001) == doctest::Approx(pi));
  // Agrees with the generic circle-section code.
  for (double t : {0.3, 0.99, 1.5, 40.0}) {
    double widest = 0.0;
    for (const auto& arc : circle_arcs(DomainRef::slit_plane(1.0), t).arcs) {
      widest = std::max(widest, arc.length());
    }
    CHECK(alpha_profile(s1, t) == doctest::Approx(widest));
  }

  CHECK(starlike_hardy(pi).value() == 1.0);
  CHECK(starlike_hardy(2 * pi).value() == 0.5);
  CHECK(starlike_hardy(pi / 3).value() == doctest::Approx(3.0));
  CHECK(starlike_hardy(pi / 3).value() ==
        doctest::Approx(theoretical_hardy(DomainRef::sector(pi / 3)).value()));
  CHECK(code_of([] { starlike_hardy(0.0); }) == ErrorCode::kInvalidAlpha);
  CHECK(code_of([] { starlike_hardy(7.0); }) == ErrorCode::kInvalidAlpha);
}

TEST_CASE("inscribed sector angle") {
  for (double th : {0.3, pi / 3, pi / 2, 2.5}) {
    CHECK(inscribed_sector_angle(CombSpec::case1(th), 0.0) == doctest::Approx(th).epsilon(1e-12));
  }
  CHECK(inscribed_sector_angle(CombSpec::case3(), 0.0) == 0.0);

  // Brute-force minimum over the first 10^4 teeth right of the vertex.
  const auto brute = [](int family, double th, double v) {
    double best = kInf;
    for (long n = static_cast<long>(std::floor(v)) + 1; n < 10000; ++n) {
      best = std::min(best, oracle::family_b(family, th, n) / (n - v));
    }
    return 2.0 * std::atan(best);
  };
  for (double v : {0.0, 0.5, 5.0, 17.3, -2.5}) {
    CHECK(inscribed_sector_angle(CombSpec::case2(), v) ==
          doctest::Approx(brute(2, 0.0, v)).epsilon(1e-14));
  }
  CHECK(inscribed_sector_angle(CombSpec::case1(pi / 2), -2.5) ==
        doctest::Approx(brute(1, pi / 2, -2.5)).epsilon(1e-14));
  // At vertex 5 the minimum sits at n = 10, not at the neighbouring tooth.
  CHECK(inscribed_sector_angle(CombSpec::case2(), 5.0) ==
        doctest::Approx(2.0 * std::atan(101.0 / 5.0)));

  std::vector<Tooth> teeth{{-1, -1.0, 1.0}, {0, 0.0, 1.0}, {1, 1.0, 1.0}};
  const auto spec = CombSpec::from_teeth(teeth, 1.0);
  CHECK(code_of([&] { inscribed_sector_angle(spec, 1.5); }) == ErrorCode::kEmptyRight);
  CHECK(inscribed_sector_angle(spec, 0.0) == doctest::Approx(pi / 2));
}

TEST_CASE("sector fit for the parabola comb") {
  const SectorFit a = sector_fit_n(pi / 2);
  CHECK(a.n == 1);
  CHECK(a.alpha == doctest::Approx(1.0));
  CHECK(a.discriminant == doctest::Approx(-7.0));
  const SectorFit b = sector_fit_n(pi - 2.0 * std::atan(2.0));
  CHECK(b.alpha == doctest::Approx(2.0));
  CHECK(b.n == 1);

  for (int i = 1; i < 50; ++i) {
    const double eps = pi * i / 50.0;
    const SectorFit f = sector_fit_n(eps);
    CHECK(f.discriminant < 0.0);
    // Minimality: n - 1 would not satisfy the strict threshold (or is not natural).
    const double thr = (f.alpha * f.alpha - 4.0) / (4.0 * f.alpha);
    CHECK(static_cast<double>(f.n) > thr);
    CHECK((f.n == 1 || static_cast<double>(f.n - 1) <= thr));
    for (long n = -10000; n <= 10000; n += 7) {
      const double tip = static_cast<double>(n) * n + 1.0;
      CHECK_MESSAGE(tip >= f.alpha * (static_cast<double>(n) - f.n), "n=", n);
    }
  }
}

TEST_CASE("integral matches the log-grid Riemann oracle") {
  struct Case {
    CombSpec spec;
    int family;
    double theta;
    double r1, r2, slack;
  };
  // The oracle's own discretization error sets the slack: it is ~1e-7 on
  // the tan and parabola rules and ~3e-2 on the constant rule, whose pieces
  // start with a square-root spike.
  const std::vector<Case> cases = {
      {CombSpec::case1(pi / 2), 1, pi / 2, 1e3, 1e6, 1e-6},
      {CombSpec::case1(pi / 2), 1, pi / 2, 1.0, 20.0, 1e-6},
      {CombSpec::case2(), 2, 0.0, 1.0, 1e4, 1e-6},
      {CombSpec::case3(), 3, 0.0, 1e2, 1e4, 0.1},
      {CombSpec::case3(), 3, 0.0, 0.25, 3.0, 1e-3},
  };
  for (const auto& c : cases) {
    const IntegralResult res = beurling_integral(c.spec, c.r1, c.r2, 1e-10);
    const double ref = oracle::riemann(c.family, c.theta, c.r1, c.r2, 1000000);
    CHECK(res.value == doctest::Approx(ref).epsilon(0).scale(0).epsilon(c.slack / std::abs(ref)));
    CHECK(res.error_bound <= 1e-10);
    CHECK(res.error_bound >= 0.0);
    CHECK(res.value >= (c.r2 - c.r1) / (2 * pi * c.r2));
    CHECK(res.segments >= res.breakpoints_used.size() + 1);
    for (std::size_t i = 1; i < res.breakpoints_used.size(); ++i) {
      CHECK(res.breakpoints_used[i - 1] < res.breakpoints_used[i]);
    }
  }
  // Case 3 window value is about 125.
  CHECK(beurling_integral(CombSpec::case3(), 1e2, 1e4, 1e-8).value ==
        doctest::Approx(125.0).epsilon(1e-3));
}

TEST_CASE("integral brackets for the tan rule") {
  for (double th : {pi / 3, pi / 2, 3 * pi / 4}) {
    const auto spec = CombSpec::case1(th);
    for (auto [r1, r2] : {std::pair{2.0, 50.0}, std::pair{1e3, 1e6}, std::pair{37.5, 41.0}}) {
      const double v = beurling_integral(spec, r1, r2, 1e-10).value;
      const double span = std::log(r2 / r1);
      CHECK(v <= span / th);
      CHECK(v >= span / (th + 2.0 / (r1 * std::sin(th / 2))));
    }
  }
  const double v = beurling_integral(CombSpec::case1(pi / 2), 1e3, 1e6, 1e-10).value;
  CHECK(v >= 4.3911);
  CHECK(v <= 4.3979);
}

TEST_CASE("integral errors") {
  const auto spec = CombSpec::case3();
  CHECK(code_of([&] { beurling_integral(spec, 5.0, 5.0, 1e-8); }) == ErrorCode::kBadRange);
  CHECK(code_of([&] { beurling_integral(spec, 0.0, 5.0, 1e-8); }) == ErrorCode::kBadRange);
  CHECK(code_of([&] {
          beurling_integral(spec, 1.0, 1e4, 1e-8, QuadratureOptions{.max_panels = 100});
        }) == ErrorCode::kToleranceUnreachable);
}

TEST_CASE("window estimator") {
  CHECK(hardy_window(CombSpec::case1(pi / 2), 1e3, 1e6, 1e-10).h_window ==
        doctest::Approx(2.0).epsilon(0.005));
  CHECK(hardy_window(CombSpec::case1(pi / 3), 1e3, 1e6, 1e-10).h_window ==
        doctest::Approx(3.0).epsilon(0.005));
  const HardyEstimate c3 = hardy_window(CombSpec::case3(), 1e2, 1e4, 1e-8);
  CHECK(c3.h_window >= 40.0);
  CHECK(c3.log_omega_upper == doctest::Approx(std::log(c3.omega_upper)));
  CHECK(c3.d_lower == doctest::Approx(std::log(2.0 / pi) - c3.log_omega_upper));

  const HardyEstimate e = hardy_window(CombSpec::case1(pi / 2), 5.0, 200.0, 1e-10);
  CHECK(e.d_lower == doctest::Approx(hyp_distance_lower(CombSpec::case1(pi / 2), 200.0)));
  CHECK(e.omega_upper == doctest::Approx(harmonic_measure_upper(CombSpec::case1(pi / 2), 200.0)));
  CHECK(e.h_window >= 1.0);

  CHECK(code_of([] { hardy_window(CombSpec::case3(), 0.5, 10.0, 1e-8); }) ==
        ErrorCode::kBadRange);
  CHECK(hardy_window(CombSpec::case2(), 1.0, 1e4, 1e-10).h_window >= 1.0);
}

TEST_CASE("distance and harmonic measure bounds") {
  const auto spec = CombSpec::case1(pi / 2);
  const double d6 = hyp_distance_lower(spec, 1e6);
  CHECK(d6 == doctest::Approx(std::log(0.25) + pi * oracle::riemann(1, pi / 2, 1.0, 1e6, 1000000))
                  .epsilon(1e-6));
  CHECK(hyp_distance_lower(spec, 1e4) < d6);
  CHECK(hyp_distance_lower(CombSpec::case3(), 1e4) >= 196.0);
  CHECK(code_of([&] { hyp_distance_lower(spec, 1.0); }) == ErrorCode::kBadRange);

  const double w20 = harmonic_measure_upper(spec, 20.0);
  CHECK(w20 == doctest::Approx(8.0 / pi * std::exp(-pi * oracle::riemann(1, pi / 2, 1.0, 20.0, 1000000)))
                   .epsilon(1e-6));
  CHECK(w20 <= 8.0 / pi);
  CHECK(harmonic_measure_upper(spec, 21.0) < w20);
  CHECK(code_of([&] { harmonic_measure_upper(spec, 0.5); }) == ErrorCode::kBadRange);

  CHECK(hyp_lower_from_omega(2.0 / pi) == doctest::Approx(0.0));
  CHECK(hyp_lower_from_omega(0.01) == doctest::Approx(std::log(200.0 / pi)));
  CHECK(code_of([] { hyp_lower_from_omega(0.0); }) == ErrorCode::kInvalidOmega);
  CHECK(code_of([] { hyp_lower_from_omega(1.5); }) == ErrorCode::kInvalidOmega);
  for (double r : {2.0, 20.0, 300.0}) {
    CHECK(hyp_lower_from_omega(harmonic_measure_upper(spec, r)) ==
          doctest::Approx(hyp_distance_lower(spec, r)).epsilon(1e-13));
  }
}

TEST_CASE("quasihyperbolic sandwich") {
  const auto spec = CombSpec::case1(pi / 2);
  const std::vector<Complex> seg{{0, 0}, {10, 0}};
  const double q = quasihyperbolic_upper(spec, 10.0, seg);
  CHECK(std::isfinite(q));
  CHECK(q > hyp_distance_lower(spec, 10.0));

  const std::vector<Complex> back{{0, 0}, {10, 0}, {5, 0}, {10, 0}};
  CHECK(quasihyperbolic_upper(spec, 10.0, back) >= q);

  // A path through a channel also dominates the lower bound.
  const std::vector<Complex> channel{{0, 0}, {2.5, 0}, {2.5, std::sqrt(100.0 - 6.25)}};
  CHECK(quasihyperbolic_upper(spec, 10.0, channel) > hyp_distance_lower(spec, 10.0));

  const std::vector<Complex> through{{0, 0}, {0, 10}};
  CHECK(code_of([&] { quasihyperbolic_upper(spec, 10.0, through); }) ==
        ErrorCode::kPathOutsideDomain);
  const std::vector<Complex> still{{0, 0}, {0, 0}};
  CHECK(code_of([&] { quasihyperbolic_upper(spec, 0.0, still); }) == ErrorCode::kBadRange);
  CHECK(code_of([&] { quasihyperbolic_upper(spec, 11.0, seg); }) == ErrorCode::kBadRange);
}

TEST_CASE("Burkholder conversion") {
  CHECK(burkholder_convert(2.0) == 1.0);
  CHECK(burkholder_convert(1.0) == 0.5);
  CHECK(burkholder_convert(kInf) == kInf);
  CHECK(burkholder_inverse(burkholder_convert(3.0)) == 3.0);
  CHECK(code_of([] { burkholder_convert(0.4); }) == ErrorCode::kOutOfRange);
}
