// Independent reference implementations shared by the unit tests. They follow
// the definitions directly and never call into the library.

#pragma once

#include <cmath>
#include <numbers>

namespace oracle {

// Half-gap of tooth n for family 1 (tan rule), 2 (n^2 + 1) or 3 (constant).
inline double family_b(int family, double theta, long n) {
  const double an = std::abs(static_cast<double>(n));
  switch (family) {
    case 1: return n == 0 ? 1.0 : an * std::tan(theta / 2.0);
    case 2: return an * an + 1.0;
    default: return 1.0;
  }
}

inline bool reaches(int family, double th, long n, double t) {
  const double x = static_cast<double>(n);
  const double b = family_b(family, th, n);
  return x * x + b * b <= t * t;
}

// Width of the real-axis arc: 2 acos(x/t) for the rightmost tooth whose rays
// reach the circle. Starts from a rough guess and walks to the exact index.
inline double theta(int family, double th, double t) {
  double guess = std::sqrt(std::max(t * t - 1.0, 0.0));
  if (family == 1) guess = t * std::cos(th / 2.0);
  if (family == 2) guess = std::sqrt(t);
  long n = static_cast<long>(guess);
  while (reaches(family, th, n + 1, t)) ++n;
  while (n >= 0 && !reaches(family, th, n, t)) --n;
  if (n < 0) return 2.0 * std::numbers::pi;
  return 2.0 * std::acos(static_cast<double>(n) / t);
}

// Midpoint sum of dt / (t Theta(t)) on a uniform grid in log t.
inline double riemann(int family, double th, double r1, double r2, long points) {
  const double h = std::log(r2 / r1) / static_cast<double>(points);
  double sum = 0.0;
  for (long i = 0; i < points; ++i) {
    const double t = r1 * std::exp((static_cast<double>(i) + 0.5) * h);
    sum += h / theta(family, th, t);
  }
  return sum;
}

}  // namespace oracle
