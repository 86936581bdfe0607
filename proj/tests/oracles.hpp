// Test-only equidistance oracles for split-boundary angles on the 2-D
// sections. Each oracle realizes the two generating angles as points on the
// unit section, then bisects for the boundary angle at equal geodesic
// distance from both. Section distances are written out directly here, so
// the oracles share no code with the midpoint formulas they check.
#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Central-angle distance on the unit circle.
inline double sphere_section_distance(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Unit-hyperbola point at section angle phi (valid for phi in (pi/4, 3pi/4)):
// (x_d, x_0) = r (cos phi, sin phi) with x_0^2 - x_d^2 = 1.
inline void hyperbola_point(double phi, double& x0, double& xd) {
  const double c2 = std::cos(2.0 * phi);
  if (!(c2 < 0)) throw std::domain_error("hyperbola_point: angle outside (pi/4, 3pi/4)");
  const double r = 1.0 / std::sqrt(-c2);
  x0 = r * std::sin(phi);
  xd = r * std::cos(phi);
}

inline double hyperbolic_section_distance(double a, double b) {
  double a0, ad, b0, bd;
  hyperbola_point(a, a0, ad);
  hyperbola_point(b, b0, bd);
  return std::acosh(std::max(1.0, a0 * b0 - ad * bd));
}

// Line section {x_0 = 1}: the point at angle theta has coordinate cot(theta).
inline double euclidean_section_distance(double a, double b) {
  return std::fabs(std::cos(a) / std::sin(a) - std::cos(b) / std::sin(b));
}

template <typename F>
double bisect_equidistant(F&& dist, double u, double v) {
  // g(phi) = dist(phi, u) - dist(phi, v) changes sign once on (u, v).
  double lo = u, hi = v;
  auto g = [&](double phi) { return dist(phi, u) - dist(phi, v); };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// u < v, consecutive-arc midpoint.
inline double sphere_midpoint(double u, double v) {
  return bisect_equidistant(sphere_section_distance, u, v);
}

// u < v, both in (pi/4, 3pi/4).
inline double hyperbolic_midpoint(double u, double v) {
  return bisect_equidistant(hyperbolic_section_distance, u, v);
}

// u < v, both in (0, pi).
inline double euclidean_midpoint(double u, double v) {
  return bisect_equidistant(euclidean_section_distance, u, v);
}

}  // namespace oracle
