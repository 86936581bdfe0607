#include "geoforest/angular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geoforest {

std::string feature_mode_name(FeatureMode m) {
  return m == FeatureMode::BasisOnly ? "basis_only" : "all_pairs";
}

FeatureMode feature_mode_from_name(const std::string& s) {
  if (s == "basis_only") return FeatureMode::BasisOnly;
  if (s == "all_pairs") return FeatureMode::AllPairs;
  throw ValidationError("feature_mode: expected \"basis_only\" or \"all_pairs\", got \"" + s +
                        "\"");
}

std::string midpoint_mode_name(MidpointMode m) {
  return m == MidpointMode::Geodesic ? "geodesic" : "arithmetic";
}

MidpointMode midpoint_mode_from_name(const std::string& s) {
  if (s == "geodesic") return MidpointMode::Geodesic;
  if (s == "arithmetic") return MidpointMode::ArithmeticAngleMean;
  throw ValidationError("midpoint_mode: expected \"geodesic\" or \"arithmetic\", got \"" + s +
                        "\"");
}

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // rounding can land exactly on 2*pi
  return r;
}

std::vector<ProjectionIndex> build_feature_map(const Signature& sig, FeatureMode mode) {
  sig.validate();
  std::vector<ProjectionIndex> map;
  for (size_t ci = 0; ci < sig.components.size(); ++ci) {
    const auto& c = sig.components[ci];
    const int A = c.ambient_dim();
    auto cls = [&](int i) {
      return (i == 0 && c.kind != Kind::Sphere) ? PairClass::Timelike : PairClass::Free;
    };
    if (mode == FeatureMode::BasisOnly) {
      for (int d = 1; d < A; ++d) map.push_back({(int)ci, 0, d, cls(0)});
    } else {
      for (int i = 0; i < A; ++i)
        for (int j = i + 1; j < A; ++j) map.push_back({(int)ci, i, j, cls(i)});
    }
  }
  return map;
}

AngleMatrix compute_angles(const PointBatch& batch, FeatureMode mode) {
  auto violations = validate(batch);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::ostringstream os;
    os << "compute_angles: batch fails manifold constraints (" << violations.size()
       << " violations; first: row " << v.row << ", component " << v.component << ", "
       << v.constraint << ", residual " << v.residual << ")";
    throw ValidationError(os.str());
  }
  AngleMatrix out;
  out.signature = batch.signature;
  out.mode = mode;
  out.feature_map = build_feature_map(batch.signature, mode);
  out.angles.resize(batch.rows(), (Eigen::Index)out.feature_map.size());
  for (Eigen::Index r = 0; r < batch.rows(); ++r) {
    for (size_t f = 0; f < out.feature_map.size(); ++f) {
      const auto& p = out.feature_map[f];
      const int off = batch.signature.column_offset(p.component);
      out.angles(r, (Eigen::Index)f) =
          normalize_angle(std::atan2(batch.coords(r, off + p.i), batch.coords(r, off + p.j)));
    }
  }
  return out;
}

bool split_indicator(double angle, double theta) {
  double r = std::fmod(angle - theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r < kPi;
}

namespace {

double cot(double a) { return std::cos(a) / std::sin(a); }

double euclidean_timelike_midpoint(double u, double v) {
  // atan2 keeps the result in (0, pi); the encoded threshold is the
  // arithmetic mean of the two cotangents.
  return std::atan2(2.0, cot(u) + cot(v));
}

double hyperbolic_timelike_midpoint(double u, double v) {
  if (std::abs(v - u) < 1e-12) return 0.5 * (u + v);
  const double s = u + v;
  if (std::abs(s - kPi) < 1e-12) return 0.5 * kPi;
  const double V = std::cos(v - u) / std::sin(s);
  const double root = std::sqrt(std::max(V * V - 1.0, 0.0));
  // Each branch picks the root on the section's side; written in the
  // cancellation-free form (V -/+ root and 1/(V +/- root) coincide).
  const double cot_m = (s < kPi) ? 1.0 / (V + root) : 1.0 / (V - root);
  return std::atan2(1.0, cot_m);
}

}  // namespace

double midpoint_angle(Kind kind, PairClass cls, MidpointMode mode, double theta_u,
                      double theta_v) {
  if (theta_u == theta_v) throw ValidationError("midpoint_angle: equal input angles");
  if (mode == MidpointMode::ArithmeticAngleMean || cls == PairClass::Free)
    return normalize_angle(0.5 * (theta_u + theta_v));
  switch (kind) {
    case Kind::Euclidean: return euclidean_timelike_midpoint(theta_u, theta_v);
    case Kind::Hyperboloid: return hyperbolic_timelike_midpoint(theta_u, theta_v);
    case Kind::Sphere: return normalize_angle(0.5 * (theta_u + theta_v));
  }
  return normalize_angle(0.5 * (theta_u + theta_v));
}

std::vector<double> candidate_angles(std::span<const double> sorted_unique, Kind kind,
                                     PairClass cls, MidpointMode mode) {
  std::vector<double> out;
  const size_t u = sorted_unique.size();
  if (u < 2) return out;
  out.reserve(u);
  for (size_t i = 0; i + 1 < u; ++i)
    out.push_back(midpoint_angle(kind, cls, mode, sorted_unique[i], sorted_unique[i + 1]));
  if (cls == PairClass::Free)
    out.push_back(midpoint_angle(kind, cls, mode, sorted_unique[u - 1],
                                 sorted_unique[0] + kTwoPi));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace geoforest
