#pragma once

#include <span>
#include <vector>

#include "geoforest/geometry.hpp"

namespace geoforest {

// Timelike pairs fix i = 0 on a hyperboloid or lifted Euclidean component,
// where x0 > 0 confines the angle to (0, pi). Every sphere pair and every
// pair with i >= 1 is Free and ranges over the whole circle.
enum class PairClass { Timelike, Free };

struct ProjectionIndex {
  int component = 0;
  int i = 0;  // ordinate coordinate (local to the component slice)
  int j = 1;  // abscissa coordinate, i < j
  PairClass pair_class = PairClass::Free;
};

enum class FeatureMode { BasisOnly, AllPairs };
enum class MidpointMode { Geodesic, ArithmeticAngleMean };

std::string feature_mode_name(FeatureMode m);
FeatureMode feature_mode_from_name(const std::string& s);
std::string midpoint_mode_name(MidpointMode m);
MidpointMode midpoint_mode_from_name(const std::string& s);

// Preprocessed projection angles: one column per 2-D coordinate pair.
struct AngleMatrix {
  Signature signature;
  RowMatrix angles;  // n x F, values in [0, 2*pi)
  std::vector<ProjectionIndex> feature_map;
  FeatureMode mode = FeatureMode::AllPairs;

  Eigen::Index rows() const { return angles.rows(); }
  Eigen::Index features() const { return angles.cols(); }
};

// BasisOnly: pairs (0, d) per component, F = sum D. AllPairs: all C(D+1, 2)
// pairs per component, lexicographic (0,1), (0,2), ..., (1,2), ...
std::vector<ProjectionIndex> build_feature_map(const Signature& sig, FeatureMode mode);

// angle(i, j) = atan2(x_i, x_j), normalized to [0, 2*pi). atan2(0, 0) maps to
// angle 0. Pure; identical inputs give bit-identical outputs.
AngleMatrix compute_angles(const PointBatch& batch, FeatureMode mode);

double normalize_angle(double a);

// True iff (angle - theta) mod 2*pi lies in [0, pi). Equivalent to the sign
// of the homogeneous split x0*cos(theta) - xd*sin(theta) off the boundary.
bool split_indicator(double angle, double theta);

// Boundary angle whose section point is geodesically equidistant from the two
// generating angles. Callers pass consecutive distinct sorted angles; the
// wraparound pair is passed as (last, first + 2*pi). Throws on equal inputs.
//   - Free pairs, or ArithmeticAngleMean mode: mean of the arc, i.e.
//     normalize((u + v) / 2).
//   - Euclidean timelike: cot m = (cot u + cot v) / 2, the classical
//     arithmetic-mean threshold in angle form.
//   - Hyperboloid timelike: cot m = V -/+ sqrt(V^2 - 1) with
//     V = cos(v - u) / sin(u + v), branch by u + v < pi; u + v = pi gives
//     the symmetric limit pi/2.
double midpoint_angle(Kind kind, PairClass cls, MidpointMode mode, double theta_u, double theta_v);

// Midpoints of consecutive sorted distinct angles, plus the wraparound
// midpoint for Free pairs. Sorted ascending. Fewer than two distinct angles
// yield no candidates.
std::vector<double> candidate_angles(std::span<const double> sorted_unique, Kind kind,
                                     PairClass cls, MidpointMode mode);

}  // namespace geoforest
