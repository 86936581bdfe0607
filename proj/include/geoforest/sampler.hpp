#pragma once

#include <optional>

#include "geoforest/geometry.hpp"
#include "geoforest/rng.hpp"

namespace geoforest {

struct MixtureSpec {
  Signature signature;
  int n_points = 1000;
  int n_clusters = 32;
  int n_classes = 8;           // classification only
  Task task = Task::Classification;
  std::optional<double> sigma; // covariance scale; unset means 0.25/D per component
  double noise_std = 0.0;      // regression target noise, N(0, noise_std^2)
  uint64_t seed = 0;

  void validate() const;
};

// Ground-truth mixture parameters, kept for the sidecar dump and tests.
struct MixtureParams {
  std::vector<double> proportions;           // normalized cluster weights
  std::vector<int> cluster_to_class;         // classification
  std::vector<RowMatrix> means;              // per component: n_clusters x (D+1), final coords
  std::vector<std::vector<RowMatrix>> covariances;  // per component, per cluster: D x D
  RowMatrix slopes;                          // regression: n_clusters x sum(D)
  std::vector<double> intercepts;            // regression: n_clusters
};

struct Dataset {
  PointBatch points;
  Task task = Task::Classification;
  std::vector<int> labels;      // classification
  std::vector<double> targets;  // regression, in [0, 1]
  std::vector<int> cluster;
  MixtureParams params;

  Eigen::Index rows() const { return points.rows(); }
};

// Wrapped Gaussian mixture on the product manifold. All draws come from one
// generator seeded with spec.seed, in this fixed order:
//   1. n_clusters uniform cluster weights, then n_points categorical
//      assignments against their normalized CDF;
//   2. per component, in signature order: cluster means as D standard
//      normals each (scaled by sqrt|K|), then per-cluster Wishart factors
//      via Bartlett (row-major, off-diagonal normals before the chi diagonal,
//      diagonal dof D, D-1, ..., 1), then n_points x D standard normals for
//      the per-point tangent draws;
//   3. targets: classification draws one uniform int per cluster past the
//      first n_classes; regression draws slopes (cluster-major), intercepts,
//      then n_points noise normals (drawn even when noise_std == 0).
// Tangent draws are lifted with a leading zero, parallel-transported from
// the origin to their cluster mean, pushed through the exponential map, and
// finally the unit-manifold coordinates are scaled onto the curvature-K
// constraint surface.
Dataset sample_mixture(const MixtureSpec& spec);

// Cluster-to-class mapping: the first n_classes clusters map to distinct
// classes, the rest draw uniformly. Returns per-point labels.
std::vector<int> assign_classes(const std::vector<int>& cluster, int n_clusters, int n_classes,
                                Rng& rng, std::vector<int>* cluster_to_class = nullptr);

// Per-cluster linear responses on the pre-transport tangent draws, min-max
// normalized to [0, 1]. A degenerate (zero-range) response yields all-0.5
// labels and a warning on stderr.
std::vector<double> regression_targets(const RowMatrix& x_euc, const std::vector<int>& cluster,
                                       int n_clusters, Rng& rng, double noise_std,
                                       RowMatrix* slopes_out = nullptr,
                                       std::vector<double>* intercepts_out = nullptr);

}  // namespace geoforest
