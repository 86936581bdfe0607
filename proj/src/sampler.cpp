#include "geoforest/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace geoforest {

void MixtureSpec::validate() const {
  signature.validate();
  if (n_points < 1) throw ValidationError("mixture: n_points must be >= 1");
  if (n_clusters < 1) throw ValidationError("mixture: n_clusters must be >= 1");
  if (n_points < n_clusters)
    throw ValidationError("mixture: n_points must be >= n_clusters");
  if (task == Task::Classification &&
      (n_classes < 1 || n_classes > n_clusters))
    throw ValidationError("mixture: n_classes must lie in [1, n_clusters]");
  if (sigma && !(*sigma > 0)) throw ValidationError("mixture: sigma must be > 0");
  if (noise_std < 0) throw ValidationError("mixture: noise_std must be >= 0");
}

namespace {

// Lower-triangular Bartlett factor A of a Wishart(scale*I, D) draw:
// Sigma = scale * A * A^T. Row-major; off-diagonal normals precede the chi
// diagonal, whose dof runs D, D-1, ..., 1.
RowMatrix wishart_factor(double scale, int D, Rng& rng) {
  RowMatrix A = RowMatrix::Zero(D, D);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < i; ++j) A(i, j) = rng.normal();
    A(i, i) = rng.chi((double)(D - i));
  }
  return std::sqrt(scale) * A;
}

}  // namespace

std::vector<int> assign_classes(const std::vector<int>& cluster, int n_clusters, int n_classes,
                                Rng& rng, std::vector<int>* cluster_to_class) {
  if (n_classes < 1 || n_classes > n_clusters)
    throw ValidationError("assign_classes: n_classes must lie in [1, n_clusters]");
  std::vector<int> map((size_t)n_clusters);
  for (int i = 0; i < n_classes; ++i) map[i] = i;
  for (int i = n_classes; i < n_clusters; ++i)
    map[i] = (int)rng.uniform_int((uint64_t)n_classes);
  std::vector<int> labels(cluster.size());
  for (size_t j = 0; j < cluster.size(); ++j) labels[j] = map[cluster[j]];
  if (cluster_to_class) *cluster_to_class = map;
  return labels;
}

std::vector<double> regression_targets(const RowMatrix& x_euc, const std::vector<int>& cluster,
                                       int n_clusters, Rng& rng, double noise_std,
                                       RowMatrix* slopes_out,
                                       std::vector<double>* intercepts_out) {
  const Eigen::Index m = x_euc.rows();
  const Eigen::Index D = x_euc.cols();
  if ((size_t)m != cluster.size())
    throw ValidationError("regression_targets: cluster vector length mismatch");
  RowMatrix beta(n_clusters, D);
  for (int i = 0; i < n_clusters; ++i)
    for (Eigen::Index d = 0; d < D; ++d) beta(i, d) = rng.uniform(-1.0, 1.0);
  std::vector<double> alpha((size_t)n_clusters);
  for (int i = 0; i < n_clusters; ++i) alpha[(size_t)i] = rng.uniform(-10.0, 10.0);

  std::vector<double> y((size_t)m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int c = cluster[(size_t)j];
    double v = alpha[(size_t)c];
    for (Eigen::Index d = 0; d < D; ++d) v += x_euc(j, d) * beta(c, d);
    v += noise_std * rng.normal();  // noise stream drawn even when std is 0
    y[(size_t)j] = v;
  }
  const auto [mn_it, mx_it] = std::minmax_element(y.begin(), y.end());
  const double mn = *mn_it, mx = *mx_it;
  const double range = mx - mn;
  if (!(range > 0)) {
    std::cerr << "warning: regression targets are constant; emitting all-0.5 labels\n";
    std::fill(y.begin(), y.end(), 0.5);
  } else {
    for (auto& v : y) v = (v - mn) / range;
  }
  if (slopes_out) *slopes_out = std::move(beta);
  if (intercepts_out) *intercepts_out = std::move(alpha);
  return y;
}

Dataset sample_mixture(const MixtureSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int m = spec.n_points;
  const int n = spec.n_clusters;
  const auto& sig = spec.signature;

  Dataset ds;
  ds.task = spec.task;
  ds.points.signature = sig;
  ds.points.coords.resize(m, sig.ambient_dim());

  // 1. cluster weights and assignments
  std::vector<double> raw((size_t)n);
  double total = 0.0;
  for (auto& p : raw) {
    p = rng.uniform01();
    total += p;
  }
  std::vector<double> cdf((size_t)n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += raw[(size_t)i] / total;
    cdf[(size_t)i] = acc;
    ds.params.proportions.push_back(raw[(size_t)i] / total);
  }
  cdf.back() = 1.0;
  ds.cluster.resize((size_t)m);
  for (int j = 0; j < m; ++j) {
    const double u = rng.uniform01();
    ds.cluster[(size_t)j] =
        (int)(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }

  // 2. per-component wrapped draws; pre-transport tangent coordinates are
  // kept for the regression targets.
  RowMatrix x_euc(m, sig.intrinsic_dim());
  int col = 0;
  int euc_col = 0;
  for (const auto& comp : sig.components) {
    const int D = comp.dim;
    const int A = comp.ambient_dim();
    const double aK = comp.abs_curvature();
    const double tangent_scale = comp.kind == Kind::Euclidean ? 1.0 : std::sqrt(aK);
    const double coord_scale = comp.kind == Kind::Euclidean ? 1.0 : 1.0 / aK;
    const double sigma = spec.sigma ? *spec.sigma : 0.25 / (double)D;

    ComponentSpec unit = comp;
    if (comp.kind == Kind::Sphere) unit.curvature = 1.0;
    if (comp.kind == Kind::Hyperboloid) unit.curvature = -1.0;
    const Eigen::RowVectorXd orig = component_origin(unit);

    // cluster means
    RowMatrix means_unit(n, A);
    for (int i = 0; i < n; ++i) {
      Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(A);
      for (int d = 1; d <= D; ++d) v[d] = tangent_scale * rng.normal();
      means_unit.row(i) = exp_map(unit, orig, v);
    }

    // per-cluster covariance factors
    std::vector<RowMatrix> factors;
    std::vector<RowMatrix> sigmas;
    factors.reserve((size_t)n);
    for (int i = 0; i < n; ++i) {
      factors.push_back(wishart_factor(sigma * tangent_scale, D, rng));
      sigmas.push_back(factors.back() * factors.back().transpose());
    }

    // points: tangent draw at the origin, transport to the mean, project
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd z(D);
      for (int d = 0; d < D; ++d) z[d] = rng.normal();
      const Eigen::VectorXd x = factors[(size_t)ds.cluster[(size_t)j]] * z;
      x_euc.block(j, euc_col, 1, D) = x.transpose();
      Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(A);
      v.segment(1, D) = x.transpose();
      const auto& mean = means_unit.row(ds.cluster[(size_t)j]);
      const Eigen::RowVectorXd vt = parallel_transport(unit, orig, mean, v);
      ds.points.coords.block(j, col, 1, A) = coord_scale * exp_map(unit, mean, vt);
    }

    ds.params.means.push_back(coord_scale * means_unit);
    ds.params.covariances.push_back(std::move(sigmas));
    col += A;
    euc_col += D;
  }

  // 3. targets
  if (spec.task == Task::Classification) {
    ds.labels = assign_classes(ds.cluster, n, spec.n_classes, rng, &ds.params.cluster_to_class);
  } else {
    ds.targets = regression_targets(x_euc, ds.cluster, n, rng, spec.noise_std,
                                    &ds.params.slopes, &ds.params.intercepts);
  }
  return ds;
}

}  // namespace geoforest
