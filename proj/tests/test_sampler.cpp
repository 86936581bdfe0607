#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "geoforest/sampler.hpp"
#include "test_util.hpp"

using namespace geoforest;

namespace {

MixtureSpec base_spec(Signature sig, int m = 400, uint64_t seed = 5) {
  MixtureSpec spec;
  spec.signature = std::move(sig);
  spec.n_points = m;
  spec.n_clusters = 8;
  spec.n_classes = 4;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("samples satisfy all manifold constraints") {
  const auto ds = sample_mixture(base_spec(testutil::sig_mixed()));
  CHECK(validate(ds.points).empty());
  CHECK(ds.rows() == 400);
  CHECK((int)ds.labels.size() == 400);
  for (int y : ds.labels) {
    CHECK(y >= 0);
    CHECK(y < 4);
  }
}

TEST_CASE("non-unit curvatures stay on their constraint surfaces") {
  Signature sig{{{Kind::Sphere, 2, 2.0}, {Kind::Hyperboloid, 2, -0.5}, {Kind::Euclidean, 2, 0.0}}};
  const auto ds = sample_mixture(base_spec(sig, 200));
  CHECK(validate(ds.points).empty());
}

TEST_CASE("rescale equivalence between curvature K and the unit pipeline") {
  // distances at curvature K equal unit-curvature distances of the same
  // configuration divided by |K|, per component
  Signature sigK{{{Kind::Sphere, 2, 2.0}}};
  Signature sig1{{{Kind::Sphere, 2, 1.0}}};
  auto spec = base_spec(sigK, 40, 17);
  const auto ds = sample_mixture(spec);
  PointBatch unit{sig1, 2.0 * ds.points.coords};
  CHECK(validate(unit).empty());
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(product_distance(sigK, ds.points.coords.row(i), ds.points.coords.row(j)) ==
            doctest::Approx(product_distance(sig1, unit.coords.row(i), unit.coords.row(j)) / 2.0)
                .epsilon(1e-6));

  Signature hK{{{Kind::Hyperboloid, 2, -2.0}}};
  Signature h1{{{Kind::Hyperboloid, 2, -1.0}}};
  const auto hds = sample_mixture(base_spec(hK, 40, 18));
  PointBatch hunit{h1, 2.0 * hds.points.coords};
  CHECK(validate(hunit).empty());
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(product_distance(hK, hds.points.coords.row(i), hds.points.coords.row(j)) ==
            doctest::Approx(product_distance(h1, hunit.coords.row(i), hunit.coords.row(j)) / 2.0)
                .epsilon(1e-6));
}

TEST_CASE("tiny sigma concentrates a single cluster at its mean") {
  auto spec = base_spec(testutil::sig_mixed(), 50, 19);
  spec.n_clusters = 1;
  spec.n_classes = 1;
  spec.sigma = 1e-12;
  const auto ds = sample_mixture(spec);
  Eigen::RowVectorXd mean(ds.points.signature.ambient_dim());
  int off = 0;
  for (size_t c = 0; c < ds.points.signature.components.size(); ++c) {
    const int a = ds.points.signature.components[c].ambient_dim();
    mean.segment(off, a) = ds.params.means[c].row(0);
    off += a;
  }
  for (Eigen::Index i = 0; i < ds.rows(); ++i)
    CHECK(product_distance(ds.points.signature, ds.points.coords.row(i), mean) <= 1e-3);
}

TEST_CASE("cluster frequencies track the drawn proportions") {
  auto spec = base_spec(testutil::sig_euclid(2), 10000, 23);
  spec.n_clusters = 6;
  spec.n_classes = 2;
  const auto ds = sample_mixture(spec);
  std::vector<int> counts(6, 0);
  for (int c : ds.cluster) ++counts[(size_t)c];
  for (int i = 0; i < 6; ++i) {
    const double p = ds.params.proportions[(size_t)i];
    const double sd = std::sqrt(10000.0 * p * (1 - p));
    CHECK(std::abs(counts[(size_t)i] - 10000.0 * p) <= 3.0 * sd + 1.0);
  }
}

TEST_CASE("assign_classes") {
  Rng rng(3);
  // identity when classes == clusters
  const std::vector<int> c{0, 1, 2, 3, 2, 1};
  const auto id = assign_classes(c, 4, 4, rng);
  CHECK(id == c);
  // single class collapses everything
  const auto zero = assign_classes(c, 4, 1, rng);
  for (int y : zero) CHECK(y == 0);
  // first p clusters keep their identity, the rest land inside [0, p)
  std::vector<int> map;
  const std::vector<int> c2{0, 1, 2, 3};
  const auto lab = assign_classes(c2, 4, 2, rng, &map);
  CHECK(map[0] == 0);
  CHECK(map[1] == 1);
  for (int i = 2; i < 4; ++i) {
    CHECK(map[(size_t)i] >= 0);
    CHECK(map[(size_t)i] < 2);
  }
  CHECK(lab[0] == 0);
  CHECK(lab[1] == 1);
}

TEST_CASE("regression targets normalize to [0,1]") {
  auto spec = base_spec(testutil::sig_mixed(), 300, 29);
  spec.task = Task::Regression;
  const auto ds = sample_mixture(spec);
  const auto [mn, mx] = std::minmax_element(ds.targets.begin(), ds.targets.end());
  CHECK(*mn == 0.0);
  CHECK(*mx == 1.0);
  // reproducible under the same seed
  const auto ds2 = sample_mixture(spec);
  CHECK(ds.targets == ds2.targets);
}

TEST_CASE("degenerate regression range yields constant 0.5 labels") {
  RowMatrix x = RowMatrix::Zero(10, 3);  // beta contributes nothing
  const std::vector<int> cluster(10, 0);
  Rng rng(1);
  const auto y = regression_targets(x, cluster, 1, rng, 0.0);
  for (double v : y) CHECK(v == 0.5);
}

TEST_CASE("wrapped draws preserve tangent dispersion") {
  // transport and exp are radial isometries, so the squared geodesic
  // distance of a point from its cluster mean has expectation tr(Sigma)
  for (const auto& sig : {testutil::sig_hyper(2), testutil::sig_sphere(2)}) {
    auto spec = base_spec(sig, 6000, 41);
    spec.n_clusters = 3;
    spec.n_classes = 1;
    spec.sigma = 0.05;  // keeps sphere draws well inside the injectivity radius
    const auto ds = sample_mixture(spec);
    const auto& comp = sig.components[0];
    std::vector<double> sq(3, 0.0);
    std::vector<int> cnt(3, 0);
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
      const int c = ds.cluster[(size_t)i];
      const double d =
          distance(comp, ds.points.coords.row(i), ds.params.means[0].row(c));
      sq[(size_t)c] += d * d;
      ++cnt[(size_t)c];
    }
    for (int c = 0; c < 3; ++c) {
      if (cnt[(size_t)c] < 200) continue;
      const double trace = ds.params.covariances[0][(size_t)c].trace();
      CHECK(sq[(size_t)c] / cnt[(size_t)c] ==
            doctest::Approx(trace).epsilon(0.15));
    }
  }
}

TEST_CASE("wishart covariances have the right first moment") {
  // E[Sigma] = D * scale * I for the Bartlett construction with D degrees
  // of freedom; average the per-cluster draws recorded in the sidecar
  auto spec = base_spec(testutil::sig_euclid(3), 400, 37);
  spec.n_clusters = 400;
  spec.n_classes = 1;
  spec.sigma = 0.1;
  const auto ds = sample_mixture(spec);
  RowMatrix mean = RowMatrix::Zero(3, 3);
  for (const auto& S : ds.params.covariances[0]) mean += S;
  mean /= 400.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expect = i == j ? 3.0 * 0.1 : 0.0;
      CHECK(std::abs(mean(i, j) - expect) <= 0.05);
    }
  }
}

TEST_CASE("seeded determinism of the full dataset") {
  const auto a = sample_mixture(base_spec(testutil::sig_mixed(), 200, 31));
  const auto b = sample_mixture(base_spec(testutil::sig_mixed(), 200, 31));
  CHECK((a.points.coords - b.points.coords).norm() == 0.0);
  CHECK(a.labels == b.labels);
  CHECK(a.cluster == b.cluster);
  const auto c = sample_mixture(base_spec(testutil::sig_mixed(), 200, 32));
  CHECK((a.points.coords - c.points.coords).norm() != 0.0);
}
