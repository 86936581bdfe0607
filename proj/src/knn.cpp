#include "geoforest/knn.hpp"

#include <algorithm>

namespace geoforest {

namespace {

void check_inputs(const PointBatch& train, size_t ylen, const PointBatch& test, int k) {
  if (!(train.signature == test.signature))
    throw ValidationError("knn: train and test signatures differ");
  if ((size_t)train.rows() != ylen)
    throw ValidationError("knn: label count does not match training rows");
  if (k < 1 || k > (int)train.rows())
    throw ValidationError("knn: k must lie in [1, n_train]");
}

// k smallest (distance, index) pairs for one query, deterministic tie order.
std::vector<int> neighbors(const PointBatch& train, RowRef q, int k) {
  std::vector<std::pair<double, int>> d;
  d.reserve((size_t)train.rows());
  for (Eigen::Index i = 0; i < train.rows(); ++i)
    d.emplace_back(product_distance(train.signature, q, train.coords.row(i)), (int)i);
  std::partial_sort(d.begin(), d.begin() + k, d.end());
  std::vector<int> idx((size_t)k);
  for (int i = 0; i < k; ++i) idx[(size_t)i] = d[(size_t)i].second;
  return idx;
}

}  // namespace

RowMatrix product_distance_matrix(const PointBatch& queries, const PointBatch& references) {
  if (!(queries.signature == references.signature))
    throw ValidationError("distance matrix: signatures differ");
  RowMatrix D(queries.rows(), references.rows());
  for (Eigen::Index i = 0; i < queries.rows(); ++i)
    for (Eigen::Index j = 0; j < references.rows(); ++j)
      D(i, j) =
          product_distance(queries.signature, queries.coords.row(i), references.coords.row(j));
  return D;
}

std::vector<int> knn_classify(const PointBatch& train, const std::vector<int>& y,
                              const PointBatch& test, int k) {
  check_inputs(train, y.size(), test, k);
  int n_classes = 1;
  for (int v : y) n_classes = std::max(n_classes, v + 1);
  std::vector<int> out((size_t)test.rows());
  for (Eigen::Index j = 0; j < test.rows(); ++j) {
    const auto idx = neighbors(train, test.coords.row(j), k);
    std::vector<int> votes((size_t)n_classes, 0);
    for (int i : idx) ++votes[(size_t)y[(size_t)i]];
    int best = 0;
    for (int c = 1; c < n_classes; ++c)
      if (votes[(size_t)c] > votes[(size_t)best]) best = c;
    out[(size_t)j] = best;
  }
  return out;
}

std::vector<double> knn_regress(const PointBatch& train, const std::vector<double>& y,
                                const PointBatch& test, int k) {
  check_inputs(train, y.size(), test, k);
  std::vector<double> out((size_t)test.rows());
  for (Eigen::Index j = 0; j < test.rows(); ++j) {
    const auto idx = neighbors(train, test.coords.row(j), k);
    double s = 0.0;
    for (int i : idx) s += y[(size_t)i];
    out[(size_t)j] = s / (double)k;
  }
  return out;
}

}  // namespace geoforest
