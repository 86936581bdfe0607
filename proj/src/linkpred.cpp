#include "geoforest/linkpred.hpp"

#include <set>

namespace geoforest {

Dataset build_link_prediction_dataset(const PointBatch& X,
                                      const std::vector<std::pair<int, int>>& edges,
                                      LinkPredOptions opts) {
  const int n = (int)X.rows();
  if (n == 0) throw ValidationError("linkpred: empty embedding batch");
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ValidationError("linkpred: edge endpoint out of range");
    edge_set.insert({std::min(a, b), std::max(a, b)});
  }

  Signature out_sig;
  out_sig.components = X.signature.components;
  out_sig.components.insert(out_sig.components.end(), X.signature.components.begin(),
                            X.signature.components.end());
  out_sig.components.push_back({Kind::Euclidean, 1, 0.0});

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (opts.undirected && j < i) continue;
      if (!opts.include_self && i == j) continue;
      pairs.emplace_back(i, j);
    }
  }

  const int A = X.signature.ambient_dim();
  Dataset ds;
  ds.task = Task::Classification;
  ds.points.signature = out_sig;
  ds.points.coords.resize((Eigen::Index)pairs.size(), out_sig.ambient_dim());
  ds.labels.resize(pairs.size());
  for (size_t r = 0; r < pairs.size(); ++r) {
    const auto [i, j] = pairs[r];
    auto row = ds.points.coords.row((Eigen::Index)r);
    row.segment(0, A) = X.coords.row(i);
    row.segment(A, A) = X.coords.row(j);
    row[2 * A] = 1.0;  // lifted coordinate of the distance component
    row[2 * A + 1] = product_distance(X.signature, X.coords.row(i), X.coords.row(j));
    ds.labels[r] = edge_set.count({std::min(i, j), std::max(i, j)}) ? 1 : 0;
  }
  return ds;
}

}  // namespace geoforest
