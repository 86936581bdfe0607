#include "geoforest/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace geoforest {

void ForestHyperparams::validate(int n_features) const {
  tree.validate();
  if (n_estimators < 1) throw ValidationError("hyperparams: n_estimators must be >= 1");
  if (max_features == MaxFeaturesRule::Count &&
      (max_feature_count < 1 || max_feature_count > n_features))
    throw ValidationError("hyperparams: max_features count must lie in [1, n_features]");
}

int ForestHyperparams::features_per_tree(int n_features) const {
  switch (max_features) {
    case MaxFeaturesRule::Sqrt:
      return std::max(1, (int)std::floor(std::sqrt((double)n_features)));
    case MaxFeaturesRule::All: return n_features;
    case MaxFeaturesRule::Count: return max_feature_count;
  }
  return n_features;
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int t = std::min(threads, n);
  pool.reserve(t);
  for (int i = 0; i < t; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

Forest fit_forest_impl(const RowMatrix& values, SplitFamily family, const Signature* sig,
                       const std::vector<ProjectionIndex>* fmap, detail::Labels labels,
                       const ForestHyperparams& hp, int n_classes, int threads) {
  const int n = (int)values.rows();
  const int F = (int)values.cols();
  if (n == 0) throw ValidationError("fit_forest: empty data");
  hp.validate(F);
  const int fpt = hp.features_per_tree(F);

  Forest forest;
  forest.family = family;
  forest.task = labels.task;
  forest.hp = hp;
  if (sig) forest.signature = *sig;
  if (fmap) forest.feature_map = *fmap;
  forest.n_features = F;
  forest.n_classes = n_classes;
  forest.trees.resize(hp.n_estimators);

  parallel_for(hp.n_estimators, threads, [&](int t) {
    Rng rng(derive_seed(hp.seed, (uint64_t)t));
    std::vector<int> rows;
    rows.reserve(n);
    if (hp.bootstrap) {
      for (int i = 0; i < n; ++i) rows.push_back((int)rng.uniform_int((uint64_t)n));
    } else {
      for (int i = 0; i < n; ++i) rows.push_back(i);
    }
    // Feature subset without replacement (partial Fisher-Yates), then sorted
    // so the split scan order stays ascending.
    std::vector<int> pool(F);
    for (int i = 0; i < F; ++i) pool[i] = i;
    for (int i = 0; i < fpt; ++i) {
      const int j = i + (int)rng.uniform_int((uint64_t)(F - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + fpt);
    std::sort(subset.begin(), subset.end());

    TreeHyperparams thp = hp.tree;
    thp.seed = derive_seed(hp.seed, (uint64_t)t);
    ForestMember member;
    member.features = subset;
    member.tree = detail::fit_impl(values, family, sig, fmap, thp, labels, std::move(rows),
                                   std::move(subset), n_classes, nullptr);
    forest.trees[t] = std::move(member);
  });
  return forest;
}

int count_classes(const std::vector<int>& y) {
  int n = 0;
  for (int v : y) {
    if (v < 0) throw ValidationError("fit_forest: class labels must be non-negative");
    n = std::max(n, v + 1);
  }
  return n;
}

void check_labels(Eigen::Index rows, size_t ylen) {
  if ((size_t)rows != ylen)
    throw ValidationError("fit_forest: label count does not match row count");
}

}  // namespace

Forest fit_forest(const AngleMatrix& angles, const std::vector<int>& y,
                  const ForestHyperparams& hp, int threads) {
  check_labels(angles.rows(), y.size());
  if (hp.tree.task != Task::Classification)
    throw ValidationError("fit_forest: integer labels require the classification task");
  ForestHyperparams h = hp;
  h.tree.feature_mode = angles.mode;
  detail::Labels lab{Task::Classification, y.data(), nullptr};
  return fit_forest_impl(angles.angles, SplitFamily::Angular, &angles.signature,
                         &angles.feature_map, lab, h, count_classes(y), threads);
}

Forest fit_forest(const AngleMatrix& angles, const std::vector<double>& y,
                  const ForestHyperparams& hp, int threads) {
  check_labels(angles.rows(), y.size());
  if (hp.tree.task != Task::Regression)
    throw ValidationError("fit_forest: real labels require the regression task");
  ForestHyperparams h = hp;
  h.tree.feature_mode = angles.mode;
  detail::Labels lab{Task::Regression, nullptr, y.data()};
  return fit_forest_impl(angles.angles, SplitFamily::Angular, &angles.signature,
                         &angles.feature_map, lab, h, 0, threads);
}

Forest fit_classical_forest(const RowMatrix& X, const std::vector<int>& y,
                            const ForestHyperparams& hp, std::optional<Signature> signature,
                            std::vector<int> feature_components, int threads) {
  check_labels(X.rows(), y.size());
  if (hp.tree.task != Task::Classification)
    throw ValidationError("fit_forest: integer labels require the classification task");
  detail::Labels lab{Task::Classification, y.data(), nullptr};
  Forest f = fit_forest_impl(X, SplitFamily::Threshold, signature ? &*signature : nullptr,
                             nullptr, lab, hp, count_classes(y), threads);
  f.feature_components = std::move(feature_components);
  return f;
}

Forest fit_classical_forest(const RowMatrix& X, const std::vector<double>& y,
                            const ForestHyperparams& hp, std::optional<Signature> signature,
                            std::vector<int> feature_components, int threads) {
  check_labels(X.rows(), y.size());
  if (hp.tree.task != Task::Regression)
    throw ValidationError("fit_forest: real labels require the regression task");
  detail::Labels lab{Task::Regression, nullptr, y.data()};
  Forest f = fit_forest_impl(X, SplitFamily::Threshold, signature ? &*signature : nullptr,
                             nullptr, lab, hp, 0, threads);
  f.feature_components = std::move(feature_components);
  return f;
}

std::vector<double> predict_proba(const Forest& f, RowRef features) {
  if (f.task != Task::Classification)
    throw ValidationError("predict_proba: forest is a regressor");
  std::vector<double> acc((size_t)f.n_classes, 0.0);
  for (const auto& m : f.trees) {
    const auto p = predict_proba(m.tree, features);
    for (size_t c = 0; c < acc.size(); ++c) acc[c] += p[c];
  }
  for (auto& v : acc) v /= (double)f.trees.size();
  return acc;
}

int predict_label(const Forest& f, RowRef features) {
  const auto p = predict_proba(f, features);
  int best = 0;
  for (int c = 1; c < (int)p.size(); ++c)
    if (p[c] > p[best]) best = c;
  return best;
}

double predict_value(const Forest& f, RowRef features) {
  if (f.task != Task::Regression) throw ValidationError("predict_value: forest is a classifier");
  double s = 0.0;
  for (const auto& m : f.trees) s += predict_value(m.tree, features);
  return s / (double)f.trees.size();
}

std::vector<double> component_attribution(const Forest& f) {
  if (!f.signature)
    throw ValidationError("component_attribution: forest carries no signature");
  std::vector<int64_t> counts(f.signature->components.size(), 0);
  int64_t total = 0;
  for (const auto& m : f.trees) {
    for (const auto& nd : m.tree.nodes) {
      if (nd.is_leaf()) continue;
      int comp;
      if (f.family == SplitFamily::Angular)
        comp = f.feature_map[nd.feature].component;
      else if (!f.feature_components.empty())
        comp = f.feature_components[nd.feature];
      else
        comp = f.signature->component_of_column(nd.feature);
      ++counts[comp];
      ++total;
    }
  }
  if (total == 0) throw ValidationError("component_attribution: no splits");
  std::vector<double> frac(counts.size());
  for (size_t i = 0; i < counts.size(); ++i)
    frac[i] = (double)counts[i] / (double)total;
  return frac;
}

}  // namespace geoforest
