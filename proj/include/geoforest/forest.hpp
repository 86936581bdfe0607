#pragma once

#include "geoforest/cart.hpp"
#include "geoforest/rng.hpp"

namespace geoforest {

enum class MaxFeaturesRule { Sqrt, All, Count };

struct ForestHyperparams {
  TreeHyperparams tree;
  int n_estimators = 12;
  MaxFeaturesRule max_features = MaxFeaturesRule::Sqrt;
  int max_feature_count = 0;  // used when max_features == Count
  bool bootstrap = true;
  uint64_t seed = 0;

  void validate(int n_features) const;
  int features_per_tree(int n_features) const;
};

struct ForestMember {
  std::vector<int> features;  // sorted global feature ids
  DecisionTree tree;
};

struct Forest {
  SplitFamily family = SplitFamily::Angular;
  Task task = Task::Classification;
  ForestHyperparams hp;
  std::optional<Signature> signature;
  std::vector<ProjectionIndex> feature_map;
  std::vector<int> feature_components;  // threshold forests: column -> component
  int n_features = 0;
  int n_classes = 0;
  std::vector<ForestMember> trees;
};

// Bagged ensemble of angular trees. Per-tree stream: child_seed =
// derive_seed(hp.seed, tree_index); each stream draws n bootstrap row indices
// (when bootstrap is on) and then the feature subset without replacement, so
// the result is independent of execution order and thread count.
Forest fit_forest(const AngleMatrix& angles, const std::vector<int>& y,
                  const ForestHyperparams& hp, int threads = 1);
Forest fit_forest(const AngleMatrix& angles, const std::vector<double>& y,
                  const ForestHyperparams& hp, int threads = 1);

// Same bagging over classical threshold trees (ambient/tangent baselines).
Forest fit_classical_forest(const RowMatrix& X, const std::vector<int>& y,
                            const ForestHyperparams& hp,
                            std::optional<Signature> signature = std::nullopt,
                            std::vector<int> feature_components = {}, int threads = 1);
Forest fit_classical_forest(const RowMatrix& X, const std::vector<double>& y,
                            const ForestHyperparams& hp,
                            std::optional<Signature> signature = std::nullopt,
                            std::vector<int> feature_components = {}, int threads = 1);

// Classification: argmax of the summed per-tree class distributions (soft
// vote, ties to the lowest class id). Regression: mean of tree outputs.
int predict_label(const Forest& f, RowRef features);
double predict_value(const Forest& f, RowRef features);
std::vector<double> predict_proba(const Forest& f, RowRef features);

std::vector<double> component_attribution(const Forest& f);

}  // namespace geoforest
