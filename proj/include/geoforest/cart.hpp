#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geoforest/angular.hpp"

namespace geoforest {

struct TreeHyperparams {
  int max_depth = 5;  // < 0 means unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  double min_impurity_decrease = 0.0;
  Task task = Task::Classification;
  MidpointMode midpoint_mode = MidpointMode::Geodesic;
  FeatureMode feature_mode = FeatureMode::BasisOnly;
  uint64_t seed = 0;

  void validate() const;
};

// Angular trees threshold on (angle - theta) mod 2*pi < pi; Threshold trees
// are classical CART, x_f > theta. Both run through the same greedy engine.
enum class SplitFamily { Angular, Threshold };

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double theta = 0.0;
  int left = -1;   // negative side of the split predicate
  int right = -1;  // positive side
  double gain = 0.0;
  std::vector<int64_t> counts;  // classification leaves: per-class support
  double mean = 0.0;            // regression leaves
  int64_t n = 0;

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  SplitFamily family = SplitFamily::Angular;
  Task task = Task::Classification;
  TreeHyperparams hp;
  std::optional<Signature> signature;
  std::vector<ProjectionIndex> feature_map;  // angular trees only
  std::vector<int> feature_components;       // threshold trees: column -> component
  int n_features = 0;
  int n_classes = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int depth() const;
  // Index of the leaf a feature row is routed to.
  int route(RowRef features) const;
};

// Per-node split-search accounting, for tests that pin the candidate budget.
struct FitStats {
  struct FeatureScan {
    int node = 0;
    int feature = 0;
    int distinct_values = 0;
    int candidates = 0;
  };
  std::vector<FeatureScan> scans;
};

// Gini impurity for classification, population variance for regression.
double impurity(Task task, std::span<const int> labels);
double impurity(Task task, std::span<const double> labels);

// Impurity decrease of a parent split into (left, right).
double information_gain(Task task, std::span<const int> parent, std::span<const int> left,
                        std::span<const int> right);
double information_gain(Task task, std::span<const double> parent, std::span<const double> left,
                        std::span<const double> right);

// Greedy angular fit over a preprocessed AngleMatrix.
DecisionTree fit_tree(const AngleMatrix& angles, const std::vector<int>& y,
                      const TreeHyperparams& hp, FitStats* stats = nullptr);
DecisionTree fit_tree(const AngleMatrix& angles, const std::vector<double>& y,
                      const TreeHyperparams& hp, FitStats* stats = nullptr);

// Classical CART on raw feature columns (x_f > t, arithmetic-mean
// thresholds). Used for the ambient and tangent baselines and as the
// Euclidean equivalence oracle. Same greedy machinery as fit_tree.
// `feature_components` optionally maps columns onto component manifolds for
// split attribution.
DecisionTree fit_classical_tree(const RowMatrix& X, const std::vector<int>& y,
                                const TreeHyperparams& hp,
                                std::optional<Signature> signature = std::nullopt,
                                std::vector<int> feature_components = {},
                                FitStats* stats = nullptr);
DecisionTree fit_classical_tree(const RowMatrix& X, const std::vector<double>& y,
                                const TreeHyperparams& hp,
                                std::optional<Signature> signature = std::nullopt,
                                std::vector<int> feature_components = {},
                                FitStats* stats = nullptr);

int predict_label(const DecisionTree& t, RowRef features);
double predict_value(const DecisionTree& t, RowRef features);
// Normalized class distribution of the routed leaf.
std::vector<double> predict_proba(const DecisionTree& t, RowRef features);

// Fraction of internal-node splits per component manifold. Requires a
// signature (always present on angular trees); throws if the tree has no
// splits.
std::vector<double> component_attribution(const DecisionTree& t);

namespace detail {

struct Labels {
  Task task = Task::Classification;
  const int* cls = nullptr;
  const double* reg = nullptr;
};

// Shared greedy engine. `rows` seeds the root (bootstrap multisets allowed);
// `active` lists usable feature columns in scan order. For the angular family
// `fmap`/`sig` supply per-feature midpoint geometry.
DecisionTree fit_impl(const RowMatrix& values, SplitFamily family, const Signature* sig,
                      const std::vector<ProjectionIndex>* fmap, const TreeHyperparams& hp,
                      Labels labels, std::vector<int> rows, std::vector<int> active,
                      int n_classes, FitStats* stats);

}  // namespace detail

}  // namespace geoforest
