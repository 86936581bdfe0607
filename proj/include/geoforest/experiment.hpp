#pragma once

#include <iosfwd>

#include "geoforest/forest.hpp"
#include "geoforest/knn.hpp"
#include "geoforest/metrics.hpp"
#include "geoforest/sampler.hpp"

namespace geoforest {

enum class ModelKind {
  ProductDT,
  ProductRF,
  AmbientDT,
  AmbientRF,
  TangentDT,
  TangentRF,
  Knn,
};

std::string model_kind_name(ModelKind m);
ModelKind model_kind_from_name(const std::string& s);
bool model_is_forest(ModelKind m);

// Where a run's data comes from: a sampler spec (fresh draw per seed) or a
// fixed labeled CSV (fresh split per seed).
struct DataSource {
  std::optional<MixtureSpec> mixture;
  std::optional<std::string> csv_path;
  std::optional<Signature> signature;  // required with csv_path
  Task task = Task::Classification;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DataSource data;
  ModelKind model = ModelKind::ProductRF;
  int knn_k = 5;
  double split_fraction = 0.8;
  int n_seeds = 10;
  uint64_t seed = 0;
  TreeHyperparams tree;      // shared across Product/Ambient/Tangent models
  ForestHyperparams forest;  // .tree is overwritten with `tree` at run time

  void validate() const;
};

// Seeded shuffle split: disjoint, exhaustive, unstratified.
std::pair<std::vector<int>, std::vector<int>> train_test_split(int n, double fraction,
                                                               uint64_t seed);

// Natural ambient coordinates: the full D+1 slice for spheres and
// hyperboloids, the D real coordinates for Euclidean components (the
// constant lift column carries no signal and would only dilute feature
// subsampling). `components` receives the column -> component map.
RowMatrix ambient_features(const PointBatch& b, std::vector<int>* components = nullptr);

// Intrinsic tangent coordinates of the log map at the origin; every
// component's leading coordinate is structurally zero there and is dropped.
RowMatrix tangent_features(const PointBatch& b, std::vector<int>* components = nullptr);

// One experiment: for each seed, draw/load data, split, preprocess for the
// model (angles for Product*, ambient coordinates for Ambient*, log map at
// the origin for Tangent*, product distances for knn), fit, score. Scores
// aggregate into a t-interval. Reported numbers do not depend on `threads`.
MetricReport run_experiment(const ExperimentConfig& cfg, int threads = 1);

// Suite of experiments -> results table CSV:
// dataset,signature,model,metric,mean,ci_halfwidth,seconds_fit,seconds_predict
// Timing columns are written as 0.000 unless `timings` is set, so identical
// configs produce byte-identical output.
void run_benchmark(const std::vector<ExperimentConfig>& configs, int threads, bool timings,
                   std::ostream& out);

}  // namespace geoforest
