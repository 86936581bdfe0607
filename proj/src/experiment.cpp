#include "geoforest/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "geoforest/io.hpp"

namespace geoforest {

std::string model_kind_name(ModelKind m) {
  switch (m) {
    case ModelKind::ProductDT: return "product_dt";
    case ModelKind::ProductRF: return "product_rf";
    case ModelKind::AmbientDT: return "ambient_dt";
    case ModelKind::AmbientRF: return "ambient_rf";
    case ModelKind::TangentDT: return "tangent_dt";
    case ModelKind::TangentRF: return "tangent_rf";
    case ModelKind::Knn: return "knn";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& s) {
  for (ModelKind m : {ModelKind::ProductDT, ModelKind::ProductRF, ModelKind::AmbientDT,
                      ModelKind::AmbientRF, ModelKind::TangentDT, ModelKind::TangentRF,
                      ModelKind::Knn})
    if (model_kind_name(m) == s) return m;
  throw ValidationError("model: unknown model \"" + s + "\"");
}

bool model_is_forest(ModelKind m) {
  return m == ModelKind::ProductRF || m == ModelKind::AmbientRF || m == ModelKind::TangentRF;
}

void ExperimentConfig::validate() const {
  if (!(split_fraction > 0.0 && split_fraction < 1.0))
    throw ValidationError("experiment: split_fraction must lie in (0, 1)");
  if (n_seeds < 1) throw ValidationError("experiment: n_seeds must be >= 1");
  if (model == ModelKind::Knn && knn_k < 1)
    throw ValidationError("experiment: knn_k must be >= 1");
  if (data.mixture) {
    data.mixture->validate();
  } else if (data.csv_path) {
    if (!data.signature)
      throw ValidationError("experiment: csv data source requires a signature");
  } else {
    throw ValidationError("experiment: data source needs either a mixture spec or a csv path");
  }
}

std::pair<std::vector<int>, std::vector<int>> train_test_split(int n, double fraction,
                                                               uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ValidationError("train_test_split: fraction must lie in (0, 1)");
  if (n < 2) throw ValidationError("train_test_split: need at least 2 rows");
  std::vector<int> idx((size_t)n);
  for (int i = 0; i < n; ++i) idx[(size_t)i] = i;
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = (int)rng.uniform_int((uint64_t)(i + 1));
    std::swap(idx[(size_t)i], idx[(size_t)j]);
  }
  int n_train = (int)std::floor(fraction * n + 0.5);
  n_train = std::max(1, std::min(n - 1, n_train));
  std::vector<int> train(idx.begin(), idx.begin() + n_train);
  std::vector<int> test(idx.begin() + n_train, idx.end());
  return {std::move(train), std::move(test)};
}

RowMatrix ambient_features(const PointBatch& b, std::vector<int>* components) {
  const auto& sig = b.signature;
  int cols = 0;
  for (const auto& c : sig.components)
    cols += c.kind == Kind::Euclidean ? c.dim : c.ambient_dim();
  RowMatrix out(b.rows(), cols);
  if (components) components->clear();
  int src = 0, dst = 0;
  for (size_t ci = 0; ci < sig.components.size(); ++ci) {
    const auto& c = sig.components[ci];
    const int keep = c.kind == Kind::Euclidean ? c.dim : c.ambient_dim();
    const int skip = c.kind == Kind::Euclidean ? 1 : 0;
    out.middleCols(dst, keep) = b.coords.middleCols(src + skip, keep);
    if (components)
      for (int k = 0; k < keep; ++k) components->push_back((int)ci);
    src += c.ambient_dim();
    dst += keep;
  }
  return out;
}

RowMatrix tangent_features(const PointBatch& b, std::vector<int>* components) {
  const auto& sig = b.signature;
  const Eigen::RowVectorXd origin = origin_row(sig);
  RowMatrix out(b.rows(), sig.intrinsic_dim());
  if (components) components->clear();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const Eigen::RowVectorXd v = product_log(sig, origin, b.coords.row(i));
    int src = 0, dst = 0;
    for (const auto& c : sig.components) {
      out.row(i).segment(dst, c.dim) = v.segment(src + 1, c.dim);
      src += c.ambient_dim();
      dst += c.dim;
    }
  }
  if (components) {
    for (size_t ci = 0; ci < sig.components.size(); ++ci)
      for (int k = 0; k < sig.components[ci].dim; ++k) components->push_back((int)ci);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointBatch take_rows(const PointBatch& b, const std::vector<int>& rows) {
  PointBatch out;
  out.signature = b.signature;
  out.coords.resize((Eigen::Index)rows.size(), b.coords.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.coords.row((Eigen::Index)i) = b.coords.row(rows[i]);
  return out;
}

template <typename T>
std::vector<T> take(const std::vector<T>& v, const std::vector<int>& rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (int r : rows) out.push_back(v[(size_t)r]);
  return out;
}

struct SeedOutcome {
  double score = 0.0;
  double fit_s = 0.0;
  double predict_s = 0.0;
};

SeedOutcome run_one_seed(const ExperimentConfig& cfg, const Dataset& ds, uint64_t run_seed,
                         int threads) {
  const auto [train_idx, test_idx] =
      train_test_split((int)ds.rows(), cfg.split_fraction, derive_seed(run_seed, 1));
  const uint64_t model_seed = derive_seed(run_seed, 2);

  const PointBatch train_batch = take_rows(ds.points, train_idx);
  const PointBatch test_batch = take_rows(ds.points, test_idx);

  TreeHyperparams thp = cfg.tree;
  thp.task = ds.task;
  ForestHyperparams fhp = cfg.forest;
  fhp.tree = thp;
  fhp.seed = model_seed;

  SeedOutcome out;
  const bool classify = ds.task == Task::Classification;
  std::vector<int> y_cls_train, y_cls_test;
  std::vector<double> y_reg_train, y_reg_test;
  if (classify) {
    y_cls_train = take(ds.labels, train_idx);
    y_cls_test = take(ds.labels, test_idx);
  } else {
    y_reg_train = take(ds.targets, train_idx);
    y_reg_test = take(ds.targets, test_idx);
  }

  auto score_cls = [&](const std::vector<int>& pred) {
    return accuracy(pred, y_cls_test);
  };
  auto score_reg = [&](const std::vector<double>& pred) { return rmse(pred, y_reg_test); };

  switch (cfg.model) {
    case ModelKind::Knn: {
      out.fit_s = 0.0;  // nothing to fit; distances are computed at query time
      const auto t1 = Clock::now();
      if (classify)
        out.score = score_cls(knn_classify(train_batch, y_cls_train, test_batch, cfg.knn_k));
      else
        out.score = score_reg(knn_regress(train_batch, y_reg_train, test_batch, cfg.knn_k));
      out.predict_s = seconds_since(t1);
      return out;
    }
    case ModelKind::ProductDT:
    case ModelKind::ProductRF: {
      const auto t0 = Clock::now();
      const AngleMatrix train_angles = compute_angles(train_batch, thp.feature_mode);
      std::optional<DecisionTree> tree;
      std::optional<Forest> forest;
      if (cfg.model == ModelKind::ProductRF) {
        if (classify)
          forest = fit_forest(train_angles, y_cls_train, fhp, threads);
        else
          forest = fit_forest(train_angles, y_reg_train, fhp, threads);
      } else {
        if (classify)
          tree = fit_tree(train_angles, y_cls_train, thp);
        else
          tree = fit_tree(train_angles, y_reg_train, thp);
      }
      out.fit_s = seconds_since(t0);
      const auto t1 = Clock::now();
      const AngleMatrix test_angles = compute_angles(test_batch, thp.feature_mode);
      if (classify) {
        std::vector<int> pred((size_t)test_angles.rows());
        for (Eigen::Index i = 0; i < test_angles.rows(); ++i)
          pred[(size_t)i] = forest ? predict_label(*forest, test_angles.angles.row(i))
                                   : predict_label(*tree, test_angles.angles.row(i));
        out.score = score_cls(pred);
      } else {
        std::vector<double> pred((size_t)test_angles.rows());
        for (Eigen::Index i = 0; i < test_angles.rows(); ++i)
          pred[(size_t)i] = forest ? predict_value(*forest, test_angles.angles.row(i))
                                   : predict_value(*tree, test_angles.angles.row(i));
        out.score = score_reg(pred);
      }
      out.predict_s = seconds_since(t1);
      return out;
    }
    default: break;
  }

  // Ambient / Tangent baselines: classical CART on preprocessed coordinates.
  const bool tangent =
      cfg.model == ModelKind::TangentDT || cfg.model == ModelKind::TangentRF;
  const auto t0 = Clock::now();
  std::vector<int> col_components;
  const RowMatrix train_X = tangent ? tangent_features(train_batch, &col_components)
                                    : ambient_features(train_batch, &col_components);
  std::optional<DecisionTree> tree;
  std::optional<Forest> forest;
  if (model_is_forest(cfg.model)) {
    if (classify)
      forest = fit_classical_forest(train_X, y_cls_train, fhp, ds.points.signature,
                                    col_components, threads);
    else
      forest = fit_classical_forest(train_X, y_reg_train, fhp, ds.points.signature,
                                    col_components, threads);
  } else {
    if (classify)
      tree = fit_classical_tree(train_X, y_cls_train, thp, ds.points.signature, col_components);
    else
      tree = fit_classical_tree(train_X, y_reg_train, thp, ds.points.signature, col_components);
  }
  out.fit_s = seconds_since(t0);
  const auto t1 = Clock::now();
  const RowMatrix test_X =
      tangent ? tangent_features(test_batch) : ambient_features(test_batch);
  if (classify) {
    std::vector<int> pred((size_t)test_X.rows());
    for (Eigen::Index i = 0; i < test_X.rows(); ++i)
      pred[(size_t)i] = forest ? predict_label(*forest, test_X.row(i))
                               : predict_label(*tree, test_X.row(i));
    out.score = score_cls(pred);
  } else {
    std::vector<double> pred((size_t)test_X.rows());
    for (Eigen::Index i = 0; i < test_X.rows(); ++i)
      pred[(size_t)i] = forest ? predict_value(*forest, test_X.row(i))
                               : predict_value(*tree, test_X.row(i));
    out.score = score_reg(pred);
  }
  out.predict_s = seconds_since(t1);
  return out;
}

}  // namespace

MetricReport run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  std::optional<Dataset> fixed;
  if (cfg.data.csv_path)
    fixed = load_labeled_csv(*cfg.data.csv_path, *cfg.data.signature, cfg.data.task);

  std::vector<double> scores;
  scores.reserve((size_t)cfg.n_seeds);
  double fit_s = 0.0, predict_s = 0.0;
  for (int i = 0; i < cfg.n_seeds; ++i) {
    const uint64_t run_seed = derive_seed(cfg.seed, (uint64_t)i);
    Dataset ds;
    if (cfg.data.mixture) {
      MixtureSpec spec = *cfg.data.mixture;
      spec.seed = derive_seed(run_seed, 0);
      ds = sample_mixture(spec);
    } else {
      ds = *fixed;
    }
    const SeedOutcome o = run_one_seed(cfg, ds, run_seed, threads);
    scores.push_back(o.score);
    fit_s += o.fit_s;
    predict_s += o.predict_s;
  }
  const char* metric = cfg.data.task == Task::Classification ? "accuracy" : "rmse";
  return make_report(metric, std::move(scores), fit_s, predict_s);
}

void run_benchmark(const std::vector<ExperimentConfig>& configs, int threads, bool timings,
                   std::ostream& out) {
  out << "dataset,signature,model,metric,mean,ci_halfwidth,seconds_fit,seconds_predict\n";
  char buf[256];
  for (const auto& cfg : configs) {
    const MetricReport r = run_experiment(cfg, threads);
    const Signature& sig =
        cfg.data.mixture ? cfg.data.mixture->signature : *cfg.data.signature;
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.3f,%.3f", r.mean, r.ci_halfwidth,
                  timings ? r.seconds_fit : 0.0, timings ? r.seconds_predict : 0.0);
    out << cfg.name << "," << sig.short_name() << "," << model_kind_name(cfg.model) << ","
        << r.metric << "," << buf << "\n";
  }
}

}  // namespace geoforest
