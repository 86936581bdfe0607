// Command-line front end: sampling, fitting, prediction, evaluation,
// benchmarking, link-prediction dataset construction, and split attribution.
// Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "geoforest/io.hpp"
#include "geoforest/linkpred.hpp"

using namespace geoforest;

namespace {

struct CommonFlags {
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& c, bool out_required = true) {
  auto* seed_opt = cmd->add_option("--seed", c.seed, "Override the seed");
  seed_opt->each([&c](const std::string&) { c.seed_set = true; });
  auto* out_opt = cmd->add_option("--out", c.out, "Output path");
  if (out_required) out_opt->required();
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

TreeHyperparams tree_flags_to_hp(int max_depth, int min_split, int min_leaf, double min_dec,
                                 const std::string& midpoints, const std::string& features,
                                 const std::string& task) {
  TreeHyperparams hp;
  hp.max_depth = max_depth;
  hp.min_samples_split = min_split;
  hp.min_samples_leaf = min_leaf;
  hp.min_impurity_decrease = min_dec;
  hp.midpoint_mode = midpoint_mode_from_name(midpoints);
  hp.feature_mode = feature_mode_from_name(features);
  hp.task = task_from_name(task);
  return hp;
}

int cmd_sample(const std::string& spec_path, const CommonFlags& c,
               const std::string& sidecar) {
  MixtureSpec spec = load_mixture_spec(spec_path);
  if (c.seed_set) spec.seed = c.seed;
  const Dataset ds = sample_mixture(spec);
  if (ds.task == Task::Classification)
    save_point_batch_csv(c.out, ds.points, &ds.labels, nullptr);
  else
    save_point_batch_csv(c.out, ds.points, nullptr, &ds.targets);
  if (!sidecar.empty()) save_mixture_sidecar(sidecar, ds);
  std::cout << "wrote " << ds.rows() << " points to " << c.out << "\n";
  return 0;
}

int cmd_fit(const std::string& data_path, const std::string& sig_path,
            const std::string& model_name, const TreeHyperparams& hp, int n_estimators,
            const std::string& max_features, bool no_bootstrap, const CommonFlags& c,
            const std::string& dump_angles) {
  const Signature sig = load_signature(sig_path);
  const ModelKind kind = model_kind_from_name(model_name);
  if (kind == ModelKind::Knn)
    throw ValidationError("fit: knn has no fitted model; use evaluate or benchmark");
  const Dataset ds = load_labeled_csv(data_path, sig, hp.task);

  ForestHyperparams fhp;
  fhp.tree = hp;
  fhp.n_estimators = n_estimators;
  fhp.bootstrap = !no_bootstrap;
  fhp.seed = c.seed;
  if (max_features == "sqrt")
    fhp.max_features = MaxFeaturesRule::Sqrt;
  else if (max_features == "all")
    fhp.max_features = MaxFeaturesRule::All;
  else {
    fhp.max_features = MaxFeaturesRule::Count;
    try {
      fhp.max_feature_count = std::stoi(max_features);
    } catch (...) {
      throw ValidationError("fit: --max-features must be sqrt, all, or an integer");
    }
  }

  SavedModel model;
  model.kind = kind;
  const bool classify = hp.task == Task::Classification;

  if (kind == ModelKind::ProductDT || kind == ModelKind::ProductRF) {
    const AngleMatrix angles = compute_angles(ds.points, hp.feature_mode);
    if (!dump_angles.empty()) save_angle_matrix_csv(dump_angles, angles);
    if (model_is_forest(kind)) {
      model.forest = classify ? fit_forest(angles, ds.labels, fhp, c.threads)
                              : fit_forest(angles, ds.targets, fhp, c.threads);
    } else {
      model.tree = classify ? fit_tree(angles, ds.labels, hp) : fit_tree(angles, ds.targets, hp);
    }
  } else {
    const bool tangent = kind == ModelKind::TangentDT || kind == ModelKind::TangentRF;
    std::vector<int> col_components;
    const RowMatrix X = tangent ? tangent_features(ds.points, &col_components)
                                : ambient_features(ds.points, &col_components);
    if (model_is_forest(kind)) {
      model.forest = classify
                         ? fit_classical_forest(X, ds.labels, fhp, sig, col_components,
                                                c.threads)
                         : fit_classical_forest(X, ds.targets, fhp, sig, col_components,
                                                c.threads);
    } else {
      model.tree = classify ? fit_classical_tree(X, ds.labels, hp, sig, col_components)
                            : fit_classical_tree(X, ds.targets, hp, sig, col_components);
    }
  }
  save_model(c.out, model);
  std::cout << "wrote model to " << c.out << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const CommonFlags& c) {
  const SavedModel model = load_model(model_path);
  const Signature sig = model.forest ? *model.forest->signature : *model.tree->signature;
  const Task task = model.forest ? model.forest->task : model.tree->task;
  const PointBatch batch = load_point_batch_csv(data_path, sig);

  RowMatrix features;
  if (model.kind == ModelKind::ProductDT || model.kind == ModelKind::ProductRF) {
    const FeatureMode mode =
        model.forest ? model.forest->hp.tree.feature_mode : model.tree->hp.feature_mode;
    features = compute_angles(batch, mode).angles;
  } else if (model.kind == ModelKind::TangentDT || model.kind == ModelKind::TangentRF) {
    features = tangent_features(batch);
  } else {
    features = ambient_features(batch);
  }

  if (task == Task::Classification) {
    std::vector<int> pred((size_t)features.rows());
    for (Eigen::Index i = 0; i < features.rows(); ++i)
      pred[(size_t)i] = model.forest ? predict_label(*model.forest, features.row(i))
                                     : predict_label(*model.tree, features.row(i));
    save_labels_csv(c.out, pred);
  } else {
    std::vector<double> pred((size_t)features.rows());
    for (Eigen::Index i = 0; i < features.rows(); ++i)
      pred[(size_t)i] = model.forest ? predict_value(*model.forest, features.row(i))
                                     : predict_value(*model.tree, features.row(i));
    save_values_csv(c.out, pred);
  }
  std::cout << "wrote predictions to " << c.out << "\n";
  return 0;
}

int cmd_evaluate(const std::string& config_path, const CommonFlags& c) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (c.seed_set) cfg.seed = c.seed;
  const MetricReport r = run_experiment(cfg, c.threads);
  save_report(c.out, r);
  std::cout << cfg.name << ": " << r.metric << " " << r.mean << " +/- " << r.ci_halfwidth
            << " over " << r.scores.size() << " seeds\n";
  return 0;
}

int cmd_benchmark(const std::string& config_path, bool timings, const CommonFlags& c) {
  auto configs = load_benchmark_configs(config_path);
  if (c.seed_set)
    for (auto& cfg : configs) cfg.seed = c.seed;
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + c.out);
  run_benchmark(configs, c.threads, timings, out);
  std::cout << "wrote " << configs.size() << " result rows to " << c.out << "\n";
  return 0;
}

int cmd_linkpred(const std::string& emb_path, const std::string& sig_path,
                 const std::string& edges_path, bool undirected, bool no_self,
                 const CommonFlags& c) {
  const Signature sig = load_signature(sig_path);
  const PointBatch X = load_point_batch_csv(emb_path, sig);
  const auto edges = load_edge_list(edges_path);
  LinkPredOptions opts;
  opts.undirected = undirected;
  opts.include_self = !no_self;
  const Dataset ds = build_link_prediction_dataset(X, edges, opts);
  save_point_batch_csv(c.out, ds.points, &ds.labels, nullptr);
  std::cout << "wrote " << ds.rows() << " pair rows to " << c.out << "\n";
  return 0;
}

int cmd_attribution(const std::string& model_path, const CommonFlags& c) {
  const SavedModel model = load_model(model_path);
  const std::vector<double> frac = model.forest ? component_attribution(*model.forest)
                                                : component_attribution(*model.tree);
  std::ostringstream os;
  os << "{\n  \"fractions\": [";
  for (size_t i = 0; i < frac.size(); ++i) {
    if (i) os << ", ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", frac[i]);
    os << buf;
  }
  os << "]\n}\n";
  if (!c.out.empty())
    write_text_file(c.out, os.str());
  else
    std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision trees and random forests on mixed-curvature product manifolds"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Draw a Gaussian-mixture dataset");
  std::string sample_spec, sample_sidecar;
  CommonFlags sample_c;
  sample->add_option("--spec", sample_spec, "Mixture spec JSON")->required();
  sample->add_option("--sidecar", sample_sidecar, "Ground-truth parameter JSON");
  add_common(sample, sample_c);

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a model on a labeled CSV");
  std::string fit_data, fit_sig, fit_model = "product_rf", fit_task = "classification";
  std::string fit_midpoints = "geodesic", fit_features = "basis_only", fit_maxfeat = "sqrt";
  std::string fit_dump_angles;
  int fit_depth = 5, fit_min_split = 2, fit_min_leaf = 1, fit_estimators = 12;
  double fit_min_dec = 0.0;
  bool fit_no_bootstrap = false;
  CommonFlags fit_c;
  fit->add_option("--data", fit_data, "Labeled CSV")->required();
  fit->add_option("--signature", fit_sig, "Signature JSON")->required();
  fit->add_option("--model", fit_model,
                  "product_dt|product_rf|ambient_dt|ambient_rf|tangent_dt|tangent_rf");
  fit->add_option("--task", fit_task, "classification|regression");
  fit->add_option("--max-depth", fit_depth, "Max depth (< 0 for unlimited)");
  fit->add_option("--min-samples-split", fit_min_split, "");
  fit->add_option("--min-samples-leaf", fit_min_leaf, "");
  fit->add_option("--min-impurity-decrease", fit_min_dec, "");
  fit->add_option("--midpoints", fit_midpoints, "geodesic|arithmetic");
  fit->add_option("--features", fit_features, "all_pairs|basis_only");
  fit->add_option("--n-estimators", fit_estimators, "Forest size");
  fit->add_option("--max-features", fit_maxfeat, "sqrt|all|<count>");
  fit->add_flag("--no-bootstrap", fit_no_bootstrap, "Disable bootstrap sampling");
  fit->add_option("--dump-angles", fit_dump_angles, "Write the angle matrix CSV (debugging)");
  add_common(fit, fit_c);

  // predict
  auto* predict = app.add_subcommand("predict", "Predict labels for a CSV");
  std::string pred_model, pred_data;
  CommonFlags pred_c;
  predict->add_option("--model", pred_model, "Model JSON")->required();
  predict->add_option("--data", pred_data, "Point CSV")->required();
  add_common(predict, pred_c);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Run one experiment config");
  std::string eval_config;
  CommonFlags eval_c;
  evaluate->add_option("--config", eval_config, "Experiment JSON")->required();
  add_common(evaluate, eval_c);

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Run a suite of experiments");
  std::string bench_config;
  bool bench_timings = false;
  CommonFlags bench_c;
  benchmark->add_option("--config", bench_config, "Benchmark JSON")->required();
  benchmark->add_flag("--timings", bench_timings, "Record wall-clock columns");
  add_common(benchmark, bench_c);

  // linkpred
  auto* linkpred = app.add_subcommand("linkpred", "Build a link-prediction pair dataset");
  std::string lp_emb, lp_sig, lp_edges;
  bool lp_undirected = false, lp_no_self = false;
  CommonFlags lp_c;
  linkpred->add_option("--embeddings", lp_emb, "Node embedding CSV")->required();
  linkpred->add_option("--signature", lp_sig, "Signature JSON")->required();
  linkpred->add_option("--edges", lp_edges, "Edge list CSV")->required();
  linkpred->add_flag("--undirected", lp_undirected, "Keep only pairs with i <= j");
  linkpred->add_flag("--no-self", lp_no_self, "Drop (i, i) pairs");
  add_common(linkpred, lp_c);

  // attribution
  auto* attribution = app.add_subcommand("attribution", "Per-component split fractions");
  std::string attr_model;
  CommonFlags attr_c;
  attribution->add_option("--model", attr_model, "Model JSON")->required();
  add_common(attribution, attr_c, /*out_required=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_spec, sample_c, sample_sidecar);
    if (fit->parsed()) {
      const TreeHyperparams hp =
          tree_flags_to_hp(fit_depth, fit_min_split, fit_min_leaf, fit_min_dec, fit_midpoints,
                           fit_features, fit_task);
      return cmd_fit(fit_data, fit_sig, fit_model, hp, fit_estimators, fit_maxfeat,
                     fit_no_bootstrap, fit_c, fit_dump_angles);
    }
    if (predict->parsed()) return cmd_predict(pred_model, pred_data, pred_c);
    if (evaluate->parsed()) return cmd_evaluate(eval_config, eval_c);
    if (benchmark->parsed()) return cmd_benchmark(bench_config, bench_timings, bench_c);
    if (linkpred->parsed())
      return cmd_linkpred(lp_emb, lp_sig, lp_edges, lp_undirected, lp_no_self, lp_c);
    if (attribution->parsed()) return cmd_attribution(attr_model, attr_c);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
