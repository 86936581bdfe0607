#include "geoforest/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geoforest {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

// Field accessors that name the offending field in errors.
template <typename T>
T get_field(const json& j, const std::string& key, const char* ctx) {
  if (!j.contains(key))
    throw ValidationError(std::string(ctx) + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(ctx) + ": field \"" + key + "\" has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, T def, const char* ctx) {
  if (!j.contains(key) || j.at(key).is_null()) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(ctx) + ": field \"" + key + "\" has the wrong type");
  }
}

json signature_to_json(const Signature& sig) {
  json comps = json::array();
  for (const auto& c : sig.components)
    comps.push_back({{"kind", kind_name(c.kind)}, {"dim", c.dim}, {"curvature", c.curvature}});
  return json{{"components", comps}};
}

Signature signature_from_json(const json& j) {
  if (!j.contains("components") || !j.at("components").is_array())
    throw ValidationError("signature: missing \"components\" array");
  Signature sig;
  int idx = 0;
  for (const auto& cj : j.at("components")) {
    const std::string ctx = "signature: components[" + std::to_string(idx) + "]";
    ComponentSpec c;
    c.kind = kind_from_name(get_field<std::string>(cj, "kind", ctx.c_str()));
    c.dim = get_field<int>(cj, "dim", ctx.c_str());
    c.curvature = get_or<double>(cj, "curvature",
                                 c.kind == Kind::Sphere        ? 1.0
                                 : c.kind == Kind::Hyperboloid ? -1.0
                                                               : 0.0,
                                 ctx.c_str());
    sig.components.push_back(c);
    ++idx;
  }
  sig.validate();
  return sig;
}

json hyperparams_to_json(const TreeHyperparams& hp) {
  return json{{"max_depth", hp.max_depth},
              {"min_samples_split", hp.min_samples_split},
              {"min_samples_leaf", hp.min_samples_leaf},
              {"min_impurity_decrease", hp.min_impurity_decrease},
              {"task", task_name(hp.task)},
              {"midpoint_mode", midpoint_mode_name(hp.midpoint_mode)},
              {"feature_mode", feature_mode_name(hp.feature_mode)},
              {"seed", hp.seed}};
}

TreeHyperparams hyperparams_from_json(const json& j, const char* ctx) {
  TreeHyperparams hp;
  hp.max_depth = get_or<int>(j, "max_depth", hp.max_depth, ctx);
  hp.min_samples_split = get_or<int>(j, "min_samples_split", hp.min_samples_split, ctx);
  hp.min_samples_leaf = get_or<int>(j, "min_samples_leaf", hp.min_samples_leaf, ctx);
  hp.min_impurity_decrease =
      get_or<double>(j, "min_impurity_decrease", hp.min_impurity_decrease, ctx);
  if (j.contains("task")) hp.task = task_from_name(get_field<std::string>(j, "task", ctx));
  if (j.contains("midpoint_mode"))
    hp.midpoint_mode = midpoint_mode_from_name(get_field<std::string>(j, "midpoint_mode", ctx));
  if (j.contains("feature_mode"))
    hp.feature_mode = feature_mode_from_name(get_field<std::string>(j, "feature_mode", ctx));
  hp.seed = get_or<uint64_t>(j, "seed", hp.seed, ctx);
  hp.validate();
  return hp;
}

json forest_hyperparams_to_json(const ForestHyperparams& hp) {
  json j{{"n_estimators", hp.n_estimators},
         {"bootstrap", hp.bootstrap},
         {"seed", hp.seed},
         {"tree", hyperparams_to_json(hp.tree)}};
  switch (hp.max_features) {
    case MaxFeaturesRule::Sqrt: j["max_features"] = "sqrt"; break;
    case MaxFeaturesRule::All: j["max_features"] = "all"; break;
    case MaxFeaturesRule::Count: j["max_features"] = hp.max_feature_count; break;
  }
  return j;
}

ForestHyperparams forest_hyperparams_from_json(const json& j, const char* ctx) {
  ForestHyperparams hp;
  if (j.contains("tree")) hp.tree = hyperparams_from_json(j.at("tree"), ctx);
  hp.n_estimators = get_or<int>(j, "n_estimators", hp.n_estimators, ctx);
  hp.bootstrap = get_or<bool>(j, "bootstrap", hp.bootstrap, ctx);
  hp.seed = get_or<uint64_t>(j, "seed", hp.seed, ctx);
  if (j.contains("max_features")) {
    const auto& mf = j.at("max_features");
    if (mf.is_string()) {
      const std::string s = mf.get<std::string>();
      if (s == "sqrt")
        hp.max_features = MaxFeaturesRule::Sqrt;
      else if (s == "all")
        hp.max_features = MaxFeaturesRule::All;
      else
        throw ValidationError(std::string(ctx) +
                              ": max_features must be \"sqrt\", \"all\" or an integer");
    } else if (mf.is_number_integer()) {
      hp.max_features = MaxFeaturesRule::Count;
      hp.max_feature_count = mf.get<int>();
    } else {
      throw ValidationError(std::string(ctx) +
                            ": max_features must be \"sqrt\", \"all\" or an integer");
    }
  }
  return hp;
}

json node_to_json(const DecisionTree& t, int idx) {
  const TreeNode& nd = t.nodes[(size_t)idx];
  if (!nd.is_leaf()) {
    return json{{"feature", nd.feature},
                {"theta", nd.theta},
                {"left", node_to_json(t, nd.left)},
                {"right", node_to_json(t, nd.right)}};
  }
  if (t.task == Task::Classification) return json{{"counts", nd.counts}};
  return json{{"mean", nd.mean}, {"n", nd.n}};
}

int node_from_json(const json& j, Task task, std::vector<TreeNode>& nodes) {
  TreeNode nd;
  const int slot = (int)nodes.size();
  nodes.push_back(nd);
  if (j.contains("feature")) {
    nodes[(size_t)slot].feature = get_field<int>(j, "feature", "model node");
    nodes[(size_t)slot].theta = get_field<double>(j, "theta", "model node");
    const int li = node_from_json(j.at("left"), task, nodes);
    const int ri = node_from_json(j.at("right"), task, nodes);
    nodes[(size_t)slot].left = li;
    nodes[(size_t)slot].right = ri;
    nodes[(size_t)slot].n = nodes[(size_t)li].n + nodes[(size_t)ri].n;
  } else if (task == Task::Classification) {
    nodes[(size_t)slot].counts = get_field<std::vector<int64_t>>(j, "counts", "model node");
    int64_t n = 0;
    for (int64_t c : nodes[(size_t)slot].counts) n += c;
    nodes[(size_t)slot].n = n;
  } else {
    nodes[(size_t)slot].mean = get_field<double>(j, "mean", "model node");
    nodes[(size_t)slot].n = get_field<int64_t>(j, "n", "model node");
  }
  return slot;
}

json feature_map_to_json(const std::vector<ProjectionIndex>& fmap) {
  json arr = json::array();
  for (const auto& p : fmap)
    arr.push_back({{"component", p.component},
                   {"i", p.i},
                   {"j", p.j},
                   {"class", p.pair_class == PairClass::Timelike ? "timelike" : "free"}});
  return arr;
}

std::vector<ProjectionIndex> feature_map_from_json(const json& arr) {
  std::vector<ProjectionIndex> fmap;
  for (const auto& pj : arr) {
    ProjectionIndex p;
    p.component = get_field<int>(pj, "component", "feature_map");
    p.i = get_field<int>(pj, "i", "feature_map");
    p.j = get_field<int>(pj, "j", "feature_map");
    p.pair_class = get_field<std::string>(pj, "class", "feature_map") == "timelike"
                       ? PairClass::Timelike
                       : PairClass::Free;
    fmap.push_back(p);
  }
  return fmap;
}

json tree_to_json(const DecisionTree& t) {
  json j{{"family", t.family == SplitFamily::Angular ? "angular" : "threshold"},
         {"task", task_name(t.task)},
         {"hyperparams", hyperparams_to_json(t.hp)},
         {"n_features", t.n_features},
         {"n_classes", t.n_classes},
         {"feature_map", feature_map_to_json(t.feature_map)},
         {"root", node_to_json(t, 0)}};
  if (!t.feature_components.empty()) j["feature_components"] = t.feature_components;
  if (t.signature) j["signature"] = signature_to_json(*t.signature);
  return j;
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  t.family = get_field<std::string>(j, "family", "model") == "angular" ? SplitFamily::Angular
                                                                       : SplitFamily::Threshold;
  t.task = task_from_name(get_field<std::string>(j, "task", "model"));
  t.hp = hyperparams_from_json(j.at("hyperparams"), "model");
  t.n_features = get_field<int>(j, "n_features", "model");
  t.n_classes = get_field<int>(j, "n_classes", "model");
  if (j.contains("feature_map")) t.feature_map = feature_map_from_json(j.at("feature_map"));
  if (j.contains("feature_components"))
    t.feature_components = get_field<std::vector<int>>(j, "feature_components", "model");
  if (j.contains("signature")) t.signature = signature_from_json(j.at("signature"));
  node_from_json(j.at("root"), t.task, t.nodes);
  // node_from_json appends the root first
  return t;
}

json forest_to_json(const Forest& f) {
  json trees = json::array();
  for (const auto& m : f.trees)
    trees.push_back({{"features", m.features}, {"tree", {{"root", node_to_json(m.tree, 0)}}}});
  json j{{"family", f.family == SplitFamily::Angular ? "angular" : "threshold"},
         {"task", task_name(f.task)},
         {"hyperparams", forest_hyperparams_to_json(f.hp)},
         {"n_features", f.n_features},
         {"n_classes", f.n_classes},
         {"feature_map", feature_map_to_json(f.feature_map)},
         {"trees", trees}};
  if (!f.feature_components.empty()) j["feature_components"] = f.feature_components;
  if (f.signature) j["signature"] = signature_to_json(*f.signature);
  return j;
}

Forest forest_from_json(const json& j) {
  Forest f;
  f.family = get_field<std::string>(j, "family", "model") == "angular" ? SplitFamily::Angular
                                                                       : SplitFamily::Threshold;
  f.task = task_from_name(get_field<std::string>(j, "task", "model"));
  f.hp = forest_hyperparams_from_json(j.at("hyperparams"), "model");
  f.n_features = get_field<int>(j, "n_features", "model");
  f.n_classes = get_field<int>(j, "n_classes", "model");
  if (j.contains("feature_map")) f.feature_map = feature_map_from_json(j.at("feature_map"));
  if (j.contains("feature_components"))
    f.feature_components = get_field<std::vector<int>>(j, "feature_components", "model");
  if (j.contains("signature")) f.signature = signature_from_json(j.at("signature"));
  for (const auto& mj : j.at("trees")) {
    ForestMember m;
    m.features = get_field<std::vector<int>>(mj, "features", "model trees");
    m.tree.family = f.family;
    m.tree.task = f.task;
    m.tree.hp = f.hp.tree;
    m.tree.signature = f.signature;
    m.tree.feature_map = f.feature_map;
    m.tree.feature_components = f.feature_components;
    m.tree.n_features = f.n_features;
    m.tree.n_classes = f.n_classes;
    node_from_json(mj.at("tree").at("root"), f.task, m.tree.nodes);
    f.trees.push_back(std::move(m));
  }
  return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

Signature signature_from_json_text(const std::string& text) {
  return signature_from_json(parse_json(text, "signature"));
}

std::string signature_to_json_text(const Signature& sig) {
  return signature_to_json(sig).dump(2);
}

Signature load_signature(const std::string& path) {
  return signature_from_json_text(read_text_file(path));
}

void save_point_batch_csv(const std::string& path, const PointBatch& batch,
                          const std::vector<int>* labels, const std::vector<double>* targets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  const auto& sig = batch.signature;
  for (size_t c = 0; c < sig.components.size(); ++c) {
    for (int d = 0; d < sig.components[c].ambient_dim(); ++d) {
      if (c || d) out << ",";
      out << "c" << c << "_" << d;
    }
  }
  if (labels || targets) out << ",label";
  out << "\n";
  for (Eigen::Index r = 0; r < batch.rows(); ++r) {
    for (Eigen::Index c = 0; c < batch.coords.cols(); ++c) {
      if (c) out << ",";
      out << fmt17(batch.coords(r, c));
    }
    if (labels) out << "," << (*labels)[(size_t)r];
    if (targets) out << "," << fmt17((*targets)[(size_t)r]);
    out << "\n";
  }
}

namespace {

Dataset load_csv_impl(const std::string& path, const Signature& sig, Task task,
                      bool require_labels) {
  sig.validate();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  const int A = sig.ambient_dim();
  const bool has_label = !header.empty() && header.back() == "label";
  const int expect = A + (has_label ? 1 : 0);
  if ((int)header.size() != expect)
    throw ValidationError(path + ": header has " + std::to_string(header.size()) +
                          " columns, signature expects " + std::to_string(A) +
                          " coordinate columns" + (has_label ? " plus label" : ""));
  if (require_labels && !has_label)
    throw ValidationError(path + ": labeled data required but no `label` column present");

  Dataset ds;
  ds.task = task;
  ds.points.signature = sig;
  std::vector<double> values;
  Eigen::Index rows = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if ((int)cells.size() != expect)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(expect) + " columns, got " +
                            std::to_string(cells.size()));
    for (int c = 0; c < A; ++c) {
      try {
        values.push_back(std::stod(cells[(size_t)c]));
      } catch (...) {
        throw ValidationError(path + ":" + std::to_string(lineno) + ": bad number \"" +
                              cells[(size_t)c] + "\"");
      }
    }
    if (has_label) {
      double v;
      try {
        v = std::stod(cells.back());
      } catch (...) {
        throw ValidationError(path + ":" + std::to_string(lineno) + ": bad label \"" +
                              cells.back() + "\"");
      }
      if (task == Task::Classification) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 || r < 0)
          throw ValidationError(path + ":" + std::to_string(lineno) +
                                ": classification labels must be non-negative integers");
        ds.labels.push_back((int)r);
      } else {
        ds.targets.push_back(v);
      }
    }
    ++rows;
  }
  ds.points.coords.resize(rows, A);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (int c = 0; c < A; ++c) ds.points.coords(r, c) = values[(size_t)(r * A + c)];
  const auto violations = validate(ds.points);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw ValidationError(path + ": " + std::to_string(violations.size()) +
                          " manifold-constraint violations (first: row " +
                          std::to_string(v.row) + ", component " + std::to_string(v.component) +
                          ", " + v.constraint + ")");
  }
  return ds;
}

}  // namespace

Dataset load_labeled_csv(const std::string& path, const Signature& sig, Task task) {
  return load_csv_impl(path, sig, task, true);
}

PointBatch load_point_batch_csv(const std::string& path, const Signature& sig) {
  return load_csv_impl(path, sig, Task::Regression, false).points;
}

void save_angle_matrix_csv(const std::string& path, const AngleMatrix& am) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  for (size_t f = 0; f < am.feature_map.size(); ++f) {
    const auto& p = am.feature_map[f];
    if (f) out << ",";
    out << "a" << f << "_c" << p.component << "_" << p.i << "_" << p.j;
  }
  out << "\n";
  for (Eigen::Index r = 0; r < am.rows(); ++r) {
    for (Eigen::Index c = 0; c < am.angles.cols(); ++c) {
      if (c) out << ",";
      out << fmt17(am.angles(r, c));
    }
    out << "\n";
  }
}

MixtureSpec mixture_spec_from_json_text(const std::string& text) {
  const json j = parse_json(text, "mixture spec");
  MixtureSpec spec;
  if (!j.contains("signature"))
    throw ValidationError("mixture spec: missing field \"signature\"");
  spec.signature = signature_from_json(j.at("signature"));
  spec.n_points = get_or<int>(j, "n_points", spec.n_points, "mixture spec");
  spec.n_clusters = get_or<int>(j, "n_clusters", spec.n_clusters, "mixture spec");
  spec.n_classes = get_or<int>(j, "n_classes", spec.n_classes, "mixture spec");
  if (j.contains("task"))
    spec.task = task_from_name(get_field<std::string>(j, "task", "mixture spec"));
  if (j.contains("sigma") && !j.at("sigma").is_null())
    spec.sigma = get_field<double>(j, "sigma", "mixture spec");
  spec.noise_std = get_or<double>(j, "noise_std", spec.noise_std, "mixture spec");
  spec.seed = get_or<uint64_t>(j, "seed", spec.seed, "mixture spec");
  spec.validate();
  return spec;
}

MixtureSpec load_mixture_spec(const std::string& path) {
  return mixture_spec_from_json_text(read_text_file(path));
}

void save_mixture_sidecar(const std::string& path, const Dataset& ds) {
  json j;
  j["task"] = task_name(ds.task);
  j["signature"] = signature_to_json(ds.points.signature);
  j["proportions"] = ds.params.proportions;
  j["cluster"] = ds.cluster;
  if (ds.task == Task::Classification) j["cluster_to_class"] = ds.params.cluster_to_class;
  json means = json::array();
  for (const auto& M : ds.params.means) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
      rows.push_back(row);
    }
    means.push_back(rows);
  }
  j["means"] = means;
  json covs = json::array();
  for (const auto& comp : ds.params.covariances) {
    json percomp = json::array();
    for (const auto& S : comp) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < S.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < S.cols(); ++c) row.push_back(S(r, c));
        rows.push_back(row);
      }
      percomp.push_back(rows);
    }
    covs.push_back(percomp);
  }
  j["covariances"] = covs;
  if (ds.task == Task::Regression) {
    json slopes = json::array();
    for (Eigen::Index r = 0; r < ds.params.slopes.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < ds.params.slopes.cols(); ++c)
        row.push_back(ds.params.slopes(r, c));
      slopes.push_back(row);
    }
    j["slopes"] = slopes;
    j["intercepts"] = ds.params.intercepts;
  }
  write_text_file(path, j.dump(2));
}

std::string model_to_json_text(const SavedModel& m) {
  json j;
  j["model"] = m.forest ? "forest" : "decision_tree";
  j["preprocess"] = model_kind_name(m.kind);
  if (m.forest)
    j["forest"] = forest_to_json(*m.forest);
  else if (m.tree)
    j["tree"] = tree_to_json(*m.tree);
  else
    throw ValidationError("save_model: empty model");
  return j.dump(2);
}

SavedModel model_from_json_text(const std::string& text) {
  const json j = parse_json(text, "model");
  SavedModel m;
  m.kind = model_kind_from_name(get_field<std::string>(j, "preprocess", "model"));
  const std::string kind = get_field<std::string>(j, "model", "model");
  if (kind == "forest")
    m.forest = forest_from_json(j.at("forest"));
  else if (kind == "decision_tree")
    m.tree = tree_from_json(j.at("tree"));
  else
    throw ValidationError("model: unknown model type \"" + kind + "\"");
  return m;
}

void save_model(const std::string& path, const SavedModel& m) {
  write_text_file(path, model_to_json_text(m));
}

SavedModel load_model(const std::string& path) {
  return model_from_json_text(read_text_file(path));
}

ExperimentConfig experiment_config_from_json_text(const std::string& text) {
  const json j = parse_json(text, "experiment config");
  ExperimentConfig cfg;
  cfg.name = get_or<std::string>(j, "name", cfg.name, "experiment config");
  if (!j.contains("data"))
    throw ValidationError("experiment config: missing field \"data\"");
  const json& dj = j.at("data");
  if (dj.contains("mixture")) {
    cfg.data.mixture = mixture_spec_from_json_text(dj.at("mixture").dump());
    cfg.data.task = cfg.data.mixture->task;
  } else if (dj.contains("csv")) {
    cfg.data.csv_path = get_field<std::string>(dj, "csv", "experiment config data");
    if (!dj.contains("signature"))
      throw ValidationError("experiment config: csv data requires \"signature\"");
    cfg.data.signature = signature_from_json(dj.at("signature"));
    if (dj.contains("task"))
      cfg.data.task = task_from_name(get_field<std::string>(dj, "task", "experiment config"));
  } else {
    throw ValidationError("experiment config: data needs \"mixture\" or \"csv\"");
  }
  cfg.model = model_kind_from_name(get_field<std::string>(j, "model", "experiment config"));
  cfg.knn_k = get_or<int>(j, "knn_k", cfg.knn_k, "experiment config");
  cfg.split_fraction =
      get_or<double>(j, "split_fraction", cfg.split_fraction, "experiment config");
  cfg.n_seeds = get_or<int>(j, "n_seeds", cfg.n_seeds, "experiment config");
  cfg.seed = get_or<uint64_t>(j, "seed", cfg.seed, "experiment config");
  if (j.contains("tree")) cfg.tree = hyperparams_from_json(j.at("tree"), "experiment config");
  cfg.tree.task = cfg.data.task;
  if (j.contains("forest"))
    cfg.forest = forest_hyperparams_from_json(j.at("forest"), "experiment config");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from_json_text(read_text_file(path));
}

std::vector<ExperimentConfig> load_benchmark_configs(const std::string& path) {
  const json j = parse_json(read_text_file(path), "benchmark config");
  if (!j.contains("experiments") || !j.at("experiments").is_array())
    throw ValidationError("benchmark config: missing \"experiments\" array");
  std::vector<ExperimentConfig> configs;
  for (const auto& ej : j.at("experiments"))
    configs.push_back(experiment_config_from_json_text(ej.dump()));
  if (configs.empty()) throw ValidationError("benchmark config: no experiments");
  return configs;
}

std::string report_to_json_text(const MetricReport& r) {
  json j{{"metric", r.metric},
         {"scores", r.scores},
         {"mean", r.mean},
         {"ci_halfwidth", r.ci_halfwidth},
         {"seconds_fit", r.seconds_fit},
         {"seconds_predict", r.seconds_predict}};
  return j.dump(2);
}

void save_report(const std::string& path, const MetricReport& r) {
  write_text_file(path, report_to_json_text(r));
}

std::vector<std::pair<int, int>> load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2)
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": edge rows need exactly two columns");
    try {
      edges.emplace_back(std::stoi(cells[0]), std::stoi(cells[1]));
    } catch (...) {
      if (lineno == 1) continue;  // header row
      throw ValidationError(path + ":" + std::to_string(lineno) + ": bad edge \"" + line + "\"");
    }
  }
  return edges;
}

void save_labels_csv(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "label\n";
  for (int v : labels) out << v << "\n";
}

void save_values_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "label\n";
  for (double v : values) out << fmt17(v) << "\n";
}

}  // namespace geoforest
