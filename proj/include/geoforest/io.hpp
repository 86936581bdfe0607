#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geoforest/experiment.hpp"

namespace geoforest {

// --- signatures ------------------------------------------------------------
// {"components":[{"kind":"sphere"|"hyperboloid"|"euclidean",
//                 "dim":<int>,"curvature":<float>}, ...]}
Signature signature_from_json_text(const std::string& text);
std::string signature_to_json_text(const Signature& sig);
Signature load_signature(const std::string& path);

// --- point batches ----------------------------------------------------------
// Header c<comp>_<dim> per ambient column in signature order, optional
// trailing `label` column. Lifted Euclidean coordinates are explicit.
// Numbers are written with 17 significant digits, so round-trips are
// lossless.
void save_point_batch_csv(const std::string& path, const PointBatch& batch,
                          const std::vector<int>* labels = nullptr,
                          const std::vector<double>* targets = nullptr);
Dataset load_labeled_csv(const std::string& path, const Signature& sig, Task task);
// Batch without labels (label column permitted and ignored).
PointBatch load_point_batch_csv(const std::string& path, const Signature& sig);

void save_angle_matrix_csv(const std::string& path, const AngleMatrix& angles);

// --- sampler ----------------------------------------------------------------
MixtureSpec mixture_spec_from_json_text(const std::string& text);
MixtureSpec load_mixture_spec(const std::string& path);
void save_mixture_sidecar(const std::string& path, const Dataset& ds);

// --- models -----------------------------------------------------------------
// A fitted model plus the preprocessing it expects at prediction time.
struct SavedModel {
  ModelKind kind = ModelKind::ProductDT;
  std::optional<DecisionTree> tree;
  std::optional<Forest> forest;
};

std::string model_to_json_text(const SavedModel& m);
SavedModel model_from_json_text(const std::string& text);
void save_model(const std::string& path, const SavedModel& m);
SavedModel load_model(const std::string& path);

// --- experiments -------------------------------------------------------------
ExperimentConfig experiment_config_from_json_text(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);
// {"experiments":[<config>, ...]}
std::vector<ExperimentConfig> load_benchmark_configs(const std::string& path);
std::string report_to_json_text(const MetricReport& r);
void save_report(const std::string& path, const MetricReport& r);

// --- misc -------------------------------------------------------------------
// Two-column CSV of node indices; a non-numeric first line is skipped.
std::vector<std::pair<int, int>> load_edge_list(const std::string& path);
void save_labels_csv(const std::string& path, const std::vector<int>& labels);
void save_values_csv(const std::string& path, const std::vector<double>& values);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace geoforest
