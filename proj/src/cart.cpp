#include "geoforest/cart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace geoforest {

void TreeHyperparams::validate() const {
  if (min_samples_split < 2)
    throw ValidationError("hyperparams: min_samples_split must be >= 2");
  if (min_samples_leaf < 1) throw ValidationError("hyperparams: min_samples_leaf must be >= 1");
  if (min_impurity_decrease < 0)
    throw ValidationError("hyperparams: min_impurity_decrease must be >= 0");
}

int DecisionTree::depth() const {
  std::function<int(int)> rec = [&](int i) -> int {
    const TreeNode& nd = nodes[i];
    if (nd.is_leaf()) return 0;
    return 1 + std::max(rec(nd.left), rec(nd.right));
  };
  return nodes.empty() ? 0 : rec(0);
}

int DecisionTree::route(RowRef features) const {
  int i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& nd = nodes[i];
    const bool positive = family == SplitFamily::Angular
                              ? split_indicator(features[nd.feature], nd.theta)
                              : features[nd.feature] > nd.theta;
    i = positive ? nd.right : nd.left;
  }
  return i;
}

namespace {

double gini_from_counts(const int64_t* cnt, int n_classes, int64_t n) {
  double s = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    const double p = static_cast<double>(cnt[c]) / static_cast<double>(n);
    s += p * p;
  }
  return 1.0 - s;
}

// Population variance from shifted sums: s1 = sum(y - shift), s2 = sum((y - shift)^2).
double variance_from_sums(double s1, double s2, int64_t n) {
  const double m = s1 / static_cast<double>(n);
  return std::max(0.0, s2 / static_cast<double>(n) - m * m);
}

}  // namespace

double impurity(Task task, std::span<const int> labels) {
  if (task != Task::Classification)
    throw ValidationError("impurity: integer labels require the classification task");
  if (labels.empty()) throw ValidationError("impurity: empty label set");
  int n_classes = 0;
  for (int y : labels) {
    if (y < 0) throw ValidationError("impurity: class labels must be non-negative");
    n_classes = std::max(n_classes, y + 1);
  }
  std::vector<int64_t> cnt(n_classes, 0);
  for (int y : labels) ++cnt[y];
  return gini_from_counts(cnt.data(), n_classes, (int64_t)labels.size());
}

double impurity(Task task, std::span<const double> labels) {
  if (task != Task::Regression)
    throw ValidationError("impurity: real labels require the regression task");
  if (labels.empty()) throw ValidationError("impurity: empty label set");
  double s1 = 0.0, s2 = 0.0;
  for (double y : labels) {
    s1 += y;
    s2 += y * y;
  }
  return variance_from_sums(s1, s2, (int64_t)labels.size());
}

template <typename T>
static double info_gain_impl(Task task, std::span<const T> parent, std::span<const T> left,
                             std::span<const T> right) {
  if (parent.size() != left.size() + right.size())
    throw ValidationError("information_gain: child sizes do not add up to the parent");
  const double n = static_cast<double>(parent.size());
  const double wl = static_cast<double>(left.size()) / n;
  const double wr = static_cast<double>(right.size()) / n;
  return impurity(task, parent) - (wl * impurity(task, left) + wr * impurity(task, right));
}

double information_gain(Task task, std::span<const int> parent, std::span<const int> left,
                        std::span<const int> right) {
  return info_gain_impl(task, parent, left, right);
}

double information_gain(Task task, std::span<const double> parent, std::span<const double> left,
                        std::span<const double> right) {
  return info_gain_impl(task, parent, left, right);
}

namespace detail {

namespace {

struct BestSplit {
  int feature = -1;
  double theta = 0.0;
  double gain = -std::numeric_limits<double>::infinity();
};

struct Scratch {
  std::vector<std::pair<double, int>> sorted;  // (value, row)
  std::vector<double> distinct;
  std::vector<int> group_start;  // distinct-group boundaries, size u+1
  std::vector<int64_t> cum;      // classification: (k+1) x C prefix counts
  std::vector<double> cum1, cum2;  // regression prefixes of shifted labels
};

class Builder {
 public:
  Builder(const RowMatrix& values, SplitFamily family, const Signature* sig,
          const std::vector<ProjectionIndex>* fmap, const TreeHyperparams& hp, Labels labels,
          std::vector<int> active, int n_classes, FitStats* stats)
      : values_(values),
        family_(family),
        hp_(hp),
        labels_(labels),
        active_(std::move(active)),
        n_classes_(n_classes),
        stats_(stats) {
    if (family_ == SplitFamily::Angular) {
      kinds_.resize(fmap->size());
      classes_.resize(fmap->size());
      for (size_t f = 0; f < fmap->size(); ++f) {
        kinds_[f] = sig->components[(*fmap)[f].component].kind;
        classes_[f] = (*fmap)[f].pair_class;
      }
    }
  }

  std::vector<TreeNode> build(std::vector<int> rows) {
    nodes_.clear();
    build_node(std::move(rows), 0);
    return std::move(nodes_);
  }

 private:
  int build_node(std::vector<int> rows, int depth) {
    const int64_t k = (int64_t)rows.size();
    // Node payload and impurity.
    std::vector<int64_t> counts;
    double node_imp = 0.0, node_mean = 0.0;
    if (labels_.task == Task::Classification) {
      counts.assign(n_classes_, 0);
      for (int r : rows) ++counts[labels_.cls[r]];
      node_imp = gini_from_counts(counts.data(), n_classes_, k);
    } else {
      double s1 = 0.0, s2 = 0.0;
      for (int r : rows) s1 += labels_.reg[r];
      node_mean = s1 / static_cast<double>(k);
      for (int r : rows) {
        const double d = labels_.reg[r] - node_mean;
        s2 += d * d;
      }
      node_imp = s2 / static_cast<double>(k);
    }

    bool stop = (hp_.max_depth >= 0 && depth >= hp_.max_depth) ||
                k < hp_.min_samples_split || node_imp <= 0.0;
    BestSplit best;
    if (!stop) {
      for (int f : active_) scan_feature(f, rows, node_imp, node_mean, best);
      stop = !(best.gain > hp_.min_impurity_decrease);
    }
    if (stop) {
      TreeNode leaf;
      leaf.n = k;
      if (labels_.task == Task::Classification)
        leaf.counts = std::move(counts);
      else
        leaf.mean = node_mean;
      nodes_.push_back(std::move(leaf));
      return (int)nodes_.size() - 1;
    }

    std::vector<int> neg, pos;
    neg.reserve(rows.size());
    pos.reserve(rows.size());
    for (int r : rows) {
      const bool p = family_ == SplitFamily::Angular
                         ? split_indicator(values_(r, best.feature), best.theta)
                         : values_(r, best.feature) > best.theta;
      (p ? pos : neg).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    TreeNode internal;
    internal.feature = best.feature;
    internal.theta = best.theta;
    internal.gain = best.gain;
    internal.n = k;
    nodes_.push_back(std::move(internal));
    const int slot = (int)nodes_.size() - 1;
    const int li = build_node(std::move(neg), depth + 1);
    const int ri = build_node(std::move(pos), depth + 1);
    nodes_[slot].left = li;
    nodes_[slot].right = ri;
    return slot;
  }

  // Weighted-impurity gain from per-side statistics. Each side's sums come in
  // as direct prefix differences, and the two weighted terms meet in a single
  // commutative +, so mirrored scans (angular vs classical on lifted data)
  // produce bit-identical gains for the same partition.
  void eval_candidate(int f, double theta, int64_t n_pos, const int64_t* cnt_pos,
                      double s1_pos, double s2_pos, double s1_neg, double s2_neg, int64_t k,
                      double node_imp, BestSplit& best) {
    const int64_t n_neg = k - n_pos;
    if (n_pos < hp_.min_samples_leaf || n_neg < hp_.min_samples_leaf) return;
    double imp_pos, imp_neg;
    if (labels_.task == Task::Classification) {
      imp_pos = gini_from_counts(cnt_pos, n_classes_, n_pos);
      neg_counts_.resize(n_classes_);
      for (int c = 0; c < n_classes_; ++c) neg_counts_[c] = node_counts_[c] - cnt_pos[c];
      imp_neg = gini_from_counts(neg_counts_.data(), n_classes_, n_neg);
    } else {
      imp_pos = variance_from_sums(s1_pos, s2_pos, n_pos);
      imp_neg = variance_from_sums(s1_neg, s2_neg, n_neg);
    }
    const double wp = static_cast<double>(n_pos) / static_cast<double>(k);
    const double wn = static_cast<double>(n_neg) / static_cast<double>(k);
    const double gain = node_imp - (wp * imp_pos + wn * imp_neg);
    if (gain > best.gain) best = {f, theta, gain};
  }

  void scan_feature(int f, const std::vector<int>& rows, double node_imp, double node_mean,
                    BestSplit& best) {
    const int64_t k = (int64_t)rows.size();
    auto& s = scratch_;
    s.sorted.clear();
    s.sorted.reserve(rows.size());
    for (int r : rows) s.sorted.emplace_back(values_(r, f), r);
    std::sort(s.sorted.begin(), s.sorted.end());

    s.distinct.clear();
    s.group_start.clear();
    for (int64_t i = 0; i < k; ++i) {
      if (i == 0 || s.sorted[i].first != s.sorted[i - 1].first) {
        s.distinct.push_back(s.sorted[i].first);
        s.group_start.push_back((int)i);
      }
    }
    s.group_start.push_back((int)k);
    const int u = (int)s.distinct.size();
    if (u < 2) {
      if (stats_) stats_->scans.push_back({(int)nodes_.size(), f, u, 0});
      return;
    }

    // Prefix sums over the sorted order. Regression sums accumulate from the
    // top of the sort (suffix form): for the angular family that is ascending
    // raw value, which keeps the arithmetic bit-identical to the classical
    // fit on lifted data, so structurally tied gains break the same way in
    // both fits. Range sum over [a, b) is cum[a] - cum[b].
    if (labels_.task == Task::Classification) {
      node_counts_.assign(n_classes_, 0);
      for (int r : rows) ++node_counts_[labels_.cls[r]];
      s.cum.assign((size_t)(k + 1) * n_classes_, 0);
      for (int64_t i = 0; i < k; ++i) {
        int64_t* cur = &s.cum[(size_t)(i + 1) * n_classes_];
        const int64_t* prev = &s.cum[(size_t)i * n_classes_];
        for (int c = 0; c < n_classes_; ++c) cur[c] = prev[c];
        ++cur[labels_.cls[s.sorted[i].second]];
      }
    } else {
      s.cum1.assign(k + 1, 0.0);
      s.cum2.assign(k + 1, 0.0);
      if (family_ == SplitFamily::Angular) {
        for (int64_t i = k - 1; i >= 0; --i) {
          const double d = labels_.reg[s.sorted[i].second] - node_mean;
          s.cum1[i] = s.cum1[i + 1] + d;
          s.cum2[i] = s.cum2[i + 1] + d * d;
        }
        total_s1_ = s.cum1[0];
        total_s2_ = s.cum2[0];
      } else {
        for (int64_t i = 0; i < k; ++i) {
          const double d = labels_.reg[s.sorted[i].second] - node_mean;
          s.cum1[i + 1] = s.cum1[i] + d;
          s.cum2[i + 1] = s.cum2[i] + d * d;
        }
        total_s1_ = s.cum1[k];
        total_s2_ = s.cum2[k];
      }
    }

    auto lower = [&](double x) {
      return (int64_t)(std::lower_bound(s.sorted.begin(), s.sorted.end(), x,
                                        [](const std::pair<double, int>& a, double b) {
                                          return a.first < b;
                                        }) -
                       s.sorted.begin());
    };

    int candidate_count = 0;
    if (family_ == SplitFamily::Angular) {
      const auto cands = candidate_angles(s.distinct, kinds_[f], classes_[f], hp_.midpoint_mode);
      candidate_count = (int)cands.size();
      for (double theta : cands) {
        // Positive side: angles in the circular arc [theta, theta + pi).
        const int64_t lo = lower(theta);
        int64_t n_pos;
        if (theta + kPi < kTwoPi) {
          const int64_t hi = lower(theta + kPi);
          n_pos = hi - lo;
          if (labels_.task == Task::Classification) {
            pos_counts_.resize(n_classes_);
            const int64_t* a = &s.cum[(size_t)lo * n_classes_];
            const int64_t* b = &s.cum[(size_t)hi * n_classes_];
            for (int c = 0; c < n_classes_; ++c) pos_counts_[c] = b[c] - a[c];
            eval_candidate(f, theta, n_pos, pos_counts_.data(), 0, 0, 0, 0, k, node_imp, best);
          } else {
            // suffix-form sums: range [a, b) is cum[a] - cum[b]
            eval_candidate(f, theta, n_pos, nullptr, s.cum1[lo] - s.cum1[hi],
                           s.cum2[lo] - s.cum2[hi], (s.cum1[0] - s.cum1[lo]) + s.cum1[hi],
                           (s.cum2[0] - s.cum2[lo]) + s.cum2[hi], k, node_imp, best);
          }
        } else {
          const int64_t hi2 = lower(theta + kPi - kTwoPi);  // wrapped tail [0, hi2)
          n_pos = (k - lo) + hi2;
          if (labels_.task == Task::Classification) {
            pos_counts_.resize(n_classes_);
            const int64_t* a = &s.cum[(size_t)lo * n_classes_];
            const int64_t* end = &s.cum[(size_t)k * n_classes_];
            const int64_t* b = &s.cum[(size_t)hi2 * n_classes_];
            for (int c = 0; c < n_classes_; ++c) pos_counts_[c] = (end[c] - a[c]) + b[c];
            eval_candidate(f, theta, n_pos, pos_counts_.data(), 0, 0, 0, 0, k, node_imp, best);
          } else {
            const double s1 = s.cum1[lo] + (s.cum1[0] - s.cum1[hi2]);
            const double s2 = s.cum2[lo] + (s.cum2[0] - s.cum2[hi2]);
            eval_candidate(f, theta, n_pos, nullptr, s1, s2, s.cum1[hi2] - s.cum1[lo],
                           s.cum2[hi2] - s.cum2[lo], k, node_imp, best);
          }
        }
      }
    } else {
      // Classical thresholds, scanned in descending value order so that
      // equal-gain tie-breaking mirrors the ascending-angle scan.
      candidate_count = u - 1;
      for (int q = u - 2; q >= 0; --q) {
        const double t = 0.5 * (s.distinct[q] + s.distinct[q + 1]);
        const int64_t lo = s.group_start[q + 1];  // rows with value > t
        const int64_t n_pos = k - lo;
        if (labels_.task == Task::Classification) {
          pos_counts_.resize(n_classes_);
          const int64_t* a = &s.cum[(size_t)lo * n_classes_];
          const int64_t* end = &s.cum[(size_t)k * n_classes_];
          for (int c = 0; c < n_classes_; ++c) pos_counts_[c] = end[c] - a[c];
          eval_candidate(f, t, n_pos, pos_counts_.data(), 0, 0, 0, 0, k, node_imp, best);
        } else {
          eval_candidate(f, t, n_pos, nullptr, s.cum1[k] - s.cum1[lo], s.cum2[k] - s.cum2[lo],
                         s.cum1[lo], s.cum2[lo], k, node_imp, best);
        }
      }
    }
    if (stats_) stats_->scans.push_back({(int)nodes_.size(), f, u, candidate_count});
  }

  const RowMatrix& values_;
  SplitFamily family_;
  const TreeHyperparams& hp_;
  Labels labels_;
  std::vector<int> active_;
  int n_classes_;
  FitStats* stats_;
  std::vector<Kind> kinds_;
  std::vector<PairClass> classes_;
  std::vector<TreeNode> nodes_;
  Scratch scratch_;
  std::vector<int64_t> node_counts_, pos_counts_, neg_counts_;
  double total_s1_ = 0.0, total_s2_ = 0.0;
};

}  // namespace

DecisionTree fit_impl(const RowMatrix& values, SplitFamily family, const Signature* sig,
                      const std::vector<ProjectionIndex>* fmap, const TreeHyperparams& hp,
                      Labels labels, std::vector<int> rows, std::vector<int> active,
                      int n_classes, FitStats* stats) {
  hp.validate();
  if (values.rows() == 0 || rows.empty()) throw ValidationError("fit: empty input");
  Builder b(values, family, sig, fmap, hp, labels, std::move(active), n_classes, stats);
  DecisionTree tree;
  tree.family = family;
  tree.task = labels.task;
  tree.hp = hp;
  if (sig) tree.signature = *sig;
  if (fmap) tree.feature_map = *fmap;
  tree.n_features = (int)values.cols();
  tree.n_classes = n_classes;
  tree.nodes = b.build(std::move(rows));  // recursion puts the root at index 0
  return tree;
}

}  // namespace detail

namespace {

std::vector<int> iota_rows(Eigen::Index n) {
  std::vector<int> r((size_t)n);
  for (Eigen::Index i = 0; i < n; ++i) r[(size_t)i] = (int)i;
  return r;
}

int count_classes(const std::vector<int>& y) {
  int n = 0;
  for (int v : y) {
    if (v < 0) throw ValidationError("fit: class labels must be non-negative");
    n = std::max(n, v + 1);
  }
  return n;
}

void check_labels(Eigen::Index rows, size_t ylen) {
  if ((size_t)rows != ylen)
    throw ValidationError("fit: label count " + std::to_string(ylen) +
                          " does not match row count " + std::to_string(rows));
}

}  // namespace

DecisionTree fit_tree(const AngleMatrix& angles, const std::vector<int>& y,
                      const TreeHyperparams& hp, FitStats* stats) {
  check_labels(angles.rows(), y.size());
  if (hp.task != Task::Classification)
    throw ValidationError("fit: integer labels require the classification task");
  TreeHyperparams h = hp;
  h.feature_mode = angles.mode;  // the matrix defines the feature set
  detail::Labels lab{Task::Classification, y.data(), nullptr};
  return detail::fit_impl(angles.angles, SplitFamily::Angular, &angles.signature,
                          &angles.feature_map, h, lab, iota_rows(angles.rows()),
                          iota_rows(angles.features()), count_classes(y), stats);
}

DecisionTree fit_tree(const AngleMatrix& angles, const std::vector<double>& y,
                      const TreeHyperparams& hp, FitStats* stats) {
  check_labels(angles.rows(), y.size());
  if (hp.task != Task::Regression)
    throw ValidationError("fit: real labels require the regression task");
  TreeHyperparams h = hp;
  h.feature_mode = angles.mode;
  detail::Labels lab{Task::Regression, nullptr, y.data()};
  return detail::fit_impl(angles.angles, SplitFamily::Angular, &angles.signature,
                          &angles.feature_map, h, lab, iota_rows(angles.rows()),
                          iota_rows(angles.features()), 0, stats);
}

DecisionTree fit_classical_tree(const RowMatrix& X, const std::vector<int>& y,
                                const TreeHyperparams& hp, std::optional<Signature> signature,
                                std::vector<int> feature_components, FitStats* stats) {
  check_labels(X.rows(), y.size());
  if (hp.task != Task::Classification)
    throw ValidationError("fit: integer labels require the classification task");
  detail::Labels lab{Task::Classification, y.data(), nullptr};
  DecisionTree t = detail::fit_impl(X, SplitFamily::Threshold,
                                    signature ? &*signature : nullptr, nullptr, hp, lab,
                                    iota_rows(X.rows()), iota_rows(X.cols()),
                                    count_classes(y), stats);
  t.feature_components = std::move(feature_components);
  return t;
}

DecisionTree fit_classical_tree(const RowMatrix& X, const std::vector<double>& y,
                                const TreeHyperparams& hp, std::optional<Signature> signature,
                                std::vector<int> feature_components, FitStats* stats) {
  check_labels(X.rows(), y.size());
  if (hp.task != Task::Regression)
    throw ValidationError("fit: real labels require the regression task");
  detail::Labels lab{Task::Regression, nullptr, y.data()};
  DecisionTree t = detail::fit_impl(X, SplitFamily::Threshold,
                                    signature ? &*signature : nullptr, nullptr, hp, lab,
                                    iota_rows(X.rows()), iota_rows(X.cols()), 0, stats);
  t.feature_components = std::move(feature_components);
  return t;
}

int predict_label(const DecisionTree& t, RowRef features) {
  if (t.task != Task::Classification)
    throw ValidationError("predict_label: tree is a regressor");
  const TreeNode& leaf = t.nodes[t.route(features)];
  int best = 0;
  for (int c = 1; c < (int)leaf.counts.size(); ++c)
    if (leaf.counts[c] > leaf.counts[best]) best = c;  // ties keep the lowest id
  return best;
}

double predict_value(const DecisionTree& t, RowRef features) {
  if (t.task != Task::Regression) throw ValidationError("predict_value: tree is a classifier");
  return t.nodes[t.route(features)].mean;
}

std::vector<double> predict_proba(const DecisionTree& t, RowRef features) {
  if (t.task != Task::Classification)
    throw ValidationError("predict_proba: tree is a regressor");
  const TreeNode& leaf = t.nodes[t.route(features)];
  std::vector<double> p(leaf.counts.size(), 0.0);
  for (size_t c = 0; c < leaf.counts.size(); ++c)
    p[c] = static_cast<double>(leaf.counts[c]) / static_cast<double>(leaf.n);
  return p;
}

std::vector<double> component_attribution(const DecisionTree& t) {
  if (!t.signature)
    throw ValidationError("component_attribution: tree carries no signature");
  std::vector<int64_t> counts(t.signature->components.size(), 0);
  int64_t total = 0;
  for (const auto& nd : t.nodes) {
    if (nd.is_leaf()) continue;
    int comp;
    if (t.family == SplitFamily::Angular)
      comp = t.feature_map[nd.feature].component;
    else if (!t.feature_components.empty())
      comp = t.feature_components[nd.feature];
    else
      comp = t.signature->component_of_column(nd.feature);
    ++counts[comp];
    ++total;
  }
  if (total == 0) throw ValidationError("component_attribution: no splits");
  std::vector<double> frac(counts.size());
  for (size_t i = 0; i < counts.size(); ++i)
    frac[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return frac;
}

}  // namespace geoforest
