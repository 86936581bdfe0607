#include "geoforest/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <iostream>

namespace geoforest {

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size() || truth.empty())
    throw ValidationError("accuracy: prediction/truth size mismatch");
  size_t hits = 0;
  for (size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return (double)hits / (double)truth.size();
}

double rmse(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size() || truth.empty())
    throw ValidationError("rmse: prediction/truth size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double d = predicted[i] - truth[i];
    s += d * d;
  }
  return std::sqrt(s / (double)truth.size());
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("mean: empty input");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / (double)xs.size();
}

double sample_sd(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) {
    const double d = x - m;
    s += d * d;
  }
  return std::sqrt(s / (double)(n - 1));
}

double t_quantile_975(int df) {
  if (df < 1) throw ValidationError("t_quantile: df must be >= 1");
  boost::math::students_t dist((double)df);
  return boost::math::quantile(dist, 0.975);
}

double ci_halfwidth(std::span<const double> scores) {
  if (scores.empty()) throw ValidationError("ci_halfwidth: empty scores");
  const size_t n = scores.size();
  if (n == 1) {
    std::cerr << "warning: confidence interval from a single run; reporting half-width 0\n";
    return 0.0;
  }
  return t_quantile_975((int)n - 1) * sample_sd(scores) / std::sqrt((double)n);
}

MetricReport make_report(const std::string& metric, std::vector<double> scores,
                         double seconds_fit, double seconds_predict) {
  MetricReport r;
  r.metric = metric;
  r.mean = mean(scores);
  r.ci_halfwidth = ci_halfwidth(scores);
  r.scores = std::move(scores);
  r.seconds_fit = seconds_fit;
  r.seconds_predict = seconds_predict;
  return r;
}

}  // namespace geoforest
