#pragma once

#include <span>
#include <string>
#include <vector>

#include "geoforest/common.hpp"

namespace geoforest {

double accuracy(std::span<const int> predicted, std::span<const int> truth);
double rmse(std::span<const double> predicted, std::span<const double> truth);

double mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);  // n-1 denominator; 0 for n < 2

// Two-sided 95% Student-t quantile, t_{0.975, df}.
double t_quantile_975(int df);

// Half-width of the 95% CI: t_{0.975, n-1} * sd / sqrt(n). A single score
// yields half-width 0 with a warning on stderr.
double ci_halfwidth(std::span<const double> scores);

struct MetricReport {
  std::string metric;          // "accuracy" or "rmse"
  std::vector<double> scores;  // one per seed
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  double seconds_fit = 0.0;      // wall clock summed over seeds
  double seconds_predict = 0.0;
};

MetricReport make_report(const std::string& metric, std::vector<double> scores,
                         double seconds_fit, double seconds_predict);

}  // namespace geoforest
