#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace geoforest {

// Sample matrices are row-major: one sample per row, contiguous slices per
// component manifold.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowRef = Eigen::Ref<const Eigen::RowVectorXd>;

enum class Task { Classification, Regression };

// Malformed data: bad files, shape mismatches, constraint violations.
// The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

std::string task_name(Task t);
Task task_from_name(const std::string& s);

}  // namespace geoforest
