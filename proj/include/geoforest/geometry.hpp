#pragma once

#include <string>
#include <vector>

#include "geoforest/common.hpp"

namespace geoforest {

enum class Kind { Sphere, Hyperboloid, Euclidean };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);

// One constant-curvature factor of a product space. Ambient storage is always
// D+1 wide: spheres and hyperboloids live on their constraint surfaces in
// R^{D+1}, and Euclidean components are stored lifted with a constant leading
// 1 so that all three kinds share slice logic and homogeneous split geometry.
struct ComponentSpec {
  Kind kind = Kind::Euclidean;
  int dim = 1;             // intrinsic dimension D
  double curvature = 0.0;  // > 0 sphere, < 0 hyperboloid, 0 euclidean

  int ambient_dim() const { return dim + 1; }
  double abs_curvature() const { return curvature < 0 ? -curvature : curvature; }
  void validate() const;  // throws ValidationError
};

// Ordered list of component manifolds. Ambient columns are laid out
// contiguously in component order.
struct Signature {
  std::vector<ComponentSpec> components;

  int ambient_dim() const;
  int intrinsic_dim() const;
  int column_offset(int component) const;
  int component_of_column(int col) const;
  // Compact label, e.g. "S2xE2xH2" (curvature suffix when |K| != 1).
  std::string short_name() const;
  void validate() const;
  bool operator==(const Signature& o) const;
};

// n points as rows of ambient coordinates.
struct PointBatch {
  Signature signature;
  RowMatrix coords;  // n x signature.ambient_dim()

  Eigen::Index rows() const { return coords.rows(); }
};

// n tangent vectors at a shared base point.
struct TangentBatch {
  Signature signature;
  Eigen::RowVectorXd base;
  RowMatrix vectors;
};

struct Violation {
  Eigen::Index row;
  int component;
  std::string constraint;
  double residual;
};

// Plain inner products. Both throw on length mismatch.
double dot(RowRef u, RowRef v);
double minkowski(RowRef u, RowRef v);  // -u0*v0 + sum_{i>=1} ui*vi

// Relative residual of the component's manifold constraint for one slice.
double constraint_residual(const ComponentSpec& c, RowRef x);
// Residual of the tangency condition <v, base>_M = 0 (|v0| for Euclidean).
double tangency_residual(const ComponentSpec& c, RowRef base, RowRef v);

// Geodesic distance between two slices of one component. Inputs must satisfy
// the manifold constraint to 1e-8 relative; arguments of acos/acosh are
// clamped to their domains to absorb on-surface floating-point residue.
double distance(const ComponentSpec& c, RowRef u, RowRef v);

// l2 combination of per-component distances over full ambient rows.
double product_distance(const Signature& sig, RowRef u, RowRef v);

Eigen::RowVectorXd component_origin(const ComponentSpec& c);
Eigen::RowVectorXd origin_row(const Signature& sig);

// Exponential map at `base` applied to tangent slice `v`. Internally the
// kernels run at |K| = 1; curvature-K inputs are rescaled onto the unit
// manifold and back, which is exact for these homogeneous formulas.
Eigen::RowVectorXd exp_map(const ComponentSpec& c, RowRef base, RowRef v);

// Inverse of exp_map. Throws on (near-)antipodal sphere inputs.
Eigen::RowVectorXd log_map(const ComponentSpec& c, RowRef base, RowRef q);

// Parallel transport of tangent vector v from `from` to `to` along the
// connecting geodesic. Preserves the component inner product.
Eigen::RowVectorXd parallel_transport(const ComponentSpec& c, RowRef from, RowRef to, RowRef v);

// Componentwise log at `base` over a full ambient row (tangent concatenation).
Eigen::RowVectorXd product_log(const Signature& sig, RowRef base, RowRef q);

// gamma(t) with gamma(0)=p, gamma(1)=q, realized per component as
// exp_p(t*log_p(q)). t must lie in [0, 1].
Eigen::RowVectorXd geodesic_point(const Signature& sig, RowRef p, RowRef q, double t);

// Empty iff every row satisfies every component constraint at 1e-8 relative.
std::vector<Violation> validate(const PointBatch& batch);
std::vector<Violation> validate(const TangentBatch& batch);

inline constexpr double kConstraintTol = 1e-8;

}  // namespace geoforest
