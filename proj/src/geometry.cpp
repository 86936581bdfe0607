#include "geoforest/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geoforest {

namespace {

double clampd(double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); }

void check_len(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": length mismatch (" << a << " vs " << b << ")";
    throw ValidationError(os.str());
  }
}

void require_on_manifold(const ComponentSpec& c, RowRef x, const char* what) {
  const double r = constraint_residual(c, x);
  if (r > kConstraintTol) {
    std::ostringstream os;
    os << what << ": " << kind_name(c.kind) << " slice off manifold (relative residual " << r
       << ")";
    throw ValidationError(os.str());
  }
}

void require_tangent(const ComponentSpec& c, RowRef base, RowRef v, const char* what) {
  const double r = tangency_residual(c, base, v);
  if (r > kConstraintTol) {
    std::ostringstream os;
    os << what << ": vector not tangent at base on " << kind_name(c.kind) << " (residual " << r
       << ")";
    throw ValidationError(os.str());
  }
}

// Scale factor mapping the curvature-K component onto its |K|=1 sibling.
double unit_scale(const ComponentSpec& c) {
  return c.kind == Kind::Euclidean ? 1.0 : c.abs_curvature();
}

// Unit-curvature kernels. Points/vectors are already rescaled by the caller.

Eigen::RowVectorXd sphere_exp(RowRef base, RowRef v) {
  const double n = v.norm();
  if (n < 1e-300) return base;
  return std::cos(n) * base + (std::sin(n) / n) * v;
}

Eigen::RowVectorXd hyper_exp(RowRef base, RowRef v) {
  const double n2 = minkowski(v, v);
  const double n = std::sqrt(std::max(n2, 0.0));
  if (n < 1e-300) return base;
  return std::cosh(n) * base + (std::sinh(n) / n) * v;
}

Eigen::RowVectorXd sphere_log(RowRef base, RowRef q) {
  const double c = clampd(base.dot(q), -1.0, 1.0);
  const double d = std::acos(c);
  Eigen::RowVectorXd perp = q - c * base;
  const double pn = perp.norm();
  if (d < 1e-12) return Eigen::RowVectorXd::Zero(base.size());
  if (pn < 1e-12)
    throw ValidationError("log_map: antipodal points on sphere, logarithm undefined");
  return (d / pn) * perp;
}

Eigen::RowVectorXd hyper_log(RowRef base, RowRef q) {
  const double m = -minkowski(base, q);  // cosh of the distance
  const double d = std::acosh(std::max(1.0, m));
  if (d < 1e-12) return Eigen::RowVectorXd::Zero(base.size());
  Eigen::RowVectorXd perp = q - m * base;  // tangent projection of q at base
  const double pn = std::sqrt(std::max(minkowski(perp, perp), 0.0));
  if (pn < 1e-300) return Eigen::RowVectorXd::Zero(base.size());
  return (d / pn) * perp;
}

Eigen::RowVectorXd sphere_transport(RowRef from, RowRef to, RowRef v) {
  const double c = from.dot(to);
  if (c <= -1.0 + 1e-12)
    throw ValidationError("parallel_transport: antipodal sphere points, transport undefined");
  return v - (to.dot(v) / (1.0 + c)) * (from + to);
}

Eigen::RowVectorXd hyper_transport(RowRef from, RowRef to, RowRef v) {
  const double alpha = -minkowski(from, to);
  const double num = minkowski(to, v) - alpha * minkowski(from, v);
  return v + (num / (alpha + 1.0)) * (from + to);
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Sphere: return "sphere";
    case Kind::Hyperboloid: return "hyperboloid";
    case Kind::Euclidean: return "euclidean";
  }
  return "?";
}

Kind kind_from_name(const std::string& s) {
  if (s == "sphere") return Kind::Sphere;
  if (s == "hyperboloid") return Kind::Hyperboloid;
  if (s == "euclidean") return Kind::Euclidean;
  throw ValidationError("signature: unknown component kind \"" + s + "\"");
}

std::string task_name(Task t) {
  return t == Task::Classification ? "classification" : "regression";
}

Task task_from_name(const std::string& s) {
  if (s == "classification") return Task::Classification;
  if (s == "regression") return Task::Regression;
  throw ValidationError("task: expected \"classification\" or \"regression\", got \"" + s + "\"");
}

void ComponentSpec::validate() const {
  if (dim < 1) throw ValidationError("signature: component dim must be >= 1");
  switch (kind) {
    case Kind::Sphere:
      if (!(curvature > 0))
        throw ValidationError("signature: sphere component requires curvature > 0");
      break;
    case Kind::Hyperboloid:
      if (!(curvature < 0))
        throw ValidationError("signature: hyperboloid component requires curvature < 0");
      break;
    case Kind::Euclidean:
      if (curvature != 0)
        throw ValidationError("signature: euclidean component requires curvature = 0");
      break;
  }
}

int Signature::ambient_dim() const {
  int a = 0;
  for (const auto& c : components) a += c.ambient_dim();
  return a;
}

int Signature::intrinsic_dim() const {
  int d = 0;
  for (const auto& c : components) d += c.dim;
  return d;
}

int Signature::column_offset(int component) const {
  int off = 0;
  for (int i = 0; i < component; ++i) off += components[i].ambient_dim();
  return off;
}

int Signature::component_of_column(int col) const {
  int off = 0;
  for (size_t i = 0; i < components.size(); ++i) {
    off += components[i].ambient_dim();
    if (col < off) return static_cast<int>(i);
  }
  throw ValidationError("signature: column index out of range");
}

std::string Signature::short_name() const {
  std::ostringstream os;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) os << "x";
    const auto& c = components[i];
    switch (c.kind) {
      case Kind::Sphere: os << "S"; break;
      case Kind::Hyperboloid: os << "H"; break;
      case Kind::Euclidean: os << "E"; break;
    }
    os << c.dim;
    const double ak = c.abs_curvature();
    if (c.kind != Kind::Euclidean && ak != 1.0) os << "(K=" << c.curvature << ")";
  }
  return os.str();
}

void Signature::validate() const {
  if (components.empty()) throw ValidationError("signature: needs at least one component");
  for (const auto& c : components) c.validate();
}

bool Signature::operator==(const Signature& o) const {
  if (components.size() != o.components.size()) return false;
  for (size_t i = 0; i < components.size(); ++i) {
    const auto& a = components[i];
    const auto& b = o.components[i];
    if (a.kind != b.kind || a.dim != b.dim || a.curvature != b.curvature) return false;
  }
  return true;
}

double dot(RowRef u, RowRef v) {
  check_len(u.size(), v.size(), "dot");
  double s = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double minkowski(RowRef u, RowRef v) {
  check_len(u.size(), v.size(), "minkowski");
  if (u.size() < 1) throw ValidationError("minkowski: vectors must be non-empty");
  double s = -u[0] * v[0];
  for (Eigen::Index i = 1; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double constraint_residual(const ComponentSpec& c, RowRef x) {
  check_len(x.size(), c.ambient_dim(), "constraint_residual");
  switch (c.kind) {
    case Kind::Sphere:
      // ||x|| = 1/K, checked as |K*||x|| - 1|
      return std::abs(c.curvature * x.norm() - 1.0);
    case Kind::Hyperboloid: {
      // <x,x>_L = -1/K^2 and x0 > 0. The defect is measured relative to the
      // leading term x0^2: the Minkowski form cancels two O(cosh^2) terms, so
      // far points cannot meet an absolute 1e-8 in double precision even
      // when they sit on the surface to machine accuracy.
      const double K2 = c.curvature * c.curvature;
      const double lead = std::max(1.0, K2 * x[0] * x[0]);
      const double r = std::abs(K2 * minkowski(x, x) + 1.0) / lead;
      if (!(x[0] > 0)) return std::max(r, 1.0);
      return r;
    }
    case Kind::Euclidean: return std::abs(x[0] - 1.0);
  }
  return 0.0;
}

double tangency_residual(const ComponentSpec& c, RowRef base, RowRef v) {
  check_len(v.size(), c.ambient_dim(), "tangency_residual");
  if (c.kind == Kind::Euclidean) return std::abs(v[0]);
  // orthogonality defect relative to the largest cancelling term
  const double K2 = c.curvature * c.curvature;
  double lead = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    lead = std::max(lead, std::abs(base[i] * v[i]));
  const double ip = c.kind == Kind::Sphere ? dot(base, v) : minkowski(base, v);
  return std::abs(ip) * K2 / std::max(1.0, K2 * lead);
}

double distance(const ComponentSpec& c, RowRef u, RowRef v) {
  require_on_manifold(c, u, "distance");
  require_on_manifold(c, v, "distance");
  if ((u.array() == v.array()).all()) return 0.0;  // acos/acosh lose ~1e-8 at coincidence
  switch (c.kind) {
    case Kind::Euclidean: {
      // The lifted coordinate cancels; measure the D real coordinates.
      double s = 0.0;
      for (Eigen::Index i = 1; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Kind::Sphere: {
      const double K = c.curvature;
      return std::acos(clampd(K * K * dot(u, v), -1.0, 1.0)) / K;
    }
    case Kind::Hyperboloid: {
      const double K = c.curvature;
      return std::acosh(std::max(1.0, -K * K * minkowski(u, v))) / c.abs_curvature();
    }
  }
  return 0.0;
}

double product_distance(const Signature& sig, RowRef u, RowRef v) {
  check_len(u.size(), sig.ambient_dim(), "product_distance");
  check_len(v.size(), sig.ambient_dim(), "product_distance");
  double s = 0.0;
  int off = 0;
  for (const auto& c : sig.components) {
    const int a = c.ambient_dim();
    const double d = distance(c, u.segment(off, a), v.segment(off, a));
    s += d * d;
    off += a;
  }
  return std::sqrt(s);
}

Eigen::RowVectorXd component_origin(const ComponentSpec& c) {
  Eigen::RowVectorXd o = Eigen::RowVectorXd::Zero(c.ambient_dim());
  o[0] = c.kind == Kind::Euclidean ? 1.0 : 1.0 / c.abs_curvature();
  return o;
}

Eigen::RowVectorXd origin_row(const Signature& sig) {
  Eigen::RowVectorXd o(sig.ambient_dim());
  int off = 0;
  for (const auto& c : sig.components) {
    o.segment(off, c.ambient_dim()) = component_origin(c);
    off += c.ambient_dim();
  }
  return o;
}

Eigen::RowVectorXd exp_map(const ComponentSpec& c, RowRef base, RowRef v) {
  require_on_manifold(c, base, "exp_map");
  require_tangent(c, base, v, "exp_map");
  if (c.kind == Kind::Euclidean) return base + v;
  const double s = unit_scale(c);
  const Eigen::RowVectorXd ub = s * base;
  const Eigen::RowVectorXd uv = s * v;
  Eigen::RowVectorXd out =
      c.kind == Kind::Sphere ? sphere_exp(ub, uv) : hyper_exp(ub, uv);
  return out / s;
}

Eigen::RowVectorXd log_map(const ComponentSpec& c, RowRef base, RowRef q) {
  require_on_manifold(c, base, "log_map");
  require_on_manifold(c, q, "log_map");
  if (c.kind == Kind::Euclidean) return q - base;
  const double s = unit_scale(c);
  const Eigen::RowVectorXd ub = s * base;
  const Eigen::RowVectorXd uq = s * q;
  Eigen::RowVectorXd out =
      c.kind == Kind::Sphere ? sphere_log(ub, uq) : hyper_log(ub, uq);
  return out / s;
}

Eigen::RowVectorXd parallel_transport(const ComponentSpec& c, RowRef from, RowRef to, RowRef v) {
  require_on_manifold(c, from, "parallel_transport");
  require_on_manifold(c, to, "parallel_transport");
  require_tangent(c, from, v, "parallel_transport");
  if (c.kind == Kind::Euclidean) return v;
  const double s = unit_scale(c);
  const Eigen::RowVectorXd uf = s * from;
  const Eigen::RowVectorXd ut = s * to;
  const Eigen::RowVectorXd uv = s * v;
  Eigen::RowVectorXd out =
      c.kind == Kind::Sphere ? sphere_transport(uf, ut, uv) : hyper_transport(uf, ut, uv);
  return out / s;
}

Eigen::RowVectorXd product_log(const Signature& sig, RowRef base, RowRef q) {
  check_len(base.size(), sig.ambient_dim(), "product_log");
  check_len(q.size(), sig.ambient_dim(), "product_log");
  Eigen::RowVectorXd out(sig.ambient_dim());
  int off = 0;
  for (const auto& c : sig.components) {
    const int a = c.ambient_dim();
    out.segment(off, a) = log_map(c, base.segment(off, a), q.segment(off, a));
    off += a;
  }
  return out;
}

Eigen::RowVectorXd geodesic_point(const Signature& sig, RowRef p, RowRef q, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ValidationError("geodesic_point: t must lie in [0, 1]");
  check_len(p.size(), sig.ambient_dim(), "geodesic_point");
  check_len(q.size(), sig.ambient_dim(), "geodesic_point");
  Eigen::RowVectorXd out(sig.ambient_dim());
  int off = 0;
  for (const auto& c : sig.components) {
    const int a = c.ambient_dim();
    const Eigen::RowVectorXd v = log_map(c, p.segment(off, a), q.segment(off, a));
    out.segment(off, a) = exp_map(c, p.segment(off, a), t * v);
    off += a;
  }
  return out;
}

std::vector<Violation> validate(const PointBatch& batch) {
  batch.signature.validate();
  if (batch.coords.cols() != batch.signature.ambient_dim())
    throw ValidationError("validate: coords have " + std::to_string(batch.coords.cols()) +
                          " columns, signature needs " +
                          std::to_string(batch.signature.ambient_dim()));
  std::vector<Violation> out;
  for (Eigen::Index r = 0; r < batch.rows(); ++r) {
    int off = 0;
    for (size_t ci = 0; ci < batch.signature.components.size(); ++ci) {
      const auto& c = batch.signature.components[ci];
      RowRef x = batch.coords.row(r).segment(off, c.ambient_dim());
      switch (c.kind) {
        case Kind::Sphere: {
          const double res = std::abs(c.curvature * x.norm() - 1.0);
          if (res > kConstraintTol) out.push_back({r, (int)ci, "sphere-norm", res});
          break;
        }
        case Kind::Hyperboloid: {
          const double K2 = c.curvature * c.curvature;
          const double res = std::abs(K2 * minkowski(x, x) + 1.0) / std::max(1.0, K2 * x[0] * x[0]);
          if (res > kConstraintTol) out.push_back({r, (int)ci, "minkowski-norm", res});
          if (!(x[0] > 0)) out.push_back({r, (int)ci, "timelike-sign", -x[0]});
          break;
        }
        case Kind::Euclidean: {
          const double res = std::abs(x[0] - 1.0);
          if (res > kConstraintTol) out.push_back({r, (int)ci, "lift-coordinate", res});
          break;
        }
      }
      off += c.ambient_dim();
    }
  }
  return out;
}

std::vector<Violation> validate(const TangentBatch& batch) {
  batch.signature.validate();
  const int A = batch.signature.ambient_dim();
  if (batch.base.size() != A || batch.vectors.cols() != A)
    throw ValidationError("validate: tangent batch shape does not match signature");
  std::vector<Violation> out;
  for (Eigen::Index r = 0; r < batch.vectors.rows(); ++r) {
    int off = 0;
    for (size_t ci = 0; ci < batch.signature.components.size(); ++ci) {
      const auto& c = batch.signature.components[ci];
      const double res = tangency_residual(c, batch.base.segment(off, c.ambient_dim()),
                                           batch.vectors.row(r).segment(off, c.ambient_dim()));
      if (res > kConstraintTol) out.push_back({r, (int)ci, "tangency", res});
      off += c.ambient_dim();
    }
  }
  return out;
}

}  // namespace geoforest
