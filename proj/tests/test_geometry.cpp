#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoforest/geometry.hpp"
#include "test_util.hpp"

using namespace geoforest;
using testutil::random_batch;
using testutil::random_component_point;
using testutil::random_point;
using testutil::random_log_safe_tangent;
using testutil::random_tangent;

namespace {
Eigen::RowVectorXd rv(std::initializer_list<double> xs) {
  Eigen::RowVectorXd v((Eigen::Index)xs.size());
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
}  // namespace

TEST_CASE("dot product") {
  CHECK(dot(rv({1, 0}), rv({0, 1})) == 0.0);
  CHECK(dot(rv({1, 2}), rv({3, 4})) == 11.0);
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  for (int it = 0; it < 50; ++it) {
    Eigen::RowVectorXd u(5);
    for (int i = 0; i < 5; ++i) u[i] = nd(gen);
    CHECK(dot(u, u) == doctest::Approx(u.norm() * u.norm()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(dot(rv({1, 2}), rv({1, 2, 3})), ValidationError);
}

TEST_CASE("minkowski product") {
  CHECK(minkowski(rv({1, 0}), rv({1, 0})) == -1.0);
  CHECK(minkowski(rv({0, 1}), rv({0, 1})) == 1.0);
  CHECK(minkowski(rv({std::cosh(1.0), std::sinh(1.0)}), rv({1, 0})) ==
        doctest::Approx(-std::cosh(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(minkowski(rv({1}), rv({1, 2})), ValidationError);
}

TEST_CASE("component distances") {
  ComponentSpec sphere{Kind::Sphere, 2, 1.0};
  CHECK(distance(sphere, rv({1, 0, 0}), rv({0, 1, 0})) == doctest::Approx(kPi / 2));
  ComponentSpec hyper{Kind::Hyperboloid, 1, -1.0};
  CHECK(distance(hyper, rv({std::cosh(1.0), std::sinh(1.0)}), rv({1, 0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  std::mt19937_64 gen(2);
  for (const auto& c : {ComponentSpec{Kind::Sphere, 3, 1.0}, ComponentSpec{Kind::Hyperboloid, 3, -1.0},
                        ComponentSpec{Kind::Euclidean, 3, 0.0}, ComponentSpec{Kind::Sphere, 2, 2.0},
                        ComponentSpec{Kind::Hyperboloid, 2, -0.5}}) {
    for (int it = 0; it < 20; ++it) {
      const auto u = random_component_point(c, gen);
      CHECK(distance(c, u, u) <= 1e-9);
    }
  }
  // off-manifold input rejected
  CHECK_THROWS_AS(distance(sphere, rv({1.1, 0, 0}), rv({0, 1, 0})), ValidationError);
}

TEST_CASE("product distance") {
  const Signature one = testutil::sig_sphere();
  std::mt19937_64 gen(3);
  const auto u = random_point(one, gen);
  const auto v = random_point(one, gen);
  CHECK(product_distance(one, u, v) ==
        doctest::Approx(distance(one.components[0], u, v)).epsilon(1e-14));
  CHECK(product_distance(one, u, u) <= 1e-9);

  // two components at geodesic distances 3 and 4 combine to 5
  Signature two{{{Kind::Hyperboloid, 2, -1.0}, {Kind::Sphere, 2, 1.0}}};
  Eigen::RowVectorXd p = origin_row(two);
  Eigen::RowVectorXd q(two.ambient_dim());
  Eigen::RowVectorXd vh = rv({0, 3, 0});
  Eigen::RowVectorXd vs = rv({0, 2.0, 0});  // sphere arc length 2 stays short of pi
  q.segment(0, 3) = exp_map(two.components[0], p.segment(0, 3), vh);
  q.segment(3, 3) = exp_map(two.components[1], p.segment(3, 3), vs);
  CHECK(product_distance(two, p, q) ==
        doctest::Approx(std::sqrt(9.0 + 4.0)).epsilon(1e-10));
}

TEST_CASE("origin") {
  CHECK((component_origin({Kind::Sphere, 2, 2.0}) - rv({0.5, 0, 0})).norm() == 0.0);
  CHECK((component_origin({Kind::Hyperboloid, 2, -1.0}) - rv({1, 0, 0})).norm() == 0.0);
  CHECK((component_origin({Kind::Euclidean, 2, 0.0}) - rv({1, 0, 0})).norm() == 0.0);
}

TEST_CASE("exp map") {
  ComponentSpec sphere{Kind::Sphere, 1, 1.0};
  CHECK((exp_map(sphere, rv({1, 0}), rv({0, 0})) - rv({1, 0})).norm() == 0.0);
  const auto anti = exp_map(sphere, rv({1, 0}), rv({0, kPi}));
  CHECK(anti[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(anti[1]) < 1e-12);
  ComponentSpec hyper{Kind::Hyperboloid, 1, -1.0};
  const double t = 0.8;
  const auto h = exp_map(hyper, rv({1, 0}), rv({0, t}));
  CHECK(h[0] == doctest::Approx(std::cosh(t)).epsilon(1e-12));
  CHECK(h[1] == doctest::Approx(std::sinh(t)).epsilon(1e-12));
  // non-tangent input rejected
  CHECK_THROWS_AS(exp_map(sphere, rv({1, 0}), rv({1, 1})), ValidationError);
  // outputs stay on the manifold
  std::mt19937_64 gen(4);
  for (const auto& c : {ComponentSpec{Kind::Sphere, 3, 2.0}, ComponentSpec{Kind::Hyperboloid, 3, -0.5},
                        ComponentSpec{Kind::Euclidean, 3, 0.0}}) {
    for (int it = 0; it < 30; ++it) {
      const auto base = random_component_point(c, gen);
      const auto v = random_tangent(c, base, gen);
      CHECK(constraint_residual(c, exp_map(c, base, v)) <= 1e-8);
    }
  }
}

TEST_CASE("log map") {
  ComponentSpec sphere{Kind::Sphere, 2, 1.0};
  const auto z = log_map(sphere, rv({1, 0, 0}), rv({1, 0, 0}));
  CHECK(z.norm() == 0.0);
  CHECK_THROWS_AS(log_map(sphere, rv({1, 0, 0}), rv({-1, 0, 0})), ValidationError);

  std::mt19937_64 gen(5);
  for (const auto& c : {ComponentSpec{Kind::Sphere, 3, 1.0}, ComponentSpec{Kind::Sphere, 2, 2.0},
                        ComponentSpec{Kind::Hyperboloid, 3, -1.0},
                        ComponentSpec{Kind::Hyperboloid, 2, -2.0},
                        ComponentSpec{Kind::Euclidean, 3, 0.0}}) {
    for (int it = 0; it < 40; ++it) {
      const auto base = random_component_point(c, gen);
      const auto q = random_component_point(c, gen);
      const auto v = log_map(c, base, q);
      // exp(log) round-trip
      const auto back = exp_map(c, base, v);
      CHECK((back - q).norm() <= 1e-8 * std::max(1.0, q.norm()));
      // tangent norm equals geodesic distance
      const double tn = c.kind == Kind::Hyperboloid
                            ? std::sqrt(std::max(0.0, minkowski(v, v)))
                            : v.norm();
      CHECK(tn == doctest::Approx(distance(c, base, q)).epsilon(1e-9));
      // log(exp) round-trip on a fresh tangent
      const auto w = random_log_safe_tangent(c, base, gen, 0.7);
      const auto p2 = exp_map(c, base, w);
      const auto w2 = log_map(c, base, p2);
      CHECK((w2 - w).norm() <= 1e-8 * std::max(1.0, w.norm()));
    }
  }
}

TEST_CASE("parallel transport") {
  std::mt19937_64 gen(6);
  for (const auto& c : {ComponentSpec{Kind::Sphere, 3, 1.0}, ComponentSpec{Kind::Sphere, 2, 0.5},
                        ComponentSpec{Kind::Hyperboloid, 3, -1.0},
                        ComponentSpec{Kind::Hyperboloid, 2, -2.0},
                        ComponentSpec{Kind::Euclidean, 3, 0.0}}) {
    for (int it = 0; it < 40; ++it) {
      const auto from = random_component_point(c, gen);
      const auto to = random_component_point(c, gen);
      const auto v = random_tangent(c, from, gen);
      // identity when endpoints coincide
      CHECK((parallel_transport(c, from, from, v) - v).norm() <= 1e-12 * std::max(1.0, v.norm()));
      const auto w = parallel_transport(c, from, to, v);
      CHECK(tangency_residual(c, to, w) <= 1e-8);
      const auto ip = [&](RowRef a, RowRef b) {
        return c.kind == Kind::Hyperboloid ? minkowski(a, b) : dot(a, b);
      };
      CHECK(ip(w, w) == doctest::Approx(ip(v, v)).epsilon(1e-8));
    }
  }
  // euclidean transport leaves the vector untouched
  ComponentSpec euc{Kind::Euclidean, 3, 0.0};
  const auto v = rv({0, 1.5, -2.0, 0.25});
  CHECK((parallel_transport(euc, rv({1, 0, 0, 0}), rv({1, 3, 4, 5}), v) - v).norm() == 0.0);
  // non-tangent input rejected
  ComponentSpec sphere{Kind::Sphere, 2, 1.0};
  CHECK_THROWS_AS(parallel_transport(sphere, rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 0, 0})),
                  ValidationError);
}

TEST_CASE("geodesic point") {
  const Signature sig = testutil::sig_mixed();
  std::mt19937_64 gen(7);
  for (int it = 0; it < 30; ++it) {
    const auto p = random_point(sig, gen, 0.8);
    const auto q = random_point(sig, gen, 0.8);
    CHECK((geodesic_point(sig, p, q, 0.0) - p).norm() <= 1e-8);
    CHECK((geodesic_point(sig, p, q, 1.0) - q).norm() <= 1e-8);
    const auto mid = geodesic_point(sig, p, q, 0.5);
    CHECK(product_distance(sig, p, mid) ==
          doctest::Approx(0.5 * product_distance(sig, p, q)).epsilon(1e-6));
    PointBatch b{sig, mid};
    CHECK(validate(b).empty());
  }
  CHECK_THROWS_AS(geodesic_point(sig, random_point(sig, gen), random_point(sig, gen), 1.5),
                  ValidationError);
}

TEST_CASE("validate batches") {
  const Signature sig = testutil::sig_mixed();
  PointBatch origins{sig, RowMatrix(origin_row(sig))};
  CHECK(validate(origins).empty());

  PointBatch bad{testutil::sig_sphere(), RowMatrix(rv({1.01, 0, 0}))};
  const auto violations = validate(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].row == 0);
  CHECK(violations[0].component == 0);
  CHECK(violations[0].constraint == "sphere-norm");
  CHECK(violations[0].residual == doctest::Approx(0.01));

  // tangent batch tangency
  std::mt19937_64 gen(8);
  TangentBatch tb;
  tb.signature = sig;
  tb.base = random_point(sig, gen);
  tb.vectors.resize(5, sig.ambient_dim());
  for (int i = 0; i < 5; ++i) {
    int off = 0;
    for (const auto& c : sig.components) {
      tb.vectors.row(i).segment(off, c.ambient_dim()) =
          random_tangent(c, tb.base.segment(off, c.ambient_dim()), gen);
      off += c.ambient_dim();
    }
  }
  CHECK(validate(tb).empty());
  tb.vectors(0, 0) += 0.5;  // break tangency in the sphere slice
  CHECK(validate(tb).size() == 1);
}

TEST_CASE("metric properties") {
  std::mt19937_64 gen(9);
  for (const auto& c : {ComponentSpec{Kind::Sphere, 3, 1.0}, ComponentSpec{Kind::Hyperboloid, 3, -1.0},
                        ComponentSpec{Kind::Euclidean, 3, 0.0}}) {
    for (int it = 0; it < 1000; ++it) {
      const auto u = random_component_point(c, gen);
      const auto v = random_component_point(c, gen);
      const auto w = random_component_point(c, gen);
      CHECK(distance(c, u, v) == distance(c, v, u));  // symmetric formulas, exact
      CHECK(distance(c, u, w) <= distance(c, u, v) + distance(c, v, w) + 1e-9);
    }
  }
}
