#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kr/generators.hpp"
#include "kr/lp.hpp"
#include "test_support.hpp"

using namespace kr;

TEST_CASE("exponent config") {
  CHECK(LpConfig(1.0).conjugate() == kInf);
  CHECK(LpConfig(2.0).conjugate() == 2.0);
  CHECK(LpConfig(1.5).conjugate() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(LpConfig(3.0).conjugate() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(LpConfig(1.0).inv_conjugate() == 0.0);
  CHECK(LpConfig(2.0).inv_conjugate() == 0.5);
  CHECK_THROWS_AS(LpConfig(0.5), std::invalid_argument);
}

TEST_CASE("norms on the three point space") {
  auto space = test::s3();
  LpFunction f(space, {0.0, 1.0, 3.0});
  CHECK(lp_norm(f, LpConfig(1.0)) == 4.0);
  CHECK(lp_norm(f, LpConfig(2.0)) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  LpFunction g(space, {0.0, -1.0, -3.0});
  CHECK(lp_norm(g, LpConfig(1.0)) == 4.0);
  CHECK(lp_distance(f, g, LpConfig(1.0)) == 8.0);
}

TEST_CASE("constant function norm on a probability space") {
  auto space = make_circle_grid(64);
  LpFunction one(space, std::vector<double>(64, 1.0));
  for (double p : {1.0, 1.5, 2.0, 3.0})
    CHECK(lp_norm(one, LpConfig(p)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distance is a metric on random functions") {
  auto space = make_random_cloud(40, 2, 3);
  auto f = random_function(space, 2.0, 1);
  auto g = random_function(space, 2.0, 2);
  auto h = random_function(space, 2.0, 3);
  const LpConfig cfg(1.5);
  CHECK(lp_distance(f, g, cfg) == lp_distance(g, f, cfg));
  CHECK(lp_distance(f, h, cfg) <=
        lp_distance(f, g, cfg) + lp_distance(g, h, cfg) + 1e-12);
  CHECK(lp_distance(f, f, cfg) == 0.0);
}

TEST_CASE("mask zeroes the complement exactly") {
  auto space = test::s3();
  LpFunction f(space, {2.0, 4.0, 6.0});
  auto set = PointSet::of(3, {0, 2});
  auto m = mask(f, set);
  CHECK(m[0] == 2.0);
  CHECK(m[1] == 0.0);
  CHECK(m[2] == 6.0);
}

TEST_CASE("tail norm is the norm off the set") {
  auto space = test::s3();
  LpFunction f(space, {2.0, 4.0, 6.0});
  auto E = PointSet::of(3, {0, 1});
  CHECK(tail_norm(f, E, LpConfig(1.0)) == 6.0);
  CHECK(tail_norm(f, PointSet::all(3), LpConfig(1.0)) == 0.0);
  CHECK(tail_norm(f, E, LpConfig(1.0)) ==
        lp_norm(mask(f, E.complement()), LpConfig(1.0)));
}

TEST_CASE("support finds nonzero points") {
  auto space = test::s3();
  LpFunction f(space, {0.0, 1e-14, 6.0});
  CHECK(support(f).indices() == std::vector<std::size_t>{1, 2});
  CHECK(support(f, 1e-12).indices() == std::vector<std::size_t>{2});
}

TEST_CASE("translation on a periodic grid") {
  auto space = make_circle_grid(16);
  std::vector<double> v(16);
  for (std::size_t i = 0; i < 16; ++i) v[i] = static_cast<double>(i);
  LpFunction f(space, v);

  auto shifted = translate(f, 1);
  CHECK(shifted[1] == f[0]);
  CHECK(shifted[0] == f[15]);

  // Round trip is exact: the values are only permuted.
  auto back = translate(shifted, -1);
  CHECK(back.values() == f.values());

  // Full revolution is the identity.
  CHECK(translate(f, 16).values() == f.values());

  // Norm invariance up to re-summation order.
  auto g = random_function(space, 3.0, 9);
  for (double p : {1.0, 2.0, 3.0}) {
    const double a = lp_norm(g, LpConfig(p));
    const double b = lp_norm(translate(g, 5), LpConfig(p));
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + a));
  }
}

TEST_CASE("translation requires a periodic grid") {
  auto space = test::s3();
  LpFunction f(space, {0.0, 1.0, 3.0});
  CHECK_THROWS_AS(translate(f, 1), std::invalid_argument);
}

TEST_CASE("families share one space and expose members") {
  auto space = test::s3();
  FunctionFamily fam(space, {{0.0, 1.0, 3.0}, {1.0, 1.0, 1.0}});
  CHECK(fam.count() == 2);
  CHECK(fam.member(1).values() == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(family_bound(fam, LpConfig(1.0)) == 4.0);

  auto fns = std::vector<LpFunction>{fam.member(0), fam.member(1)};
  auto rebuilt = FunctionFamily::from_functions(fns);
  CHECK(rebuilt.count() == 2);
  CHECK(rebuilt.member_values() == fam.member_values());

  CHECK_THROWS_AS(FunctionFamily(space, {}), std::invalid_argument);
  CHECK_THROWS_AS(FunctionFamily(space, {{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LpFunction(space, {1.0}), std::invalid_argument);
}
