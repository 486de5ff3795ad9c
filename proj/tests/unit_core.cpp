#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "roughkit/chen.hpp"

using namespace roughkit;
using testutil::random_geometric;
using testutil::random_nongeometric;

TEST_CASE("grid path validation") {
  GridPath p;
  p.times = {0.0, 0.5, 0.25};
  p.values = {VectorXd::Zero(1), VectorXd::Zero(1), VectorXd::Zero(1)};
  CHECK_THROWS_AS(p.validate(), Error);
  p.times = {0.0, 0.5, 1.0};
  CHECK_NOTHROW(p.validate());
  p.values[1](0) = std::nan("");
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("second-level accumulation on adjacent intervals") {
  // scalar path with increments 2 then 3 and parabola-consistent blocks
  GridPath path;
  path.times = {0.0, 1.0, 2.0};
  path.values = {VectorXd::Constant(1, 0.0), VectorXd::Constant(1, 2.0),
                 VectorXd::Constant(1, 5.0)};
  LevyIncrements area;
  area.blocks = {MatrixXd::Constant(1, 1, 2.0), MatrixXd::Constant(1, 1, 4.5)};
  RoughPathGrid rp(path, area, 0.4);

  CHECK(chen_extend(rp, 1, 1).norm() == 0.0);
  // X_{0,2} = 2 + 4.5 + 2*3 = 12.5 = (2+3)^2 / 2
  CHECK(chen_extend(rp, 0, 2)(0, 0) == doctest::Approx(12.5).epsilon(1e-15));
}

TEST_CASE("straight line through three points has no enclosed area") {
  GridPath path;
  VectorXd dir(2);
  dir << 1.0, 2.0;
  path.times = {0.0, 0.4, 1.0};
  path.values = {0.0 * dir, 0.4 * dir, 1.0 * dir};
  const RoughPathGrid rp = lift_piecewise_linear(path, 0.4);
  const MatrixXd X = chen_extend(rp, 0, 2);
  CHECK((X - X.transpose()).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("prefix cache agrees with direct accumulation") {
  std::mt19937_64 rng(11);
  const RoughPathGrid rp = random_nongeometric(rng, 20, 2);
  ChenPrefix pre(rp);
  for (int i = 0; i <= 20; ++i)
    for (int j = i; j <= 20; ++j)
      CHECK((pre.block(i, j) - chen_extend(rp, i, j)).norm() <= 1e-12);
}

TEST_CASE("additivity of the second level over split points") {
  std::mt19937_64 rng(7);
  const RoughPathGrid rp = random_nongeometric(rng, 12, 3);
  for (int i = 0; i <= 12; ++i)
    for (int k = i; k <= 12; ++k)
      for (int j = k; j <= 12; ++j) {
        const MatrixXd lhs = chen_extend(rp, i, j);
        const MatrixXd rhs = chen_extend(rp, i, k) + chen_extend(rp, k, j) +
                             rp.path.increment(i, k) *
                                 rp.path.increment(k, j).transpose();
        CHECK((lhs - rhs).norm() <= rp.tol.tol_chen);
      }
}

TEST_CASE("consistency defect of a generated table is zero") {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 3; ++m) {
    const RoughPathGrid rp = random_nongeometric(rng, 16, m);
    auto table = dense_area_from_chen(rp);
    CHECK(chen_residual(rp, table) <= rp.tol.tol_chen);

    // perturbing a single interior entry must surface in the defect
    table[3][5] += MatrixXd::Constant(m, m, 1e-3);
    CHECK(chen_residual(rp, table) >= 1e-3);
  }
}

TEST_CASE("symmetric part of the canonical lift") {
  std::mt19937_64 rng(5);
  const RoughPathGrid rp = random_geometric(rng, 24, 2);
  CHECK(rp.geometric);
  CHECK(geometric_defect(rp) <= rp.tol.tol_chen);
  for (int i = 0; i < 24; i += 5)
    for (int j = i + 1; j <= 24; j += 3) {
      const VectorXd dx = rp.path.increment(i, j);
      const MatrixXd X = chen_extend(rp, i, j);
      const MatrixXd sym = 0.5 * (X + X.transpose());
      CHECK((sym - 0.5 * dx * dx.transpose()).norm() <= 1e-12);
    }
}

TEST_CASE("remainder of simple controlled paths") {
  std::mt19937_64 rng(13);
  const RoughPathGrid rp = random_geometric(rng, 10, 2);

  // y = x with identity derivative: remainder vanishes on every pair
  ControlledGridPath y;
  y.width = 1;
  for (int i = 0; i <= 10; ++i) {
    y.values.push_back(rp.path.values[i]);
    y.gubinelli.push_back(MatrixXd::Identity(2, 2));
  }
  for (int i = 0; i <= 10; ++i)
    for (int j = i; j <= 10; ++j)
      CHECK(remainder(y, rp, i, j).norm() <= 1e-14);

  // pure drift t * v with zero derivative: remainder is the increment itself
  VectorXd v(2);
  v << 2.0, -1.0;
  ControlledGridPath z;
  z.width = 1;
  for (int i = 0; i <= 10; ++i) {
    z.values.push_back(rp.path.times[i] * v);
    z.gubinelli.push_back(MatrixXd::Zero(2, 2));
  }
  for (int i = 0; i <= 10; ++i)
    for (int j = i; j <= 10; ++j) {
      const VectorXd want = (rp.path.times[j] - rp.path.times[i]) * v;
      CHECK((remainder(z, rp, i, j) - want).norm() <= 1e-14);
    }
}

TEST_CASE("remainder cochain identity") {
  std::mt19937_64 rng(17);
  const RoughPathGrid rp = random_geometric(rng, 9, 2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ControlledGridPath y;
  y.width = 1;
  for (int i = 0; i <= 9; ++i) {
    VectorXd val(2);
    MatrixXd gub(2, 2);
    for (int r = 0; r < 2; ++r) {
      val(r) = gauss(rng);
      for (int c = 0; c < 2; ++c) gub(r, c) = gauss(rng);
    }
    y.values.push_back(val);
    y.gubinelli.push_back(gub);
  }
  for (int i = 0; i <= 9; ++i)
    for (int k = i; k <= 9; ++k)
      for (int j = k; j <= 9; ++j) {
        const MatrixXd lhs = remainder(y, rp, i, j) - remainder(y, rp, i, k) -
                             remainder(y, rp, k, j);
        const MatrixXd rhs =
            (y.gubinelli[k] - y.gubinelli[i]) * rp.path.increment(k, j);
        CHECK((lhs - rhs).norm() <= 1e-12);
      }
}

TEST_CASE("range checks reject out-of-bound indices") {
  std::mt19937_64 rng(1);
  const RoughPathGrid rp = random_geometric(rng, 6, 1);
  CHECK_THROWS_AS(chen_extend(rp, 2, 9), Error);
  CHECK_THROWS_AS(chen_extend(rp, -1, 3), Error);
  CHECK_THROWS_AS(checked_range(GridRange(4, 2), rp.path.points()), Error);
}
