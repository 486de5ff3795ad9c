#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "roughkit/greedy.hpp"
#include "roughkit/norms.hpp"

using namespace roughkit;
using testutil::random_geometric;

namespace {

RoughPathGrid scalar_line(int n, double total, double alpha = 0.4) {
  GridPath p;
  for (int i = 0; i <= n; ++i) {
    p.times.push_back(double(i) / n);
    p.values.push_back(VectorXd::Constant(1, total * i / n));
  }
  return lift_piecewise_linear(p, alpha);
}

RoughPathGrid flat_path(int n, double alpha = 0.4) {
  GridPath p;
  for (int i = 0; i <= n; ++i) {
    p.times.push_back(double(i) / n);
    p.values.push_back(VectorXd::Zero(1));
  }
  return lift_piecewise_linear(p, alpha);
}

}  // namespace

TEST_CASE("single piece when the threshold dominates") {
  const RoughPathGrid flat = flat_path(10);
  const GreedyResult r = greedy_times_pvar(flat, 0.5);
  CHECK(r.count == 1);
  CHECK(r.taus.front() == 0.0);
  CHECK(r.taus.back() == 1.0);
  CHECK_FALSE(r.overshoot);

  const RoughPathGrid line = scalar_line(16, 1.0);
  const double whole = rough_pvar_norm(line);
  CHECK(greedy_times_pvar(line, whole * 1.01).count == 1);
}

TEST_CASE("linear path splits at the predicted grid point") {
  // for a straight line the gauge is exactly linear in the window length, so
  // a threshold of 0.55 * whole stops at the largest grid point below 0.55
  const RoughPathGrid line = scalar_line(64, 1e-3);
  const double whole = rough_pvar_norm(line);
  const GreedyResult r = greedy_times_pvar(line, 0.55 * whole);
  CHECK(r.count == 2);
  CHECK(r.taus[1] == doctest::Approx(35.0 / 64.0).epsilon(1e-12));
  CHECK_FALSE(r.overshoot);
}

TEST_CASE("pieces partition the range and saturate the gauge") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 8; ++trial) {
    const RoughPathGrid rp = random_geometric(rng, 60, 2);
    const double gamma = 0.3 + 0.1 * trial;
    const GreedyResult r = greedy_times_pvar(rp, gamma);

    // exhaustive cover, strictly increasing
    CHECK(r.indices.front() == 0);
    CHECK(r.indices.back() == 60);
    for (size_t k = 1; k < r.indices.size(); ++k)
      CHECK(r.indices[k] > r.indices[k - 1]);

    for (size_t k = 1; k < r.indices.size(); ++k) {
      const GridRange piece(r.indices[k - 1], r.indices[k]);
      if (!r.overshoot)
        CHECK(rough_pvar_norm(rp, piece) <= gamma + 1e-12);
      // non-final pieces cannot be extended by one grid point
      if (k + 1 < r.indices.size()) {
        const GridRange wider(r.indices[k - 1], r.indices[k] + 1);
        CHECK(rough_pvar_norm(rp, wider) > gamma - 1e-12);
      }
    }
  }
}

TEST_CASE("measured count never exceeds the closed-form bound") {
  std::mt19937_64 rng(31);
  int tested = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const RoughPathGrid rp = random_geometric(rng, 48, 1);
    for (double gamma : {0.25, 0.5, 1.0}) {
      const GreedyResult r = greedy_times_pvar(rp, gamma);
      if (r.overshoot) continue;
      CHECK(double(r.count) <= count_bound_pvar(rp, gamma) + 1e-12);
      ++tested;
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("count bound formula values") {
  const RoughPathGrid line = scalar_line(8, 1.0, 0.4);   // p = 2.5
  const double norm = rough_pvar_norm(line);
  CHECK(count_bound_pvar(line, norm) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(count_bound_pvar(line, 1e9) == doctest::Approx(1.0).epsilon(1e-9));

  // gamma 1/2 and unit norm: 1 + 2^p with p = 2.5
  GridPath unit;
  unit.times = {0.0, 1.0};
  unit.values = {VectorXd::Zero(1), VectorXd::Constant(1, 1.0)};
  LevyIncrements zero_area;
  zero_area.blocks = {MatrixXd::Zero(1, 1)};
  const RoughPathGrid rp(unit, zero_area, 0.4);
  CHECK(rough_pvar_norm(rp) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(count_bound_pvar(rp, 0.5) ==
        doctest::Approx(1.0 + std::pow(2.0, 2.5)).epsilon(1e-12));
}

TEST_CASE("length-gauge pieces for a constant path") {
  // gauge reduces to (t - tau)^{1 - 2 alpha}; solve for the piece length
  const double alpha = 0.4;
  const double gamma = 0.7;
  const RoughPathGrid flat = flat_path(100, alpha);
  const GreedyResult r = greedy_times_holder(flat, gamma);
  const double max_len = std::pow(gamma, 1.0 / (1.0 - 2.0 * alpha));
  for (size_t k = 1; k < r.taus.size(); ++k)
    CHECK(r.taus[k] - r.taus[k - 1] <= max_len + 1e-12);
  // each piece snaps to the largest grid multiple below the exact length
  const int per_piece = int(std::floor(max_len * 100.0 + 1e-9));
  CHECK(r.count == (100 + per_piece - 1) / per_piece);
}

TEST_CASE("halving the threshold never lowers the count") {
  std::mt19937_64 rng(32);
  const RoughPathGrid rp = random_geometric(rng, 40, 1);
  for (double gamma = 1.6; gamma > 0.1; gamma /= 2.0) {
    const int big = greedy_times_holder(rp, gamma).count;
    const int small = greedy_times_holder(rp, gamma / 2.0).count;
    CHECK(small >= big);
  }
}

TEST_CASE("length-gauge count bound formula") {
  const RoughPathGrid flat = flat_path(20, 0.4);
  // gamma -> infinity collapses the bound to 1
  CHECK(count_bound_holder(flat, 1e12, {}, 0.4, 0.45) ==
        doctest::Approx(1.0).epsilon(1e-6));
  // unit-length interval at gamma = 1: 2 + norm^{1/(nu - alpha)}
  std::mt19937_64 rng(33);
  const RoughPathGrid rp = random_geometric(rng, 16, 1, 0.4);
  const double nu = 0.45;
  const double nrm = rough_holder_norm(rp, nu, GridRange(0, 16));
  CHECK(count_bound_holder(rp, 1.0, {}, 0.4, nu) ==
        doctest::Approx(2.0 + std::pow(nrm, 1.0 / (nu - 0.4))).epsilon(1e-12));
  CHECK_THROWS_AS(count_bound_holder(rp, 1.0, {}, 0.45, 0.4), Error);
}

TEST_CASE("single oversized steps are flagged") {
  const RoughPathGrid line = scalar_line(4, 10.0);
  const GreedyResult r = greedy_times_pvar(line, 0.1);
  CHECK(r.overshoot);
  CHECK(r.count == 4);   // falls back to single grid steps
  CHECK_THROWS_AS(greedy_times_pvar(line, -1.0), Error);
}
