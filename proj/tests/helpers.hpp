#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "roughkit/chen.hpp"
#include "roughkit/lift.hpp"
#include "roughkit/types.hpp"

namespace testutil {

using roughkit::GridPath;
using roughkit::LevyIncrements;
using roughkit::MatrixXd;
using roughkit::RoughPathGrid;
using roughkit::VectorXd;

inline GridPath random_path(std::mt19937_64& rng, int n, int m,
                            double scale = 1.0, bool uneven_grid = false) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  GridPath path;
  double t = 0.0;
  VectorXd x = VectorXd::Zero(m);
  path.times.push_back(t);
  path.values.push_back(x);
  for (int i = 0; i < n; ++i) {
    t += uneven_grid ? unif(rng) / n : 1.0 / n;
    for (int j = 0; j < m; ++j) x(j) += scale * gauss(rng) / std::sqrt(double(n));
    path.times.push_back(t);
    path.values.push_back(x);
  }
  return path;
}

inline RoughPathGrid random_geometric(std::mt19937_64& rng, int n, int m,
                                      double alpha = 0.4) {
  return roughkit::lift_piecewise_linear(random_path(rng, n, m), alpha);
}

// Valid by construction (only adjacent blocks are stored; all other second
// level values come from Chen), generally non-geometric.
inline RoughPathGrid random_nongeometric(std::mt19937_64& rng, int n, int m,
                                         double alpha = 0.4) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridPath path = random_path(rng, n, m);
  LevyIncrements area;
  for (int i = 0; i < n; ++i) {
    MatrixXd blk(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) blk(r, c) = gauss(rng) / n;
    area.blocks.push_back(blk);
  }
  return RoughPathGrid(std::move(path), std::move(area), alpha);
}

// Exhaustive partition supremum, feasible for n <= ~14 intervals. weight(i, j)
// returns the summand of the block [t_i, t_j].
template <typename Weight>
double brute_force_partition_sup(int n, Weight weight) {
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    double sum = 0.0;
    int prev = 0;
    for (int k = 1; k <= n; ++k) {
      if (k == n || (mask >> (k - 1)) & 1u) {
        sum += weight(prev, k);
        prev = k;
      }
    }
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace testutil
