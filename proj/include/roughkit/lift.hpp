#pragma once

#include <cstdint>
#include <functional>

#include "roughkit/types.hpp"

namespace roughkit {

// Canonical lift of the piecewise-linear interpolant: adjacent blocks are
// (1/2) dx (x) dx, exact for a linear segment. Always geometric.
RoughPathGrid lift_piecewise_linear(const GridPath& path, double alpha,
                                    Tolerances tol = {});

// Closed-form area provider X_{s,t} for times s <= t.
using AreaFormula = std::function<MatrixXd(double s, double t)>;

// Lift with externally supplied areas; rejects formulas whose dense table
// violates Chen's relation beyond tol.tol_chen.
RoughPathGrid lift_analytic(const GridPath& path, const AreaFormula& area,
                            double alpha, bool geometric = false,
                            Tolerances tol = {});

struct FbmSpec {
  double hurst = 0.4;     // in (1/3, 1/2]
  double horizon = 1.0;   // T > 0
  int n = 0;              // number of intervals
  std::uint64_t seed = 0;

  void validate() const;
};

// m independent fBm components on the uniform grid over [0, horizon],
// covariance R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2. Circulant
// embedding when n is a power of two and the embedding is nonnegative
// definite, dense Cholesky otherwise (capped at cholesky_cap intervals).
GridPath sample_fbm(const FbmSpec& spec, int m, int cholesky_cap = 4096);

// Counter-based standard normal, keyed by (seed, component, index).
// Deterministic regardless of evaluation order.
double counter_normal(std::uint64_t seed, std::uint64_t component, std::uint64_t index);

}  // namespace roughkit
