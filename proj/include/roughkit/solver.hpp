#pragma once

#include "roughkit/fields.hpp"
#include "roughkit/types.hpp"

namespace roughkit {

struct SolveReport {
  GridPath solution;                  // R^d values on the partition grid
  std::vector<MatrixXd> gubinelli;    // g(y_t), one d x m matrix per point
  std::string scheme;
  std::vector<int> partition;         // grid indices of rp used as steps
  std::vector<double> diagnostics;    // per-step remainder magnitudes

  ControlledGridPath as_controlled() const;
};

struct MatrixPath {
  std::vector<double> times;
  std::vector<MatrixXd> values;
};

// Restriction of a rough path to a subset of its grid points (area blocks
// recombined through Chen's relation; exact).
RoughPathGrid restrict_rough_path(const RoughPathGrid& rp,
                                  const std::vector<int>& indices);

// Time reversal: x~_u = x_{b-u} on the mirrored grid with blocks
// X~ = -X_{b-t,b-s} + x_{b-t,b-s} (x) x_{b-t,b-s}. An exact involution.
RoughPathGrid reverse_rough_path(const RoughPathGrid& rp);

// Explicit third-order one-step scheme
//   y <- y + f(y) dt + g(y) dx + Dg(y)g(y) X.
// partition empty means "every grid point of rp".
SolveReport solve_davie(const RoughPathGrid& rp, const VectorFieldPair& vf,
                        const VectorXd& y_a, std::vector<int> partition = {});

// Davie iteration specialized to linear diffusion g(y) = C y + g0.
SolveReport solve_linear(const RoughPathGrid& rp, const LinearDiffusion& lin,
                         const DriftField& drift, const VectorXd& y_a,
                         std::vector<int> partition = {});

// Drift-free equation dy = g(y) dx.
SolveReport solve_pure_rough(const RoughPathGrid& rp, const Diffusion& g,
                             const VectorXd& y_a, std::vector<int> partition = {});

// Backward equation h_b = h_t + int_t^b g(h_u) dx_u, solved on the reversed
// rough path; returns h on the original time axis.
SolveReport solve_backward(const RoughPathGrid& rp, const Diffusion& g,
                           const VectorXd& h_b, std::vector<int> partition = {});

// Matrix solution of d xi = Dg(y_t) xi dx_t along a solved trajectory.
MatrixPath solve_linearized(const RoughPathGrid& rp, const SolveReport& y,
                            const Diffusion& g, const MatrixXd& xi_a,
                            std::vector<int> partition = {});

// Doss-Sussmann splitting: drift-free rough flow plus a classical 4th-order
// step for the transformed ODE, restarted at every partition point.
SolveReport solve_doss_sussmann(const RoughPathGrid& rp, const VectorFieldPair& vf,
                                const VectorXd& y_a, std::vector<int> partition = {},
                                double max_condition = 1e12);

}  // namespace roughkit
