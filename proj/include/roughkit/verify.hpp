#pragma once

#include <functional>
#include <map>

#include "roughkit/greedy.hpp"
#include "roughkit/solver.hpp"

namespace roughkit {

// One audited inequality: lhs computed from a solve, rhs from the closed-form
// a-priori estimate. pass <=> margin >= 0. advisory marks runs where the
// greedy partition overshot its threshold on some step, so the closed-form
// count bound no longer certifies N and a failure is informational.
struct BoundCheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  bool advisory = false;
  std::map<std::string, double> inputs;

  void finish() {
    margin = rhs - lhs;
    pass = margin >= 0.0;
  }
};

// Supremum and p-variation estimates for dy = f(y)dt + (Cy + g0)dx,
// audited against a full-grid solve. Threshold gamma = 1/(4 C_p ||C||).
std::vector<BoundCheckReport> bound_linear(const RoughPathGrid& rp,
                                           const LinearDiffusion& lin,
                                           const DriftField& drift,
                                           const VectorXd& y_a);

// Same pair of estimates for bounded diffusion, gamma = 1/(4 C_p C_g).
std::vector<BoundCheckReport> bound_nonlinear(const RoughPathGrid& rp,
                                              const VectorFieldPair& vf,
                                              const VectorXd& y_a);

enum class ContinuityVariant { linear, pure, nonlinear };

// Initial-condition continuity: solve twice and compare the difference path
// against the variant's closed-form modulus.
std::vector<BoundCheckReport> bound_continuity(const RoughPathGrid& rp,
                                               const VectorFieldPair& vf,
                                               const VectorXd& y_a,
                                               const VectorXd& ty_a,
                                               ContinuityVariant variant);

// Factor C(x) entering the drift-free greedy threshold, and the resulting
// greedy scan with gamma = 1/(8 C_p C_g C(x)).
double continuity_factor(const RoughPathGrid& rp, double cg);
GreedyResult greedy_pure(const RoughPathGrid& rp, double cg);

// Lambda(x, r0) entering the uniqueness-type modulus and its greedy scan
// with gamma = 1/(8 C_p C_g Lambda).
double uniqueness_factor(const RoughPathGrid& rp, const VectorFieldPair& vf,
                         double r0);

struct JacobianDirectionCheck {
  int direction = 0;
  double r_eps = 0.0;       // defect at eps
  double r_half = 0.0;      // defect at eps/2
  double ratio = 0.0;       // r_eps / r_half, ~4 for a second-order defect
  bool noise_floor = false;
  bool exact_zero = false;  // affine flow, defect vanishes identically
};

struct JacobianReport {
  double eps = 0.0;
  std::vector<JacobianDirectionCheck> directions;
  bool pass = false;        // all ratios in [2.6, 6] (or exact zero / noise)
};

// Finite-difference audit of the matrix solution of the linearized equation:
// r(eps) = ||phi(y_a + eps e_i) - phi(y_a) - eps xi_i||_inf should be O(eps^2).
JacobianReport check_jacobian(const RoughPathGrid& rp, const Diffusion& g,
                              const VectorXd& y_a, double eps);

struct FlowLipschitzReport {
  double nbar = 0.0;             // measured greedy count
  double nbar_bound = 0.0;       // closed-form upper bound on nbar
  double jacobian_sup = 0.0;     // max ||xi_t|| over all tested starts
  double jacobian_bound = 0.0;   // e^{log(2) nbar}
  double empirical_lipschitz = 0.0;  // max ratio ||dxi|| / ||dy_a||
  bool pass = false;
};

// Audits ||d phi / d y|| <= e^{log(2) nbar} across a sample of starting
// points and reports the empirical Lipschitz constant of the Jacobian map.
FlowLipschitzReport check_flow_lipschitz(
    const RoughPathGrid& rp, const Diffusion& g,
    const std::vector<std::pair<VectorXd, VectorXd>>& start_pairs);

struct ConvergenceTable {
  std::vector<int> sizes;
  std::vector<double> mesh;
  std::vector<double> error;
  double order = 0.0;   // least-squares slope of log(error) vs log(mesh)
};

// Runs error_for_n over the given grid sizes and fits the convergence order.
// Zero or non-finite errors are kept in the table but excluded from the fit.
ConvergenceTable convergence_study(const std::function<double(int)>& error_for_n,
                                   const std::vector<int>& sizes, double horizon);

}  // namespace roughkit
