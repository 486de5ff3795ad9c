#include "roughkit/solver.hpp"

#include <cmath>

#include "roughkit/chen.hpp"

namespace roughkit {

ControlledGridPath SolveReport::as_controlled() const {
  ControlledGridPath y;
  y.width = 1;
  y.values.reserve(solution.points());
  y.gubinelli = gubinelli;
  for (const auto& v : solution.values) y.values.push_back(v);
  return y;
}

RoughPathGrid restrict_rough_path(const RoughPathGrid& rp,
                                  const std::vector<int>& indices) {
  if (indices.size() < 2)
    fail(ErrorCode::invalid_argument, "restrict_rough_path: need >= 2 indices");
  GridPath path;
  LevyIncrements area;
  for (size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || i >= rp.path.points() || (k > 0 && i <= indices[k - 1]))
      fail(ErrorCode::index_out_of_range, "restrict_rough_path: bad index set");
    path.times.push_back(rp.path.times[i]);
    path.values.push_back(rp.path.values[i]);
    if (k > 0) area.blocks.push_back(chen_extend(rp, indices[k - 1], i));
  }
  return RoughPathGrid(std::move(path), std::move(area), rp.alpha, rp.geometric,
                       rp.tol);
}

RoughPathGrid reverse_rough_path(const RoughPathGrid& rp) {
  const int n = rp.intervals();
  const double a = rp.path.times.front();
  const double b = rp.path.times.back();
  GridPath path;
  LevyIncrements area;
  for (int k = 0; k <= n; ++k) {
    path.times.push_back(a + b - rp.path.times[n - k]);
    path.values.push_back(rp.path.values[n - k]);
  }
  for (int k = 0; k < n; ++k) {
    const int orig = n - 1 - k;
    const VectorXd dx = rp.path.increment(orig, orig + 1);
    area.blocks.push_back(-rp.area.blocks[orig] + dx * dx.transpose());
  }
  return RoughPathGrid(std::move(path), std::move(area), rp.alpha, rp.geometric,
                       rp.tol);
}

namespace {

std::vector<int> full_partition(const RoughPathGrid& rp) {
  std::vector<int> idx(rp.path.points());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return idx;
}

void check_finite(const VectorXd& y, int step) {
  if (!y.allFinite())
    fail(ErrorCode::numerical_failure,
         "solver: non-finite state at step " + std::to_string(step));
}

SolveReport davie_iterate(const RoughPathGrid& sub, const VectorFieldPair& vf,
                          const VectorXd& y_a, std::vector<int> partition,
                          const std::string& scheme) {
  if (y_a.size() != vf.diffusion.d())
    fail(ErrorCode::dimension_mismatch, "solver: initial value dimension mismatch");
  if (sub.dim() != vf.diffusion.m())
    fail(ErrorCode::dimension_mismatch, "solver: driver dimension mismatch");
  SolveReport rep;
  rep.scheme = scheme;
  rep.partition = std::move(partition);
  rep.solution.times = sub.path.times;
  rep.solution.values.resize(sub.path.points());
  rep.gubinelli.resize(sub.path.points());
  VectorXd y = y_a;
  rep.solution.values[0] = y;
  rep.gubinelli[0] = vf.diffusion.g(y);
  for (int k = 0; k < sub.intervals(); ++k) {
    const double dt = sub.path.times[k + 1] - sub.path.times[k];
    const VectorXd dx = sub.path.increment(k, k + 1);
    const MatrixXd gy = rep.gubinelli[k];
    const VectorXd area_term =
        contract_area(vf.diffusion.milstein_tensor(y), sub.area.blocks[k]);
    const VectorXd incr = vf.drift.f(y) * dt + gy * dx + area_term;
    y += incr;
    check_finite(y, k);
    rep.solution.values[k + 1] = y;
    rep.gubinelli[k + 1] = vf.diffusion.g(y);
    rep.diagnostics.push_back((incr - gy * dx).norm());
  }
  return rep;
}

}  // namespace

SolveReport solve_davie(const RoughPathGrid& rp, const VectorFieldPair& vf,
                        const VectorXd& y_a, std::vector<int> partition) {
  if (partition.empty()) partition = full_partition(rp);
  const RoughPathGrid sub =
      partition.size() == static_cast<size_t>(rp.path.points())
          ? rp
          : restrict_rough_path(rp, partition);
  return davie_iterate(sub, vf, y_a, std::move(partition), "davie");
}

SolveReport solve_linear(const RoughPathGrid& rp, const LinearDiffusion& lin,
                         const DriftField& drift, const VectorXd& y_a,
                         std::vector<int> partition) {
  VectorFieldPair vf;
  vf.drift = drift;
  const int d = static_cast<int>(y_a.size());
  const int m = static_cast<int>(lin.g0.cols());
  vf.diffusion = Diffusion(lin, d, m);
  auto rep = solve_davie(rp, vf, y_a, std::move(partition));
  rep.scheme = "linear";
  return rep;
}

SolveReport solve_pure_rough(const RoughPathGrid& rp, const Diffusion& g,
                             const VectorXd& y_a, std::vector<int> partition) {
  VectorFieldPair vf;
  vf.drift = zero_drift(g.d());
  vf.diffusion = g;
  auto rep = solve_davie(rp, vf, y_a, std::move(partition));
  rep.scheme = "pure";
  return rep;
}

SolveReport solve_backward(const RoughPathGrid& rp, const Diffusion& g,
                           const VectorXd& h_b, std::vector<int> partition) {
  const RoughPathGrid rev = reverse_rough_path(rp);
  const int n = rp.path.points();
  std::vector<int> rev_partition;
  if (!partition.empty()) {
    for (auto it = partition.rbegin(); it != partition.rend(); ++it)
      rev_partition.push_back(n - 1 - *it);
  }
  SolveReport fwd = solve_pure_rough(rev, g, h_b, std::move(rev_partition));
  SolveReport rep;
  rep.scheme = "backward";
  rep.partition = std::move(partition);
  const int pts = fwd.solution.points();
  const double a = rp.path.times.front();
  const double b = rp.path.times.back();
  rep.solution.times.resize(pts);
  rep.solution.values.resize(pts);
  rep.gubinelli.resize(pts);
  for (int k = 0; k < pts; ++k) {
    rep.solution.times[k] = a + b - fwd.solution.times[pts - 1 - k];
    rep.solution.values[k] = fwd.solution.values[pts - 1 - k];
    rep.gubinelli[k] = fwd.gubinelli[pts - 1 - k];
  }
  rep.diagnostics.assign(fwd.diagnostics.rbegin(), fwd.diagnostics.rend());
  return rep;
}

namespace {

// One linearized Davie step applied to every column of xi:
//   xi <- xi + Dg(y)[xi c] dx + sum_j M_j(c) X(j, .)  per column c,
// with M_j = D2g(y)[g(y)e_j, xi c] + Dg(y)[(Dg(y)[xi c]) e_j].
MatrixXd linearized_step(const Diffusion& g, const VectorXd& y, const MatrixXd& xi,
                         const VectorXd& dx, const MatrixXd& X) {
  const int m = g.m();
  const MatrixXd gy = g.g(y);
  MatrixXd next = xi;
  for (int c = 0; c < xi.cols(); ++c) {
    const VectorXd v = xi.col(c);
    const MatrixXd Dgv = g.Dg(y, v);
    VectorXd incr = Dgv * dx;
    for (int j = 0; j < m; ++j) {
      const MatrixXd Mj = g.D2g(y, gy.col(j), v) + g.Dg(y, Dgv.col(j));
      incr += Mj * X.row(j).transpose();
    }
    next.col(c) += incr;
  }
  return next;
}

}  // namespace

MatrixPath solve_linearized(const RoughPathGrid& rp, const SolveReport& y,
                            const Diffusion& g, const MatrixXd& xi_a,
                            std::vector<int> partition) {
  if (partition.empty()) partition = full_partition(rp);
  const RoughPathGrid sub =
      partition.size() == static_cast<size_t>(rp.path.points())
          ? rp
          : restrict_rough_path(rp, partition);
  if (y.solution.points() != sub.path.points())
    fail(ErrorCode::dimension_mismatch,
         "solve_linearized: trajectory not on the partition grid");
  MatrixPath out;
  out.times = sub.path.times;
  out.values.resize(sub.path.points());
  MatrixXd xi = xi_a;
  out.values[0] = xi;
  for (int k = 0; k < sub.intervals(); ++k) {
    xi = linearized_step(g, y.solution.values[k], xi, sub.path.increment(k, k + 1),
                         sub.area.blocks[k]);
    if (!xi.allFinite())
      fail(ErrorCode::numerical_failure,
           "solve_linearized: non-finite state at step " + std::to_string(k));
    out.values[k + 1] = xi;
  }
  return out;
}

namespace {

// Drift-free flow and its Jacobian over grid indices [i0, i1], restarted
// from state z at index i0.
struct FlowResult {
  VectorXd value;
  MatrixXd jacobian;
};

FlowResult flow_with_jacobian(const RoughPathGrid& rp, const Diffusion& g,
                              const VectorXd& z, int i0, int i1) {
  FlowResult res{z, MatrixXd::Identity(z.size(), z.size())};
  for (int k = i0; k < i1; ++k) {
    const VectorXd dx = rp.path.increment(k, k + 1);
    const MatrixXd& X = rp.area.blocks[k];
    const MatrixXd next_jac = linearized_step(g, res.value, res.jacobian, dx, X);
    res.value += g.g(res.value) * dx +
                 contract_area(g.milstein_tensor(res.value), X);
    res.jacobian = next_jac;
  }
  return res;
}

VectorXd transformed_rhs(const RoughPathGrid& rp, const VectorFieldPair& vf,
                         const VectorXd& z, int i0, int i1, double max_condition) {
  const FlowResult fl = flow_with_jacobian(rp, vf.diffusion, z, i0, i1);
  Eigen::JacobiSVD<MatrixXd> svd(fl.jacobian,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0 || smax / smin > max_condition)
    fail(ErrorCode::singular_jacobian,
         "doss-sussmann: flow Jacobian is numerically singular");
  return svd.solve(vf.drift.f(fl.value));
}

}  // namespace

SolveReport solve_doss_sussmann(const RoughPathGrid& rp, const VectorFieldPair& vf,
                                const VectorXd& y_a, std::vector<int> partition,
                                double max_condition) {
  if (partition.empty()) partition = full_partition(rp);
  if (y_a.size() != vf.diffusion.d())
    fail(ErrorCode::dimension_mismatch, "solver: initial value dimension mismatch");
  SolveReport rep;
  rep.scheme = "doss-sussmann";
  rep.partition = partition;
  const int steps = static_cast<int>(partition.size()) - 1;
  rep.solution.times.resize(steps + 1);
  rep.solution.values.resize(steps + 1);
  rep.gubinelli.resize(steps + 1);
  VectorXd y = y_a;
  rep.solution.times[0] = rp.path.times[partition[0]];
  rep.solution.values[0] = y;
  rep.gubinelli[0] = vf.diffusion.g(y);
  for (int k = 0; k < steps; ++k) {
    const int a0 = partition[k];
    const int a1 = partition[k + 1];
    const int mid = a0 + (a1 - a0 + 1) / 2;
    const double h = rp.path.times[a1] - rp.path.times[a0];
    // stage 1 sees the identity flow, so F(t_k, z) = f(z) exactly
    const VectorXd k1 = vf.drift.f(y);
    const VectorXd k2 =
        transformed_rhs(rp, vf, y + 0.5 * h * k1, a0, mid, max_condition);
    const VectorXd k3 =
        transformed_rhs(rp, vf, y + 0.5 * h * k2, a0, mid, max_condition);
    const VectorXd k4 =
        transformed_rhs(rp, vf, y + h * k3, a0, a1, max_condition);
    const VectorXd z1 = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const FlowResult fl = flow_with_jacobian(rp, vf.diffusion, z1, a0, a1);
    const VectorXd prev = y;
    y = fl.value;
    check_finite(y, k);
    rep.solution.times[k + 1] = rp.path.times[a1];
    rep.solution.values[k + 1] = y;
    rep.gubinelli[k + 1] = vf.diffusion.g(y);
    rep.diagnostics.push_back(
        (y - prev - rep.gubinelli[k] * (rp.path.values[a1] - rp.path.values[a0]))
            .norm());
  }
  return rep;
}

}  // namespace roughkit
