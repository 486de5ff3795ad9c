#pragma once

#include <functional>
#include <string>
#include <variant>

#include "roughkit/types.hpp"

namespace roughkit {

// Drift f: R^d -> R^d, globally Lipschitz.
struct DriftField {
  std::function<VectorXd(const VectorXd&)> f;
  double lipschitz = 1.0;   // C_f, strictly positive
  double f0 = 0.0;          // ||f(0)||
};

DriftField zero_drift(int d);
// f(y) = A y + b.
DriftField linear_drift(const MatrixXd& A, const VectorXd& b);

// g(y) = C y + g0 with C in L(R^d, L(R^m, R^d)); C[k] = dg/dy_k (d x m).
struct LinearDiffusion {
  std::vector<MatrixXd> C;
  MatrixXd g0;
  double norm_C() const;   // Frobenius norm of the full tensor
};

// C^3-bounded diffusion with directional derivative evaluators.
struct BoundedDiffusion {
  std::function<MatrixXd(const VectorXd&)> g;
  std::function<MatrixXd(const VectorXd&, const VectorXd&)> Dg;
  std::function<MatrixXd(const VectorXd&, const VectorXd&, const VectorXd&)> D2g;
  std::function<MatrixXd(const VectorXd&, const VectorXd&, const VectorXd&,
                         const VectorXd&)> D3g;
  double sup_g = 0.0;
  double cg = 0.0;   // max of the derivative sup norms
};

class Diffusion {
 public:
  Diffusion() = default;
  Diffusion(LinearDiffusion lin, int d, int m);
  Diffusion(BoundedDiffusion bnd, int d, int m);

  int d() const { return d_; }
  int m() const { return m_; }
  bool is_linear() const { return std::holds_alternative<LinearDiffusion>(impl_); }
  const LinearDiffusion& linear() const { return std::get<LinearDiffusion>(impl_); }

  MatrixXd g(const VectorXd& y) const;
  MatrixXd Dg(const VectorXd& y, const VectorXd& h) const;
  MatrixXd D2g(const VectorXd& y, const VectorXd& h1, const VectorXd& h2) const;
  double cg() const;

  // Milstein-type tensor Dg(y)g(y), laid out d x (m*m) with column k*m + j
  // holding Dg(y)[g(y) e_j](., k); contracts against area blocks via
  // contract_area.
  MatrixXd milstein_tensor(const VectorXd& y) const;
  // Tensor of u -> Dg(y_u) xi_u for a fixed matrix xi (columns treated
  // independently): column vector version, see solver.
  MatrixXd zero_like_gubinelli() const { return MatrixXd::Zero(d_, m_ * m_); }

 private:
  std::variant<LinearDiffusion, BoundedDiffusion> impl_;
  int d_ = 0;
  int m_ = 0;
};

struct VectorFieldPair {
  DriftField drift;
  Diffusion diffusion;
};

// Field construction from a JSON spec string; supports Linear{C, g0} plus
// the named bounded catalog ("sin", "tanh", "rotation") with analytic
// derivative evaluators and recorded constants.
VectorFieldPair field_from_json(const std::string& json_text);

// Built-in catalog entries, also reachable from JSON by name.
Diffusion make_sin_diffusion(int d, int m, double amplitude = 1.0);
Diffusion make_tanh_diffusion(int d, int m, double amplitude = 1.0);
Diffusion make_rotation_diffusion(double rate);  // d = 2, m = 1, linear
Diffusion make_scalar_linear_diffusion(double c, double g0);

}  // namespace roughkit
