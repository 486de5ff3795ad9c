#include "roughkit/fields.hpp"

#include <cmath>
#include <memory>

#include <json.hpp>

namespace roughkit {

using nlohmann::json;

DriftField zero_drift(int) {
  DriftField d;
  d.f = [](const VectorXd& y) { return VectorXd::Zero(y.size()).eval(); };
  d.lipschitz = 1.0;   // (H1) requires C_f > 0; nominal value for f == 0
  d.f0 = 0.0;
  return d;
}

DriftField linear_drift(const MatrixXd& A, const VectorXd& b) {
  DriftField d;
  d.f = [A, b](const VectorXd& y) { return (A * y + b).eval(); };
  d.lipschitz = std::max(A.norm(), 1e-12);
  d.f0 = b.norm();
  return d;
}

double LinearDiffusion::norm_C() const {
  double sq = 0.0;
  for (const auto& Ck : C) sq += Ck.squaredNorm();
  return std::sqrt(sq);
}

Diffusion::Diffusion(LinearDiffusion lin, int d, int m)
    : impl_(std::move(lin)), d_(d), m_(m) {
  const auto& l = linear();
  if (static_cast<int>(l.C.size()) != d || l.g0.rows() != d || l.g0.cols() != m)
    fail(ErrorCode::dimension_mismatch, "LinearDiffusion: inconsistent shapes");
  for (const auto& Ck : l.C)
    if (Ck.rows() != d || Ck.cols() != m)
      fail(ErrorCode::dimension_mismatch, "LinearDiffusion: C block shape");
}

Diffusion::Diffusion(BoundedDiffusion bnd, int d, int m)
    : impl_(std::move(bnd)), d_(d), m_(m) {}

MatrixXd Diffusion::g(const VectorXd& y) const {
  if (is_linear()) {
    const auto& l = linear();
    MatrixXd out = l.g0;
    for (int k = 0; k < d_; ++k) out += y(k) * l.C[k];
    return out;
  }
  return std::get<BoundedDiffusion>(impl_).g(y);
}

MatrixXd Diffusion::Dg(const VectorXd& y, const VectorXd& h) const {
  if (is_linear()) {
    const auto& l = linear();
    MatrixXd out = MatrixXd::Zero(d_, m_);
    for (int k = 0; k < d_; ++k) out += h(k) * l.C[k];
    return out;
  }
  return std::get<BoundedDiffusion>(impl_).Dg(y, h);
}

MatrixXd Diffusion::D2g(const VectorXd& y, const VectorXd& h1,
                        const VectorXd& h2) const {
  if (is_linear()) return MatrixXd::Zero(d_, m_);
  return std::get<BoundedDiffusion>(impl_).D2g(y, h1, h2);
}

double Diffusion::cg() const {
  if (is_linear()) return linear().norm_C();
  return std::get<BoundedDiffusion>(impl_).cg;
}

MatrixXd Diffusion::milstein_tensor(const VectorXd& y) const {
  const MatrixXd gy = g(y);
  MatrixXd T(d_, m_ * m_);
  for (int j = 0; j < m_; ++j) {
    const MatrixXd A = Dg(y, gy.col(j));
    for (int k = 0; k < m_; ++k) T.col(k * m_ + j) = A.col(k);
  }
  return T;
}

namespace {

// Shared shape for the sin/tanh catalog fields: entry (i,j) is a scalar
// function of the single coordinate y_{(i+j) mod d}, phase-shifted so the
// columns are linearly independent.
struct CoordinateWise {
  int d, m;
  double amp;
  std::function<double(double)> f0, f1, f2, f3;

  int coord(int i, int j) const { return (i + j) % d; }
  double phase(int i, int j) const { return 0.7 * i + 0.3 * j; }

  MatrixXd eval(const VectorXd& y, int order, const VectorXd* h1 = nullptr,
                const VectorXd* h2 = nullptr, const VectorXd* h3 = nullptr) const {
    MatrixXd out(d, m);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < m; ++j) {
        const int k = coord(i, j);
        const double u = y(k) + phase(i, j);
        double v = 0.0;
        switch (order) {
          case 0: v = f0(u); break;
          case 1: v = f1(u) * (*h1)(k); break;
          case 2: v = f2(u) * (*h1)(k) * (*h2)(k); break;
          default: v = f3(u) * (*h1)(k) * (*h2)(k) * (*h3)(k); break;
        }
        out(i, j) = amp * v;
      }
    return out;
  }
};

Diffusion make_coordinatewise(int d, int m, double amplitude, double deriv_bound,
                              std::function<double(double)> f0,
                              std::function<double(double)> f1,
                              std::function<double(double)> f2,
                              std::function<double(double)> f3) {
  auto cw = std::make_shared<CoordinateWise>(
      CoordinateWise{d, m, amplitude, std::move(f0), std::move(f1), std::move(f2),
                     std::move(f3)});
  BoundedDiffusion bd;
  bd.g = [cw](const VectorXd& y) { return cw->eval(y, 0); };
  bd.Dg = [cw](const VectorXd& y, const VectorXd& h) { return cw->eval(y, 1, &h); };
  bd.D2g = [cw](const VectorXd& y, const VectorXd& h1, const VectorXd& h2) {
    return cw->eval(y, 2, &h1, &h2);
  };
  bd.D3g = [cw](const VectorXd& y, const VectorXd& h1, const VectorXd& h2,
                const VectorXd& h3) { return cw->eval(y, 3, &h1, &h2, &h3); };
  const double frob = amplitude * std::sqrt(static_cast<double>(d) * m);
  bd.sup_g = frob;
  bd.cg = deriv_bound * frob;
  return Diffusion(std::move(bd), d, m);
}

}  // namespace

Diffusion make_sin_diffusion(int d, int m, double amplitude) {
  return make_coordinatewise(
      d, m, amplitude, 1.0, [](double u) { return std::sin(u); },
      [](double u) { return std::cos(u); }, [](double u) { return -std::sin(u); },
      [](double u) { return -std::cos(u); });
}

Diffusion make_tanh_diffusion(int d, int m, double amplitude) {
  return make_coordinatewise(
      d, m, amplitude, 2.0, [](double u) { return std::tanh(u); },
      [](double u) {
        const double t = std::tanh(u);
        return 1.0 - t * t;
      },
      [](double u) {
        const double t = std::tanh(u);
        return -2.0 * t * (1.0 - t * t);
      },
      [](double u) {
        const double t = std::tanh(u);
        return -2.0 * (1.0 - t * t) * (1.0 - 3.0 * t * t);
      });
}

Diffusion make_rotation_diffusion(double rate) {
  LinearDiffusion lin;
  lin.C.resize(2);
  lin.C[0] = MatrixXd::Zero(2, 1);
  lin.C[0](1, 0) = rate;
  lin.C[1] = MatrixXd::Zero(2, 1);
  lin.C[1](0, 0) = -rate;
  lin.g0 = MatrixXd::Zero(2, 1);
  return Diffusion(std::move(lin), 2, 1);
}

Diffusion make_scalar_linear_diffusion(double c, double g0) {
  LinearDiffusion lin;
  lin.C.resize(1);
  lin.C[0] = MatrixXd::Constant(1, 1, c);
  lin.g0 = MatrixXd::Constant(1, 1, g0);
  return Diffusion(std::move(lin), 1, 1);
}

namespace {

MatrixXd matrix_from_json(const json& j, int rows, int cols, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(ErrorCode::invalid_argument, std::string("field spec: bad matrix ") + name);
  MatrixXd out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      fail(ErrorCode::invalid_argument, std::string("field spec: bad matrix ") + name);
    for (int c = 0; c < cols; ++c) out(r, c) = j[r][c].get<double>();
  }
  return out;
}

}  // namespace

VectorFieldPair field_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("field spec: ") + e.what());
  }
  const int d = j.value("d", 1);
  const int m = j.value("m", 1);
  if (d < 1 || m < 1)
    fail(ErrorCode::invalid_argument, "field spec: d and m must be >= 1");

  VectorFieldPair vf;

  const json jd = j.value("diffusion", json{{"type", "none"}});
  const std::string dtype = jd.value("type", "none");
  if (dtype == "linear") {
    LinearDiffusion lin;
    lin.C.resize(d, MatrixXd::Zero(d, m));
    if (jd.contains("C")) {
      const auto& jc = jd.at("C");
      if (static_cast<int>(jc.size()) != d)
        fail(ErrorCode::invalid_argument, "field spec: C must have d blocks");
      for (int k = 0; k < d; ++k) lin.C[k] = matrix_from_json(jc[k], d, m, "C");
    }
    lin.g0 = jd.contains("g0") ? matrix_from_json(jd.at("g0"), d, m, "g0")
                               : MatrixXd::Zero(d, m);
    vf.diffusion = Diffusion(std::move(lin), d, m);
  } else if (dtype == "none") {
    LinearDiffusion lin;
    lin.C.resize(d, MatrixXd::Zero(d, m));
    lin.g0 = MatrixXd::Zero(d, m);
    vf.diffusion = Diffusion(std::move(lin), d, m);
  } else if (dtype == "sin") {
    vf.diffusion = make_sin_diffusion(d, m, jd.value("amplitude", 1.0));
  } else if (dtype == "tanh") {
    vf.diffusion = make_tanh_diffusion(d, m, jd.value("amplitude", 1.0));
  } else if (dtype == "rotation") {
    if (d != 2 || m != 1)
      fail(ErrorCode::invalid_argument, "field spec: rotation needs d=2, m=1");
    vf.diffusion = make_rotation_diffusion(jd.value("rate", 1.0));
  } else {
    fail(ErrorCode::invalid_argument, "field spec: unknown diffusion type '" + dtype + "'");
  }

  const json jf = j.value("drift", json{{"type", "none"}});
  const std::string ftype = jf.value("type", "none");
  if (ftype == "none") {
    vf.drift = zero_drift(d);
  } else if (ftype == "linear") {
    const MatrixXd A = jf.contains("A") ? matrix_from_json(jf.at("A"), d, d, "A")
                                        : MatrixXd::Zero(d, d);
    VectorXd b = VectorXd::Zero(d);
    if (jf.contains("b"))
      for (int k = 0; k < d; ++k) b(k) = jf.at("b")[k].get<double>();
    vf.drift = linear_drift(A, b);
  } else {
    fail(ErrorCode::invalid_argument, "field spec: unknown drift type '" + ftype + "'");
  }
  if (jf.contains("lipschitz")) vf.drift.lipschitz = jf.at("lipschitz").get<double>();
  if (vf.drift.lipschitz <= 0)
    fail(ErrorCode::invalid_argument, "field spec: drift lipschitz must be > 0");
  return vf;
}

}  // namespace roughkit
