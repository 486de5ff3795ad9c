#include "roughkit/chen.hpp"

#include <algorithm>
#include <cmath>

namespace roughkit {

MatrixXd chen_extend(const RoughPathGrid& rp, int i, int j) {
  const int n = rp.intervals();
  if (i < 0 || j < i || j > n)
    fail(ErrorCode::index_out_of_range, "chen_extend: bad indices");
  const int m = rp.dim();
  MatrixXd X = MatrixXd::Zero(m, m);
  for (int k = i; k < j; ++k) {
    X += rp.area.blocks[k];
    if (k > i)
      X += rp.path.increment(i, k) * rp.path.increment(k, k + 1).transpose();
  }
  return X;
}

ChenPrefix::ChenPrefix(const RoughPathGrid& rp, int base) : rp_(&rp), base_(base) {
  const int n = rp.path.points();
  if (base < 0 || base >= n)
    fail(ErrorCode::index_out_of_range, "ChenPrefix: bad base index");
  const int m = rp.dim();
  prefix_.resize(n - base);
  prefix_[0] = MatrixXd::Zero(m, m);
  for (int k = base; k < n - 1; ++k) {
    prefix_[k - base + 1] = prefix_[k - base] + rp.area.blocks[k];
    if (k > base)
      prefix_[k - base + 1] +=
          rp.path.increment(base, k) * rp.path.increment(k, k + 1).transpose();
  }
}

MatrixXd ChenPrefix::block(int i, int j) const {
  if (i < base_ || j < i || j - base_ >= static_cast<int>(prefix_.size()))
    fail(ErrorCode::index_out_of_range, "ChenPrefix::block: bad indices");
  MatrixXd X = prefix_[j - base_] - prefix_[i - base_];
  if (i > base_)
    X -= rp_->path.increment(base_, i) * rp_->path.increment(i, j).transpose();
  return X;
}

DenseAreaTable dense_area_from_chen(const RoughPathGrid& rp) {
  const int n = rp.path.points();
  DenseAreaTable table(n);
  for (int i = 0; i < n; ++i) {
    ChenPrefix pre(rp, i);
    table[i].resize(n - i);
    for (int j = i; j < n; ++j) table[i][j - i] = pre.block(i, j);
  }
  return table;
}

double chen_residual(const RoughPathGrid& rp, const DenseAreaTable& dense_area) {
  const int n = rp.path.points();
  const int m = rp.dim();
  if (static_cast<int>(dense_area.size()) != n)
    fail(ErrorCode::invalid_argument, "chen_residual: table has wrong shape");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(dense_area[i].size()) != n - i)
      fail(ErrorCode::invalid_argument, "chen_residual: missing table entries");

  // Flatten to contiguous per-component storage so the triple scan stays
  // a scalar loop; MatrixXd temporaries per triple would dominate runtime.
  std::vector<double> flat(static_cast<size_t>(n) * n * m * m, 0.0);
  const auto at = [&](int i, int j, int c) -> double& {
    return flat[(static_cast<size_t>(i) * n + j) * m * m + c];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MatrixXd& A = dense_area[i][j - i];
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) at(i, j, a * m + b) = A(a, b);
    }
  std::vector<double> vals(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) vals[static_cast<size_t>(i) * m + a] = rp.path.values[i](a);

  double worst_sq = 0.0;
  std::vector<double> dxik(m), dxkj(m);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      for (int a = 0; a < m; ++a)
        dxik[a] = vals[static_cast<size_t>(k) * m + a] - vals[static_cast<size_t>(i) * m + a];
      const double* Aik = &flat[(static_cast<size_t>(i) * n + k) * m * m];
      for (int j = k; j < n; ++j) {
        for (int b = 0; b < m; ++b)
          dxkj[b] = vals[static_cast<size_t>(j) * m + b] - vals[static_cast<size_t>(k) * m + b];
        const double* Aij = &flat[(static_cast<size_t>(i) * n + j) * m * m];
        const double* Akj = &flat[(static_cast<size_t>(k) * n + j) * m * m];
        double sq = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            const int c = a * m + b;
            const double d = Aij[c] - Aik[c] - Akj[c] - dxik[a] * dxkj[b];
            sq += d * d;
          }
        worst_sq = std::max(worst_sq, sq);
      }
    }
  return std::sqrt(worst_sq);
}

MatrixXd remainder(const ControlledGridPath& y, const RoughPathGrid& rp, int i, int j) {
  if (i < 0 || j < i || j >= rp.path.points())
    fail(ErrorCode::index_out_of_range, "remainder: bad indices");
  return y.values[j] - y.values[i] -
         apply_gubinelli(y.gubinelli[i], rp.path.increment(i, j), y.width);
}

double geometric_defect(const RoughPathGrid& rp) {
  const int n = rp.path.points();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    ChenPrefix pre(rp, i);
    for (int j = i; j < n; ++j) {
      const MatrixXd X = pre.block(i, j);
      const VectorXd dx = rp.path.increment(i, j);
      const MatrixXd defect = 0.5 * (X + X.transpose()) - 0.5 * dx * dx.transpose();
      worst = std::max(worst, defect.norm());
    }
  }
  return worst;
}

}  // namespace roughkit
