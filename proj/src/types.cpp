#include "roughkit/types.hpp"

#include <cmath>

namespace roughkit {

GridPath::GridPath(std::vector<double> t, std::vector<VectorXd> v)
    : times(std::move(t)), values(std::move(v)) {
  validate();
}

void GridPath::validate() const {
  if (times.size() != values.size())
    fail(ErrorCode::invalid_argument, "GridPath: times/values length mismatch");
  if (times.size() < 2)
    fail(ErrorCode::invalid_argument, "GridPath: need at least 2 grid points");
  const int m = static_cast<int>(values[0].size());
  for (size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      fail(ErrorCode::invalid_argument, "GridPath: non-finite time");
    if (i > 0 && times[i] <= times[i - 1])
      fail(ErrorCode::invalid_argument, "GridPath: times not strictly increasing");
    if (values[i].size() != m)
      fail(ErrorCode::dimension_mismatch, "GridPath: inconsistent value dimension");
    if (!values[i].allFinite())
      fail(ErrorCode::invalid_argument, "GridPath: non-finite value");
  }
}

VectorXd GridPath::increment(int i, int j) const {
  if (i < 0 || j < i || j >= points())
    fail(ErrorCode::index_out_of_range, "GridPath::increment: bad indices");
  return values[j] - values[i];
}

void Tolerances::validate() const {
  if (tol_chen <= 0 || tol_solve <= 0)
    fail(ErrorCode::invalid_argument, "Tolerances must be strictly positive");
  if (sewing_constant_p < 0 || sewing_constant_alpha < 0)
    fail(ErrorCode::invalid_argument, "sewing constants must be positive");
  if (sewing_constant_p > 0 && sewing_constant_p <= 1)
    fail(ErrorCode::invalid_argument, "sewing_constant_p must exceed 1");
  if (sewing_constant_alpha > 0 && sewing_constant_alpha <= 1)
    fail(ErrorCode::invalid_argument, "sewing_constant_alpha must exceed 1");
}

double default_sewing_constant(double alpha) {
  return 1.0 / (1.0 - std::pow(2.0, 1.0 - 3.0 * alpha));
}

RoughPathGrid::RoughPathGrid(GridPath path_, LevyIncrements area_, double alpha_,
                             bool geometric_, Tolerances tol_)
    : path(std::move(path_)),
      area(std::move(area_)),
      alpha(alpha_),
      p(1.0 / alpha_),
      q(0.5 / alpha_),
      geometric(geometric_),
      tol(tol_) {
  validate();
}

void RoughPathGrid::validate() const {
  path.validate();
  tol.validate();
  if (!(alpha > 1.0 / 3.0 && alpha < 0.5))
    fail(ErrorCode::invalid_argument, "alpha must lie in (1/3, 1/2)");
  if (area.count() != path.intervals())
    fail(ErrorCode::invalid_argument,
         "area block count must equal path interval count");
  const int m = path.dim();
  for (const auto& b : area.blocks) {
    if (b.rows() != m || b.cols() != m)
      fail(ErrorCode::dimension_mismatch, "area block has wrong shape");
    if (!b.allFinite())
      fail(ErrorCode::invalid_argument, "area block has non-finite entries");
  }
}

void ControlledGridPath::validate(const RoughPathGrid& rp) const {
  if (points() != rp.path.points())
    fail(ErrorCode::dimension_mismatch,
         "controlled path length must match driver grid");
  if (gubinelli.size() != values.size())
    fail(ErrorCode::dimension_mismatch, "values/gubinelli length mismatch");
  const int m = rp.dim();
  const int gub_cols = width == 1 ? m : width * m;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].cols() != width)
      fail(ErrorCode::dimension_mismatch, "controlled value has wrong width");
    if (gubinelli[i].rows() != values[i].rows() || gubinelli[i].cols() != gub_cols)
      fail(ErrorCode::dimension_mismatch, "gubinelli derivative has wrong shape");
    if (!values[i].allFinite() || !gubinelli[i].allFinite())
      fail(ErrorCode::invalid_argument, "controlled path has non-finite entries");
  }
}

MatrixXd apply_gubinelli(const MatrixXd& gub, const VectorXd& x, int width) {
  const int m = static_cast<int>(x.size());
  if (width == 1) {
    if (gub.cols() != m)
      fail(ErrorCode::dimension_mismatch, "gubinelli/driver dimension mismatch");
    return gub * x;
  }
  MatrixXd out(gub.rows(), width);
  for (int k = 0; k < width; ++k)
    out.col(k) = gub.middleCols(k * m, m) * x;
  return out;
}

VectorXd contract_area(const MatrixXd& gub, const MatrixXd& X) {
  const int m = static_cast<int>(X.rows());
  const int width = static_cast<int>(gub.cols()) / m;
  VectorXd out = VectorXd::Zero(gub.rows());
  for (int k = 0; k < width; ++k)
    for (int j = 0; j < m; ++j)
      out += gub.col(k * m + j) * X(j, k);
  return out;
}

GridRange checked_range(GridRange r, int n_points, int min_points) {
  const int last = r.resolve_last(n_points);
  if (r.first < 0 || last >= n_points || last - r.first + 1 < min_points)
    fail(ErrorCode::index_out_of_range, "grid range out of bounds or too short");
  return {r.first, last};
}

}  // namespace roughkit
