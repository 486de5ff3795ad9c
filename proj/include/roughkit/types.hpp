#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Error codes shared with the C API.
enum class ErrorCode {
  ok = 0,
  invalid_argument = 1,
  index_out_of_range = 2,
  dimension_mismatch = 3,
  io_error = 4,
  chen_violation = 5,
  numerical_failure = 6,
  singular_jacobian = 7,
  resource_limit = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// A continuous path sampled on a strictly increasing time grid.
// Holds driving paths x in R^m as well as solutions y in R^d.
struct GridPath {
  std::vector<double> times;       // length n+1, strictly increasing
  std::vector<VectorXd> values;    // same length, all entries finite

  GridPath() = default;
  GridPath(std::vector<double> t, std::vector<VectorXd> v);

  int intervals() const { return static_cast<int>(times.size()) - 1; }
  int points() const { return static_cast<int>(times.size()); }
  int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }

  VectorXd increment(int i, int j) const;   // x_{t_i, t_j}
  void validate() const;
};

// Second-level increments over adjacent grid intervals; blocks[i] covers
// [times[i], times[i+1]]. Arbitrary X_{s,t} come from Chen's relation.
struct LevyIncrements {
  std::vector<MatrixXd> blocks;   // n matrices, each m x m

  int count() const { return static_cast<int>(blocks.size()); }
  int dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].rows()); }
};

// Runtime tolerances and the sewing-lemma constants.
struct Tolerances {
  double tol_chen = 1e-10;
  double tol_solve = 1e-8;
  double sewing_constant_p = 0.0;      // 0 means "derive from alpha"
  double sewing_constant_alpha = 0.0;

  void validate() const;
};

// Default sewing constant (1 - 2^{1-3a})^{-1} for exponent a in (1/3, 1/2).
double default_sewing_constant(double alpha);

// Discrete stand-in for a level-2 rough path (x, X) with exponent metadata.
struct RoughPathGrid {
  GridPath path;
  LevyIncrements area;
  double alpha = 0.0;      // in (1/3, 1/2)
  double p = 0.0;          // 1/alpha
  double q = 0.0;          // p/2
  bool geometric = false;
  Tolerances tol;

  RoughPathGrid() = default;
  RoughPathGrid(GridPath path, LevyIncrements area, double alpha,
                bool geometric = false, Tolerances tol = {});

  int intervals() const { return path.intervals(); }
  int dim() const { return path.dim(); }
  void validate() const;

  double sewing_p() const {
    return tol.sewing_constant_p > 0 ? tol.sewing_constant_p
                                     : default_sewing_constant(alpha);
  }
  double sewing_alpha() const {
    return tol.sewing_constant_alpha > 0 ? tol.sewing_constant_alpha
                                         : default_sewing_constant(alpha);
  }
};

// A path controlled by the driver grid: values y and Gubinelli derivative y'.
//
// Two layouts share the struct. Vector-valued paths have width = 1, values
// of size d x 1 and gubinelli of size d x m. Matrix-valued integrands have
// width = m, values of size d x m and gubinelli of size d x (m*m) storing
// the 3-tensor y'(i, k, j) at column k*m + j: k indexes the value column,
// j the driving direction. Contractions:
//   (y' x)(i, k)  = sum_j y'(i, k*m+j) x(j)
//   (y' X)(i)     = sum_{k,j} y'(i, k*m+j) X(j, k)
struct ControlledGridPath {
  std::vector<MatrixXd> values;
  std::vector<MatrixXd> gubinelli;
  int width = 1;

  int points() const { return static_cast<int>(values.size()); }
  void validate(const RoughPathGrid& rp) const;
};

// y' x_{s,t} for either layout.
MatrixXd apply_gubinelli(const MatrixXd& gub, const VectorXd& x, int width);
// y' X_{s,t}; only meaningful for matrix-valued integrands (width = m).
VectorXd contract_area(const MatrixXd& gub, const MatrixXd& X);

// Grid sub-range [first, last] by point indices.
struct GridRange {
  int first = 0;
  int last = -1;   // -1 means "last grid point"

  GridRange() = default;
  GridRange(int f, int l) : first(f), last(l) {}
  int resolve_last(int n_points) const { return last < 0 ? n_points - 1 : last; }
};

GridRange checked_range(GridRange r, int n_points, int min_points = 2);

}  // namespace roughkit
