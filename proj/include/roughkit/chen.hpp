#pragma once

#include "roughkit/types.hpp"

namespace roughkit {

// X_{t_i, t_j} accumulated left-to-right through Chen's relation:
// X_{i,k+1} = X_{i,k} + blocks[k] + x_{i,k} (x) x_{k,k+1}, X_{i,i} = 0.
MatrixXd chen_extend(const RoughPathGrid& rp, int i, int j);

// Prefix accumulation from a fixed left endpoint; makes any X_{i,j} an O(m^2)
// lookup instead of an O(j-i) scan. Used by the all-pairs norms and the DP.
class ChenPrefix {
 public:
  explicit ChenPrefix(const RoughPathGrid& rp, int base = 0);
  // X_{i,j} = P_j - P_i - x_{base,i} (x) x_{i,j}
  MatrixXd block(int i, int j) const;
  double block_norm(int i, int j) const { return block(i, j).norm(); }

 private:
  const RoughPathGrid* rp_;
  int base_;
  std::vector<MatrixXd> prefix_;   // P_k = X_{base,k}
};

// Dense table of X_{s,t}; entry(i, j) defined for base <= i <= j <= last.
using DenseAreaTable = std::vector<std::vector<MatrixXd>>;

DenseAreaTable dense_area_from_chen(const RoughPathGrid& rp);

// Max Frobenius defect of Chen's relation over all grid triples i <= k <= j.
double chen_residual(const RoughPathGrid& rp, const DenseAreaTable& dense_area);

// R^y_{i,j} = y_{i,j} - y'_i x_{i,j}.
MatrixXd remainder(const ControlledGridPath& y, const RoughPathGrid& rp, int i, int j);

// Max deviation of Sym(X_{i,j}) from (1/2) x_{i,j} (x) x_{i,j} over all pairs.
double geometric_defect(const RoughPathGrid& rp);

}  // namespace roughkit
