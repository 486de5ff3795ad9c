#include "roughkit/integral.hpp"

#include <cmath>

namespace roughkit {

VectorXd rough_integrate(const ControlledGridPath& y, const RoughPathGrid& rp,
                         GridRange range) {
  y.validate(rp);
  const int m = rp.dim();
  if (y.width != m)
    fail(ErrorCode::dimension_mismatch,
         "rough_integrate: integrand must be d x m matrix-valued");
  const auto r = checked_range(range, rp.path.points());
  VectorXd acc = VectorXd::Zero(y.values[0].rows());
  for (int k = r.first; k < r.last; ++k) {
    acc += y.values[k] * rp.path.increment(k, k + 1);
    acc += contract_area(y.gubinelli[k], rp.area.blocks[k]);
  }
  return acc;
}

double sewing_bound(const ControlledGridPath& y, const RoughPathGrid& rp,
                    NormMode mode, GridRange range) {
  const auto r = checked_range(range, rp.path.points());
  const double ry = remainder_seminorm(y, rp, mode, r);
  const double gy = gubinelli_seminorm(y, rp, mode, r);
  if (mode == NormMode::holder) {
    const double len = rp.path.times[r.last] - rp.path.times[r.first];
    return rp.sewing_alpha() * std::pow(len, 3.0 * rp.alpha) *
           (holder_seminorm(rp.path, rp.alpha, r) * ry +
            gy * area_2holder(rp, rp.alpha, r));
  }
  return rp.sewing_p() * (pvar_seminorm(rp.path, rp.p, r) * ry +
                          gy * area_qvar(rp, rp.q, r));
}

ControlledGridPath compose_controlled(const Diffusion& g,
                                      const ControlledGridPath& y,
                                      const RoughPathGrid& rp) {
  y.validate(rp);
  if (y.width != 1)
    fail(ErrorCode::dimension_mismatch, "compose_controlled: y must be vector-valued");
  if (y.values[0].rows() != g.d())
    fail(ErrorCode::dimension_mismatch, "compose_controlled: field dimension mismatch");
  ControlledGridPath out;
  out.width = g.m();
  out.values.reserve(y.points());
  out.gubinelli.reserve(y.points());
  for (int i = 0; i < y.points(); ++i) {
    const VectorXd yi = y.values[i].col(0);
    out.values.push_back(g.g(yi));
    out.gubinelli.push_back(g.milstein_tensor(yi));
  }
  return out;
}

}  // namespace roughkit
