#include "roughkit/norms.hpp"

#include <algorithm>
#include <cmath>

namespace roughkit {

namespace {

void check_dp_size(int len, int dp_cap) {
  if (len > dp_cap)
    fail(ErrorCode::resource_limit,
         "variation DP range exceeds cap of " + std::to_string(dp_cap) + " points");
}

// Exact partition supremum of sum w(i,j)^e over partitions of [first..last],
// returned as the power sum (caller takes the 1/e root).
template <typename Weight>
double partition_dp_power(int first, int last, double e, Weight w) {
  const int len = last - first + 1;
  std::vector<double> V(len, 0.0);
  for (int j = 1; j < len; ++j) {
    double best = 0.0;
    for (int i = 0; i < j; ++i)
      best = std::max(best, V[i] + std::pow(w(first + i, first + j), e));
    V[j] = best;
  }
  return V[len - 1];
}

template <typename Weight>
double pair_sup(int first, int last, const std::vector<double>& times,
                double exponent, Weight w) {
  double best = 0.0;
  for (int i = first; i < last; ++i)
    for (int j = i + 1; j <= last; ++j)
      best = std::max(best, w(i, j) / std::pow(times[j] - times[i], exponent));
  return best;
}

}  // namespace

double holder_seminorm(const GridPath& path, double alpha, GridRange range) {
  if (!(alpha > 0 && alpha < 1))
    fail(ErrorCode::invalid_argument, "holder_seminorm: alpha must be in (0,1)");
  const auto r = checked_range(range, path.points());
  return pair_sup(r.first, r.last, path.times, alpha,
                  [&](int i, int j) { return path.increment(i, j).norm(); });
}

double pvar_seminorm(const GridPath& path, double p, GridRange range, int dp_cap) {
  if (p < 1) fail(ErrorCode::invalid_argument, "pvar_seminorm: p must be >= 1");
  const auto r = checked_range(range, path.points());
  check_dp_size(r.last - r.first + 1, dp_cap);
  const double power = partition_dp_power(
      r.first, r.last, p, [&](int i, int j) { return path.increment(i, j).norm(); });
  return std::pow(power, 1.0 / p);
}

double area_2holder(const RoughPathGrid& rp, double alpha, GridRange range) {
  if (!(alpha > 0 && alpha < 1))
    fail(ErrorCode::invalid_argument, "area_2holder: alpha must be in (0,1)");
  const auto r = checked_range(range, rp.path.points());
  ChenPrefix pre(rp, r.first);
  return pair_sup(r.first, r.last, rp.path.times, 2.0 * alpha,
                  [&](int i, int j) { return pre.block_norm(i, j); });
}

double area_qvar(const RoughPathGrid& rp, double q, GridRange range, int dp_cap) {
  if (q < 1) fail(ErrorCode::invalid_argument, "area_qvar: q must be >= 1");
  const auto r = checked_range(range, rp.path.points());
  check_dp_size(r.last - r.first + 1, dp_cap);
  ChenPrefix pre(rp, r.first);
  const double power = partition_dp_power(
      r.first, r.last, q, [&](int i, int j) { return pre.block_norm(i, j); });
  return std::pow(power, 1.0 / q);
}

double rough_holder_norm(const RoughPathGrid& rp, GridRange range) {
  return rough_holder_norm(rp, rp.alpha, range);
}

double rough_holder_norm(const RoughPathGrid& rp, double alpha, GridRange range) {
  return holder_seminorm(rp.path, alpha, range) +
         std::sqrt(area_2holder(rp, alpha, range));
}

double rough_pvar_norm(const RoughPathGrid& rp, GridRange range) {
  const double pv = pvar_seminorm(rp.path, rp.p, range);
  const double qv = area_qvar(rp, rp.q, range);
  return std::pow(std::pow(pv, rp.p) + std::pow(qv, rp.q), 1.0 / rp.p);
}

double gubinelli_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                          NormMode mode, GridRange range) {
  const auto r = checked_range(range, rp.path.points());
  const auto w = [&](int i, int j) {
    return (y.gubinelli[j] - y.gubinelli[i]).norm();
  };
  if (mode == NormMode::holder)
    return pair_sup(r.first, r.last, rp.path.times, rp.alpha, w);
  check_dp_size(r.last - r.first + 1, kDefaultDpCap);
  return std::pow(partition_dp_power(r.first, r.last, rp.p, w), 1.0 / rp.p);
}

double remainder_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                          NormMode mode, GridRange range) {
  const auto r = checked_range(range, rp.path.points());
  const auto w = [&](int i, int j) { return remainder(y, rp, i, j).norm(); };
  if (mode == NormMode::holder)
    return pair_sup(r.first, r.last, rp.path.times, 2.0 * rp.alpha, w);
  check_dp_size(r.last - r.first + 1, kDefaultDpCap);
  return std::pow(partition_dp_power(r.first, r.last, rp.q, w), 1.0 / rp.q);
}

double value_pvar_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                           GridRange range) {
  const auto r = checked_range(range, rp.path.points());
  check_dp_size(r.last - r.first + 1, kDefaultDpCap);
  const auto w = [&](int i, int j) { return (y.values[j] - y.values[i]).norm(); };
  return std::pow(partition_dp_power(r.first, r.last, rp.p, w), 1.0 / rp.p);
}

double controlled_norm(const ControlledGridPath& y, const RoughPathGrid& rp,
                       NormMode mode, GridRange range) {
  return gubinelli_seminorm(y, rp, mode, range) +
         remainder_seminorm(y, rp, mode, range);
}

NormReport compute_norm_report(const RoughPathGrid& rp, GridRange range) {
  const auto r = checked_range(range, rp.path.points());
  NormReport rep;
  rep.holder = holder_seminorm(rp.path, rp.alpha, r);
  rep.pvar = pvar_seminorm(rp.path, rp.p, r);
  rep.area_2holder = area_2holder(rp, rp.alpha, r);
  rep.area_qvar = area_qvar(rp, rp.q, r);
  rep.rough_holder = rep.holder + std::sqrt(rep.area_2holder);
  rep.rough_pvar =
      std::pow(std::pow(rep.pvar, rp.p) + std::pow(rep.area_qvar, rp.q), 1.0 / rp.p);
  rep.interval_start = rp.path.times[r.first];
  rep.interval_end = rp.path.times[r.last];
  return rep;
}

}  // namespace roughkit
