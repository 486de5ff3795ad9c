#include "roughkit/greedy.hpp"

#include <algorithm>
#include <cmath>

#include "roughkit/chen.hpp"
#include "roughkit/norms.hpp"

namespace roughkit {

namespace {

// Incremental gauge evaluation over a window [base, end]; extending the end
// by one grid point costs O(window) so a full greedy pass stays O(n^2).
class PvarWindow {
 public:
  PvarWindow(const RoughPathGrid& rp, int base, double p)
      : rp_(rp), base_(base), p_(p), q_(p / 2.0), pre_(rp, base) {
    vp_.push_back(0.0);
    vq_.push_back(0.0);
  }

  void extend(int j) {
    double bp = 0.0, bq = 0.0;
    for (int i = base_; i < j; ++i) {
      const int k = i - base_;
      bp = std::max(bp, vp_[k] + std::pow(rp_.path.increment(i, j).norm(), p_));
      bq = std::max(bq, vq_[k] + std::pow(pre_.block_norm(i, j), q_));
    }
    vp_.push_back(bp);
    vq_.push_back(bq);
  }

  double rough_norm() const {
    return std::pow(vp_.back() + vq_.back(), 1.0 / p_);
  }

 private:
  const RoughPathGrid& rp_;
  int base_;
  double p_, q_;
  ChenPrefix pre_;
  std::vector<double> vp_, vq_;   // partition power sums
};

class HolderWindow {
 public:
  HolderWindow(const RoughPathGrid& rp, int base, double alpha)
      : rp_(rp), base_(base), alpha_(alpha), pre_(rp, base) {}

  void extend(int j) {
    for (int i = base_; i < j; ++i) {
      const double dt = rp_.path.times[j] - rp_.path.times[i];
      holder_ = std::max(holder_,
                         rp_.path.increment(i, j).norm() / std::pow(dt, alpha_));
      area_ = std::max(area_, pre_.block_norm(i, j) / std::pow(dt, 2.0 * alpha_));
    }
    end_ = j;
  }

  double gauge() const {
    const double len = rp_.path.times[end_] - rp_.path.times[base_];
    return std::pow(len, 1.0 - 2.0 * alpha_) + holder_ + std::sqrt(area_);
  }

 private:
  const RoughPathGrid& rp_;
  int base_, end_ = 0;
  double alpha_;
  ChenPrefix pre_;
  double holder_ = 0.0, area_ = 0.0;
};

template <typename MakeWindow>
GreedyResult greedy_scan(const RoughPathGrid& rp, double gamma, GridRange range,
                         GreedyGauge gauge, MakeWindow make_window) {
  if (gamma <= 0) fail(ErrorCode::invalid_argument, "greedy: gamma must be > 0");
  const auto r = checked_range(range, rp.path.points());
  GreedyResult res;
  res.gamma = gamma;
  res.gauge = gauge;
  res.indices.push_back(r.first);
  int tau = r.first;
  while (tau < r.last) {
    auto window = make_window(tau);
    int accepted = -1;
    int j = tau;
    while (j < r.last) {
      ++j;
      window.extend(j);
      if (window.value() > gamma) break;
      accepted = j;
    }
    if (accepted < 0) {
      // even one grid step exceeds gamma
      res.overshoot = true;
      accepted = tau + 1;
    }
    res.indices.push_back(accepted);
    tau = accepted;
  }
  for (int idx : res.indices) res.taus.push_back(rp.path.times[idx]);
  res.count = static_cast<int>(res.taus.size()) - 1;
  return res;
}

struct PvarAdapter {
  PvarWindow w;
  void extend(int j) { w.extend(j); }
  double value() const { return w.rough_norm(); }
};

struct HolderAdapter {
  HolderWindow w;
  void extend(int j) { w.extend(j); }
  double value() const { return w.gauge(); }
};

}  // namespace

GreedyResult greedy_times_pvar(const RoughPathGrid& rp, double gamma,
                               GridRange range, double p) {
  if (p <= 0) p = rp.p;
  if (p < 1) fail(ErrorCode::invalid_argument, "greedy_times_pvar: p must be >= 1");
  return greedy_scan(rp, gamma, range, GreedyGauge::pvar,
                     [&](int base) { return PvarAdapter{PvarWindow(rp, base, p)}; });
}

GreedyResult greedy_times_holder(const RoughPathGrid& rp, double gamma,
                                 GridRange range, double alpha) {
  if (alpha <= 0) alpha = rp.alpha;
  if (!(alpha > 0 && alpha < 0.5))
    fail(ErrorCode::invalid_argument, "greedy_times_holder: alpha must be in (0, 1/2)");
  return greedy_scan(rp, gamma, range, GreedyGauge::holder, [&](int base) {
    return HolderAdapter{HolderWindow(rp, base, alpha)};
  });
}

double count_bound_pvar(const RoughPathGrid& rp, double gamma, GridRange range,
                        double p) {
  if (gamma <= 0) fail(ErrorCode::invalid_argument, "count_bound_pvar: gamma must be > 0");
  if (p <= 0) p = rp.p;
  const auto r = checked_range(range, rp.path.points());
  const double q = p / 2.0;
  const double pv = pvar_seminorm(rp.path, p, r);
  const double qv = area_qvar(rp, q, r);
  const double norm_p = std::pow(pv, p) + std::pow(qv, q);
  return 1.0 + std::pow(gamma, -p) * norm_p;
}

double count_bound_holder(const RoughPathGrid& rp, double gamma, GridRange range,
                          double alpha, double nu) {
  if (gamma <= 0)
    fail(ErrorCode::invalid_argument, "count_bound_holder: gamma must be > 0");
  if (!(alpha < nu))
    fail(ErrorCode::invalid_argument, "count_bound_holder: need alpha < nu");
  const auto r = checked_range(range, rp.path.points());
  const double len = rp.path.times[r.last] - rp.path.times[r.first];
  const double nu_norm = rough_holder_norm(rp, nu, r);
  const double e = 1.0 / (nu - alpha);
  return 1.0 + len * std::pow(gamma, -e) * (1.0 + std::pow(nu_norm, e));
}

}  // namespace roughkit
