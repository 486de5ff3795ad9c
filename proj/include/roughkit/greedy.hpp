#pragma once

#include "roughkit/types.hpp"

namespace roughkit {

enum class GreedyGauge { pvar, holder };

struct GreedyResult {
  std::vector<double> taus;     // grid times, first = min I, last = max I
  std::vector<int> indices;     // matching grid point indices
  int count = 0;                // number of sub-intervals, |taus| - 1
  double gamma = 0.0;
  GreedyGauge gauge = GreedyGauge::pvar;
  bool overshoot = false;       // some single step already exceeded gamma
};

// Discrete greedy times: tau_{i+1} is the largest grid point t > tau_i with
// the gauge over [tau_i, t] still <= gamma; a single step beyond gamma is
// taken anyway and flagged as overshoot.
GreedyResult greedy_times_pvar(const RoughPathGrid& rp, double gamma,
                               GridRange range = {}, double p = 0.0);
// Gauge (t - tau)^{1-2 alpha} + |||x|||_{alpha,[tau,t]} (rough Holder norm).
GreedyResult greedy_times_holder(const RoughPathGrid& rp, double gamma,
                                 GridRange range = {}, double alpha = 0.0);

// Closed-form count bounds.
// 1 + gamma^{-p} |||x|||^p_{p,I}
double count_bound_pvar(const RoughPathGrid& rp, double gamma,
                        GridRange range = {}, double p = 0.0);
// 1 + |I| gamma^{-1/(nu-alpha)} (1 + |||x|||^{1/(nu-alpha)}_{nu,I})
double count_bound_holder(const RoughPathGrid& rp, double gamma,
                          GridRange range, double alpha, double nu);

}  // namespace roughkit
