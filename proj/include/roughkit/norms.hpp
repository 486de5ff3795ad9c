#pragma once

#include "roughkit/chen.hpp"
#include "roughkit/types.hpp"

namespace roughkit {

// Grid-restricted seminorms. Suprema run over grid pairs / grid partitions
// of the requested sub-range; the DP computes the exact partition supremum.

inline constexpr int kDefaultDpCap = 20000;

double holder_seminorm(const GridPath& path, double alpha, GridRange range = {});
double pvar_seminorm(const GridPath& path, double p, GridRange range = {},
                     int dp_cap = kDefaultDpCap);

double area_2holder(const RoughPathGrid& rp, double alpha, GridRange range = {});
double area_qvar(const RoughPathGrid& rp, double q, GridRange range = {},
                 int dp_cap = kDefaultDpCap);

// Rough path norms: holder + sqrt(area_2holder) resp.
// (pvar^p + area_qvar^q)^(1/p) with q = p/2.
double rough_holder_norm(const RoughPathGrid& rp, GridRange range = {});
double rough_holder_norm(const RoughPathGrid& rp, double alpha, GridRange range);
double rough_pvar_norm(const RoughPathGrid& rp, GridRange range = {});

enum class NormMode { holder, pvar };

// |||y'||| + |||R^y||| with the remainder in the doubled gauge
// (2*alpha Holder, or q-variation with q = p/2).
double controlled_norm(const ControlledGridPath& y, const RoughPathGrid& rp,
                       NormMode mode, GridRange range = {});

// Seminorms of the Gubinelli derivative / remainder alone; used by solvers
// and the bound audits, which combine them with different weights.
double gubinelli_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                          NormMode mode, GridRange range = {});
double remainder_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                          NormMode mode, GridRange range = {});

// |||y|||_{p-var} of the value path itself (used in |||y, R^y|||).
double value_pvar_seminorm(const ControlledGridPath& y, const RoughPathGrid& rp,
                           GridRange range = {});

struct NormReport {
  double holder = 0.0;
  double pvar = 0.0;
  double area_2holder = 0.0;
  double area_qvar = 0.0;
  double rough_holder = 0.0;
  double rough_pvar = 0.0;
  double interval_start = 0.0;
  double interval_end = 0.0;
};

NormReport compute_norm_report(const RoughPathGrid& rp, GridRange range = {});

}  // namespace roughkit
