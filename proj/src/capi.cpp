#include "roughkit/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "roughkit/fields.hpp"
#include "roughkit/greedy.hpp"
#include "roughkit/io.hpp"
#include "roughkit/lift.hpp"
#include "roughkit/norms.hpp"
#include "roughkit/run.hpp"
#include "roughkit/solver.hpp"

using namespace roughkit;

struct rk_path {
  GridPath path;
};
struct rk_rough {
  RoughPathGrid rp;
};
struct rk_field {
  VectorFieldPair vf;
};
struct rk_solution {
  SolveReport rep;
};

namespace {

thread_local std::string g_last_error = "";

int code_of(const Error& e) { return static_cast<int>(e.code()); }

template <typename F>
auto guarded(F&& fn, decltype(fn()) on_error) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return on_error;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return on_error;
  }
}

template <typename F>
int guarded_status(F&& fn) {
  try {
    fn();
    return RK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RK_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* rk_last_error(void) { return g_last_error.c_str(); }

rk_path* rk_path_load_csv(const char* file) {
  return guarded([&]() -> rk_path* { return new rk_path{load_path_csv(file)}; },
                 nullptr);
}

rk_path* rk_path_fbm(double hurst, double horizon, int n,
                     unsigned long long seed, int dim) {
  return guarded(
      [&]() -> rk_path* {
        FbmSpec spec;
        spec.hurst = hurst;
        spec.horizon = horizon;
        spec.n = n;
        spec.seed = seed;
        return new rk_path{sample_fbm(spec, dim)};
      },
      nullptr);
}

int rk_path_save_csv(const rk_path* p, const char* file) {
  if (!p) return RK_ERR_INVALID_ARGUMENT;
  return guarded_status([&] { save_path_csv(p->path, file); });
}

int rk_path_points(const rk_path* p) { return p ? p->path.points() : -1; }
int rk_path_dim(const rk_path* p) { return p ? p->path.dim() : -1; }

int rk_path_values(const rk_path* p, double* out) {
  if (!p || !out) return RK_ERR_INVALID_ARGUMENT;
  for (int i = 0; i < p->path.points(); ++i)
    for (int j = 0; j < p->path.dim(); ++j)
      out[i * p->path.dim() + j] = p->path.values[i](j);
  return RK_OK;
}

void rk_path_free(rk_path* p) { delete p; }

rk_rough* rk_rough_lift(const rk_path* p, double alpha) {
  if (!p) {
    g_last_error = "null path handle";
    return nullptr;
  }
  return guarded(
      [&]() -> rk_rough* {
        return new rk_rough{lift_piecewise_linear(p->path, alpha)};
      },
      nullptr);
}

rk_rough* rk_rough_load(const char* stem) {
  return guarded([&]() -> rk_rough* { return new rk_rough{load_rough_path(stem)}; },
                 nullptr);
}

int rk_rough_save(const rk_rough* r, const char* stem) {
  if (!r) return RK_ERR_INVALID_ARGUMENT;
  return guarded_status([&] { save_rough_path(r->rp, stem); });
}

double rk_rough_pvar_norm(const rk_rough* r) {
  if (!r) return -1.0;
  return guarded([&] { return rough_pvar_norm(r->rp); }, -1.0);
}

double rk_rough_holder_norm(const rk_rough* r) {
  if (!r) return -1.0;
  return guarded([&] { return rough_holder_norm(r->rp); }, -1.0);
}

int rk_rough_greedy_count(const rk_rough* r, double gamma, int* overshoot) {
  if (!r) return -RK_ERR_INVALID_ARGUMENT;
  return guarded(
      [&]() -> int {
        const GreedyResult res = greedy_times_pvar(r->rp, gamma);
        if (overshoot) *overshoot = res.overshoot ? 1 : 0;
        return res.count;
      },
      -1);
}

double rk_rough_count_bound(const rk_rough* r, double gamma) {
  if (!r) return -1.0;
  return guarded([&] { return count_bound_pvar(r->rp, gamma); }, -1.0);
}

void rk_rough_free(rk_rough* r) { delete r; }

rk_field* rk_field_from_json(const char* json_text) {
  return guarded(
      [&]() -> rk_field* { return new rk_field{field_from_json(json_text)}; },
      nullptr);
}

int rk_field_state_dim(const rk_field* f) { return f ? f->vf.diffusion.d() : -1; }
int rk_field_driver_dim(const rk_field* f) { return f ? f->vf.diffusion.m() : -1; }
void rk_field_free(rk_field* f) { delete f; }

rk_solution* rk_solve(const rk_rough* r, const rk_field* f, const double* y0,
                      int d, const char* scheme) {
  if (!r || !f || !y0 || !scheme) {
    g_last_error = "null argument to rk_solve";
    return nullptr;
  }
  return guarded(
      [&]() -> rk_solution* {
        const VectorXd y = Eigen::Map<const VectorXd>(y0, d);
        const std::string s = scheme;
        SolveReport rep;
        if (s == "davie") {
          rep = solve_davie(r->rp, f->vf, y);
        } else if (s == "linear") {
          if (!f->vf.diffusion.is_linear())
            fail(ErrorCode::invalid_argument,
                 "rk_solve: linear scheme needs a linear diffusion");
          rep = solve_linear(r->rp, f->vf.diffusion.linear(), f->vf.drift, y);
        } else if (s == "ds") {
          rep = solve_doss_sussmann(r->rp, f->vf, y);
        } else if (s == "backward") {
          rep = solve_backward(r->rp, f->vf.diffusion, y);
        } else {
          fail(ErrorCode::invalid_argument, "rk_solve: unknown scheme '" + s + "'");
        }
        return new rk_solution{std::move(rep)};
      },
      nullptr);
}

int rk_solution_points(const rk_solution* s) {
  return s ? s->rep.solution.points() : -1;
}
int rk_solution_dim(const rk_solution* s) {
  return s ? s->rep.solution.dim() : -1;
}

int rk_solution_values(const rk_solution* s, double* out) {
  if (!s || !out) return RK_ERR_INVALID_ARGUMENT;
  const int d = s->rep.solution.dim();
  for (int i = 0; i < s->rep.solution.points(); ++i)
    for (int j = 0; j < d; ++j) out[i * d + j] = s->rep.solution.values[i](j);
  return RK_OK;
}

int rk_solution_save_csv(const rk_solution* s, const char* file) {
  if (!s) return RK_ERR_INVALID_ARGUMENT;
  return guarded_status([&] { save_path_csv(s->rep.solution, file); });
}

void rk_solution_free(rk_solution* s) { delete s; }

int rk_run_json(const char* config_json, char** summary_out) {
  if (!config_json) {
    g_last_error = "null config";
    return 1;
  }
  const RunResult res = run_config(config_json);
  const std::string& line = res.error.empty() ? res.summary : res.error;
  if (res.exit_code != 0) g_last_error = line;
  if (summary_out) {
    *summary_out = static_cast<char*>(std::malloc(line.size() + 1));
    if (*summary_out) std::memcpy(*summary_out, line.c_str(), line.size() + 1);
  }
  return res.exit_code;
}

void rk_string_free(char* s) { std::free(s); }

}  // extern "C"
