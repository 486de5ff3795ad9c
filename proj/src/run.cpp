#include "roughkit/run.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "roughkit/fields.hpp"
#include "roughkit/integral.hpp"
#include "roughkit/io.hpp"
#include "roughkit/lift.hpp"
#include "roughkit/norms.hpp"
#include "roughkit/solver.hpp"
#include "roughkit/verify.hpp"

namespace roughkit {

using nlohmann::json;

int thread_cap() {
  const char* env = std::getenv("ROUGHKIT_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

namespace {

// Runs fn(i) for i in [0, count) across at most thread_cap() workers;
// results are aggregated by index afterwards so scheduling cannot change
// any output.
void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double require_number(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg[key].is_number())
    fail(ErrorCode::invalid_argument, "config: missing numeric field '" + key + "'");
  return cfg[key].get<double>();
}

std::string require_string(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg[key].is_string())
    fail(ErrorCode::invalid_argument, "config: missing string field '" + key + "'");
  return cfg[key].get<std::string>();
}

std::string stem_of(const std::string& name) {
  const auto pos = name.rfind(".csv");
  return pos != std::string::npos && pos == name.size() - 4
             ? name.substr(0, pos)
             : name;
}

double pick_alpha(const json& cfg) {
  if (cfg.contains("alpha")) return cfg["alpha"].get<double>();
  if (cfg.contains("hurst")) return 0.9 * cfg["hurst"].get<double>();
  fail(ErrorCode::invalid_argument, "config: need 'alpha' or 'hurst'");
}

void write_sidecar(const json& cfg, const std::string& out) {
  save_json(cfg.dump(2), out + ".config.json");
}

json bound_report_json(const BoundCheckReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["pass"] = r.pass;
  j["advisory"] = r.advisory;
  j["inputs"] = r.inputs;
  return j;
}

RunResult ok(const std::string& summary) { return {0, summary, ""}; }

RunResult cmd_fbm(const json& cfg) {
  FbmSpec spec;
  spec.hurst = require_number(cfg, "hurst");
  spec.n = static_cast<int>(require_number(cfg, "n"));
  spec.horizon = cfg.value("horizon", 1.0);
  spec.seed = cfg.value("seed", std::uint64_t(0));
  const int m = cfg.value("dim", 1);
  const std::string out = require_string(cfg, "out");
  const GridPath path = sample_fbm(spec, m);
  save_path_csv(path, out);
  write_sidecar(cfg, out);
  return ok("fbm: wrote " + std::to_string(path.points()) + " points, dim " +
            std::to_string(m) + " to " + out);
}

RunResult cmd_lift(const json& cfg) {
  const std::string in = require_string(cfg, "in");
  const std::string out = stem_of(require_string(cfg, "out"));
  const double alpha = pick_alpha(cfg);
  const GridPath path = load_path_csv(in);
  const RoughPathGrid rp = lift_piecewise_linear(path, alpha);
  save_rough_path(rp, out);
  write_sidecar(cfg, out + ".csv");
  return ok("lift: alpha " + format_double(alpha) + ", wrote " + out +
            ".csv / .area.csv / .json");
}

RunResult cmd_norms(const json& cfg) {
  const RoughPathGrid rp = load_rough_path(stem_of(require_string(cfg, "rough")));
  const NormReport rep = compute_norm_report(rp);
  json j;
  j["holder"] = rep.holder;
  j["pvar"] = rep.pvar;
  j["area_2holder"] = rep.area_2holder;
  j["area_qvar"] = rep.area_qvar;
  j["rough_holder"] = rep.rough_holder;
  j["rough_pvar"] = rep.rough_pvar;
  j["interval"] = {rep.interval_start, rep.interval_end};
  if (cfg.contains("out")) {
    const std::string out = require_string(cfg, "out");
    save_json(j.dump(2), out);
    write_sidecar(cfg, out);
  }
  return ok("norms: rough_pvar " + format_double(rep.rough_pvar) +
            ", rough_holder " + format_double(rep.rough_holder));
}

RunResult cmd_integrate(const json& cfg) {
  const RoughPathGrid rp = load_rough_path(stem_of(require_string(cfg, "rough")));
  const ControlledGridPath y =
      load_controlled(stem_of(require_string(cfg, "controlled")));
  GridRange range(cfg.value("from", 0), cfg.value("to", -1));
  const VectorXd value = rough_integrate(y, rp, range);
  json j;
  j["value"] = std::vector<double>(value.data(), value.data() + value.size());
  j["sewing_bound_pvar"] = sewing_bound(y, rp, NormMode::pvar, range);
  j["sewing_bound_holder"] = sewing_bound(y, rp, NormMode::holder, range);
  if (cfg.contains("out")) {
    const std::string out = require_string(cfg, "out");
    save_json(j.dump(2), out);
    write_sidecar(cfg, out);
  }
  return ok("integrate: value norm " + format_double(value.norm()) +
            ", sewing bound " + format_double(j["sewing_bound_pvar"].get<double>()));
}

RunResult cmd_greedy(const json& cfg) {
  const RoughPathGrid rp = load_rough_path(stem_of(require_string(cfg, "rough")));
  const double gamma = require_number(cfg, "gamma");
  const std::string gauge = cfg.value("gauge", std::string("pvar"));
  GreedyResult res;
  double bound = 0.0;
  if (gauge == "pvar") {
    res = greedy_times_pvar(rp, gamma);
    bound = count_bound_pvar(rp, gamma);
  } else if (gauge == "holder") {
    res = greedy_times_holder(rp, gamma);
    bound = count_bound_holder(rp, gamma, {}, rp.alpha, std::min(0.5, rp.alpha * 1.1));
  } else {
    fail(ErrorCode::invalid_argument, "config: gauge must be pvar or holder");
  }
  json j;
  j["taus"] = res.taus;
  j["indices"] = res.indices;
  j["count"] = res.count;
  j["gamma"] = res.gamma;
  j["gauge"] = gauge;
  j["overshoot"] = res.overshoot;
  j["count_bound"] = bound;
  if (cfg.contains("out")) {
    const std::string out = require_string(cfg, "out");
    save_json(j.dump(2), out);
    write_sidecar(cfg, out);
  }
  return ok("greedy: N " + std::to_string(res.count) + ", bound " +
            format_double(bound) + (res.overshoot ? " (overshoot)" : ""));
}

VectorXd parse_y0(const json& cfg, int d) {
  if (!cfg.contains("y0") || !cfg["y0"].is_array())
    fail(ErrorCode::invalid_argument, "config: missing array field 'y0'");
  const auto arr = cfg["y0"].get<std::vector<double>>();
  if (static_cast<int>(arr.size()) != d)
    fail(ErrorCode::dimension_mismatch,
         "config: y0 has " + std::to_string(arr.size()) + " entries, field wants " +
             std::to_string(d));
  return Eigen::Map<const VectorXd>(arr.data(), d);
}

VectorFieldPair parse_field(const json& cfg) {
  if (!cfg.contains("field"))
    fail(ErrorCode::invalid_argument, "config: missing 'field'");
  if (cfg["field"].is_string())
    return field_from_json(load_text(cfg["field"].get<std::string>()));
  return field_from_json(cfg["field"].dump());
}

RunResult cmd_solve(const json& cfg) {
  const RoughPathGrid rp = load_rough_path(stem_of(require_string(cfg, "rough")));
  const VectorFieldPair vf = parse_field(cfg);
  const VectorXd y0 = parse_y0(cfg, vf.diffusion.d());
  const std::string scheme = cfg.value("scheme", std::string("davie"));
  SolveReport rep;
  if (scheme == "davie") {
    rep = solve_davie(rp, vf, y0);
  } else if (scheme == "linear") {
    if (!vf.diffusion.is_linear())
      fail(ErrorCode::invalid_argument, "config: linear scheme needs a linear diffusion");
    rep = solve_linear(rp, vf.diffusion.linear(), vf.drift, y0);
  } else if (scheme == "ds") {
    rep = solve_doss_sussmann(rp, vf, y0);
  } else if (scheme == "backward") {
    rep = solve_backward(rp, vf.diffusion, y0);
  } else {
    fail(ErrorCode::invalid_argument, "config: unknown scheme '" + scheme + "'");
  }
  const std::string out = require_string(cfg, "out");
  save_path_csv(rep.solution, out);
  write_sidecar(cfg, out);
  return ok("solve(" + scheme + "): final value norm " +
            format_double(rep.solution.values.back().norm()) + ", wrote " + out);
}

struct SuiteSetup {
  RoughPathGrid rp;
  VectorFieldPair linear_vf;
  VectorFieldPair sin_vf;
  VectorXd y0;
  VectorXd ty0;
};

SuiteSetup make_suite_setup(double hurst, int n, std::uint64_t seed) {
  SuiteSetup s;
  FbmSpec spec;
  spec.hurst = hurst;
  spec.n = n;
  spec.seed = seed;
  s.rp = lift_piecewise_linear(sample_fbm(spec, 1), 0.9 * hurst);

  LinearDiffusion lin;
  lin.C = {MatrixXd::Constant(1, 1, 0.1)};
  lin.g0 = MatrixXd::Constant(1, 1, 0.1);
  s.linear_vf.diffusion = Diffusion(lin, 1, 1);
  s.linear_vf.drift = linear_drift(MatrixXd::Constant(1, 1, -0.5),
                                   VectorXd::Constant(1, 0.1));
  s.sin_vf.diffusion = make_sin_diffusion(1, 1, 0.1);
  s.sin_vf.drift = s.linear_vf.drift;
  s.y0 = VectorXd::Constant(1, 1.0);
  s.ty0 = VectorXd::Constant(1, 1.1);
  return s;
}

RunResult cmd_verify(const json& cfg) {
  const std::string suite = cfg.value("suite", std::string("all"));
  const int paths = static_cast<int>(require_number(cfg, "paths"));
  if (paths <= 0)
    fail(ErrorCode::invalid_argument, "config: 'paths' must be a positive ensemble size");
  const double hurst = cfg.value("hurst", 0.4);
  const int n = cfg.value("n", 256);
  const std::uint64_t seed = cfg.value("seed", std::uint64_t(1));

  const bool do_linear = suite == "linear" || suite == "all";
  const bool do_nonlinear = suite == "nonlinear" || suite == "all";
  const bool do_continuity = suite == "continuity" || suite == "all";
  const bool do_jacobian = suite == "jacobian" || suite == "all";
  if (!do_linear && !do_nonlinear && !do_continuity && !do_jacobian)
    fail(ErrorCode::invalid_argument, "config: unknown suite '" + suite + "'");

  std::vector<json> per_path(paths);
  std::vector<int> failures(paths, 0);
  parallel_for(paths, [&](int i) {
    const SuiteSetup s = make_suite_setup(hurst, n, seed + std::uint64_t(i));
    json entry;
    entry["seed"] = seed + std::uint64_t(i);
    std::vector<BoundCheckReport> reports;
    if (do_linear) {
      auto r = bound_linear(s.rp, s.linear_vf.diffusion.linear(),
                            s.linear_vf.drift, s.y0);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    if (do_nonlinear) {
      auto r = bound_nonlinear(s.rp, s.sin_vf, s.y0);
      reports.insert(reports.end(), r.begin(), r.end());
    }
    if (do_continuity) {
      for (auto variant : {ContinuityVariant::linear, ContinuityVariant::pure,
                           ContinuityVariant::nonlinear}) {
        const VectorFieldPair& vf =
            variant == ContinuityVariant::linear ? s.linear_vf : s.sin_vf;
        auto r = bound_continuity(s.rp, vf, s.y0, s.ty0, variant);
        reports.insert(reports.end(), r.begin(), r.end());
      }
    }
    json rj = json::array();
    for (const auto& r : reports) {
      rj.push_back(bound_report_json(r));
      if (!r.pass && !r.advisory) ++failures[i];
    }
    entry["bounds"] = rj;
    if (do_jacobian) {
      const JacobianReport jr = check_jacobian(s.rp, s.sin_vf.diffusion, s.y0, 1e-4);
      json dj = json::array();
      for (const auto& d : jr.directions)
        dj.push_back({{"direction", d.direction},
                      {"r_eps", d.r_eps},
                      {"r_half", d.r_half},
                      {"ratio", d.ratio},
                      {"exact_zero", d.exact_zero}});
      entry["jacobian"] = {{"eps", jr.eps}, {"pass", jr.pass}, {"directions", dj}};
      if (!jr.pass) ++failures[i];
    }
    per_path[i] = std::move(entry);
  });

  int total_failures = 0;
  json report;
  report["suite"] = suite;
  report["paths"] = paths;
  report["hurst"] = hurst;
  report["n"] = n;
  report["results"] = json::array();
  for (int i = 0; i < paths; ++i) {
    total_failures += failures[i];
    report["results"].push_back(per_path[i]);
  }
  report["failures"] = total_failures;
  if (cfg.contains("out")) {
    const std::string out = require_string(cfg, "out");
    save_json(report.dump(2), out);
    write_sidecar(cfg, out);
  }
  RunResult res = ok("verify(" + suite + "): " + std::to_string(paths) +
                     " paths, " + std::to_string(total_failures) + " failures");
  if (total_failures > 0) res.exit_code = 2;
  return res;
}

RunResult cmd_convergence(const json& cfg) {
  const std::string problem = cfg.value("problem", std::string("exp"));
  const std::string scheme = cfg.value("scheme", std::string("davie"));
  const int lmin = cfg.value("lmin", 6);
  const int lmax = cfg.value("lmax", 10);
  if (lmin < 1 || lmax <= lmin)
    fail(ErrorCode::invalid_argument, "config: need 1 <= lmin < lmax");
  std::vector<int> sizes;
  for (int l = lmin; l <= lmax; ++l) sizes.push_back(1 << l);

  std::function<double(int)> error_for_n;
  if (problem == "exp") {
    // dy = y dx on the canonical lift of x_t = sin t; reference y0 e^{x_{0,t}}
    error_for_n = [scheme](int n) {
      GridPath path;
      for (int i = 0; i <= n; ++i) {
        path.times.push_back(double(i) / n);
        path.values.push_back(VectorXd::Constant(1, std::sin(double(i) / n)));
      }
      const RoughPathGrid rp = lift_piecewise_linear(path, 0.45);
      VectorFieldPair vf;
      vf.diffusion = make_scalar_linear_diffusion(1.0, 0.0);
      vf.drift = zero_drift(1);
      const VectorXd y0 = VectorXd::Constant(1, 1.0);
      const SolveReport rep = scheme == "ds" ? solve_doss_sussmann(rp, vf, y0)
                                             : solve_davie(rp, vf, y0);
      double err = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double exact = std::exp(path.values[i](0) - path.values[0](0));
        err = std::max(err, std::abs(rep.solution.values[i](0) - exact) / exact);
      }
      return err;
    };
  } else if (problem == "ode") {
    // y' = -y, no diffusion; the splitting scheme reduces to its classical
    // one-step method, reference e^{-t}
    error_for_n = [](int n) {
      GridPath path;
      for (int i = 0; i <= n; ++i) {
        path.times.push_back(double(i) / n);
        path.values.push_back(VectorXd::Zero(1));
      }
      const RoughPathGrid rp = lift_piecewise_linear(path, 0.45);
      VectorFieldPair vf;
      vf.diffusion = make_scalar_linear_diffusion(0.0, 0.0);
      vf.drift = linear_drift(MatrixXd::Constant(1, 1, -1.0), VectorXd::Zero(1));
      const SolveReport rep =
          solve_doss_sussmann(rp, vf, VectorXd::Constant(1, 1.0));
      double err = 0.0;
      for (int i = 0; i <= n; ++i)
        err = std::max(err, std::abs(rep.solution.values[i](0) -
                                     std::exp(-path.times[i])));
      return err;
    };
  } else {
    fail(ErrorCode::invalid_argument, "config: unknown problem '" + problem + "'");
  }

  const ConvergenceTable tab = convergence_study(error_for_n, sizes, 1.0);
  json j;
  j["problem"] = problem;
  j["scheme"] = scheme;
  j["sizes"] = tab.sizes;
  j["mesh"] = tab.mesh;
  j["error"] = tab.error;
  j["order"] = tab.order;
  if (cfg.contains("out")) {
    const std::string out = require_string(cfg, "out");
    save_json(j.dump(2), out);
    write_sidecar(cfg, out);
  }
  return ok("convergence(" + problem + "): fitted order " +
            format_double(tab.order));
}

}  // namespace

RunResult run_config(const std::string& config_json) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const json::exception& e) {
    return {1, "", std::string("config: invalid JSON: ") + e.what()};
  }
  try {
    const std::string command = require_string(cfg, "command");
    if (command == "fbm") return cmd_fbm(cfg);
    if (command == "lift") return cmd_lift(cfg);
    if (command == "norms") return cmd_norms(cfg);
    if (command == "integrate") return cmd_integrate(cfg);
    if (command == "greedy") return cmd_greedy(cfg);
    if (command == "solve") return cmd_solve(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "convergence") return cmd_convergence(cfg);
    return {1, "", "config: unknown command '" + command + "'"};
  } catch (const Error& e) {
    return {1, "", e.what()};
  } catch (const std::exception& e) {
    return {1, "", std::string("internal error: ") + e.what()};
  }
}

RunResult replay(const std::string& config_file) {
  try {
    return run_config(load_text(config_file));
  } catch (const Error& e) {
    return {1, "", e.what()};
  }
}

}  // namespace roughkit
