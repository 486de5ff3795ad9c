// Command-line front end. Flags are folded into a JSON config and handed to
// the shared library through the C interface; every artifact gets a config
// sidecar so runs can be replayed with the replay subcommand.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "roughkit/capi.h"

using nlohmann::json;

namespace {

int dispatch(const json& cfg, bool quiet) {
  char* summary = nullptr;
  const int code = rk_run_json(cfg.dump().c_str(), &summary);
  if (code != 0) {
    std::fprintf(stderr, "error: %s\n", summary ? summary : rk_last_error());
  } else if (!quiet && summary && summary[0]) {
    std::printf("%s\n", summary);
  }
  rk_string_free(summary);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rough-path numerics toolkit"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress the summary line");

  json cfg;

  double hurst = 0.4, horizon = 1.0, alpha = 0.0, gamma = 0.0;
  int n = 0, dim = 1, paths = 0, from = 0, to = -1, lmin = 6, lmax = 10;
  unsigned long long seed = 0;
  std::string in, out, rough, controlled, field, gauge = "pvar";
  std::string scheme = "davie", suite = "all", problem = "exp", config_file;
  std::vector<double> y0;

  auto* fbm = app.add_subcommand("fbm", "sample fractional Brownian motion");
  fbm->add_option("--hurst", hurst, "Hurst exponent in (1/3, 1/2]")->required();
  fbm->add_option("--n", n, "number of grid intervals")->required();
  fbm->add_option("--horizon", horizon, "time horizon");
  fbm->add_option("--dim", dim, "number of independent components");
  fbm->add_option("--seed", seed, "random seed");
  fbm->add_option("--out", out, "output CSV")->required();

  auto* lift = app.add_subcommand("lift", "canonical lift of a sampled path");
  lift->add_option("--in", in, "input path CSV")->required();
  lift->add_option("--alpha", alpha, "Holder exponent (default 0.9 * hurst)");
  lift->add_option("--hurst", hurst, "Hurst exponent, used when --alpha is absent");
  lift->add_option("--out", out, "output stem or CSV name")->required();

  auto* norms = app.add_subcommand("norms", "norm report for a rough path");
  norms->add_option("--rough", rough, "rough path stem")->required();
  norms->add_option("--out", out, "JSON report file");

  auto* integrate = app.add_subcommand("integrate", "rough integral of a controlled path");
  integrate->add_option("--rough", rough, "rough path stem")->required();
  integrate->add_option("--controlled", controlled, "controlled path stem")->required();
  integrate->add_option("--from", from, "first grid index");
  integrate->add_option("--to", to, "last grid index (-1 = end)");
  integrate->add_option("--out", out, "JSON output file");

  auto* greedy = app.add_subcommand("greedy", "greedy partition at a threshold");
  greedy->add_option("--rough", rough, "rough path stem")->required();
  greedy->add_option("--gamma", gamma, "threshold")->required();
  greedy->add_option("--gauge", gauge, "pvar or holder");
  greedy->add_option("--out", out, "JSON output file");

  auto* solve = app.add_subcommand("solve", "solve the differential equation");
  solve->add_option("--rough", rough, "rough path stem")->required();
  solve->add_option("--field", field, "field spec JSON file")->required();
  solve->add_option("--y0", y0, "initial value")->required();
  solve->add_option("--scheme", scheme, "davie, linear, ds or backward");
  solve->add_option("--out", out, "solution CSV")->required();

  auto* verify = app.add_subcommand("verify", "audit the a-priori estimates");
  verify->add_option("--suite", suite, "linear, nonlinear, continuity, jacobian or all");
  verify->add_option("--paths", paths, "ensemble size")->required();
  verify->add_option("--hurst", hurst, "Hurst exponent");
  verify->add_option("--n", n, "grid intervals per path");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--out", out, "JSON report file");

  auto* conv = app.add_subcommand("convergence", "dyadic refinement study");
  conv->add_option("--problem", problem, "exp or ode");
  conv->add_option("--scheme", scheme, "davie or ds");
  conv->add_option("--lmin", lmin, "smallest dyadic level");
  conv->add_option("--lmax", lmax, "largest dyadic level");
  conv->add_option("--out", out, "JSON output file");

  auto* rep = app.add_subcommand("replay", "re-run a saved config sidecar");
  rep->add_option("--config", config_file, "path to a .config.json sidecar")->required();

  CLI11_PARSE(app, argc, argv);

  if (fbm->parsed()) {
    cfg = {{"command", "fbm"}, {"hurst", hurst}, {"n", n}, {"horizon", horizon},
           {"dim", dim},       {"seed", seed},   {"out", out}};
  } else if (lift->parsed()) {
    cfg = {{"command", "lift"}, {"in", in}, {"out", out}};
    if (alpha > 0) cfg["alpha"] = alpha;
    else cfg["hurst"] = hurst;
  } else if (norms->parsed()) {
    cfg = {{"command", "norms"}, {"rough", rough}};
    if (!out.empty()) cfg["out"] = out;
  } else if (integrate->parsed()) {
    cfg = {{"command", "integrate"}, {"rough", rough},
           {"controlled", controlled}, {"from", from}, {"to", to}};
    if (!out.empty()) cfg["out"] = out;
  } else if (greedy->parsed()) {
    cfg = {{"command", "greedy"}, {"rough", rough}, {"gamma", gamma}, {"gauge", gauge}};
    if (!out.empty()) cfg["out"] = out;
  } else if (solve->parsed()) {
    cfg = {{"command", "solve"}, {"rough", rough}, {"field", field},
           {"y0", y0},           {"scheme", scheme}, {"out", out}};
  } else if (verify->parsed()) {
    cfg = {{"command", "verify"}, {"suite", suite}, {"paths", paths},
           {"hurst", hurst},      {"seed", seed}};
    if (n > 0) cfg["n"] = n;
    if (!out.empty()) cfg["out"] = out;
  } else if (conv->parsed()) {
    cfg = {{"command", "convergence"}, {"problem", problem}, {"scheme", scheme},
           {"lmin", lmin},             {"lmax", lmax}};
    if (!out.empty()) cfg["out"] = out;
  } else if (rep->parsed()) {
    std::ifstream f(config_file, std::ios::binary);
    if (!f) {
      std::fprintf(stderr, "error: cannot open %s\n", config_file.c_str());
      return 1;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
      cfg = json::parse(ss.str());
    } catch (const json::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", config_file.c_str(), e.what());
      return 1;
    }
  }

  return dispatch(cfg, quiet);
}
