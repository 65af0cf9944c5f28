// axidiff: evaluate, compare and self-check solutions of the radial heat equation.
//
// exit codes: 0 ok, 1 usage, 2 numerical non-convergence / check failure, 3 bad parameter

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axidiff/driver.hpp"
#include "axidiff/selftest.hpp"

namespace {

using namespace axidiff;

struct Options {
  IcSpec ic;
  std::string r = "0";
  std::string t = "0.25";
  double kappa = 1.0;
  double tol = 1e-10;
  std::string method = "quadrature";
  std::string methods = "series,quadrature";
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--ic", o.ic.name, "initial condition")
      ->check(CLI::IsMember({"gaussian", "disk", "j0", "j0sq", "ivkv", "log-gaussian", "log-disk"}));
  app->add_option("--a", o.ic.a, "Bessel scale a");
  app->add_option("--c", o.ic.c, "Gaussian rate c");
  app->add_option("--v", o.ic.v, "order v of I_v K_v");
  app->add_option("--kappa", o.kappa, "diffusivity");
  app->add_option("--r", o.r, "radii: comma list or lo:hi:step");
  app->add_option("--t", o.t, "times: comma list or lo:hi:step");
  app->add_option("--tol", o.tol, "target tolerance");
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", o.out, "output path (default stdout)");
}

EvalRequest to_request(const Options& o) {
  EvalRequest req;
  req.ic = o.ic;
  req.method = parse_method(o.method);
  req.radii = parse_values(o.r);
  req.times = parse_values(o.t);
  req.kappa = o.kappa;
  req.tol = o.tol;
  return req;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + o.out + "'");
  f << text;
}

int cmd_eval(const Options& o) {
  const EvalRequest req = to_request(o);
  Evaluator ev(req);
  const auto rows = ev.run(req.method);
  emit(o, o.format == "json" ? format_json(req, rows) : format_csv(rows));
  return 0;
}

int cmd_compare(const Options& o) {
  EvalRequest req = to_request(o);
  std::vector<Method> methods;
  std::stringstream ss(o.methods);
  for (std::string m; std::getline(ss, m, ',');) methods.push_back(parse_method(m));
  Evaluator ev(req);
  const auto rep = compare_methods(ev, methods);
  emit(o, o.format == "json" ? format_comparison_json(req, rep) : format_comparison_csv(rep));
  return rep.ok() ? 0 : 2;
}

int cmd_convergence(const Options& o) {
  const auto radii = parse_values(o.r);
  const auto times = parse_values(o.t);
  if (radii.size() != 1 || times.size() != 1) throw UsageError("convergence: give a single --r and --t");
  const PhysicalSetup s{o.kappa, radii[0], times[0]};
  s.validate();
  const auto rows = convergence_table(o.ic, s, o.tol);
  if (o.format == "json") {
    nlohmann::json j;
    j["request"] = {{"ic", o.ic.name}, {"a", o.ic.a}, {"v", o.ic.v}, {"kappa", o.kappa},
                    {"r", radii[0]},   {"t", times[0]}, {"tol", o.tol}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) j["rows"].push_back({{"n", r.n}, {"partial", r.partial}, {"abs_err", r.abs_err}});
    j["ledger_version"] = kLedgerVersion;
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, format_convergence_csv(rows));
  }
  return 0;
}

int cmd_selftest(const std::string& filter, const std::string& mutate) {
  SelftestOptions opt;
  opt.filter = filter;
  if (mutate == "j0sq-half") opt.j0sq_variant = Variant::half_prefactor;
  else if (!mutate.empty()) throw UsageError("unknown mutation '" + mutate + "'");
  const auto results = run_selftest(opt);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s %s/%s deviation=%.3e limit=%.1e\n", r.pass() ? "PASS" : "FAIL", r.module.c_str(),
                r.name.c_str(), r.deviation, r.limit);
    if (!r.pass()) ++failures;
  }
  std::printf("%d of %zu properties failed\n", failures, results.size());
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axidiff: solutions of the axisymmetric diffusion equation"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "evaluate one method on an (r, t) grid");
  add_common(eval, o);
  eval->add_option("--method", o.method, "series|quadrature|contour|fd|log")
      ->check(CLI::IsMember({"series", "quadrature", "contour", "fd", "log"}));

  auto* compare = app.add_subcommand("compare", "run several methods and check agreement");
  add_common(compare, o);
  compare->add_option("--methods", o.methods, "comma separated methods");

  auto* conv = app.add_subcommand("convergence", "partial sums of the residue series vs quadrature");
  add_common(conv, o);

  std::string filter, mutate;
  auto* self = app.add_subcommand("selftest", "run the property suite");
  self->add_option("--filter", filter, "module: specfun|quadrature|series|contour|log|fd");
  self->add_option("--mutate", mutate, "inject a known-wrong constant (j0sq-half)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*compare) return cmd_compare(o);
    if (*conv) return cmd_convergence(o);
    if (*self) return cmd_selftest(filter, mutate);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 3;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "convergence error: %s\n", e.what());
    return 2;
  }
  return 1;
}
