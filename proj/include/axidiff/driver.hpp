#ifndef AXIDIFF_DRIVER_HPP
#define AXIDIFF_DRIVER_HPP

// Request parsing, method dispatch and CSV/JSON formatting behind the axidiff
// command-line tool. Kept in the library so the round-trip and determinism
// properties can be tested in-process.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "axidiff/errors.hpp"
#include "axidiff/fd_reference.hpp"
#include "axidiff/initial_condition.hpp"
#include "axidiff/log_kernel.hpp"
#include "axidiff/mellin_barnes.hpp"
#include "axidiff/quadrature_oracle.hpp"
#include "axidiff/series.hpp"

namespace axidiff {

inline constexpr const char* kLedgerVersion = "1";

/// Malformed command line. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { series, quadrature, contour, fd, log };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::quadrature: return "quadrature";
    case Method::contour: return "contour";
    case Method::fd: return "fd";
    case Method::log: return "log";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  for (Method m : {Method::series, Method::quadrature, Method::contour, Method::fd, Method::log})
    if (to_string(m) == s) return m;
  throw UsageError("unknown method '" + s + "'");
}

struct IcSpec {
  std::string name = "gaussian";  // gaussian|disk|j0|j0sq|ivkv|log-gaussian|log-disk
  double a = 1.0;
  double c = 1.0;
  double v = 0.3;
  double radius = 1.0;
};

inline InitialCondition make_ic(const IcSpec& s) {
  if (s.name == "gaussian") return InitialCondition::gaussian(s.c);
  if (s.name == "disk") return InitialCondition::uniform_disk(s.radius);
  if (s.name == "j0") return InitialCondition::bessel_j0(s.a);
  if (s.name == "j0sq") return InitialCondition::bessel_j0_squared(s.a);
  if (s.name == "ivkv") return InitialCondition::product_ik(s.a, s.v);
  if (s.name == "log-gaussian") return InitialCondition::log_weighted(InitialCondition::gaussian(s.c));
  if (s.name == "log-disk")
    return InitialCondition::log_weighted(InitialCondition::uniform_disk(s.radius));
  throw UsageError("unknown initial condition '" + s.name + "'");
}

/// "0.1,0.5,2" or "lo:hi:step" (inclusive of hi up to rounding).
inline std::vector<double> parse_values(const std::string& text) {
  auto to_double = [&text](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + tok + "' in '" + text + "'");
    }
    if (used != tok.size()) throw UsageError("cannot parse number '" + tok + "' in '" + text + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("range must be lo:hi:step, got '" + text + "'");
    const double lo = to_double(parts[0]), hi = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0.0) || hi < lo) throw UsageError("range needs step > 0 and hi >= lo: '" + text + "'");
    const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    if (n > 100000) throw UsageError("range has too many points: '" + text + "'");
    for (long k = 0; k <= n; ++k) out.push_back(lo + k * step);
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(to_double(tok));
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

struct EvalRequest {
  IcSpec ic;
  Method method = Method::quadrature;
  std::vector<double> radii;
  std::vector<double> times;
  double kappa = 1.0;
  double tol = 1e-10;
};

struct Row {
  double r = 0.0;
  double t = 0.0;
  std::string method;
  double value = 0.0;
  double err_est = 0.0;
  double work = 0.0;

  bool operator==(const Row&) const = default;
};

namespace detail {

inline std::optional<SeriesKind> series_kind(const std::string& ic) {
  if (ic == "j0") return SeriesKind::bessel_j0;
  if (ic == "j0sq") return SeriesKind::bessel_j0_squared;
  if (ic == "ivkv") return SeriesKind::product_ik;
  return std::nullopt;
}

inline FDConfig fd_config(const InitialCondition& g, double kappa, double t, double r, int scale) {
  const double support = std::isfinite(g.support_bound()) ? g.support_bound() : 0.0;
  FDConfig cfg;
  cfg.r_max = std::max({12.0, 8.0 * std::sqrt(kappa * t) + support, r + 8.0 * std::sqrt(kappa * t)});
  cfg.nr = static_cast<int>(std::ceil(cfg.r_max / 0.005)) / scale;
  cfg.t_end = t;
  cfg.nt = std::max(32, 800 / scale);
  return cfg;
}

}  // namespace detail

/// Evaluates one method over the grid (time-major, radius-minor order).
class Evaluator {
 public:
  explicit Evaluator(EvalRequest req) : req_(std::move(req)), ic_(make_ic(req_.ic)) {
    require(std::isfinite(req_.kappa) && req_.kappa > 0.0, "kappa must be > 0");
    require(req_.tol > 0.0 && req_.tol <= 1e-4, "tol must lie in (0, 1e-4]");
    if (req_.radii.empty() || req_.times.empty()) throw UsageError("grid must be nonempty");
  }

  const EvalRequest& request() const { return req_; }

  Row evaluate(Method m, double r, double t) {
    const PhysicalSetup s{req_.kappa, r, t};
    s.validate();
    Row row{r, t, to_string(m), 0.0, 0.0, 0.0};
    switch (m) {
      case Method::series: {
        const auto kind = detail::series_kind(req_.ic.name);
        if (!kind) throw ParameterError("series: no residue series for '" + req_.ic.name + "'");
        SeriesParams p;
        p.a = req_.ic.a;
        p.v = req_.ic.v;
        p.setup = s;
        p.tol = req_.tol;
        const SeriesResult res = evaluate_series(*kind, p);
        if (res.status != SeriesStatus::converged)
          throw ConvergenceError("series: term budget exhausted");
        row.value = res.value;
        row.err_est = res.tail_estimate;
        row.work = res.terms_used;
        break;
      }
      case Method::quadrature: {
        const QuadratureResult q = solve_quadrature(ic_, s, std::max(1e-13, req_.tol));
        row.value = q.value;
        row.err_est = q.abs_error_estimate;
        row.work = q.evaluations;
        break;
      }
      case Method::contour: {
        const MellinDescriptor md = descriptor_for(ic_);
        ContourConfig cfg;
        cfg.tol = req_.tol;
        const ContourResult c = u_contour(md, s, cfg);
        row.value = c.value;
        row.err_est = std::max(c.imag_residual, c.endpoint_magnitude);
        row.work = c.n_points;
        break;
      }
      case Method::fd: {
        // one mesh per time level, wide enough for the whole radius list
        const double r_hi = std::max(r, *std::max_element(req_.radii.begin(), req_.radii.end()));
        const auto& fine = fd_profile(r_hi, t, 1);
        const auto& coarse = fd_profile(r_hi, t, 2);
        row.value = fine.value_at(r);
        row.err_est = std::abs(row.value - coarse.value_at(r)) / 3.0;
        row.work = static_cast<double>(fine.radii.size() - 1) * detail::fd_config(ic_, req_.kappa, t, r_hi, 1).nt;
        break;
      }
      case Method::log: {
        if (!ic_.is_log_weighted())
          throw ParameterError("log: method needs a log-weighted initial condition");
        const LogDecomposition d = u_log_weighted(ic_.base(), s, req_.tol);
        row.value = d.total;
        row.err_est = d.psi_series.tail_estimate;
        row.work = d.psi_series.terms_used;
        break;
      }
    }
    return row;
  }

  std::vector<Row> run(Method m) {
    std::vector<Row> rows;
    for (double t : req_.times)
      for (double r : req_.radii) rows.push_back(evaluate(m, r, t));
    return rows;
  }

 private:
  const RadialProfile& fd_profile(double r, double t, int scale) {
    const FDConfig cfg = detail::fd_config(ic_, req_.kappa, t, r, scale);
    const auto key = std::make_tuple(t, scale, cfg.r_max);
    auto it = fd_cache_.find(key);
    if (it == fd_cache_.end()) it = fd_cache_.emplace(key, solve_fd(ic_, req_.kappa, cfg)).first;
    return it->second;
  }

  EvalRequest req_;
  InitialCondition ic_;
  std::map<std::tuple<double, int, double>, RadialProfile> fd_cache_;
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_csv(const std::vector<Row>& rows) {
  std::string out = "r,t,method,value,err_est,work\n";
  for (const Row& r : rows) {
    out += format_double(r.r) + ',' + format_double(r.t) + ',' + r.method + ',' +
           format_double(r.value) + ',' + format_double(r.err_est) + ',' + format_double(r.work) + '\n';
  }
  return out;
}

inline std::vector<Row> parse_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || line != "r,t,method,value,err_est,work")
    throw UsageError("csv: unexpected header");
  std::vector<Row> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string tok; std::getline(ls, tok, ',');) f.push_back(tok);
    if (f.size() != 6) throw UsageError("csv: expected 6 fields in '" + line + "'");
    rows.push_back({std::stod(f[0]), std::stod(f[1]), f[2], std::stod(f[3]), std::stod(f[4]),
                    std::stod(f[5])});
  }
  return rows;
}

inline nlohmann::json request_json(const EvalRequest& req) {
  return {{"ic", req.ic.name}, {"a", req.ic.a},         {"c", req.ic.c},
          {"v", req.ic.v},     {"kappa", req.kappa},    {"method", to_string(req.method)},
          {"r", req.radii},    {"t", req.times},        {"tol", req.tol}};
}

inline std::string format_json(const EvalRequest& req, const std::vector<Row>& rows) {
  nlohmann::json j;
  j["request"] = request_json(req);
  j["rows"] = nlohmann::json::array();
  for (const Row& r : rows)
    j["rows"].push_back({{"r", r.r},         {"t", r.t},           {"method", r.method},
                         {"value", r.value}, {"err_est", r.err_est}, {"work", r.work}});
  j["ledger_version"] = kLedgerVersion;
  return j.dump(2) + "\n";
}

/// Cross-method agreement tolerance, applied as tol * max(1, |u|).
inline double method_tolerance(Method m) {
  switch (m) {
    case Method::series:
    case Method::quadrature: return 1e-8;
    case Method::log: return 1e-7;
    case Method::contour: return 1e-6;
    case Method::fd: return 1e-4;
  }
  return 0.0;
}

struct ComparisonRow {
  double r = 0.0, t = 0.0;
  std::vector<Row> per_method;
  std::vector<double> diffs;  // pairwise, in (i < j) order
  bool ok = true;
};

struct ComparisonReport {
  std::vector<Method> methods;
  std::vector<ComparisonRow> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.ok) return false;
    return true;
  }
};

inline ComparisonReport compare_methods(Evaluator& ev, const std::vector<Method>& methods) {
  if (methods.empty()) throw UsageError("compare: need at least one method");
  ComparisonReport rep;
  rep.methods = methods;
  for (double t : ev.request().times)
    for (double r : ev.request().radii) {
      ComparisonRow cr{r, t, {}, {}, true};
      for (Method m : methods) cr.per_method.push_back(ev.evaluate(m, r, t));
      for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
          const double d = std::abs(cr.per_method[i].value - cr.per_method[j].value);
          const double scale = std::max(1.0, std::abs(cr.per_method[i].value));
          cr.diffs.push_back(d);
          if (!(d <= std::max(method_tolerance(methods[i]), method_tolerance(methods[j])) * scale))
            cr.ok = false;
        }
      rep.rows.push_back(std::move(cr));
    }
  return rep;
}

inline std::string format_comparison_csv(const ComparisonReport& rep) {
  std::string out = "r,t";
  const auto& ms = rep.methods;
  for (Method m : ms) out += ",value_" + to_string(m);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      out += ",diff_" + to_string(ms[i]) + "_" + to_string(ms[j]);
  for (Method m : ms) out += ",err_" + to_string(m);
  for (Method m : ms) out += ",work_" + to_string(m);
  out += ",status\n";
  for (const auto& row : rep.rows) {
    out += format_double(row.r) + ',' + format_double(row.t);
    for (const auto& pm : row.per_method) out += ',' + format_double(pm.value);
    for (double d : row.diffs) out += ',' + format_double(d);
    for (const auto& pm : row.per_method) out += ',' + format_double(pm.err_est);
    for (const auto& pm : row.per_method) out += ',' + format_double(pm.work);
    out += row.ok ? ",ok\n" : ",mismatch\n";
  }
  return out;
}

inline std::string format_comparison_json(const EvalRequest& req, const ComparisonReport& rep) {
  nlohmann::json j;
  j["request"] = request_json(req);
  std::vector<std::string> names;
  for (Method m : rep.methods) names.push_back(to_string(m));
  j["request"]["methods"] = names;
  j["request"].erase("method");
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rep.rows) {
    nlohmann::json o{{"r", row.r}, {"t", row.t}, {"status", row.ok ? "ok" : "mismatch"}};
    for (const auto& pm : row.per_method) {
      o["value_" + pm.method] = pm.value;
      o["err_" + pm.method] = pm.err_est;
      o["work_" + pm.method] = pm.work;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j2 = i + 1; j2 < names.size(); ++j2)
        o["diff_" + names[i] + "_" + names[j2]] = row.diffs[k++];
    j["rows"].push_back(o);
  }
  j["ledger_version"] = kLedgerVersion;
  return j.dump(2) + "\n";
}

struct ConvergenceRow {
  int n = 0;
  double partial = 0.0;
  double abs_err = 0.0;
};

/// Partial sums of the residue series at one point against the quadrature
/// oracle at tol 1e-12.
inline std::vector<ConvergenceRow> convergence_table(const IcSpec& ic, const PhysicalSetup& s,
                                                     double tol) {
  const auto kind = detail::series_kind(ic.name);
  if (!kind) throw ParameterError("convergence: no residue series for '" + ic.name + "'");
  SeriesParams p;
  p.a = ic.a;
  p.v = ic.v;
  p.setup = s;
  p.tol = tol;
  const SeriesResult res = evaluate_series(*kind, p);
  if (res.routed_to_oracle)
    throw ParameterError("convergence: 4 a^2 kappa t above the cancellation limit; no partial sums");
  const double oracle = solve_quadrature(make_ic(ic), s, 1e-12).value;
  std::vector<ConvergenceRow> rows;
  for (std::size_t n = 0; n < res.partial_sums.size(); ++n)
    rows.push_back({static_cast<int>(n), res.partial_sums[n], std::abs(res.partial_sums[n] - oracle)});
  return rows;
}

inline std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,partial,abs_err\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ',' + format_double(r.partial) + ',' + format_double(r.abs_err) + '\n';
  return out;
}

}  // namespace axidiff

#endif  // AXIDIFF_DRIVER_HPP
