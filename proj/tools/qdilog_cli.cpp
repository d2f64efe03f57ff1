// qdilog: command-line front end for the quantum dilogarithm library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdilog/cli_parse.hpp"
#include "qdilog/report.hpp"
#include "qdilog/special.hpp"
#include "qdilog/suites.hpp"

namespace {

using qdilog::cplx;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

const char* kGrammar = R"(Complex literals: [-]ddd[.ddd][+|-ddd[.ddd]i]
  A real part, optionally followed by a signed imaginary part ending in 'i'.
  Digits are required on both sides of a decimal point; no spaces, no
  exponents, no bare 'i'. Examples: 1.0326  -2  0.3+0.4i  1-2.25i
  Real-valued flags (--b, --lambda, --x for phi, ...) use the same grammar
  without the imaginary part.

Grids (scan): --re a:b:step --im a:b:step, a <= b, step > 0.

Config file (--config FILE): one "key = value" per line, keys are the long
flag names without dashes (b, tol, seed, suite, format, out, report).
Flags given on the command line override the file.

Environment: QDILOG_THREADS caps the number of verification workers.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error
(and invalid b for verify), 3 domain error while evaluating.)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string b = "0.775";
  std::string tol;
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 7;
  std::string out;
  std::string format = "json";
  std::string report;
  // eval / scan / casimir arguments
  std::string function;
  std::string z, lambda, x, alpha, beta, gamma, t = "0";
  std::string re_grid, im_grid;
};

cplx complex_arg(const std::string& name, const std::string& text) {
  if (text.empty()) throw UsageError("missing --" + name);
  const auto v = qdilog::parse_complex(text);
  if (!v) throw UsageError("cannot parse --" + name + " '" + text + "' as a complex literal");
  return *v;
}

double real_arg(const std::string& name, const std::string& text) {
  if (text.empty()) throw UsageError("missing --" + name);
  const auto v = qdilog::parse_real(text);
  if (!v) throw UsageError("cannot parse --" + name + " '" + text + "' as a real literal");
  return *v;
}

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt15(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
}

void warn_params(const qdilog::BParams& p) {
  if (p.warning) std::cerr << "warning: " << *p.warning << "\n";
}

int cmd_eval(const Options& o) {
  const double b = real_arg("b", o.b);
  struct Value {
    cplx v;
    double err;
    bool real = false;
  };
  Value out{};
  // Argument parsing first so that malformed literals always exit 2.
  const std::string& fn = o.function;
  cplx z{}, x{}, alpha{}, beta{}, gamma{};
  double lambda = 0;
  if (fn == "gb" || fn == "sb") {
    z = complex_arg("z", o.z);
  } else if (fn == "g_small") {
    x = complex_arg("x", o.x);
  } else if (fn == "phi") {
    lambda = real_arg("lambda", o.lambda);
    x = complex_arg("x", o.x);
  } else if (fn == "fb") {
    alpha = complex_arg("alpha", o.alpha);
    beta = complex_arg("beta", o.beta);
    gamma = complex_arg("gamma", o.gamma);
    z = complex_arg("z", o.z);
  } else if (fn == "plancherel") {
    lambda = real_arg("lambda", o.lambda);
  } else {
    throw UsageError("unknown function '" + fn + "' (gb|sb|g_small|phi|fb|plancherel)");
  }

  const qdilog::BParams p = qdilog::make_params(b);
  warn_params(p);
  using namespace qdilog;
  if (fn == "gb") {
    const GbValue g = eval_Gb_detail(z, p);
    out = {g.value, g.err_estimate};
  } else if (fn == "sb") {
    const GbValue g = eval_Gb_detail(z, p);
    const cplx f = std::exp(-I * (pi / 2) * z * (z - p.Q));
    out = {f * g.value, std::abs(f) * g.err_estimate};
  } else if (fn == "g_small") {
    if (x.imag() == 0 && x.real() <= 0) throw BranchCut("g_b is cut along (-inf, 0]");
    const GbValue g = eval_Gb_detail(p.Q / 2 + std::log(x) / (2.0 * pi * I * p.b), p);
    const cplx v = std::conj(p.zeta) / g.value;
    out = {v, std::abs(v) * g.err_estimate / std::abs(g.value)};
  } else if (fn == "phi") {
    const cplx z1 = -I * x + I * lambda, z2 = -I * x - I * lambda;
    const GbValue g1 = eval_Gb_detail(z1, p), g2 = eval_Gb_detail(z2, p);
    const cplx v = eval_Phi(lambda, x, p);
    out = {v, std::abs(v) * (g1.err_estimate / std::abs(g1.value) + g2.err_estimate / std::abs(g2.value))};
  } else if (fn == "fb") {
    const QuadratureResult r = eval_Fb_detail(FbArgs{alpha, beta, gamma, z}, p);
    out = {r.value, r.err_estimate};
  } else {
    out = {plancherel_density(lambda, p), 0.0, true};
  }
  if (out.real)
    std::cout << "value: " << fmt15(out.v.real()) << "\n";
  else
    std::cout << "value: " << fmt15(out.v) << "\nabs: " << fmt15(std::abs(out.v))
              << "\narg: " << fmt15(std::arg(out.v)) << "\n";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", out.err);
  std::cout << "err_estimate: " << buf << "\n";
  return 0;
}

std::string render_reports(const std::vector<qdilog::IdentityReport>& reps, const std::string& format) {
  return format == "csv" ? qdilog::reports_to_csv(reps) : qdilog::reports_to_json(reps);
}

int finish_reports(const Options& o, const std::vector<qdilog::IdentityReport>& reps) {
  write_output(o.out, render_reports(reps, o.format));
  if (!o.report.empty()) write_output(o.report, qdilog::reports_to_json(reps));
  std::size_t failed = 0;
  for (const auto& r : reps) failed += !r.pass;
  std::cerr << reps.size() - failed << "/" << reps.size() << " checks passed\n";
  return failed == 0 ? 0 : kExitFail;
}

int cmd_verify(const Options& o) {
  const double b = real_arg("b", o.b);
  qdilog::SuiteContext ctx;
  try {
    ctx.params = qdilog::make_params(b);
  } catch (const qdilog::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  warn_params(ctx.params);
  if (!o.tol.empty()) {
    const double tol = real_arg("tol", o.tol);
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    ctx.tol = tol;
  }
  ctx.seed = o.seed;
  std::vector<qdilog::IdentityReport> reps;
  try {
    reps = qdilog::run_suites(o.suites, ctx);
  } catch (const qdilog::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return finish_reports(o, reps);
}

int cmd_casimir(const Options& o) {
  const double b = real_arg("b", o.b);
  const double lambda = o.lambda.empty() ? 0.5 : real_arg("lambda", o.lambda);
  const double t = real_arg("t", o.t);
  const qdilog::BParams p = qdilog::make_params(b);
  warn_params(p);
  const double tol = o.tol.empty() ? 1e-10 : real_arg("tol", o.tol);
  auto reps = qdilog::casimir_probe_reports(lambda, t, p, tol);
  qdilog::sort_reports(reps);
  return finish_reports(o, reps);
}

int cmd_scan(const Options& o) {
  const double b = real_arg("b", o.b);
  const auto re = qdilog::parse_grid(o.re_grid);
  const auto im = qdilog::parse_grid(o.im_grid);
  if (!re) throw UsageError("bad --re grid '" + o.re_grid + "' (want a:b:step)");
  if (!im) throw UsageError("bad --im grid '" + o.im_grid + "' (want a:b:step)");
  if (o.function != "gb" && o.function != "sb")
    throw UsageError("scan supports gb and sb, got '" + o.function + "'");
  const qdilog::BParams p = qdilog::make_params(b);
  warn_params(p);
  std::vector<qdilog::ScanRow> rows;
  for (double y : *im)
    for (double xr : *re) {
      const cplx z(xr, y);
      qdilog::ScanRow row{xr, y, std::nullopt};
      if (!qdilog::near_pole(z, p)) {
        try {
          row.value = o.function == "gb" ? qdilog::eval_Gb(z, p) : qdilog::eval_Sb(z, p);
        } catch (const qdilog::PoleHit&) {
        }
      }
      rows.push_back(row);
    }
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["re"] = r.re;
      j["im"] = r.im;
      j["abs"] = r.value ? nlohmann::ordered_json(std::abs(*r.value)) : nlohmann::ordered_json();
      j["arg"] = r.value ? nlohmann::ordered_json(std::arg(*r.value)) : nlohmann::ordered_json();
      arr.push_back(j);
    }
    write_output(o.out, arr.dump(2) + "\n");
  } else {
    write_output(o.out, qdilog::scan_to_csv(rows));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum dilogarithm G_b: evaluation, identity verification and representation probes"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.set_config("--config", "", "Read \"key = value\" defaults from FILE");

  Options o;
  app.add_option("--b", o.b, "Deformation parameter b in (0,1)")->capture_default_str();
  app.add_option("--tol", o.tol, "Tolerance override for checks");
  app.add_option("--suite", o.suites, "Suites to verify (names or 'all')")->delimiter(',')->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomised parameter grids")->capture_default_str();
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--report", o.report, "Also write the JSON report to this path");

  auto* eval = app.add_subcommand("eval", "Evaluate gb|sb|g_small|phi|fb|plancherel at a point");
  eval->fallthrough();
  eval->add_option("function", o.function, "Function name")->required();
  eval->add_option("--z", o.z, "Complex argument z");
  eval->add_option("--x", o.x, "Argument x (g_small, phi)");
  eval->add_option("--lambda", o.lambda, "Spectral parameter");
  eval->add_option("--alpha", o.alpha, "F_b parameter alpha");
  eval->add_option("--beta", o.beta, "F_b parameter beta");
  eval->add_option("--gamma", o.gamma, "F_b parameter gamma");

  auto* verify = app.add_subcommand("verify", "Run identity suites and emit a report");
  verify->fallthrough();

  auto* scan = app.add_subcommand("scan", "Tabulate |f| and arg f over a grid");
  scan->fallthrough();
  scan->add_option("function", o.function, "gb or sb")->required();
  scan->add_option("--re", o.re_grid, "Real axis a:b:step")->required();
  scan->add_option("--im", o.im_grid, "Imaginary axis a:b:step")->required();

  auto* casimir = app.add_subcommand("casimir", "Principal-series and Casimir probes at one lambda");
  casimir->fallthrough();
  casimir->add_option("--lambda", o.lambda, "Spectral parameter (default 0.5)");
  casimir->add_option("--t", o.t, "Second principal-series parameter")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*verify) return cmd_verify(o);
    if (*scan) return cmd_scan(o);
    if (*casimir) return cmd_casimir(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qdilog::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
