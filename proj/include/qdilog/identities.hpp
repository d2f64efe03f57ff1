#pragma once

// Contour-integral identities of G_b, each checked as quadrature (lhs) against
// closed form (rhs). Integration paths are horizontal lines Im τ = h placed in
// the band between the rising and falling pole strings; where the Gaussian
// phase makes one horizontal end non-integrable, that end continues along a
// ray at ±45° instead.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/numerics.hpp"
#include "qdilog/qdilog.hpp"
#include "qdilog/wclass.hpp"

namespace qdilog {

struct IdentityReport {
  std::string name;
  std::map<std::string, cplx> params;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0;
  double rel_err = 0;
  bool pass = false;
  long evaluations = 0;
  double err_estimate = 0;
};

struct CheckOptions {
  double tol = 1e-6;
  /// Where inside the admissible band the line sits, 0 = lower edge, 1 = upper.
  double height_fraction = 0.5;
};

inline QuadratureConfig identity_config() {
  QuadratureConfig c;
  c.abs_tol = 1e-12;
  c.rel_tol = 1e-10;
  c.max_subdivisions = 3000;
  return c;
}

inline IdentityReport finish_report(std::string name, std::map<std::string, cplx> params,
                                    const QuadratureResult& lhs, cplx rhs, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs.value;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs.value - rhs);
  r.rel_err = std::abs(rhs) > 0 ? r.abs_err / std::abs(rhs) : r.abs_err;
  r.pass = std::abs(rhs) < 1e-12 ? r.abs_err < tol : r.rel_err < tol;
  r.evaluations = lhs.evaluations;
  r.err_estimate = lhs.err_estimate;
  return r;
}

namespace detail {

inline double window_edge(double rate) {
  if (!(rate > 0)) return 12.0;
  return std::clamp(std::log(1e14) / rate, 1.5, 12.0);
}

// Line Im τ = h over a window sized by the exponential decay rates on each side.
template <class F>
QuadratureResult line_integral(const F& f, double h, double rate_left, double rate_right,
                               const QuadratureConfig& cfg, double left_angle = pi,
                               double right_angle = 0.0) {
  IndentedContour c = IndentedContour::line(h, -window_edge(rate_left), window_edge(rate_right));
  c.left_tail_angle = left_angle;
  c.right_tail_angle = right_angle;
  return integrate_contour(f, c, cfg);
}

inline double band_height(double lo, double hi, const CheckOptions& opt, const char* what) {
  if (!(lo < hi)) throw PinchedContour(std::string(what) + ": rising and falling pole strings overlap");
  const double fr = std::clamp(opt.height_fraction, 0.05, 0.95);
  return lo + fr * (hi - lo);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fourier transforms of 1/G_b(Q+it) and G_b(−it)
// ---------------------------------------------------------------------------

inline IdentityReport check_fourier_gb(double r, int variant, const BParams& p,
                                       const QuadratureConfig& cfg = identity_config(),
                                       const CheckOptions& opt = {}) {
  if (variant < 1 || variant > 4) throw DomainError("Fourier variant must be 1..4");
  const double Q = p.Q;
  auto integrand = [&](cplx t) -> cplx {
    const cplx ph = std::exp(2.0 * pi * I * t * r);
    switch (variant) {
      case 1: return ph * std::exp(-pi * I * t * t) / eval_Gb(Q + I * t, p);
      case 2: return ph * std::exp(-pi * Q * t) / eval_Gb(Q + I * t, p);
      case 3: return ph * std::exp(pi * Q * t) * eval_Gb(-I * t, p);
      default: return ph * std::exp(pi * I * t * t) * eval_Gb(-I * t, p);
    }
  };
  // Variants 1, 3 carry e^{∓iπt²} undamped as t → +∞; 2, 4 as t → −∞.
  const bool tilt_right = (variant == 1 || variant == 3);
  IndentedContour c = IndentedContour::line(0.0, tilt_right ? -detail::window_edge(pi * Q) : -4.0,
                                            tilt_right ? 4.0 : detail::window_edge(pi * Q));
  c.indent(0.0, 0.4 * std::min(p.b, 1.0 / p.b), Side::above);
  if (tilt_right)
    c.right_tail_angle = -pi / 4;
  else
    c.left_tail_angle = -3 * pi / 4;
  const QuadratureResult lhs = integrate_contour(integrand, c, cfg);
  const cplx g = eval_Gb(Q / 2 - I * r, p);
  const cplx rhs = (variant == 1 || variant == 3) ? std::conj(p.zeta) / g : p.zeta * g;
  return finish_report("fourier-v" + std::to_string(variant), {{"r", r}}, lhs, rhs, opt.tol);
}

// ---------------------------------------------------------------------------
// q-binomial coefficient
// ---------------------------------------------------------------------------

inline cplx qbinom_coeff(cplx t, cplx tau, const BParams& p,
                         const QuadratureConfig& cfg = function_config()) {
  return eval_Gb(-tau, p, cfg) * eval_Gb(tau - t, p, cfg) / eval_Gb(-t, p, cfg);
}

// ---------------------------------------------------------------------------
// τ-β, 4-5, 6-9 and 3-2 relations
// ---------------------------------------------------------------------------

inline IdentityReport check_tau_beta(cplx alpha, cplx beta, const BParams& p,
                                     const QuadratureConfig& cfg = identity_config(),
                                     const CheckOptions& opt = {}) {
  const double Q = p.Q;
  if (!(beta.real() > 0) || !((alpha + beta).real() < Q))
    throw ConvergenceViolation("tau-beta needs Re(beta) > 0 and Re(alpha+beta) < Q");
  const double h = detail::band_height(0.0, alpha.real(), opt, "tau-beta");
  auto f = [&](cplx tau) -> cplx {
    return std::exp(-2.0 * pi * tau * beta) * eval_Gb(alpha + I * tau, p) / eval_Gb(Q + I * tau, p);
  };
  const QuadratureResult lhs =
      detail::line_integral(f, h, 2 * pi * (Q - (alpha + beta).real()), 2 * pi * beta.real(), cfg);
  const cplx rhs = eval_Gb(alpha, p) * eval_Gb(beta, p) / eval_Gb(alpha + beta, p);
  return finish_report("tau-beta", {{"alpha", alpha}, {"beta", beta}}, lhs, rhs, opt.tol);
}

/// The 4-5 integrand, shared with the b-hypergeometric kernel in special.hpp.
inline cplx integrand_45_core(cplx alpha, cplx beta, cplx gamma, cplx tau, const BParams& p) {
  return eval_Gb(alpha + I * tau, p) * eval_Gb(beta + I * tau, p) /
         (eval_Gb(alpha + beta + gamma + I * tau, p) * eval_Gb(p.Q + I * tau, p));
}

inline IdentityReport check_45(cplx alpha, cplx beta, cplx gamma, const BParams& p,
                               const QuadratureConfig& cfg = identity_config(),
                               const CheckOptions& opt = {}) {
  const double Q = p.Q;
  if (!(gamma.real() > 0)) throw ConvergenceViolation("4-5 needs Re(gamma) > 0");
  const double sigma = (alpha + beta + gamma).real();
  const double h = detail::band_height(std::max(0.0, sigma - Q),
                                       std::min(alpha.real(), beta.real()), opt, "4-5");
  auto f = [&](cplx tau) -> cplx {
    return std::exp(-2.0 * pi * gamma * tau) * integrand_45_core(alpha, beta, gamma, tau, p);
  };
  const QuadratureResult lhs = detail::line_integral(f, h, 2 * pi * Q, 2 * pi * gamma.real(), cfg);
  const cplx rhs = eval_Gb(alpha, p) * eval_Gb(beta, p) * eval_Gb(gamma, p) /
                   (eval_Gb(alpha + gamma, p) * eval_Gb(beta + gamma, p));
  return finish_report("4-5", {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}, lhs, rhs,
                       opt.tol);
}

inline IdentityReport check_69(cplx alpha, cplx beta, cplx gamma, cplx delta, const BParams& p,
                               const QuadratureConfig& cfg = identity_config(),
                               const CheckOptions& opt = {}) {
  const double Q = p.Q;
  const cplx sigma = alpha + beta + gamma + delta;
  const double lo = std::max({0.0, -delta.real(), sigma.real() - Q});
  const double hi = std::min({alpha.real(), beta.real(), gamma.real()});
  const double h = detail::band_height(lo, hi, opt, "6-9");
  auto f = [&](cplx tau) -> cplx {
    const cplx num = eval_Gb(alpha + I * tau, p) * eval_Gb(beta + I * tau, p) *
                     eval_Gb(gamma + I * tau, p) * eval_Gb(delta - I * tau, p) *
                     eval_Gb(-I * tau, p);
    return std::exp(-2.0 * pi * tau * (delta - I * tau)) * num / eval_Gb(sigma + I * tau, p);
  };
  const QuadratureResult lhs = detail::line_integral(f, h, 2 * pi * Q, 2 * pi * Q, cfg);
  const cplx rhs = eval_Gb(alpha, p) * eval_Gb(beta, p) * eval_Gb(gamma, p) *
                   eval_Gb(alpha + delta, p) * eval_Gb(beta + delta, p) *
                   eval_Gb(gamma + delta, p) /
                   (eval_Gb(alpha + beta + delta, p) * eval_Gb(alpha + gamma + delta, p) *
                    eval_Gb(beta + gamma + delta, p));
  return finish_report("6-9", {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"gamma", gamma}},
                       lhs, rhs, opt.tol);
}

inline IdentityReport check_32(cplx alpha, cplx beta, cplx gamma, const BParams& p,
                               const QuadratureConfig& cfg = identity_config(),
                               const CheckOptions& opt = {}) {
  const double Q = p.Q;
  if (!((alpha - beta - gamma).real() < Q / 2))
    throw ConvergenceViolation("3-2 needs Re(alpha-beta-gamma) < Q/2");
  const double h = detail::band_height(-std::min(beta.real(), gamma.real()), alpha.real(), opt, "3-2");
  auto f = [&](cplx tau) -> cplx {
    const cplx u = beta - I * tau, v = gamma - I * tau;
    return eval_Gb(alpha + I * tau, p) * eval_Gb(u, p) * eval_Gb(v, p) *
           std::exp(-2.0 * pi * I * u * v);
  };
  // The left end carries e^{iπτ²}; turning it to −135° makes it Gaussian.
  const QuadratureResult lhs =
      detail::line_integral(f, h, 2 * pi * Q, 2 * pi * Q, cfg, -3 * pi / 4, 0.0);
  const cplx rhs = eval_Gb(alpha + gamma, p) * eval_Gb(alpha + beta, p);
  return finish_report("3-2", {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}, lhs, rhs,
                       opt.tol);
}

// ---------------------------------------------------------------------------
// Barnes lemmas
// ---------------------------------------------------------------------------

struct BarnesRow {
  double b;
  cplx lhs_scaled;  // integral side after the classical normalisation
  cplx rhs_scaled;  // product side after the classical normalisation
  double lhs_deviation;
  double rhs_deviation;
};

struct BarnesReport {
  IdentityReport summary;  // lhs/rhs = scaled product side at the last b vs Gamma value
  std::vector<BarnesRow> rows;
  bool decreasing = false;
};

/// −ib(1−q²)^{y−1}: real-b size of G_b(by) relative to Γ(y).
inline cplx classical_scale(cplx y, const BParams& p) {
  return -I * p.b * std::pow(1.0 - p.q * p.q, y - 1.0);
}

inline BarnesReport finish_barnes(std::string name, std::map<std::string, cplx> params,
                                  std::vector<BarnesRow> rows, cplx gamma_value, double tol) {
  BarnesReport rep;
  rep.rows = std::move(rows);
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].rhs_deviation < rep.rows[i - 1].rhs_deviation &&
          rep.rows[i].lhs_deviation < rep.rows[i - 1].lhs_deviation))
      rep.decreasing = false;
  const BarnesRow& last = rep.rows.back();
  QuadratureResult side;
  side.value = last.rhs_scaled;
  rep.summary = finish_report(std::move(name), std::move(params), side, gamma_value, tol);
  rep.summary.rel_err = std::max(last.rhs_deviation, last.lhs_deviation);
  rep.summary.pass = rep.decreasing && rep.summary.rel_err < tol;
  return rep;
}

/// Rewritten 4-5 relation at (ba, bb, bc) for each b, normalised and compared
/// with Γ(a+c)Γ(b+c)Γ(a)Γ(b)/Γ(a+b+c).
inline BarnesReport check_barnes_first(cplx a, cplx bb, cplx c, const std::vector<double>& b_list,
                                       const QuadratureConfig& cfg = identity_config(),
                                       double tol = 0.05) {
  if (b_list.empty()) throw DomainError("b_list must be nonempty");
  const cplx gval = gamma_c(a + c) * gamma_c(bb + c) * gamma_c(a) * gamma_c(bb) / gamma_c(a + bb + c);
  std::vector<BarnesRow> rows;
  for (double b : b_list) {
    const BParams p = make_params(b);
    const cplx al = b * a, be = b * bb, ga = b * c;
    if (!((al + be + ga).real() < p.Q)) throw ConvergenceViolation("needs Re(a+b+c) < Q/b");
    const double h = detail::band_height(0.0, std::min(al.real(), be.real()), {}, "barnes-first");
    auto f = [&](cplx tau) -> cplx {
      return std::exp(-2.0 * pi * I * (be + I * tau) * (al + I * tau)) * eval_Gb(al + I * tau, p) *
             eval_Gb(be + I * tau, p) * eval_Gb(ga - I * tau, p) * eval_Gb(-I * tau, p);
    };
    const QuadratureResult lhs =
        detail::line_integral(f, h, 2 * pi * p.Q, 2 * pi * (p.Q - (al + be + ga).real()), cfg);
    const cplx rhs = eval_Gb(al + ga, p) * eval_Gb(be + ga, p) * eval_Gb(al, p) * eval_Gb(be, p) /
                     eval_Gb(al + be + ga, p);
    const cplx one = classical_scale(1.0, p);
    const cplx norm = one * one * one * std::pow(1.0 - p.q * p.q, a + bb + c - 3.0);
    BarnesRow row{b, lhs.value / norm, rhs / norm, 0, 0};
    row.lhs_deviation = std::abs(row.lhs_scaled - gval) / std::abs(gval);
    row.rhs_deviation = std::abs(row.rhs_scaled - gval) / std::abs(gval);
    rows.push_back(row);
  }
  return finish_barnes("barnes-first", {{"a", a}, {"b", bb}, {"c", c}}, std::move(rows), gval, tol);
}

/// 6-9 relation at (ba, bb, bc, bd), normalised and compared with the
/// Gamma-function product of Barnes' second lemma.
inline BarnesReport check_barnes_second(cplx a, cplx bb, cplx c, cplx d,
                                        const std::vector<double>& b_list,
                                        const QuadratureConfig& cfg = identity_config(),
                                        double tol = 0.05) {
  if (b_list.empty()) throw DomainError("b_list must be nonempty");
  const cplx gval = gamma_c(a) * gamma_c(bb) * gamma_c(c) * gamma_c(a + d) * gamma_c(bb + d) *
                    gamma_c(c + d) /
                    (gamma_c(a + bb + d) * gamma_c(a + c + d) * gamma_c(bb + c + d));
  std::vector<BarnesRow> rows;
  for (double b : b_list) {
    const BParams p = make_params(b);
    const IdentityReport r = check_69(b * a, b * bb, b * c, b * d, p, cfg);
    const cplx one = classical_scale(1.0, p);
    const cplx norm = one * one * one / std::pow(1.0 - p.q * p.q, 3.0);
    BarnesRow row{b, r.lhs / norm, r.rhs / norm, 0, 0};
    row.lhs_deviation = std::abs(row.lhs_scaled - gval) / std::abs(gval);
    row.rhs_deviation = std::abs(row.rhs_scaled - gval) / std::abs(gval);
    rows.push_back(row);
  }
  return finish_barnes("barnes-second", {{"a", a}, {"b", bb}, {"c", c}, {"d", d}}, std::move(rows),
                       gval, tol);
}

/// (1/2π)∫Γ(a+iτ)Γ(b+iτ)Γ(c−iτ)Γ(−iτ)dτ against its Gamma closed form.
inline IdentityReport check_mellin_barnes_first(cplx a, cplx bb, cplx c,
                                                const QuadratureConfig& cfg = identity_config(),
                                                double tol = 1e-6) {
  const double h = detail::band_height(0.0, std::min(a.real(), bb.real()), {}, "mb-first");
  auto f = [&](cplx t) -> cplx {
    return std::exp(lgamma_c(a + I * t) + lgamma_c(bb + I * t) + lgamma_c(c - I * t) +
                    lgamma_c(-I * t)) / (2 * pi);
  };
  const QuadratureResult lhs = detail::line_integral(f, h, pi, pi, cfg);
  const cplx rhs = gamma_c(a + c) * gamma_c(bb + c) * gamma_c(a) * gamma_c(bb) / gamma_c(a + bb + c);
  return finish_report("mb-first", {{"a", a}, {"b", bb}, {"c", c}}, lhs, rhs, tol);
}

/// (1/2π)∫Γ(a+iτ)Γ(b+iτ)Γ(c+iτ)Γ(d−iτ)Γ(−iτ)/Γ(a+b+c+d+iτ)dτ against its closed form.
inline IdentityReport check_mellin_barnes_second(cplx a, cplx bb, cplx c, cplx d,
                                                 const QuadratureConfig& cfg = identity_config(),
                                                 double tol = 1e-6) {
  const double h = detail::band_height(std::max(0.0, -d.real()),
                                       std::min({a.real(), bb.real(), c.real()}), {}, "mb-second");
  const cplx s = a + bb + c + d;
  auto f = [&](cplx t) -> cplx {
    return std::exp(lgamma_c(a + I * t) + lgamma_c(bb + I * t) + lgamma_c(c + I * t) +
                    lgamma_c(d - I * t) + lgamma_c(-I * t) - lgamma_c(s + I * t)) / (2 * pi);
  };
  const QuadratureResult lhs = detail::line_integral(f, h, pi, pi, cfg);
  const cplx rhs = gamma_c(a) * gamma_c(bb) * gamma_c(c) * gamma_c(a + d) * gamma_c(bb + d) *
                   gamma_c(c + d) /
                   (gamma_c(a + bb + d) * gamma_c(a + c + d) * gamma_c(bb + c + d));
  return finish_report("mb-second", {{"a", a}, {"b", bb}, {"c", c}, {"d", d}}, lhs, rhs, tol);
}

// ---------------------------------------------------------------------------
// Delta-function limits
// ---------------------------------------------------------------------------

struct DeltaProbe {
  std::vector<std::pair<double, cplx>> values;  // (ε, regularised integral)
  cplx extrapolated;
  cplx target;
};

inline DeltaProbe delta_limit_probe(const WFunction1& f, const std::vector<double>& eps_list,
                                    int variant, const BParams& p,
                                    const QuadratureConfig& cfg = identity_config()) {
  if (variant < 1 || variant > 3) throw DomainError("delta variant must be 1..3");
  if (eps_list.empty()) throw DomainError("eps_list must be nonempty");
  for (std::size_t i = 0; i < eps_list.size(); ++i)
    if (!(eps_list[i] > 0) || (i > 0 && !(eps_list[i] < eps_list[i - 1])))
      throw DomainError("eps_list must be decreasing positives");
  const double b = p.b, Q = p.Q;
  if (variant == 3 && !(eps_list.front() < b / 2))
    throw DomainError("variant 3 needs eps < b/2 to separate the poles near -ib");
  DeltaProbe out;
  std::vector<cplx> vals;
  for (double e : eps_list) {
    std::function<cplx(cplx)> kernel;
    switch (variant) {
      case 1: {
        const cplx c = eval_Gb(Q - 2 * e, p);
        kernel = [&p, c, e, Q](cplx x) { return c * eval_Gb(I * x + e, p) / eval_Gb(Q + I * x - e, p); };
        break;
      }
      case 2: {
        const cplx c = 1.0 / eval_Gb(2 * e, p);
        kernel = [&p, c, e](cplx x) { return c * eval_Gb(e - I * x, p) * eval_Gb(e + I * x, p); };
        break;
      }
      default: {
        const cplx c = eval_Gb(Q + b - 2 * e, p);
        kernel = [&p, c, e, b, Q](cplx x) {
          return c * eval_Gb(e + I * x - b, p) / eval_Gb(Q + I * x - e, p);
        };
      }
    }
    auto g = [&](cplx x) -> cplx {
      const cplx fx = f(x);
      return fx == 0.0 ? cplx(0.0) : kernel(x) * fx;
    };
    cplx v = integrate_contour(g, IndentedContour::line(0.0, -8, 8), cfg).value;
    if (variant == 3) {
      // The path passes below the pole at x = −i(b−ε): add the loop around it
      // as the difference of two lines on either side.
      v += integrate_contour(g, IndentedContour::line(-b, -8, 8), cfg).value;
      v -= integrate_contour(g, IndentedContour::line(-b / 2, -8, 8), cfg).value;
    }
    out.values.emplace_back(e, v);
    vals.push_back(v);
  }
  out.extrapolated = richardson(vals, eps_list.size() > 1 ? eps_list[0] / eps_list[1] : 2.0, 1);
  out.target = variant == 3 ? -p.q * p.q * f(0.0) + f(-I * b) : f(0.0);
  return out;
}

}  // namespace qdilog
