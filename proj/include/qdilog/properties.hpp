#pragma once

// Pointwise property checks of G_b and S_b, each packaged as an IdentityReport.

#include <cmath>
#include <string>
#include <vector>

#include "qdilog/identities.hpp"
#include "qdilog/numerics.hpp"
#include "qdilog/qdilog.hpp"

namespace qdilog {

namespace detail {

inline IdentityReport pointwise_report(std::string name, std::map<std::string, cplx> params,
                                       cplx lhs, cplx rhs, double scale, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / scale;
  r.pass = r.rel_err < tol;
  r.evaluations = 0;
  r.err_estimate = 0;
  return r;
}

}  // namespace detail

/// G_b(z + b^{±1}) against (1 − e^{2πib^{±1}z}) G_b(z).
inline IdentityReport check_functional_equation(cplx z, bool dual, const BParams& p,
                                                double tol = 1e-8) {
  const double s = dual ? 1.0 / p.b : p.b;
  const cplx g = eval_Gb(z, p);
  const cplx lhs = eval_Gb(z + s, p);
  const cplx rhs = detail::one_minus_exp(2.0 * pi * I * s * z) * g;
  return detail::pointwise_report(dual ? "functional-equation-dual" : "functional-equation",
                                  {{"z", z}}, lhs, rhs, std::abs(g), tol);
}

/// G_b(z) G_b(Q − z) = e^{iπz(z−Q)}.
inline IdentityReport check_reflection(cplx z, const BParams& p, double tol = 1e-8) {
  const cplx lhs = eval_Gb(z, p) * eval_Gb(p.Q - z, p);
  const cplx rhs = std::exp(I * pi * z * (z - p.Q));
  return detail::pointwise_report("reflection", {{"z", z}}, lhs, rhs, std::abs(rhs), tol);
}

/// conj(G_b(z)) · G_b(Q − conj z) = 1.
inline IdentityReport check_conjugation(cplx z, const BParams& p, double tol = 1e-8) {
  const cplx lhs = std::conj(eval_Gb(z, p)) * eval_Gb(p.Q - std::conj(z), p);
  return detail::pointwise_report("conjugation", {{"z", z}}, lhs, 1.0, 1.0, tol);
}

/// |G_b(Q/2 + ix)| = 1.
inline IdentityReport check_unitarity(double x, const BParams& p, double tol = 1e-8) {
  const cplx lhs = std::abs(eval_Gb(p.Q / 2 + I * x, p));
  return detail::pointwise_report("unitarity", {{"x", x}}, lhs, 1.0, 1.0, tol);
}

/// S_b(z) against the Ruijsenaars integral with the two periods exchanged,
/// evaluated on the independent adaptive path. Needs |Re z − Q/2| < Q/2.
inline IdentityReport check_self_duality(cplx z, const BParams& p, double tol = 1e-8) {
  const cplx lhs = eval_Sb(z, p);
  const cplx rhs = std::exp(
      I * ruijsenaars_integral(I * z - I * p.Q / 2.0, 1.0 / p.b, p.b, function_config()).value);
  return detail::pointwise_report("self-duality", {{"z", z}}, lhs, rhs, std::abs(rhs), tol);
}

/// eval_Gb against k explicit b-shift factors applied to G_b(z + kb).
inline IdentityReport check_continuation(cplx z, int k, const BParams& p, double tol = 1e-9) {
  const cplx lhs = eval_Gb(z, p);
  const cplx rhs = eval_Gb_shifted(z, k, p);
  return detail::pointwise_report("continuation", {{"z", z}, {"k", double(k)}}, lhs, rhs,
                                  std::abs(rhs), tol);
}

/// lim_{x→0} x G_b(x) = 1/(2π), Richardson over x = 10⁻³, 10⁻⁴.
inline IdentityReport check_residue_origin(const BParams& p, double tol = 1e-5) {
  std::vector<cplx> v;
  for (double x : {1e-3, 1e-4}) v.push_back(x * eval_Gb(x, p));
  const cplx lim = richardson(v, 10.0, 1);
  return detail::pointwise_report("residue-origin", {}, lim, 1.0 / (2 * pi), 1.0 / (2 * pi), tol);
}

/// residue_info(n, m) against (z − z₀)/G_b(Q + z) near z₀ = nb + m/b.
inline IdentityReport check_residue_info(int n, int m, const BParams& p, double tol = 1e-4) {
  const cplx z0 = double(n) * p.b + double(m) / p.b;
  std::vector<cplx> v;
  for (double d : {1e-3, 1e-4}) v.push_back(d / eval_Gb(p.Q + z0 + d, p));
  const cplx lim = richardson(v, 10.0, 1);
  const cplx rhs = residue_info(n, m, p).residue_data;
  return detail::pointwise_report("residue-info", {{"n", double(n)}, {"m", double(m)}}, lim, rhs,
                                  std::abs(rhs), tol);
}

/// G_b(Q/2 + iy) → ζ̄_b for y → +∞ and G_b(z) e^{−iπz(z−Q)} → ζ_b for y → −∞.
inline IdentityReport check_asymptotics(double y, const BParams& p, double tol = 1e-4) {
  const cplx z = p.Q / 2 + I * y;
  if (y > 0)
    return detail::pointwise_report("asymptotics", {{"y", y}}, eval_Gb(z, p), std::conj(p.zeta),
                                    1.0, tol);
  const cplx lhs = eval_Gb(z, p) * std::exp(-I * pi * z * (z - p.Q));
  return detail::pointwise_report("asymptotics", {{"y", y}}, lhs, p.zeta, 1.0, tol);
}

/// |g_b(x)| = 1 for x > 0.
inline IdentityReport check_gb_modulus(double x, const BParams& p, double tol = 1e-10) {
  return detail::pointwise_report("g_b-modulus", {{"x", x}}, std::abs(eval_gb(x, p)), 1.0, 1.0, tol);
}

}  // namespace qdilog
