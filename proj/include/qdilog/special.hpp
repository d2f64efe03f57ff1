#pragma once

#include <array>
#include <cmath>
#include <string>

#include "qdilog/identities.hpp"
#include "qdilog/qdilog.hpp"

namespace qdilog {

struct FbArgs {
  cplx alpha;
  cplx beta;
  cplx gamma;
  cplx z;
};

/// G_b(α+iτ)G_b(β+iτ)G_b(−iτ)/G_b(γ+iτ).
inline cplx fb_integrand_core(cplx alpha, cplx beta, cplx gamma, cplx tau, const BParams& p) {
  return eval_Gb(alpha + I * tau, p) * eval_Gb(beta + I * tau, p) * eval_Gb(-I * tau, p) /
         eval_Gb(gamma + I * tau, p);
}

/// b-hypergeometric function
///   F_b(α,β,γ;z) = G_b(γ)/(G_b(α)G_b(β)) ∫ (−z)^{iτ/b} e^{iπτ²} G_b(α+iτ)G_b(β+iτ)G_b(−iτ)/G_b(γ+iτ) dτ
/// with the principal branch of log(−z).
inline QuadratureResult eval_Fb_detail(const FbArgs& a, const BParams& p,
                                       const QuadratureConfig& cfg = identity_config(),
                                       double height_fraction = 0.5) {
  if (a.z.imag() == 0 && a.z.real() >= 0) throw BranchCut("F_b needs z off [0, inf)");
  const double Q = p.Q, b = p.b;
  const cplx L = std::log(-a.z);
  const double phi = L.imag();
  const double rate_right = pi * Q + phi / b;
  const double rate_left = pi * (Q + 2.0 * (a.gamma - a.alpha - a.beta)).real() - phi / b;
  if (!(rate_right > 0) || !(rate_left > 0))
    throw ConvergenceViolation("F_b integral diverges for these parameters and arg(-z)");
  const double lo = std::max(0.0, a.gamma.real() - Q);
  const double hi = std::min(a.alpha.real(), a.beta.real());
  CheckOptions opt;
  opt.height_fraction = height_fraction;
  const double h = detail::band_height(lo, hi, opt, "F_b");
  auto f = [&](cplx tau) -> cplx {
    return std::exp(I * tau * L / b + I * pi * tau * tau) *
           fb_integrand_core(a.alpha, a.beta, a.gamma, tau, p);
  };
  QuadratureResult r = detail::line_integral(f, h, rate_left, rate_right, cfg);
  const cplx pref = eval_Gb(a.gamma, p) / (eval_Gb(a.alpha, p) * eval_Gb(a.beta, p));
  r.value *= pref;
  r.err_estimate *= std::abs(pref);
  return r;
}

inline cplx eval_Fb(const FbArgs& a, const BParams& p,
                    const QuadratureConfig& cfg = identity_config()) {
  return eval_Fb_detail(a, p, cfg).value;
}

struct TKernelArgs {
  double lambda = 0;
  double t = 0;
  double s = 0;
  double alpha_out = 0;
};

/// Scalar part of the fundamental matrix coefficient, together with the
/// exponents of the operator monomial A^{·} B^{·} B̂^{·} Â^{·} it multiplies.
struct TKernel {
  cplx value;
  std::array<cplx, 4> exponents;  // A, B, B̂, Â
};

inline TKernel eval_T_kernel(const TKernelArgs& a, cplx tau, const BParams& p,
                             const QuadratureConfig& cfg = function_config()) {
  const double Q = p.Q, lam = a.lambda, s = a.s, al = a.alpha_out, t = a.t;
  const cplx g1 = eval_Gb(-I * tau - I * al, p, cfg) * eval_Gb(Q / 2 + I * tau - I * lam, p, cfg) /
                  eval_Gb(Q / 2 - I * al - I * lam, p, cfg);
  const cplx g2 = eval_Gb(-I * tau - I * s, p, cfg) * eval_Gb(Q / 2 + I * s - I * lam, p, cfg) /
                  eval_Gb(Q / 2 - I * tau - I * lam, p, cfg);
  const cplx phase = std::exp(pi * I * (t - lam) * (s + al + 2.0 * tau) + pi * Q * (s + tau));
  const cplx ib = I / p.b;
  return TKernel{g1 * g2 * phase, {ib * (t - s), ib * (s + tau), ib * (al + tau), ib * (t - tau)}};
}

/// Same kernel assembled from two q-binomial coefficients with l = −Q/2 + iλ.
inline cplx eval_T_kernel_binomial(const TKernelArgs& a, cplx tau, const BParams& p,
                                   const QuadratureConfig& cfg = function_config()) {
  const cplx l = -p.Q / 2 + I * a.lambda;
  const cplx phase = std::exp(pi * I * (a.t - a.lambda) * (a.s + a.alpha_out + 2.0 * tau) +
                              pi * p.Q * (a.s + tau));
  return qbinom_coeff(l + I * a.alpha_out, I * tau + I * a.alpha_out, p, cfg) *
         qbinom_coeff(l + I * tau, I * a.s + I * tau, p, cfg) * phase;
}

}  // namespace qdilog
