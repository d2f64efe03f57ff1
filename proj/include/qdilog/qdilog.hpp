#pragma once

/**
 * @file qdilog.hpp
 * @brief The quantum dilogarithm G_b and its variants S_b, g_b.
 *
 * Inside the strip 0 < Re z < Q the function is computed from the integral
 *
 *   G(a₊, a₋; w) = exp( i ∫₀^∞ dy/y [ sin(2yw) / (2 sinh(a₊y) sinh(a₋y)) − w/(a₊a₋y) ] ),
 *   G_b(z)      = G(b, b⁻¹; iz − iQ/2) · e^{(πi/2) z (z − Q)},
 *
 * and everywhere else by the shift equations
 *
 *   G_b(z + b^{±1}) = (1 − e^{2πi b^{±1} z}) G_b(z).
 *
 * Poles sit at z = −nb − mb⁻¹ and zeros at z = Q + nb + mb⁻¹ (n, m ≥ 0).
 */

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/numerics.hpp"

namespace qdilog {

struct BParams {
  double b = 0.775;
  cplx q;
  cplx q_tilde;
  double Q = 0;
  cplx zeta;
  /// Set when b² sits close to a low-denominator rational.
  std::optional<std::string> warning;
};

inline BParams make_params(double b) {
  if (!(b > 0 && b < 1) || !std::isfinite(b))
    throw DomainError("b must lie in (0,1), got " + std::to_string(b));
  BParams p;
  p.b = b;
  p.q = std::exp(I * pi * b * b);
  p.q_tilde = std::exp(I * pi / (b * b));
  p.Q = b + 1.0 / b;
  p.zeta = std::exp(I * pi / 4.0 + I * pi * (b * b + 1.0 / (b * b)) / 12.0);
  const double b2 = b * b;
  for (int r = 1; r <= 8; ++r) {
    const double num = std::round(b2 * r);
    if (std::abs(b2 - num / r) < 1e-3) {
      p.warning = "b^2 = " + std::to_string(b2) + " is within 1e-3 of " +
                  std::to_string(int(num)) + "/" + std::to_string(r) +
                  "; pole lattice is nearly degenerate";
      break;
    }
  }
  return p;
}

/// Default integration settings for function-level evaluation.
inline QuadratureConfig function_config() {
  QuadratureConfig c;
  c.abs_tol = 1e-15;
  c.rel_tol = 1e-13;
  c.max_subdivisions = 6000;
  return c;
}

namespace detail {

// Power series of sin(2yw)/(2y·S(y)) − w in Y = y², S = sinhc(a₊y)·sinhc(a₋y),
// divided by a₊a₋Y. Coefficients of Y^0 .. Y^{K-1}.
template <class P>
std::vector<cplx> ruijsenaars_series(cplx w, P ap, P am, int K) {
  const int n = K + 1;
  std::vector<cplx> num(n), sp(n), sm(n), den(n, 0.0), quo(n);
  double fact = 1;  // (2k+1)!
  cplx pw = 1, pa = 1, pb = 1;
  const cplx w2 = -4.0 * w * w;
  const cplx a2 = cplx(ap) * cplx(ap), b2 = cplx(am) * cplx(am);
  for (int k = 0; k < n; ++k) {
    if (k > 0) fact *= double(2 * k) * double(2 * k + 1);
    num[k] = w * pw / fact;
    sp[k] = pa / fact;
    sm[k] = pb / fact;
    pw *= w2;
    pa *= a2;
    pb *= b2;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) den[i + j] += sp[i] * sm[j];
  for (int k = 0; k < n; ++k) {
    cplx acc = num[k];
    for (int j = 1; j <= k; ++j) acc -= den[j] * quo[k - j];
    quo[k] = acc / den[0];
  }
  std::vector<cplx> out(K);
  const cplx prod = cplx(ap) * cplx(am);
  for (int k = 0; k < K; ++k) out[k] = quo[k + 1] / prod;
  return out;
}

}  // namespace detail

/// ∫₀^∞ dy/y [ sin(2yw)/(2 sinh(a₊y) sinh(a₋y)) − w/(a₊a₋y) ].
/// Periods may be real or complex with positive real parts.
template <class P>
QuadratureResult ruijsenaars_integral(cplx w, P ap, P am, const QuadratureConfig& cfg) {
  const cplx A = ap, B = am;
  const double S = (A + B).real();
  const double d = S - 2 * std::abs(w.imag());
  if (!(A.real() > 0 && B.real() > 0) || !(d > 0))
    throw StripViolation("|Im w| must be below Re(a+ + a-)/2");
  if (w == 0.0) return QuadratureResult{};
  const int K = 8;
  const double amax = std::max({std::abs(A), std::abs(B), 2 * std::abs(w)});
  const double ys = 0.5 / amax;
  const std::vector<cplx> series = detail::ruijsenaars_series(w, ap, am, K);
  const cplx AB = A * B;
  const cplx Ssum = A + B;
  auto f = [&](double y) -> cplx {
    if (y < ys) {
      const double Y = y * y;
      cplx acc = series[K - 1];
      for (int k = K - 2; k >= 0; --k) acc = acc * Y + series[k];
      return acc;
    }
    const cplx e1 = std::exp((2.0 * I * w - Ssum) * y);
    const cplx e2 = std::exp((-2.0 * I * w - Ssum) * y);
    const cplx sin_part = (e1 - e2) / (2.0 * I);
    const cplx den = (1.0 - std::exp(-2.0 * A * y)) * (1.0 - std::exp(-2.0 * B * y));
    return (2.0 * sin_part / den - w / (AB * y)) / y;
  };
  const double Y = std::max(4.0, 46.0 / d);
  auto tail = [&](double y) -> cplx { return -w / (AB * y); };
  const double spacing = std::min(1.0, 2.0 / (1.0 + 2 * std::abs(w.real())));
  return semiinfinite_integrate(f, Y, tail, cfg, spacing);
}

namespace detail {

// Same integral for real periods, organised for speed. On [0, y₀] the power
// series is integrated term by term. Beyond y₀ the sine splits into e^{±2iyw};
// each half is analytic in Re y > 0 away from the imaginary-axis poles of
// 1/sinh, so its ray is turned towards steepest descent (at most ±π/3) and
// integrated on geometrically growing GK21 panels.
inline QuadratureResult ruijsenaars_rotated(cplx w, double ap, double am) {
  const double S = ap + am;
  if (!(ap > 0 && am > 0) || !(S - 2 * std::abs(w.imag()) > 0))
    throw StripViolation("|Im w| must be below (a+ + a-)/2");
  QuadratureResult out;
  if (w == 0.0) return out;
  const int K = 8;
  const double y0 = 0.5 / std::max({ap, am, 2 * std::abs(w)});
  const std::vector<cplx> series = ruijsenaars_series(w, ap, am, K);
  cplx head = 0;
  for (int k = K - 1; k >= 0; --k) head = head * (y0 * y0) + series[k] / double(2 * k + 1);
  out.value = head * y0 - w / (ap * am * y0);

  const double eps = std::numeric_limits<double>::epsilon();
  for (int sgn : {1, -1}) {
    const cplx c = 2.0 * I * double(sgn) * w - S;
    const double theta = std::clamp(-std::arg(-c), -pi / 3, pi / 3);
    const cplx dir = std::polar(1.0, theta);
    const double rho = -(c * dir).real();
    auto h = [&](cplx y) -> cplx {
      const cplx den = (1.0 - std::exp(-2.0 * ap * y)) * (1.0 - std::exp(-2.0 * am * y));
      return std::exp(c * y) / (I * den * y);
    };
    const double L = 40.0 / rho;
    double s0 = 0, width = std::min(y0, L / 8);
    cplx part = 0;
    double resabs = 0;
    while (s0 < L) {
      const double s1 = std::min(s0 + width, L);
      const Panel pn = gk21(h, Piece::line(y0 + s0 * dir, y0 + s1 * dir), 0, 0.0, 1.0);
      part += pn.value;
      if (pn.resabs > 0)
        out.err_estimate += pn.resabs * std::min(1.0, std::pow(200 * pn.err / pn.resabs, 1.5));
      resabs += pn.resabs;
      out.evaluations += 21;
      s0 = s1;
      width = std::min(2 * width, 4.0 / rho + 4 * y0);
    }
    out.value += double(sgn) * part;
    out.err_estimate += 50 * eps * resabs + std::abs(h(y0 + L * dir)) / rho;
  }
  return out;
}

}  // namespace detail

/// G(a₊, a₋; w) for |Im w| < (a₊ + a₋)/2.
inline cplx eval_G_ruijsenaars(cplx w, double ap, double am,
                               const QuadratureConfig& cfg = function_config()) {
  (void)cfg;
  return std::exp(I * detail::ruijsenaars_rotated(w, ap, am).value);
}

namespace detail {

/// 1 − e^{x} without cancellation near x = 0.
inline cplx one_minus_exp(cplx x) {
  const double a = x.real(), t = x.imag();
  const double s = std::sin(t / 2);
  return cplx(-std::expm1(a) * std::cos(t) + 2 * s * s, -std::exp(a) * std::sin(t));
}

}  // namespace detail

/// Value plus an error estimate propagated from the quadrature.
struct GbValue {
  cplx value;
  double err_estimate;
};

/// Index pair of a lattice point −nb − mb⁻¹ within `radius` of z, if any.
inline std::optional<std::pair<int, int>> near_pole(cplx z, const BParams& p, double radius = 1e-8) {
  if (z.real() > radius || std::abs(z.imag()) > radius) return std::nullopt;
  const double x = -z.real();
  const double bi = 1.0 / p.b;
  for (int m = 0; m * bi <= x + 1.0; ++m) {
    const double rest = (x - m * bi) / p.b;
    for (int n = int(std::floor(rest)) - 1; n <= int(std::ceil(rest)) + 1; ++n) {
      if (n < 0) continue;
      if (std::abs(z + double(n) * p.b + double(m) * bi) < radius) return std::make_pair(n, m);
    }
  }
  return std::nullopt;
}

inline GbValue eval_Gb_detail(cplx z, const BParams& p,
                              const QuadratureConfig& cfg = function_config()) {
  if (auto hit = near_pole(z, p))
    throw PoleHit("G_b has a pole at -" + std::to_string(hit->first) + "b-" +
                  std::to_string(hit->second) + "/b");
  const double b = p.b, bi = 1.0 / b, Q = p.Q;
  cplx w = z;
  cplx fac = 1.0;
  while (w.real() > Q / 2 + bi / 2) {
    w -= bi;
    fac *= detail::one_minus_exp(2.0 * pi * I * bi * w);
  }
  while (w.real() < Q / 2 - bi / 2) {
    fac /= detail::one_minus_exp(2.0 * pi * I * bi * w);
    w += bi;
  }
  while (w.real() > Q / 2 + b / 2) {
    w -= b;
    fac *= detail::one_minus_exp(2.0 * pi * I * b * w);
  }
  while (w.real() < Q / 2 - b / 2) {
    fac /= detail::one_minus_exp(2.0 * pi * I * b * w);
    w += b;
  }
  (void)cfg;
  const QuadratureResult r = detail::ruijsenaars_rotated(I * w - I * Q / 2.0, b, bi);
  const cplx val = fac * std::exp(I * r.value + I * (pi / 2) * w * (w - Q));
  return GbValue{val, std::abs(val) * r.err_estimate};
}

inline cplx eval_Gb(cplx z, const BParams& p, const QuadratureConfig& cfg = function_config()) {
  return eval_Gb_detail(z, p, cfg).value;
}

/// G_b(z) obtained from G_b(z + k·b) through k explicit shift factors.
/// Any k gives the same function; used to check continuation consistency.
inline cplx eval_Gb_shifted(cplx z, int k, const BParams& p,
                            const QuadratureConfig& cfg = function_config()) {
  const double b = p.b;
  cplx fac = 1.0;
  if (k >= 0) {
    for (int j = 0; j < k; ++j) fac /= detail::one_minus_exp(2.0 * pi * I * b * (z + double(j) * b));
  } else {
    for (int j = 1; j <= -k; ++j) fac *= detail::one_minus_exp(2.0 * pi * I * b * (z - double(j) * b));
  }
  return fac * eval_Gb(z + double(k) * b, p, cfg);
}

/// S_b(z) = e^{−(πi/2) z (z − Q)} G_b(z).
inline cplx eval_Sb(cplx z, const BParams& p, const QuadratureConfig& cfg = function_config()) {
  return std::exp(-I * (pi / 2) * z * (z - p.Q)) * eval_Gb(z, p, cfg);
}

/// g_b(x) = ζ̄_b / G_b(Q/2 + log(x)/(2πib)), principal logarithm.
inline cplx eval_gb(cplx x, const BParams& p, const QuadratureConfig& cfg = function_config()) {
  if (x.imag() == 0 && x.real() <= 0) throw BranchCut("g_b is cut along (-inf, 0]");
  const cplx arg = p.Q / 2 + std::log(x) / (2.0 * pi * I * p.b);
  return std::conj(p.zeta) / eval_Gb(arg, p, cfg);
}

struct PoleInfo {
  cplx location;  // pole of G_b at −nb − m/b
  int order = 1;
  int n = 0, m = 0;
  cplx residue_data;  // residue of 1/G_b(Q+z) at z = nb + m/b
};

inline PoleInfo residue_info(int n, int m, const BParams& p) {
  if (n < 0 || m < 0) throw DomainError("residue indices must be nonnegative");
  cplx r = -1.0 / (2 * pi);
  for (int k = 1; k <= n; ++k) r /= 1.0 - std::pow(p.q, 2 * k);
  for (int l = 1; l <= m; ++l) r /= 1.0 - std::pow(p.q_tilde, 2 * l);
  return PoleInfo{-double(n) * p.b - double(m) / p.b, 1, n, m, r};
}

/// Envelope for |G_b(s+ix)/G_b(t+ix)|: 1 as x → +∞, e^{2πx Re(t−s)} as x → −∞,
/// with a safety factor of 4.
inline double gb_ratio_tail_bound(cplx s, cplx t, double x, const BParams&) {
  if (x >= 0) return 4.0;
  return 4.0 * std::exp(2 * pi * x * (t - s).real());
}

// ---------------------------------------------------------------------------
// Classical limit along b² ∈ iℝ₊, the direction in which the normalisation
// √(−i)|b|(1−q²)^{x−1} with √(−i) = e^{−iπ/4} applies.
// ---------------------------------------------------------------------------

struct ClassicalLimitRow {
  double abs_b;
  cplx ratio;
  double deviation;
};

/// G_b(bx) for complex b = e^{iπ/4}|b|, straight from the integral.
inline cplx eval_Gb_on_ray(cplx x, double abs_b, const QuadratureConfig& cfg = function_config()) {
  const cplx b = std::polar(abs_b, pi / 4);
  const cplx bi = 1.0 / b;
  const cplx Q = b + bi;
  const cplx z = b * x;
  const cplx w = I * z - I * Q / 2.0;
  const QuadratureResult r = ruijsenaars_integral(w, b, bi, cfg);
  return std::exp(I * r.value + I * (pi / 2) * z * (z - Q));
}

inline std::vector<ClassicalLimitRow> classical_limit_probe(cplx x, const std::vector<double>& b_list,
                                                            const QuadratureConfig& cfg = function_config()) {
  if (x.imag() == 0 && x.real() <= 0 && std::floor(x.real()) == x.real())
    throw DomainError("x must not be a nonpositive integer");
  const cplx gamma = gamma_c(x);
  std::vector<ClassicalLimitRow> rows;
  for (double ab : b_list) {
    if (!(ab > 0 && ab < 1)) throw DomainError("|b| must lie in (0,1)");
    const cplx b = std::polar(ab, pi / 4);
    const cplx q = std::exp(I * pi * b * b);
    const cplx base = 1.0 - q * q;
    if (std::abs(std::arg(base)) >= pi / 2) throw DomainError("arg(1-q^2) outside (-pi/2, pi/2)");
    const cplx norm = std::polar(ab, -pi / 4) * std::pow(base, x - 1.0);
    const cplx ratio = eval_Gb_on_ray(x, ab, cfg) / norm;
    rows.push_back({ab, ratio, std::abs(ratio - gamma)});
  }
  return rows;
}

}  // namespace qdilog
