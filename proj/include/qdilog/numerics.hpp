#pragma once

/**
 * @file numerics.hpp
 * @brief Adaptive complex quadrature along indented contours.
 *
 * Every analytic check in the library reduces to integrals of meromorphic
 * functions along a horizontal line in the complex plane, with small
 * semicircular detours around poles that sit on the line. The engine here is
 * a globally adaptive 21-point Gauss-Kronrod rule on a piecewise path made of
 * straight segments and circular arcs.
 *
 * Beyond the truncation window the contour may continue along rays. A ray is
 * horizontal by default; a tilted ray is used when the integrand carries a
 * Gaussian phase e^{±iπt²} that only decays away from the real axis. Rays are
 * integrated chunk by chunk until the contribution drops below a tenth of the
 * requested tolerance.
 *
 * Also provided: a semi-infinite integrator with an analytic tail, a numerical
 * Mellin transform with its Parseval check, a complex gamma function and
 * Richardson extrapolation.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "qdilog/errors.hpp"

namespace qdilog {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class TailPolicy {
  analytic,      // integrate the window only; the caller bounds what is left
  bound_driven,  // continue along the tail rays until contributions vanish
};

struct QuadratureConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
  TailPolicy tail_policy = TailPolicy::bound_driven;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || max_subdivisions < 1)
      throw DomainError("quadrature config needs abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
  }
};

struct QuadratureResult {
  cplx value{};
  double err_estimate = 0;
  long evaluations = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    err_estimate += o.err_estimate;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, QuadratureResult partial)
      : Error("NonConvergence", what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

using ComplexIntegrand = std::function<cplx(cplx)>;

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525225264, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// A smooth parametrized piece of a path: straight segment or circular arc.
struct Piece {
  enum class Kind { line, arc } kind = Kind::line;
  cplx a{}, b{};             // line endpoints
  cplx center{};             // arc
  double radius = 0, theta0 = 0, theta1 = 0;

  static Piece line(cplx from, cplx to) { return Piece{Kind::line, from, to, {}, 0, 0, 0}; }
  static Piece arc(cplx c, double r, double th0, double th1) {
    return Piece{Kind::arc, {}, {}, c, r, th0, th1};
  }

  // Parameter u runs over [0, 1].
  void at(double u, cplx& z, cplx& dz) const {
    if (kind == Kind::line) {
      z = a + (b - a) * u;
      dz = b - a;
    } else {
      double th = theta0 + (theta1 - theta0) * u;
      cplx e = std::polar(1.0, th);
      z = center + radius * e;
      dz = I * radius * e * (theta1 - theta0);
    }
  }
  double length() const {
    return kind == Kind::line ? std::abs(b - a) : radius * std::abs(theta1 - theta0);
  }
};

struct Panel {
  std::size_t piece;
  double u0, u1;
  cplx value;
  double err;
  double resabs;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk21(const F& f, const Piece& p, std::size_t idx, double u0, double u1) {
  const double half = 0.5 * (u1 - u0);
  const double mid = 0.5 * (u1 + u0);
  cplx kron{}, gauss{};
  double resabs = 0;
  for (std::size_t i = 0; i < kXgk.size(); ++i) {
    const double x = kXgk[i];
    const int signs = (x == 0.0) ? 1 : 2;
    for (int s = 0; s < signs; ++s) {
      const double u = mid + (s == 0 ? x : -x) * half;
      cplx z, dz;
      p.at(u, z, dz);
      const cplx v = f(z) * dz;
      kron += kWgk[i] * v;
      resabs += kWgk[i] * std::abs(v);
      if (i % 2 == 1) gauss += kWg[i / 2] * v;
    }
  }
  kron *= half;
  gauss *= half;
  resabs *= std::abs(half);
  return Panel{idx, u0, u1, kron, std::abs(kron - gauss), resabs};
}

// Globally adaptive integration over a list of pieces, each initially split
// into panels no longer than `spacing`.
template <class F>
QuadratureResult integrate_pieces(const F& f, const std::vector<Piece>& pieces,
                                  const QuadratureConfig& cfg, double spacing = 1.0) {
  std::priority_queue<Panel> heap;
  QuadratureResult res;
  cplx total{};
  double err = 0, resabs = 0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const int n = std::max(1, static_cast<int>(std::ceil(pieces[k].length() / spacing)));
    for (int j = 0; j < n; ++j) {
      Panel pn = gk21(f, pieces[k], k, double(j) / n, double(j + 1) / n);
      res.evaluations += 21;
      total += pn.value;
      err += pn.err;
      resabs += pn.resabs;
      heap.push(pn);
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  int splits = 0;
  auto target = [&] {
    return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total), 50 * eps * resabs});
  };
  while (!heap.empty() && err > target()) {
    if (splits >= cfg.max_subdivisions) {
      res.value = total;
      res.err_estimate = err;
      res.converged = false;
      throw NonConvergence("subdivision budget exhausted", res);
    }
    Panel worst = heap.top();
    heap.pop();
    if (std::abs(worst.u1 - worst.u0) < 1e-14) {
      // Panel cannot be refined further; accept it at its estimate.
      res.value = total;
      res.err_estimate = err;
      res.converged = false;
      throw NonConvergence("panel collapsed below resolution (singular integrand?)", res);
    }
    const double um = 0.5 * (worst.u0 + worst.u1);
    Panel l = gk21(f, pieces[worst.piece], worst.piece, worst.u0, um);
    Panel r = gk21(f, pieces[worst.piece], worst.piece, um, worst.u1);
    res.evaluations += 42;
    total += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    resabs += l.resabs + r.resabs - worst.resabs;
    heap.push(l);
    heap.push(r);
    ++splits;
  }
  // Recompute sums from the heap to shed accumulated cancellation error.
  cplx fresh{};
  double ferr = 0;
  while (!heap.empty()) {
    fresh += heap.top().value;
    ferr += heap.top().err;
    heap.pop();
  }
  res.value = fresh;
  res.err_estimate = ferr;
  res.converged = true;
  return res;
}

// Integrates outward along the ray start + s·e^{iθ}, s ≥ 0, chunk by chunk.
template <class F>
QuadratureResult integrate_ray(const F& f, cplx start, double theta, double threshold,
                               const QuadratureConfig& cfg) {
  const cplx dir = std::polar(1.0, theta);
  QuadratureResult acc;
  double s = 0, chunk = 1.0;
  int quiet = 0;
  QuadratureConfig sub = cfg;
  sub.abs_tol = threshold / 4;
  while (quiet < 2) {
    if (s > 2e4) {
      acc.converged = false;
      throw NonConvergence("tail ray does not decay", acc);
    }
    std::vector<Piece> p{Piece::line(start + s * dir, start + (s + chunk) * dir)};
    QuadratureResult r = integrate_pieces(f, p, sub, 1.0);
    acc += r;
    quiet = (std::abs(r.value) + r.err_estimate < threshold) ? quiet + 1 : 0;
    s += chunk;
    chunk = std::min(chunk * 1.5, 16.0);
  }
  return acc;
}

}  // namespace detail

enum class Side { above, below };

struct Indentation {
  cplx center;
  double radius;
  Side side;
};

/// Horizontal line Im z = height, traversed left to right over [t_left, t_right],
/// with semicircular detours around the listed points. Outside the window the
/// path continues along rays whose directions are given as angles: the right
/// ray leaves t_right in direction e^{i·right_tail_angle}, the left ray arrives
/// at t_left from direction e^{i·left_tail_angle}.
struct IndentedContour {
  double height = 0;
  std::vector<Indentation> indentations;
  double t_left = -8;
  double t_right = 8;
  double left_tail_angle = pi;
  double right_tail_angle = 0;

  static IndentedContour line(double h, double tl = -8, double tr = 8) {
    IndentedContour c;
    c.height = h;
    c.t_left = tl;
    c.t_right = tr;
    return c;
  }

  IndentedContour& indent(cplx center, double radius, Side side) {
    indentations.push_back({center, radius, side});
    return *this;
  }

  void validate() const {
    if (!(t_left < t_right)) throw BadContour("window must satisfy t_left < t_right");
    for (std::size_t i = 0; i < indentations.size(); ++i) {
      const auto& d = indentations[i];
      if (!(d.radius > 0)) throw BadContour("indentation radius must be positive");
      if (std::abs(d.center.imag() - height) > 1e-12)
        throw BadContour("indentation center must lie on the base line");
      if (d.center.real() - d.radius <= t_left || d.center.real() + d.radius >= t_right)
        throw BadContour("indentation must lie strictly inside the window");
      for (std::size_t j = i + 1; j < indentations.size(); ++j) {
        const auto& e = indentations[j];
        if (std::abs(d.center - e.center) <= d.radius + e.radius)
          throw BadContour("indentations overlap");
      }
    }
    if (std::cos(right_tail_angle) <= 0) throw BadContour("right tail must point rightwards");
    if (std::cos(left_tail_angle) >= 0) throw BadContour("left tail must point leftwards");
  }

  /// Pieces of the finite part of the path, left to right.
  std::vector<detail::Piece> pieces() const {
    std::vector<Indentation> ind = indentations;
    std::sort(ind.begin(), ind.end(),
              [](const auto& x, const auto& y) { return x.center.real() < y.center.real(); });
    std::vector<detail::Piece> out;
    double x = t_left;
    for (const auto& d : ind) {
      const double c = d.center.real();
      out.push_back(detail::Piece::line({x, height}, {c - d.radius, height}));
      // Above: θ from π down to 0. Below: θ from π up to 2π.
      if (d.side == Side::above)
        out.push_back(detail::Piece::arc(d.center, d.radius, pi, 0.0));
      else
        out.push_back(detail::Piece::arc(d.center, d.radius, pi, 2 * pi));
      x = c + d.radius;
    }
    out.push_back(detail::Piece::line({x, height}, {t_right, height}));
    return out;
  }
};

/// Contour integral of f along `contour`, left to right.
template <class F>
QuadratureResult integrate_contour(const F& f, const IndentedContour& contour,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  contour.validate();
  QuadratureResult res = detail::integrate_pieces(f, contour.pieces(), cfg);
  if (cfg.tail_policy == TailPolicy::bound_driven) {
    const double thr = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value)) / 10;
    const cplx zr{contour.t_right, contour.height};
    const cplx zl{contour.t_left, contour.height};
    res += detail::integrate_ray(f, zr, contour.right_tail_angle, thr, cfg);
    QuadratureResult left = detail::integrate_ray(f, zl, contour.left_tail_angle, thr, cfg);
    left.value = -left.value;
    res += left;
  }
  return res;
}

/// Straight segment integral from a to b.
template <class F>
QuadratureResult integrate_segment(const F& f, cplx a, cplx b, const QuadratureConfig& cfg,
                                   double spacing = 1.0) {
  return detail::integrate_pieces(f, {detail::Piece::line(a, b)}, cfg, spacing);
}

/// ∫₀^Y f(y) dy + tail(Y) for an integrand with a removable singularity at 0.
template <class F, class Tail>
QuadratureResult semiinfinite_integrate(const F& f, double Y, const Tail& tail,
                                        const QuadratureConfig& cfg, double spacing = 1.0) {
  auto g = [&](cplx z) -> cplx { return f(z.real()); };
  QuadratureResult r = detail::integrate_pieces(g, {detail::Piece::line(0.0, Y)}, cfg, spacing);
  r.value += tail(Y);
  return r;
}

/// Window half-width after which an envelope amp·e^{−rate·|t|} stays below tol/10.
inline double window_for_decay(double rate, double amp, double tol) {
  if (!(rate > 0)) throw DomainError("decay rate must be positive");
  return std::max(1.0, std::log(std::max(amp, 1.0) * 10.0 / tol) / rate);
}

// ---------------------------------------------------------------------------
// Gamma function on ℂ (Lanczos, g = 7, n = 9) with reflection.
// ---------------------------------------------------------------------------

inline cplx lgamma_c(cplx z) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Γ(z)Γ(1−z) = π / sin(πz)
    return std::log(pi / std::sin(pi * z)) - lgamma_c(1.0 - z);
  }
  z -= 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx gamma_c(cplx z) {
  if (z.imag() == 0 && z.real() <= 0 && std::floor(z.real()) == z.real())
    throw PoleHit("gamma at a nonpositive integer");
  return std::exp(lgamma_c(z));
}

// ---------------------------------------------------------------------------
// Mellin transform.
// ---------------------------------------------------------------------------

/// Strip (a, b) of absolute convergence of a Mellin transform.
struct MellinStrip {
  double lo;
  double hi;
};

/// ∫₀^∞ x^{s−1} f(x) dx, computed as ∫ e^{su} f(e^u) du over the real u-line.
template <class F>
cplx mellin_transform(const F& f, cplx s, MellinStrip strip, const QuadratureConfig& cfg) {
  if (!(s.real() > strip.lo && s.real() < strip.hi))
    throw OutOfStrip("Re(s) = " + std::to_string(s.real()) + " outside (" +
                     std::to_string(strip.lo) + ", " + std::to_string(strip.hi) + ")");
  auto g = [&](cplx u) -> cplx {
    const double x = std::exp(u.real());
    if (x == 0.0 || !std::isfinite(x)) return 0.0;
    const cplx fx = f(x);
    if (fx == 0.0) return 0.0;
    return std::exp(s * u.real()) * fx;
  };
  QuadratureConfig c = cfg;
  c.tail_policy = TailPolicy::bound_driven;
  return integrate_contour(g, IndentedContour::line(0.0, -8, 4), c).value;
}

/// |∫₀^∞ |f|² dx − (1/2π)∫ |Mf(1/2+it)|² dt|.
template <class F>
double parseval_residual(const F& f, MellinStrip strip, const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  c.tail_policy = TailPolicy::bound_driven;
  auto sq = [&](cplx u) -> cplx {
    const double x = std::exp(u.real());
    if (!std::isfinite(x)) return 0.0;
    return std::norm(f(x)) * x;
  };
  const double lhs = integrate_contour(sq, IndentedContour::line(0.0, -8, 4), c).value.real();
  auto mel = [&](cplx t) -> cplx {
    return std::norm(mellin_transform(f, cplx(0.5, t.real()), strip, cfg));
  };
  const double rhs =
      integrate_contour(mel, IndentedContour::line(0.0, -10, 10), c).value.real() / (2 * pi);
  return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Richardson extrapolation for sequences f(h), f(h/r), f(h/r²), ... whose
// error expands in integer powers of h starting at `first_order`.
// ---------------------------------------------------------------------------

inline cplx richardson(const std::vector<cplx>& values, double ratio = 2.0, int first_order = 1) {
  if (values.empty()) throw DomainError("richardson needs at least one value");
  std::vector<cplx> t = values;
  for (std::size_t level = 1; level < t.size(); ++level) {
    const double f = std::pow(ratio, double(first_order + int(level) - 1)) - 1.0;
    for (std::size_t i = t.size() - 1; i >= level; --i) t[i] = t[i] + (t[i] - t[i - 1]) / f;
  }
  return t.back();
}

}  // namespace qdilog
