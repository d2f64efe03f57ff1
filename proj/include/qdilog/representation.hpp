#pragma once

// Principal series and regular representations of U_q(gl(2,R)) by positive
// difference operators, the Casimir eigenfunctions Φ_λ and their transform.
//
// Shift convention: e^{2πb p} f(x) = f(x − ib). A Weyl-ordered exponential acts as
//   e^{πb(n x + m p)} f(x) = q^{−nm/4} e^{nπb x} f(x − imb/2).

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qdilog/identities.hpp"
#include "qdilog/numerics.hpp"
#include "qdilog/qdilog.hpp"
#include "qdilog/wclass.hpp"

namespace qdilog {

// ---------------------------------------------------------------------------
// Shift operators c · e^{a·x} · T_δ with (T_δ f)(x) = f(x + δ).
// ---------------------------------------------------------------------------

template <std::size_t N>
struct ShiftTerm {
  cplx coeff{1.0};
  std::array<cplx, N> exps{};
  std::array<cplx, N> shift{};
};

template <std::size_t N>
class ShiftOperator {
 public:
  using Point = std::array<cplx, N>;

  ShiftOperator() = default;
  explicit ShiftOperator(std::vector<ShiftTerm<N>> t) : terms_(std::move(t)) {}

  static ShiftOperator identity(cplx c = 1.0) { return ShiftOperator({ShiftTerm<N>{c, {}, {}}}); }

  /// c · e^{λ x_k}.
  static ShiftOperator multiply(std::size_t k, cplx lambda, cplx c = 1.0) {
    ShiftTerm<N> t;
    t.coeff = c;
    t.exps[k] = lambda;
    return ShiftOperator({t});
  }

  /// f ↦ f(x + δ e_k).
  static ShiftOperator translate(std::size_t k, cplx delta) {
    ShiftTerm<N> t;
    t.shift[k] = delta;
    return ShiftOperator({t});
  }

  /// Weyl-ordered e^{πb(n x_k + m p_k)}.
  static ShiftOperator weyl(std::size_t k, int n, int m, const BParams& p) {
    return weyl_at(k, n, m, p.b, p.q);
  }

  static ShiftOperator weyl_at(std::size_t k, int n, int m, double b, cplx q) {
    ShiftTerm<N> t;
    t.coeff = std::pow(q, -double(n * m) / 4.0);
    t.exps[k] = double(n) * pi * b;
    t.shift[k] = -I * double(m) * b / 2.0;
    return ShiftOperator({t});
  }

  const std::vector<ShiftTerm<N>>& terms() const { return terms_; }

  ShiftOperator operator+(const ShiftOperator& o) const {
    std::vector<ShiftTerm<N>> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return ShiftOperator(std::move(t));
  }
  ShiftOperator operator-(const ShiftOperator& o) const { return *this + o * cplx(-1.0); }
  ShiftOperator operator*(cplx c) const {
    ShiftOperator r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Composition: (A·B) f = A(B f).
  ShiftOperator operator*(const ShiftOperator& o) const {
    std::vector<ShiftTerm<N>> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        ShiftTerm<N> c;
        cplx phase = 0;
        for (std::size_t k = 0; k < N; ++k) {
          phase += b.exps[k] * a.shift[k];
          c.exps[k] = a.exps[k] + b.exps[k];
          c.shift[k] = a.shift[k] + b.shift[k];
        }
        c.coeff = a.coeff * b.coeff * std::exp(phase);
        out.push_back(c);
      }
    return ShiftOperator(std::move(out));
  }

  WFunction<N> apply(const WFunction<N>& f) const {
    WFunction<N> out;
    for (const auto& t : terms_) {
      WFunction<N> g = f;
      for (std::size_t k = 0; k < N; ++k)
        if (t.shift[k] != 0.0) g = g.shifted(k, t.shift[k]);
      for (std::size_t k = 0; k < N; ++k)
        if (t.exps[k] != 0.0) g = g.times_exp(k, t.exps[k]);
      out = out + g * t.coeff;
    }
    return out;
  }

  /// Direct evaluation "multiply then shift" on any callable.
  template <class F>
  cplx apply_at(const F& f, const Point& x) const {
    cplx total = 0;
    for (const auto& t : terms_) {
      Point y = x;
      cplx e = 0;
      for (std::size_t k = 0; k < N; ++k) {
        y[k] += t.shift[k];
        e += t.exps[k] * x[k];
      }
      total += t.coeff * std::exp(e) * f(y);
    }
    return total;
  }

 private:
  std::vector<ShiftTerm<N>> terms_;
};

using ShiftOp1 = ShiftOperator<1>;

// ---------------------------------------------------------------------------
// Principal series P_{λ,t}
// ---------------------------------------------------------------------------

enum class Generator { E, F, K, K0 };

inline const char* generator_name(Generator g) {
  switch (g) {
    case Generator::E: return "E";
    case Generator::F: return "F";
    case Generator::K: return "K";
    default: return "K0";
  }
}

namespace detail {

// Generators of P_{λ,t} at a given period b (b → 1/b gives the dual family).
inline ShiftOp1 principal_generator(Generator g, double lambda, double t, double b) {
  const cplx q = std::exp(I * pi * b * b);
  const cplx sq = std::exp(I * pi * b * b / 2.0);
  const cplx pref = I / (q - 1.0 / q);
  switch (g) {
    case Generator::K0: return ShiftOp1::identity(std::exp(pi * b * t));
    case Generator::K: return ShiftOp1::multiply(0, -pi * b);
    case Generator::E: {
      const ShiftOp1 m = ShiftOp1::multiply(0, pi * b, sq * std::exp(-pi * b * lambda)) +
                         ShiftOp1::multiply(0, -pi * b, std::exp(pi * b * lambda) / sq);
      return m * ShiftOp1::translate(0, I * b) * pref;
    }
    default: {
      const ShiftOp1 m = ShiftOp1::multiply(0, pi * b, std::exp(pi * b * lambda) / sq) +
                         ShiftOp1::multiply(0, -pi * b, sq * std::exp(-pi * b * lambda));
      return m * ShiftOp1::translate(0, -I * b) * pref;
    }
  }
}

}  // namespace detail

inline ShiftOp1 principal_generator(Generator g, double lambda, double t, const BParams& p) {
  return detail::principal_generator(g, lambda, t, p.b);
}

/// The same generator with b replaced by b⁻¹ (q by q̃).
inline ShiftOp1 dual_generator(Generator g, double lambda, double t, const BParams& p) {
  return detail::principal_generator(g, lambda, t, 1.0 / p.b);
}

inline WFunction1 apply_generator(Generator g, double lambda, double t, const WFunction1& f,
                                  const BParams& p) {
  return principal_generator(g, lambda, t, p).apply(f);
}

inline WFunction1 dual_generator_probe(Generator g, double lambda, double t, const WFunction1& f,
                                       const BParams& p) {
  return dual_generator(g, lambda, t, p).apply(f);
}

/// C = FE + (qK² + q⁻¹K⁻² − 2)/(q − q⁻¹)².
inline ShiftOp1 casimir_operator(double lambda, double t, const BParams& p) {
  const ShiftOp1 E = principal_generator(Generator::E, lambda, t, p);
  const ShiftOp1 F = principal_generator(Generator::F, lambda, t, p);
  const cplx d = p.q - 1.0 / p.q;
  const ShiftOp1 rest = ShiftOp1::multiply(0, -2 * pi * p.b, p.q) +
                        ShiftOp1::multiply(0, 2 * pi * p.b, 1.0 / p.q) + ShiftOp1::identity(-2.0);
  return F * E + rest * (1.0 / (d * d));
}

namespace detail {

inline double max_relative(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs,
                           const std::vector<cplx>& scale) {
  double m = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    m = std::max(m, std::abs(lhs[i] - rhs[i]) / std::max(std::abs(scale[i]), 1e-300));
  return m;
}

template <std::size_t N>
std::vector<cplx> sample(const WFunction<N>& f, const std::vector<std::array<cplx, N>>& pts) {
  std::vector<cplx> v;
  v.reserve(pts.size());
  for (const auto& x : pts) v.push_back(f(x));
  return v;
}

// Residuals of K0 central, KE = qEK, KF = q⁻¹FK, [E,F] = (K²−K⁻²)/(q−q⁻¹), each
// as max |difference| / |f| over the sample points.
template <std::size_t N>
std::array<double, 4> relation_residuals(const ShiftOperator<N>& E, const ShiftOperator<N>& F,
                                         const ShiftOperator<N>& K, const ShiftOperator<N>& Kinv,
                                         const ShiftOperator<N>& K0, const WFunction<N>& f,
                                         const std::vector<std::array<cplx, N>>& pts, cplx q) {
  const auto fv = sample(f, pts);
  auto S = [&](const ShiftOperator<N>& A) { return sample(A.apply(f), pts); };
  std::array<double, 4> r{};
  {
    const auto a = S(K0 * E), b = S(E * K0), c = S(K0 * F), d = S(F * K0), e = S(K0 * K),
               g = S(K * K0);
    r[0] = std::max({max_relative(a, b, fv), max_relative(c, d, fv), max_relative(e, g, fv)});
  }
  r[1] = max_relative(S(K * E), S(E * K * q), fv);
  r[2] = max_relative(S(K * F), S(F * K * (1.0 / q)), fv);
  r[3] = max_relative(S(E * F - F * E), S((K * K - Kinv * Kinv) * (1.0 / (q - 1.0 / q))), fv);
  return r;
}

}  // namespace detail

/// Residuals of the four defining relations of U_q(gl(2,R)) in P_{λ,t}.
inline std::array<double, 4> principal_relation_residuals(double lambda, double t,
                                                          const WFunction1& f,
                                                          const std::vector<double>& points,
                                                          const BParams& p) {
  std::vector<std::array<cplx, 1>> pts;
  for (double s : points) pts.push_back({s});
  const ShiftOp1 E = principal_generator(Generator::E, lambda, t, p);
  const ShiftOp1 F = principal_generator(Generator::F, lambda, t, p);
  const ShiftOp1 K = principal_generator(Generator::K, lambda, t, p);
  const ShiftOp1 K0 = principal_generator(Generator::K0, lambda, t, p);
  const ShiftOp1 Kinv = ShiftOp1::multiply(0, pi * p.b);
  return detail::relation_residuals<1>(E, F, K, Kinv, K0, f, pts, p.q);
}

inline IdentityReport check_serre_relations(double lambda, double t, const WFunction1& f,
                                            const std::vector<double>& points, const BParams& p,
                                            double tol = 1e-10) {
  const auto r = principal_relation_residuals(lambda, t, f, points, p);
  QuadratureResult z;
  z.value = r[3];
  IdentityReport rep = finish_report("principal-EF", {{"lambda", lambda}, {"t", t}}, z, 0.0, tol);
  rep.abs_err = rep.rel_err = r[3];
  rep.pass = r[3] < tol;
  return rep;
}

/// Scalar by which the Casimir acts on P_λ: (i/(q − q⁻¹))² (2cosh 2πbλ + 2).
inline cplx casimir_eigenvalue(double lambda, const BParams& p) {
  const cplx c = I / (p.q - 1.0 / p.q);
  return c * c * (2 * std::cosh(2 * pi * p.b * lambda) + 2.0);
}

struct CasimirEstimate {
  cplx scalar;
  double variance;
};

/// Mean and variance of (Cf)(s)/f(s) over the sample points.
inline CasimirEstimate casimir_apply(double lambda, double t, const WFunction1& f,
                                     const std::vector<double>& points, const BParams& p) {
  const WFunction1 Cf = casimir_operator(lambda, t, p).apply(f);
  std::vector<cplx> r;
  for (double s : points) r.push_back(Cf(cplx(s)) / f(cplx(s)));
  cplx mean = 0;
  for (const cplx& v : r) mean += v;
  mean /= double(r.size());
  double var = 0;
  for (const cplx& v : r) var += std::norm(v - mean);
  return {mean, var / double(r.size())};
}

/// Multiplier e^{2πiλs} G_b(Q/2 − iλ − is)/G_b(Q/2 + iλ − is) relating P_λ and P_{−λ}.
inline cplx intertwiner(double lambda, cplx s, const BParams& p) {
  return std::exp(2.0 * pi * I * lambda * s) * eval_Gb(p.Q / 2 - I * lambda - I * s, p) /
         eval_Gb(p.Q / 2 + I * lambda - I * s, p);
}

/// max over E, F and the sample points of |X_λ(m·f) − m·X_{−λ}(f)| / |m·X_{−λ}(f)|.
inline double intertwiner_residual(double lambda, double t, const WFunction1& f,
                                   const std::vector<double>& points, const BParams& p) {
  auto mf = [&](const std::array<cplx, 1>& s) { return intertwiner(lambda, s[0], p) * f(s); };
  auto plain = [&](const std::array<cplx, 1>& s) { return f(s); };
  double worst = 0;
  for (Generator g : {Generator::E, Generator::F}) {
    const ShiftOp1 A = principal_generator(g, lambda, t, p);
    const ShiftOp1 B = principal_generator(g, -lambda, t, p);
    for (double s : points) {
      const cplx lhs = A.apply_at(mf, {cplx(s)});
      const cplx rhs = intertwiner(lambda, s, p) * B.apply_at(plain, {cplx(s)});
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Casimir eigenfunctions and spectral measure
// ---------------------------------------------------------------------------

/// Φ_λ(x) = S_b(−ix + iλ) S_b(−ix − iλ).
inline cplx eval_Phi(cplx lambda, cplx x, const BParams& p,
                     const QuadratureConfig& cfg = function_config()) {
  return eval_Sb(-I * x + I * lambda, p, cfg) * eval_Sb(-I * x - I * lambda, p, cfg);
}

/// |Φ_λ(x+ib) + 2cosh(2πbx)Φ_λ(x) − 2cosh(2πbλ)Φ_λ(x)| / |Φ_λ(x)|.
inline double phi_eigen_residual(double lambda, double x, const BParams& p) {
  const cplx phi = eval_Phi(lambda, x, p);
  const cplx shifted = eval_Phi(lambda, cplx(x, p.b), p);
  const double b = p.b;
  return std::abs(shifted + 2 * std::cosh(2 * pi * b * x) * phi -
                  2 * std::cosh(2 * pi * b * lambda) * phi) /
         std::abs(phi);
}

/// Spectral density |S_b(Q + 2iλ)|² = 4 sinh(2πbλ) sinh(2πλ/b), analytic in λ.
inline cplx plancherel_density(cplx lambda, const BParams& p) {
  return 4.0 * std::sinh(2 * pi * p.b * lambda) * std::sinh(2 * pi * lambda / p.b);
}

inline double plancherel_density(double lambda, const BParams& p) {
  if (lambda < 0) throw DomainError("plancherel_density needs lambda >= 0");
  return plancherel_density(cplx(lambda), p).real();
}

/// |S_b(Q + 2iλ)|² computed from S_b itself.
inline double plancherel_from_sb(double lambda, const BParams& p) {
  return std::norm(eval_Sb(p.Q + 2.0 * I * lambda, p));
}

// ---------------------------------------------------------------------------
// Eigenfunction transform
//   forward:  F(λ) = ∫ f(x) S_b(ix + iλ) S_b(ix − iλ) dx   on Im x = −h
//   inverse:  g(x) = ∫ Φ_λ(x) F(λ) dμ(λ)
// The inverse λ-path runs 0 → −iη → ∞ − iη for x > 0 and its mirror image for
// x < 0, passing on the correct side of the pole of Φ_λ(x) at λ = ±x.
// ---------------------------------------------------------------------------

struct TransformConfig {
  double x_height = 0;   // 0 selects min(b, 1/b)/8
  double eta = 0;        // 0 selects min(b, 1/b)/16
  double lambda_max = 3.0;
  double lambda_panel = 0.15;
  double x_window = 6.0;
  QuadratureConfig quad = [] {
    QuadratureConfig c;
    c.abs_tol = 1e-11;
    c.rel_tol = 1e-9;
    return c;
  }();
};

namespace detail {

inline double transform_height(const TransformConfig& c, const BParams& p) {
  return c.x_height > 0 ? c.x_height : std::min(p.b, 1.0 / p.b) / 8;
}
inline double transform_eta(const TransformConfig& c, const BParams& p) {
  return c.eta > 0 ? c.eta : std::min(p.b, 1.0 / p.b) / 16;
}

struct PathNode {
  cplx lambda;
  cplx weight;  // includes dλ and the spectral density
};

// Gauss–Kronrod nodes along the λ-path on one side (+1: below, for x > 0).
inline std::vector<PathNode> lambda_path(int side, const TransformConfig& c, const BParams& p) {
  const cplx down = -double(side) * I * transform_eta(c, p);
  std::vector<Piece> pieces{Piece::line(0.0, down)};
  const int n = std::max(1, int(std::ceil(c.lambda_max / c.lambda_panel)));
  for (int j = 0; j < n; ++j)
    pieces.push_back(Piece::line(down + c.lambda_max * j / n, down + c.lambda_max * (j + 1) / n));
  std::vector<PathNode> out;
  for (const Piece& pc : pieces) {
    for (std::size_t i = 0; i < kXgk.size(); ++i) {
      const int signs = (kXgk[i] == 0.0) ? 1 : 2;
      for (int s = 0; s < signs; ++s) {
        const double u = 0.5 + 0.5 * (s == 0 ? kXgk[i] : -kXgk[i]);
        cplx z, dz;
        pc.at(u, z, dz);
        out.push_back({z, 0.5 * kWgk[i] * dz * plancherel_density(z, p)});
      }
    }
  }
  return out;
}

}  // namespace detail

template <class Fn>
cplx transform_forward(const Fn& f, cplx lambda, const BParams& p, const TransformConfig& c = {}) {
  const double h = detail::transform_height(c, p);
  auto g = [&](cplx x) -> cplx {
    const cplx fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx * eval_Sb(I * x + I * lambda, p) * eval_Sb(I * x - I * lambda, p);
  };
  return integrate_contour(g, IndentedContour::line(-h, -c.x_window, c.x_window), c.quad).value;
}

/// Inverse transform of an analytic spectral function at each x (x ≠ 0).
template <class Fl>
std::vector<cplx> transform_inverse(const Fl& F, const std::vector<double>& xs, const BParams& p,
                                    const TransformConfig& c = {}) {
  for (double x : xs)
    if (x == 0) throw DomainError("inverse transform is evaluated off x = 0");
  std::vector<cplx> out(xs.size());
  for (int side : {1, -1}) {
    bool needed = false;
    for (double x : xs) needed = needed || (side > 0 ? x > 0 : x < 0);
    if (!needed) continue;
    const auto nodes = detail::lambda_path(side, c, p);
    std::vector<cplx> fw(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) fw[k] = F(nodes[k].lambda) * nodes[k].weight;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      if ((side > 0) != (x > 0)) continue;
      cplx acc = 0;
      for (std::size_t k = 0; k < nodes.size(); ++k)
        if (fw[k] != 0.0) acc += eval_Phi(nodes[k].lambda, x, p) * fw[k];
      out[i] = acc;
    }
  }
  return out;
}

enum class TransformDirection { forward, inverse };

/// Forward: samples of F at the given λ. Inverse: samples of g at the given x.
template <class Fn>
std::vector<cplx> eigenfunction_transform(TransformDirection dir, const Fn& f,
                                          const std::vector<double>& points, const BParams& p,
                                          const TransformConfig& c = {}) {
  if (dir == TransformDirection::inverse) return transform_inverse(f, points, p, c);
  std::vector<cplx> out;
  for (double l : points) out.push_back(transform_forward(f, cplx(l), p, c));
  return out;
}

/// Forward then inverse transform of f, sampled at xs.
template <class Fn>
std::vector<cplx> transform_round_trip(const Fn& f, const std::vector<double>& xs,
                                       const BParams& p, const TransformConfig& c = {}) {
  auto F = [&](cplx l) { return transform_forward(f, l, p, c); };
  return transform_inverse(F, xs, p, c);
}

/// Relative L² distance between samples.
inline double relative_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

/// 𝐂 = e^{2πbx} + e^{−2πbx} + e^{−2πbp}, the operator diagonalised by Φ_λ.
inline ShiftOp1 casimir_position_operator(const BParams& p) {
  return ShiftOp1::multiply(0, 2 * pi * p.b) + ShiftOp1::multiply(0, -2 * pi * p.b) +
         ShiftOp1::translate(0, I * p.b);
}

// ---------------------------------------------------------------------------
// Regular representations on functions of (s₁, t₁, s₂, t₂).
// ---------------------------------------------------------------------------

enum class RegularSide { left, right };

namespace regvar {
inline constexpr std::size_t s1 = 0, t1 = 1, s2 = 2, t2 = 3;
}

using ShiftOp4 = ShiftOperator<4>;

namespace detail {

// e^{2πbt₁} + e^{−2πbt₁} + e^{−2πb(p_{t₁} − t₁)}.
inline ShiftOp4 regular_X(const BParams& p) {
  return ShiftOp4::multiply(regvar::t1, 2 * pi * p.b) +
         ShiftOp4::multiply(regvar::t1, -2 * pi * p.b) + ShiftOp4::weyl(regvar::t1, 2, -2, p);
}

}  // namespace detail

inline ShiftOp4 regular_generator(Generator g, RegularSide side, const BParams& p) {
  using namespace regvar;
  const double b = p.b;
  const cplx pref = I / (p.q - 1.0 / p.q);
  const ShiftOp4 up = ShiftOp4::multiply(s2, pi * b / 2);
  const ShiftOp4 down = ShiftOp4::multiply(s2, -pi * b / 2);
  if (g == Generator::K0) return down;
  if (side == RegularSide::left) {
    switch (g) {
      case Generator::K: return ShiftOp4::multiply(s1, pi * b);
      case Generator::E: return up * ShiftOp4::weyl(s1, 1, 2, p) * pref;
      default: {
        const ShiftOp4 inner = ShiftOp4::weyl(s1, 1, -2, p) + ShiftOp4::weyl(s1, -3, -2, p) +
                               detail::regular_X(p) * ShiftOp4::weyl(s1, -1, -2, p);
        return down * inner * pref;
      }
    }
  }
  switch (g) {
    case Generator::K: return ShiftOp4::multiply(t2, pi * b);
    case Generator::F: return down * ShiftOp4::weyl(t2, -1, -2, p) * pref;
    default: {
      const ShiftOp4 inner = ShiftOp4::weyl(t2, -1, 2, p) + ShiftOp4::weyl(t2, 3, 2, p) +
                             detail::regular_X(p) * ShiftOp4::weyl(t2, 1, 2, p);
      return up * inner * pref;
    }
  }
}

inline WFunction<4> apply_regular_generator(Generator g, RegularSide side, const WFunction<4>& f,
                                            const BParams& p) {
  return regular_generator(g, side, p).apply(f);
}

inline std::array<double, 4> regular_relation_residuals(RegularSide side, const WFunction<4>& f,
                                                        const std::vector<std::array<cplx, 4>>& pts,
                                                        const BParams& p) {
  const ShiftOp4 E = regular_generator(Generator::E, side, p);
  const ShiftOp4 F = regular_generator(Generator::F, side, p);
  const ShiftOp4 K = regular_generator(Generator::K, side, p);
  const ShiftOp4 K0 = regular_generator(Generator::K0, side, p);
  const std::size_t var = side == RegularSide::left ? regvar::s1 : regvar::t2;
  const ShiftOp4 Kinv = ShiftOp4::multiply(var, -pi * p.b);
  return detail::relation_residuals<4>(E, F, K, Kinv, K0, f, pts, p.q);
}

/// max over all left/right generator pairs of |[X_L, Y_R] f| / |f| at the points.
inline double regular_commutation_residual(const WFunction<4>& f,
                                           const std::vector<std::array<cplx, 4>>& pts,
                                           const BParams& p) {
  const auto fv = detail::sample(f, pts);
  double worst = 0;
  for (Generator a : {Generator::E, Generator::F, Generator::K, Generator::K0})
    for (Generator c : {Generator::E, Generator::F, Generator::K, Generator::K0}) {
      const ShiftOp4 L = regular_generator(a, RegularSide::left, p);
      const ShiftOp4 R = regular_generator(c, RegularSide::right, p);
      const auto lr = detail::sample((L * R).apply(f), pts);
      const auto rl = detail::sample((R * L).apply(f), pts);
      worst = std::max(worst, detail::max_relative(lr, rl, fv));
    }
  return worst;
}

}  // namespace qdilog
