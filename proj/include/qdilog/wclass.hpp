#pragma once

// Functions of the form Σ c · exp(Σ_k (−α_k x_k² + β_k x_k)) · P(x) in N variables,
// with Re α_k > 0. The class is closed under complex shifts, multiplication by
// exponentials e^{c x_k} and by polynomials, so operators built from those act
// exactly on the symbolic form.

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/numerics.hpp"

namespace qdilog {

template <std::size_t N>
using Exponents = std::array<int, N>;

template <std::size_t N>
struct WTerm {
  cplx coeff{1.0};
  std::array<cplx, N> alpha{};
  std::array<cplx, N> beta{};
  std::map<Exponents<N>, cplx> poly{{Exponents<N>{}, cplx{1.0}}};
};

namespace detail {

inline double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

template <std::size_t N>
class WFunction {
 public:
  using Point = std::array<cplx, N>;

  WFunction() = default;

  /// c · exp(−α x_k² + β x_k) in every variable k, polynomial part 1.
  static WFunction gaussian(const std::array<cplx, N>& alpha, const std::array<cplx, N>& beta,
                            cplx c = 1.0) {
    WTerm<N> t;
    t.coeff = c;
    t.alpha = alpha;
    t.beta = beta;
    WFunction f;
    f.push(t);
    return f;
  }

  const std::vector<WTerm<N>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void push(WTerm<N> t) {
    for (const cplx& a : t.alpha)
      if (!(a.real() > 0)) throw DomainError("W-class term needs Re(alpha) > 0");
    terms_.push_back(std::move(t));
  }

  cplx operator()(const Point& x) const {
    cplx total = 0;
    for (const auto& t : terms_) {
      cplx e = 0;
      for (std::size_t k = 0; k < N; ++k) e += -t.alpha[k] * x[k] * x[k] + t.beta[k] * x[k];
      cplx p = 0;
      for (const auto& [ex, c] : t.poly) {
        cplx m = c;
        for (std::size_t k = 0; k < N; ++k)
          for (int j = 0; j < ex[k]; ++j) m *= x[k];
        p += m;
      }
      total += t.coeff * std::exp(e) * p;
    }
    return total;
  }

  /// Single-variable convenience.
  cplx operator()(cplx x) const
    requires(N == 1)
  {
    return (*this)(Point{x});
  }

  /// x ↦ f(x + δ e_k).
  WFunction shifted(std::size_t k, cplx delta) const {
    WFunction out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      WTerm<N> s = t;
      const cplx a = t.alpha[k], b = t.beta[k];
      s.coeff *= std::exp(-a * delta * delta + b * delta);
      s.beta[k] = b - 2.0 * a * delta;
      std::map<Exponents<N>, cplx> np;
      for (const auto& [ex, c] : t.poly) {
        const int n = ex[k];
        cplx dp = 1.0;
        for (int j = n; j >= 0; --j) {
          Exponents<N> e2 = ex;
          e2[k] = j;
          np[e2] += c * detail::binomial(n, j) * dp;
          dp *= delta;
        }
      }
      s.poly = std::move(np);
      out.terms_.push_back(std::move(s));
    }
    return out;
  }

  /// Multiplication by c·e^{λ x_k}.
  WFunction times_exp(std::size_t k, cplx lambda, cplx c = 1.0) const {
    WFunction out = *this;
    for (auto& t : out.terms_) {
      t.beta[k] += lambda;
      t.coeff *= c;
    }
    return out;
  }

  /// Multiplication by c·x_k^n.
  WFunction times_power(std::size_t k, int n, cplx c = 1.0) const {
    WFunction out = *this;
    for (auto& t : out.terms_) {
      std::map<Exponents<N>, cplx> np;
      for (const auto& [ex, v] : t.poly) {
        Exponents<N> e2 = ex;
        e2[k] += n;
        np[e2] += v;
      }
      t.poly = std::move(np);
      t.coeff *= c;
    }
    return out;
  }

  WFunction operator*(cplx c) const {
    WFunction out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }

  WFunction operator+(const WFunction& o) const {
    WFunction out = *this;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    return out;
  }

  WFunction operator-(const WFunction& o) const { return *this + o * cplx(-1.0); }

  /// Product of two W-class functions (Gaussian parameters add).
  WFunction operator*(const WFunction& o) const {
    WFunction out;
    for (const auto& s : terms_)
      for (const auto& t : o.terms_) {
        WTerm<N> u;
        u.coeff = s.coeff * t.coeff;
        for (std::size_t k = 0; k < N; ++k) {
          u.alpha[k] = s.alpha[k] + t.alpha[k];
          u.beta[k] = s.beta[k] + t.beta[k];
        }
        u.poly.clear();
        for (const auto& [e1, c1] : s.poly)
          for (const auto& [e2, c2] : t.poly) {
            Exponents<N> e;
            for (std::size_t k = 0; k < N; ++k) e[k] = e1[k] + e2[k];
            u.poly[e] += c1 * c2;
          }
        out.terms_.push_back(std::move(u));
      }
    return out;
  }

  /// Every term decays like a Gaussian along each real axis.
  bool in_class() const {
    for (const auto& t : terms_)
      for (const cplx& a : t.alpha)
        if (!(a.real() > 0)) return false;
    return true;
  }

 private:
  std::vector<WTerm<N>> terms_;
};

using WFunction1 = WFunction<1>;

/// c · x^n · e^{−αx² + βx}.
inline WFunction1 w_gaussian(cplx alpha, cplx beta = 0.0, cplx c = 1.0, int power = 0) {
  auto f = WFunction1::gaussian({alpha}, {beta}, c);
  return power == 0 ? f : f.times_power(0, power);
}

}  // namespace qdilog
