#pragma once

// Exact noncommutative polynomials over Z[q^{±1/2}, c^{±1}] localised at (q − q⁻¹).
//
// Generators are ordered; a monomial is an exponent vector in that order. A
// RelationSet records, for each pair i < j, the rule g_j g_i = q^{k/2} g_i g_j + R
// where R (lower terms) is only allowed between non-invertible generators.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdilog/errors.hpp"
#include "qdilog/identities.hpp"
#include "qdilog/qdilog.hpp"

namespace qdilog {

// ---------------------------------------------------------------------------
// Coefficients: Σ n_{a,e} q^{a/2} c^e / (q − q⁻¹)^den
// ---------------------------------------------------------------------------

class QCoeff {
 public:
  using Key = std::pair<int, int>;  // (exponent of q^{1/2}, exponent of c)

  QCoeff() = default;
  QCoeff(long long v) {  // NOLINT: integers embed implicitly
    if (v != 0) num_[{0, 0}] = v;
  }

  static QCoeff monomial(int half_q, int c_exp = 0, long long v = 1) {
    QCoeff r;
    if (v != 0) r.num_[{half_q, c_exp}] = v;
    return r;
  }
  static QCoeff qpow(int k) { return monomial(2 * k, 0); }
  static QCoeff c(int e = 1) { return monomial(0, e); }

  /// 1/(q − q⁻¹)^d.
  static QCoeff inv_q_minus_qinv(int d = 1) {
    QCoeff r(1);
    r.den_ = d;
    return r;
  }

  bool is_zero() const { return num_.empty(); }
  int denominator_power() const { return den_; }
  const std::map<Key, long long>& numerator() const { return num_; }

  QCoeff operator+(const QCoeff& o) const {
    const int d = std::max(den_, o.den_);
    QCoeff a = raised(d), b = o.raised(d);
    for (const auto& [k, v] : b.num_) a.num_[k] += v;
    a.prune();
    a.reduce();
    return a;
  }
  QCoeff operator-() const {
    QCoeff r = *this;
    for (auto& [k, v] : r.num_) v = -v;
    return r;
  }
  QCoeff operator-(const QCoeff& o) const { return *this + (-o); }
  QCoeff operator*(const QCoeff& o) const {
    QCoeff r;
    for (const auto& [k1, v1] : num_)
      for (const auto& [k2, v2] : o.num_) r.num_[{k1.first + k2.first, k1.second + k2.second}] += v1 * v2;
    r.den_ = den_ + o.den_;
    r.prune();
    r.reduce();
    return r;
  }
  QCoeff& operator+=(const QCoeff& o) { return *this = *this + o; }
  QCoeff& operator*=(const QCoeff& o) { return *this = *this * o; }
  bool operator==(const QCoeff& o) const { return (*this - o).is_zero(); }
  bool operator!=(const QCoeff& o) const { return !(*this == o); }

  /// Inverse of a unit ±q^{a/2}c^e.
  QCoeff unit_inverse() const {
    if (num_.size() != 1 || den_ != 0 || std::abs(num_.begin()->second) != 1)
      throw DomainError("coefficient is not a unit");
    const auto& [k, v] = *num_.begin();
    return monomial(-k.first, -k.second, v);
  }

  /// Numerical value at q^{1/2} = h and pairing constant c.
  cplx evaluate(cplx h, cplx cval) const {
    cplx s = 0;
    for (const auto& [k, v] : num_) s += double(v) * std::pow(h, k.first) * std::pow(cval, k.second);
    return s / std::pow(h * h - 1.0 / (h * h), den_);
  }

  std::string str() const {
    if (num_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
      const auto& [k, v] = *it;
      os << (v < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      const long long a = v < 0 ? -v : v;
      const bool bare = k.first == 0 && k.second == 0;
      if (a != 1 || bare) os << a;
      if (k.first != 0) os << (a != 1 ? " " : "") << "q^{" << k.first << "/2}";
      if (k.second != 0) os << ((a != 1 || k.first != 0) ? " " : "") << "c^{" << k.second << "}";
      first = false;
    }
    std::string s = os.str();
    if (den_ > 0) s = "(" + s + ")/(q-q^{-1})^" + std::to_string(den_);
    return s;
  }

 private:
  std::map<Key, long long> num_;
  int den_ = 0;

  void prune() {
    for (auto it = num_.begin(); it != num_.end();)
      it = it->second == 0 ? num_.erase(it) : std::next(it);
    if (num_.empty()) den_ = 0;
  }

  // Same value written over (q − q⁻¹)^d, d ≥ den_.
  QCoeff raised(int d) const {
    QCoeff r = *this;
    for (int i = den_; i < d; ++i) {
      std::map<Key, long long> n;
      for (const auto& [k, v] : r.num_) {
        n[{k.first + 2, k.second}] += v;
        n[{k.first - 2, k.second}] -= v;
      }
      r.num_ = std::move(n);
    }
    r.den_ = d;
    r.prune();
    r.den_ = num_.empty() ? 0 : d;
    return r;
  }

  // Cancel common factors (q − q⁻¹) = h² − h⁻² between numerator and denominator.
  void reduce() {
    while (den_ > 0 && !num_.empty()) {
      std::map<Key, long long> quotient;
      bool ok = true;
      std::map<int, std::map<int, long long>> slices;
      for (const auto& [k, v] : num_) slices[k.second][k.first] = v;
      for (auto& [ce, p] : slices) {
        // Solve s·(h² − h⁻²) = p, i.e. p_k = s_{k−2} − s_{k+2}.
        const int lo = p.begin()->first, hi = p.rbegin()->first;
        std::map<int, long long> s;
        for (int k = hi; k >= lo; --k) {
          const long long pk = p.count(k) ? p[k] : 0;
          const long long up = s.count(k + 2) ? s[k + 2] : 0;
          const long long val = pk + up;
          if (k - 2 < lo + 2) {
            if (val != 0) ok = false;
          } else if (val != 0) {
            s[k - 2] = val;
          }
        }
        if (!ok) break;
        for (const auto& [e, v] : s) quotient[{e, ce}] = v;
      }
      if (!ok) return;
      num_ = std::move(quotient);
      --den_;
      prune();
    }
  }
};

inline QCoeff operator*(long long a, const QCoeff& c) { return QCoeff(a) * c; }

/// [n]_q = (qⁿ − q⁻ⁿ)/(q − q⁻¹) = q^{n−1} + q^{n−3} + … + q^{1−n}.
inline QCoeff q_number(int n) {
  if (n < 0) throw DomainError("q_number needs n >= 0");
  QCoeff r;
  for (int j = 0; j < n; ++j) r += QCoeff::monomial(2 * (n - 1 - 2 * j));
  return r;
}

inline QCoeff q_factorial(int n) {
  QCoeff r(1);
  for (int k = 1; k <= n; ++k) r *= q_number(k);
  return r;
}

// ---------------------------------------------------------------------------
// Relation sets and normal ordering
// ---------------------------------------------------------------------------

using Monomial = std::vector<int>;

struct Letter {
  int gen;
  int power = 1;
};
using Word = std::vector<Letter>;

struct RelationSet {
  std::vector<std::string> names;
  std::vector<bool> invertible;
  // qexp[j][i], i < j: g_j g_i = q^{qexp/2} g_i g_j + lower[j][i].
  std::vector<std::vector<int>> qexp;
  std::vector<std::vector<std::vector<std::pair<QCoeff, Monomial>>>> lower;

  std::size_t size() const { return names.size(); }

  static RelationSet commuting(std::vector<std::string> names, std::vector<bool> inv) {
    RelationSet r;
    const std::size_t n = names.size();
    r.names = std::move(names);
    r.invertible = std::move(inv);
    r.qexp.assign(n, std::vector<int>(n, 0));
    r.lower.assign(n, std::vector<std::vector<std::pair<QCoeff, Monomial>>>(n));
    return r;
  }

  int index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return int(i);
    throw DomainError("unknown generator " + name);
  }
};

/// [A, B, B̂, Â] with AB = q²BA, ÂB̂ = q⁻²B̂Â, {A,B} commuting with {B̂,Â}.
inline std::shared_ptr<const RelationSet> plane_double_relations() {
  static const auto rs = [] {
    auto r = RelationSet::commuting({"A", "B", "B̂", "Â"}, {true, false, false, true});
    r.qexp[1][0] = -4;  // BA = q⁻²AB
    r.qexp[3][2] = -4;  // ÂB̂ = q⁻²B̂Â
    return std::make_shared<const RelationSet>(std::move(r));
  }();
  return rs;
}

/// Same algebra with Â ordered before B̂.
inline std::shared_ptr<const RelationSet> plane_double_hat_first() {
  static const auto rs = [] {
    auto r = RelationSet::commuting({"A", "B", "Â", "B̂"}, {true, false, true, false});
    r.qexp[1][0] = -4;
    r.qexp[3][2] = 4;  // B̂Â = q²ÂB̂
    return std::make_shared<const RelationSet>(std::move(r));
  }();
  return rs;
}

/// [K₀, K, E, F] of U_q(gl(2,R)): KE = qEK, KF = q⁻¹FK, FE = EF − (K² − K⁻²)/(q − q⁻¹).
inline std::shared_ptr<const RelationSet> uq_gl2_relations() {
  static const auto rs = [] {
    auto r = RelationSet::commuting({"K0", "K", "E", "F"}, {true, true, false, false});
    r.qexp[2][1] = -2;  // EK = q⁻¹KE
    r.qexp[3][1] = 2;   // FK = qKF
    const QCoeff d = QCoeff::inv_q_minus_qinv();
    r.lower[3][2] = {{-d, Monomial{0, 2, 0, 0}}, {d, Monomial{0, -2, 0, 0}}};
    return std::make_shared<const RelationSet>(std::move(r));
  }();
  return rs;
}

/// k commuting copies of a relation set; generator g of copy s has index s·n + g.
inline std::shared_ptr<const RelationSet> tensor_power(std::shared_ptr<const RelationSet> base,
                                                       int k) {
  const std::size_t n = base->size();
  std::vector<std::string> names;
  std::vector<bool> inv;
  for (int s = 0; s < k; ++s)
    for (std::size_t g = 0; g < n; ++g) {
      names.push_back(base->names[g] + "_" + std::to_string(s + 1));
      inv.push_back(base->invertible[g]);
    }
  auto r = RelationSet::commuting(std::move(names), std::move(inv));
  for (int s = 0; s < k; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        r.qexp[s * n + j][s * n + i] = base->qexp[j][i];
        for (const auto& [c, m] : base->lower[j][i]) {
          Monomial big(n * k, 0);
          std::copy(m.begin(), m.end(), big.begin() + s * n);
          r.lower[s * n + j][s * n + i].push_back({c, big});
        }
      }
  return std::make_shared<const RelationSet>(std::move(r));
}

class NCPoly {
 public:
  using Rel = std::shared_ptr<const RelationSet>;

  NCPoly() = default;
  explicit NCPoly(Rel r) : rel_(std::move(r)) {}
  NCPoly(Rel r, const QCoeff& c) : rel_(std::move(r)) {
    if (!c.is_zero()) terms_[Monomial(rel_->size(), 0)] = c;
  }

  static NCPoly generator(Rel r, int g, int power = 1, const QCoeff& c = 1) {
    Monomial m(r->size(), 0);
    m[g] = power;
    NCPoly p(std::move(r));
    p.add_term(m, c);
    return p;
  }
  static NCPoly generator(Rel r, const std::string& name, int power = 1) {
    const int g = r->index(name);
    return generator(std::move(r), g, power);
  }
  static NCPoly monomial(Rel r, const Monomial& m, const QCoeff& c = 1) {
    NCPoly p(std::move(r));
    p.add_term(m, c);
    return p;
  }

  const Rel& relations() const { return rel_; }
  const std::map<Monomial, QCoeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const QCoeff& c) {
    if (c.is_zero()) return;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (m[g] < 0 && !rel_->invertible[g])
        throw DomainError("negative power of non-invertible generator " + rel_->names[g]);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPoly operator+(const NCPoly& o) const {
    NCPoly r = *this;
    if (!r.rel_) r.rel_ = o.rel_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  NCPoly operator-(const NCPoly& o) const { return *this + (-o); }
  NCPoly operator*(const QCoeff& c) const {
    NCPoly r(rel_);
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
  }

  NCPoly operator*(const NCPoly& o) const {
    const Rel& rel = rel_ ? rel_ : o.rel_;
    NCPoly r(rel);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        NCPoly part = NCPoly::monomial(rel, m1, c1 * c2);
        for (std::size_t g = 0; g < m2.size(); ++g)
          if (m2[g] != 0) part = part.times_letter(int(g), m2[g]);
        r = r + part;
      }
    return r;
  }

  /// Right multiplication by g^power, re-normalised.
  NCPoly times_letter(int g, int power) const {
    NCPoly r(rel_);
    const int step = power > 0 ? 1 : -1;
    r = *this;
    for (int i = 0; i != power; i += step) {
      NCPoly next(rel_);
      for (const auto& [m, c] : r.terms_) next = next + monomial_times_unit(m, g, step) * c;
      r = std::move(next);
    }
    return r;
  }

  bool operator==(const NCPoly& o) const { return (*this - o).is_zero(); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      for (std::size_t g = 0; g < m.size(); ++g)
        if (m[g] != 0) s += " " + rel_->names[g] + "^{" + std::to_string(m[g]) + "}";
    }
    return s;
  }

 private:
  Rel rel_;
  std::map<Monomial, QCoeff> terms_;

  // m · g^{s}, s = ±1, with m normal-ordered.
  NCPoly monomial_times_unit(const Monomial& m, int g, int s) const {
    int top = -1;
    for (int j = int(m.size()) - 1; j > g; --j)
      if (m[j] != 0) {
        top = j;
        break;
      }
    if (top < 0) {
      Monomial out = m;
      out[g] += s;
      return NCPoly::monomial(rel_, out);
    }
    const int a = m[top];
    Monomial prefix = m;
    prefix[top] = 0;
    const auto& low = rel_->lower[top][g];
    if (low.empty()) {
      // g_top^a g^s = q^{k a s/2} g^s g_top^a
      NCPoly moved = monomial_times_unit(prefix, g, s).times_letter(top, a);
      return moved * QCoeff::monomial(rel_->qexp[top][g] * a * s);
    }
    if (a < 0 || s < 0) throw DomainError("lower-order rule applied to an inverse letter");
    // g_top^a g = (g_top^{a−1} g) g_top q^{k/2} + g_top^{a−1} R
    Monomial shorter = m;
    shorter[top] = a - 1;
    NCPoly first = monomial_times_unit(shorter, g, 1).times_letter(top, 1) *
                   QCoeff::monomial(rel_->qexp[top][g]);
    NCPoly rest(rel_);
    for (const auto& [c, lm] : low) rest = rest + NCPoly::monomial(rel_, shorter) * NCPoly::monomial(rel_, lm, c);
    return first + rest;
  }
};

/// Normal form of a word of letters g^{power}.
inline NCPoly normal_order(const Word& w, std::shared_ptr<const RelationSet> rel) {
  NCPoly r(rel, QCoeff(1));
  for (const Letter& l : w) {
    if (l.gen < 0 || std::size_t(l.gen) >= rel->size()) throw DomainError("letter out of range");
    if (l.power < 0 && !rel->invertible[l.gen])
      throw DomainError("negative power of non-invertible generator " + rel->names[l.gen]);
    r = r.times_letter(l.gen, l.power);
  }
  return r;
}

/// Copy s (0-based) of a k-fold tensor power.
inline NCPoly embed(const NCPoly& x, int s, std::shared_ptr<const RelationSet> target) {
  const std::size_t n = x.relations()->size();
  NCPoly r(target);
  for (const auto& [m, c] : x.terms()) {
    Monomial big(target->size(), 0);
    std::copy(m.begin(), m.end(), big.begin() + s * n);
    r.add_term(big, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Quantum Minkowski generators via the Gauss decomposition
// ---------------------------------------------------------------------------

enum class ZGen { z11, z12, z21, z22, N, Ninv };

inline const char* zgen_name(ZGen g) {
  static const char* n[] = {"z11", "z12", "z21", "z22", "N", "N^{-1}"};
  return n[int(g)];
}

using ZWord = std::vector<ZGen>;

/// Linear combination of words in the z-generators (not normal-ordered).
struct ZPoly {
  std::vector<std::pair<QCoeff, ZWord>> terms;

  static ZPoly word(ZWord w, const QCoeff& c = 1) { return ZPoly{{{c, std::move(w)}}}; }
  ZPoly operator+(const ZPoly& o) const {
    ZPoly r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
  ZPoly operator*(const QCoeff& c) const {
    ZPoly r = *this;
    for (auto& t : r.terms) t.first = t.first * c;
    return r;
  }
  ZPoly operator-(const ZPoly& o) const { return *this + o * QCoeff(-1); }
};

/// z₁₁ = A, z₁₂ = AB̂, z₂₁ = B, z₂₂ = BB̂ + Â, N = AÂ.
inline NCPoly gauss_generator(ZGen g) {
  const auto R = plane_double_relations();
  const NCPoly A = NCPoly::generator(R, 0), B = NCPoly::generator(R, 1),
               Bh = NCPoly::generator(R, 2), Ah = NCPoly::generator(R, 3);
  switch (g) {
    case ZGen::z11: return A;
    case ZGen::z12: return A * Bh;
    case ZGen::z21: return B;
    case ZGen::z22: return B * Bh + Ah;
    case ZGen::N: return A * Ah;
    default: return NCPoly::generator(R, 3, -1) * NCPoly::generator(R, 0, -1);
  }
}

inline NCPoly gauss_substitute(const ZPoly& x) {
  const auto R = plane_double_relations();
  NCPoly r(R);
  for (const auto& [c, w] : x.terms) {
    NCPoly t(R, c);
    for (ZGen g : w) t = t * gauss_generator(g);
    r = r + t;
  }
  return r;
}

namespace detail {

inline ZGen zmatrix(int i, int j) {
  static const ZGen m[2][2] = {{ZGen::z11, ZGen::z12}, {ZGen::z21, ZGen::z22}};
  return m[i][j];
}

inline std::pair<int, int> zindex(ZGen g) {
  switch (g) {
    case ZGen::z11: return {0, 0};
    case ZGen::z12: return {0, 1};
    case ZGen::z21: return {1, 0};
    default: return {1, 1};
  }
}

// Δ of one z-generator as a list of (left word, right word).
inline std::vector<std::pair<ZGen, ZGen>> coproduct_table(ZGen g) {
  if (g == ZGen::N || g == ZGen::Ninv) return {{g, g}};
  const auto [i, j] = zindex(g);
  return {{zmatrix(i, 0), zmatrix(0, j)}, {zmatrix(i, 1), zmatrix(1, j)}};
}

}  // namespace detail

/// Δ(x) in the twofold tensor power of the Gauss algebra.
inline NCPoly coproduct(const ZPoly& x) {
  const auto R = plane_double_relations();
  const auto T = tensor_power(R, 2);
  NCPoly r(T);
  for (const auto& [c, w] : x.terms) {
    NCPoly t(T, c);
    for (ZGen g : w) {
      NCPoly dg(T);
      for (const auto& [l, rr] : detail::coproduct_table(g))
        dg = dg + embed(gauss_generator(l), 0, T) * embed(gauss_generator(rr), 1, T);
      t = t * dg;
    }
    r = r + t;
  }
  return r;
}

/// (Δ⊗id)Δ(g) when `left_first`, otherwise (id⊗Δ)Δ(g), in the threefold tensor power.
inline NCPoly iterated_coproduct(ZGen g, bool left_first) {
  const auto R = plane_double_relations();
  const auto T = tensor_power(R, 3);
  NCPoly r(T);
  for (const auto& [l, rr] : detail::coproduct_table(g)) {
    const ZGen split = left_first ? l : rr;
    for (const auto& [a, b] : detail::coproduct_table(split)) {
      if (left_first)
        r = r + embed(gauss_generator(a), 0, T) * embed(gauss_generator(b), 1, T) *
                    embed(gauss_generator(rr), 2, T);
      else
        r = r + embed(gauss_generator(l), 0, T) * embed(gauss_generator(a), 1, T) *
                    embed(gauss_generator(b), 2, T);
    }
  }
  return r;
}

struct ExactCheck {
  std::string name;
  bool holds;
  std::string residual;
};

/// Each defining relation as "lhs − rhs".
inline std::vector<std::pair<std::string, ZPoly>> minkowski_relations() {
  using Z = ZGen;
  auto w = [](ZWord x, long long c = 1) { return ZPoly::word(std::move(x), QCoeff(c)); };
  auto qw = [](ZWord x, int k) { return ZPoly::word(std::move(x), QCoeff::qpow(k)); };
  return {
      {"[z11,z12]=0", w({Z::z11, Z::z12}) - w({Z::z12, Z::z11})},
      {"[z21,z22]=0", w({Z::z21, Z::z22}) - w({Z::z22, Z::z21})},
      {"[z11,z22]=[z12,z21]",
       w({Z::z11, Z::z22}) - w({Z::z22, Z::z11}) - w({Z::z12, Z::z21}) + w({Z::z21, Z::z12})},
      {"z11z21=q^2z21z11", w({Z::z11, Z::z21}) - qw({Z::z21, Z::z11}, 2)},
      {"z12z22=q^2z22z12", w({Z::z12, Z::z22}) - qw({Z::z22, Z::z12}, 2)},
      {"z12z21=q^2z21z12", w({Z::z12, Z::z21}) - qw({Z::z21, Z::z12}, 2)},
  };
}

inline std::vector<std::pair<std::string, ZPoly>> determinant_relations() {
  using Z = ZGen;
  auto w = [](ZWord x, long long c = 1) { return ZPoly::word(std::move(x), QCoeff(c)); };
  auto qw = [](ZWord x, int k) { return ZPoly::word(std::move(x), QCoeff::qpow(k)); };
  return {
      {"N=z11z22-z12z21", w({Z::N}) - w({Z::z11, Z::z22}) + w({Z::z12, Z::z21})},
      {"N=z22z11-z21z12", w({Z::N}) - w({Z::z22, Z::z11}) + w({Z::z21, Z::z12})},
      {"Nz11=z11N", w({Z::N, Z::z11}) - w({Z::z11, Z::N})},
      {"Nz12=q^-2z12N", w({Z::N, Z::z12}) - qw({Z::z12, Z::N}, -2)},
      {"Nz21=q^2z21N", w({Z::N, Z::z21}) - qw({Z::z21, Z::N}, 2)},
      {"Nz22=z22N", w({Z::N, Z::z22}) - w({Z::z22, Z::N})},
  };
}

/// Relations, determinant and N-commutation rules in the Gauss algebra.
inline std::vector<ExactCheck> minkowski_checks() {
  std::vector<ExactCheck> out;
  auto rels = minkowski_relations();
  const auto det = determinant_relations();
  rels.insert(rels.end(), det.begin(), det.end());
  for (const auto& [name, x] : rels) {
    const NCPoly r = gauss_substitute(x);
    out.push_back({name, r.is_zero(), r.str()});
  }
  {
    const auto R = plane_double_relations();
    const NCPoly r = gauss_generator(ZGen::N) - NCPoly::generator(R, 0) * NCPoly::generator(R, 3);
    out.push_back({"N=AÂ", r.is_zero(), r.str()});
  }
  return out;
}

inline IdentityReport exact_report(const std::string& name, const std::vector<ExactCheck>& checks) {
  IdentityReport rep;
  rep.name = name;
  double failed = 0;
  for (const auto& c : checks) failed += c.holds ? 0 : 1;
  rep.params["relations"] = double(checks.size());
  rep.lhs = failed;
  rep.rhs = 0;
  rep.abs_err = rep.rel_err = failed;
  rep.pass = failed == 0;
  return rep;
}

inline IdentityReport verify_minkowski_relations() {
  return exact_report("minkowski-relations", minkowski_checks());
}

/// Δ(lhs − rhs) = 0 for every relation, and Δ(N) = N⊗N.
inline std::vector<ExactCheck> coproduct_checks() {
  std::vector<ExactCheck> out;
  auto rels = minkowski_relations();
  const auto det = determinant_relations();
  rels.insert(rels.end(), det.begin(), det.end());
  for (const auto& [name, x] : rels) {
    const NCPoly r = coproduct(x);
    out.push_back({"Delta(" + name + ")", r.is_zero(), r.str()});
  }
  const auto T = tensor_power(plane_double_relations(), 2);
  const NCPoly nn = embed(gauss_generator(ZGen::N), 0, T) * embed(gauss_generator(ZGen::N), 1, T);
  const NCPoly det_delta =
      coproduct(ZPoly::word({ZGen::z11, ZGen::z22}) - ZPoly::word({ZGen::z12, ZGen::z21}));
  out.push_back({"Delta(z11z22-z12z21)=N(x)N", (det_delta - nn).is_zero(), (det_delta - nn).str()});
  for (ZGen g : {ZGen::z11, ZGen::z12, ZGen::z21, ZGen::z22, ZGen::N}) {
    const NCPoly r = iterated_coproduct(g, true) - iterated_coproduct(g, false);
    out.push_back({std::string("coassoc(") + zgen_name(g) + ")", r.is_zero(), r.str()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hopf pairing with U_q(gl(2,R))
// ---------------------------------------------------------------------------

/// Closed form ⟨K₀^{l0} K^l E^m F^n, A^L B^{m'} B̂^{n'} Â^{L'}⟩ as published:
///   c^{m²−n²} q^{l(m+L'−L)/2 + mL + nL' − nm} [n]_q! [m]_q!, times q^{−l0(L+L'+m)/2}.
inline QCoeff pairing_monomial(int l, int m, int n, int l0, int L, int mp, int np, int Lp) {
  if (m < 0 || n < 0 || mp < 0 || np < 0) throw DomainError("E, F, B, B̂ powers must be >= 0");
  if (m != mp || n != np) return QCoeff(0);
  // exponent of q^{1/2}
  const int half = l * (m + Lp - L) + 2 * (m * L + n * Lp - n * m) - l0 * (L + Lp + m);
  return QCoeff::monomial(half, m * m - n * n) * q_factorial(n) * q_factorial(m);
}

/// The coefficient forced by the generator table and the coproduct:
///   c^{m−n} q^{l(m+L'−L)/2 + mL + nL'} [n]_q! [m]_q!, times q^{−l0(L+L'+m)/2}.
inline QCoeff pairing_monomial_derived(int l, int m, int n, int l0, int L, int mp, int np,
                                       int Lp) {
  if (m < 0 || n < 0 || mp < 0 || np < 0) throw DomainError("E, F, B, B̂ powers must be >= 0");
  if (m != mp || n != np) return QCoeff(0);
  const int half = l * (m + Lp - L) + 2 * (m * L + n * Lp) - l0 * (L + Lp + m);
  return QCoeff::monomial(half, m - n) * q_factorial(n) * q_factorial(m);
}

namespace detail {

// Sparse vector over the basis of (C²)^{⊗k}; index bit s set means slot s is e₂.
using PairVec = std::map<unsigned, QCoeff>;

struct TensorRep {
  std::vector<bool> is_z;  // per slot: fundamental (true) or determinant character (false)

  // Grouplike g with per-slot value: z slot uses diag(d1, d2), N slot uses chi.
  PairVec grouplike(const PairVec& v, const QCoeff& d1, const QCoeff& d2, const QCoeff& chi) const {
    PairVec out;
    for (const auto& [idx, c] : v) {
      QCoeff f(1);
      for (std::size_t s = 0; s < is_z.size(); ++s) f *= is_z[s] ? ((idx >> s) & 1u ? d2 : d1) : chi;
      out[idx] += c * f;
    }
    return out;
  }

  // Δ^{(k)}(E) = Σ_s (K₀⁻¹K⁻¹)^{⊗<s} ⊗ E ⊗ (K₀K)^{⊗>s}; ρ(E) = c e₂₁, ρ(F) = c⁻¹ e₁₂.
  PairVec raise_lower(const PairVec& v, bool is_E) const {
    // ρ(K₀⁻¹K⁻¹) = diag(q, 1), ρ(K₀K) = diag(q⁻¹, 1); χ(K₀⁻¹K⁻¹) = q, χ(K₀K) = q⁻¹ (E)
    // ρ(K₀K⁻¹) = diag(1, q⁻¹), ρ(K₀⁻¹K) = diag(1, q);   χ(K₀K⁻¹) = q⁻¹, χ(K₀⁻¹K) = q (F)
    PairVec out;
    for (const auto& [idx, c] : v)
      for (std::size_t s = 0; s < is_z.size(); ++s) {
        if (!is_z[s]) continue;
        const bool high = (idx >> s) & 1u;
        if (is_E == high) continue;  // E maps e₁ → e₂, F maps e₂ → e₁
        QCoeff f = is_E ? QCoeff::c(1) : QCoeff::c(-1);
        for (std::size_t t = 0; t < is_z.size(); ++t) {
          if (t == s) continue;
          const bool before = t < s;
          if (!is_z[t]) {
            f *= QCoeff::qpow((before == is_E) ? 1 : -1);
            continue;
          }
          const bool th = (idx >> t) & 1u;
          if (is_E && !th) f *= QCoeff::qpow(before ? 1 : -1);
          if (!is_E && th) f *= QCoeff::qpow(before ? -1 : 1);
        }
        out[idx ^ (1u << s)] += c * f;
      }
    return out;
  }
};

}  // namespace detail

inline constexpr int kPairingMaxEF = 4;
inline constexpr int kPairingMaxWord = 16;

/// ⟨u, w⟩ for u = K₀^{l0}K^lE^mF^n and a word w in z₁₁, z₁₂, z₂₁, z₂₂, N, computed
/// from the fundamental representation and the determinant character through Δ.
inline QCoeff pairing_z_word(int l0, int l, int m, int n, const ZWord& w) {
  if (m > kPairingMaxEF || n > kPairingMaxEF || int(w.size()) > kPairingMaxWord)
    throw DegreeLimit("pairing oracle is limited to E, F degree 4 and word length 16");
  detail::TensorRep rep;
  unsigned col = 0, row = 0;
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (w[s] == ZGen::Ninv) throw DomainError("pairing oracle takes nonnegative N powers");
    rep.is_z.push_back(w[s] != ZGen::N);
    if (rep.is_z.back()) {
      const auto [i, j] = detail::zindex(w[s]);
      row |= unsigned(i) << s;
      col |= unsigned(j) << s;
    }
  }
  detail::PairVec v{{col, QCoeff(1)}};
  for (int k = 0; k < n; ++k) v = rep.raise_lower(v, false);
  for (int k = 0; k < m; ++k) v = rep.raise_lower(v, true);
  const int lk = l;
  if (lk != 0)
    v = rep.grouplike(v, QCoeff::monomial(-lk), QCoeff::monomial(lk), QCoeff(1));
  if (l0 != 0)
    v = rep.grouplike(v, QCoeff::monomial(-l0), QCoeff::monomial(-l0), QCoeff::qpow(-l0));
  auto it = v.find(row);
  return it == v.end() ? QCoeff(0) : it->second;
}

/// Inductive pairing of a polynomial in [K₀, K, E, F] with a polynomial in [A, B, B̂, Â].
/// Each right monomial A^L B^{m'} B̂^{n'} Â^{L'} must satisfy L ≥ n' + L' so that it is a
/// multiple of the z-monomial z₁₁^{L−n'−L'} z₂₁^{m'} z₁₂^{n'} N^{L'}.
inline QCoeff pairing_inductive_oracle(const NCPoly& lhs, const NCPoly& rhs) {
  QCoeff total;
  for (const auto& [mu, cu] : lhs.terms())
    for (const auto& [mx, cx] : rhs.terms()) {
      const int L = mx[0], mp = mx[1], np = mx[2], Lp = mx[3];
      if (Lp < 0 || L - np - Lp < 0)
        throw DomainError("right monomial is outside the span of nonnegative z-monomials");
      ZWord w(std::size_t(L - np - Lp), ZGen::z11);
      w.insert(w.end(), std::size_t(mp), ZGen::z21);
      w.insert(w.end(), std::size_t(np), ZGen::z12);
      w.insert(w.end(), std::size_t(Lp), ZGen::N);
      const NCPoly zw = gauss_substitute(ZPoly::word(w));
      if (zw.terms().size() != 1 || zw.terms().begin()->first != mx)
        throw DomainError("unexpected Gauss image of a z-monomial");
      const QCoeff scale = zw.terms().begin()->second.unit_inverse();
      total += cu * cx * scale * pairing_z_word(mu[0], mu[1], mu[2], mu[3], w);
    }
  return total;
}

/// Monomial K₀^{l0} K^l E^m F^n.
inline NCPoly u_monomial(int l0, int l, int m, int n) {
  return NCPoly::monomial(uq_gl2_relations(), Monomial{l0, l, m, n});
}

/// Monomial A^L B^{m} B̂^{n} Â^{L'}.
inline NCPoly plane_monomial(int L, int m, int n, int Lp) {
  return NCPoly::monomial(plane_double_relations(), Monomial{L, m, n, Lp});
}

// ---------------------------------------------------------------------------
// Continuous replacement [n]_q! → G_b(Q + iτ)/(1 − q²)^{iτ/b}
// ---------------------------------------------------------------------------

struct FactorialSubstitution {
  int n;
  cplx value;     // lim_{δ→0} S(−inb + δ)/S(δ)
  cplx expected;  // q^{n(n−1)/2}[n]_q!
  double rel_err;
};

/// S(τ) = G_b(Q + iτ)/(1 − q²)^{iτ/b} with the principal branch of log(1 − q²).
inline cplx factorial_substitution(cplx tau, const BParams& p) {
  return eval_Gb(p.Q + I * tau, p) * std::exp(-I * tau / p.b * std::log(1.0 - p.q * p.q));
}

inline FactorialSubstitution check_factorial_substitution(int n, const BParams& p) {
  // S vanishes at every τ = −inb; the ratio of the simple zeros is the quantity of interest.
  std::vector<cplx> vals;
  const double d0 = 2e-4;
  for (int k = 0; k < 4; ++k) {
    const cplx d = d0 / double(1 << k) * cplx(1, 1);
    vals.push_back(factorial_substitution(-I * double(n) * p.b + d, p) / factorial_substitution(d, p));
  }
  const cplx v = richardson(vals, 2.0, 1);
  const cplx expected = q_factorial(n).evaluate(std::sqrt(p.q), 1.0) *
                        std::pow(p.q, double(n * (n - 1)) / 2.0);
  return {n, v, expected, std::abs(v - expected) / std::abs(expected)};
}

}  // namespace qdilog
