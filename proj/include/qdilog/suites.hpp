#pragma once

// Named verification suites. A suite expands into independent tasks, each
// producing one IdentityReport; run_suites executes them on a worker pool and
// returns the reports sorted by name and then parameters.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qdilog/identities.hpp"
#include "qdilog/properties.hpp"
#include "qdilog/qalgebra.hpp"
#include "qdilog/representation.hpp"
#include "qdilog/special.hpp"

namespace qdilog {

struct SuiteContext {
  BParams params;
  std::optional<double> tol;  // overrides the tolerance of the integral-identity suites
  std::uint64_t seed = 7;
};

using SuiteTask = std::function<IdentityReport()>;

struct Suite {
  std::string name;
  bool in_all;
  std::function<std::vector<SuiteTask>(const SuiteContext&)> expand;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ull;
  return h;
}

// Portable uniform draw in [lo, hi).
class Uniform {
 public:
  Uniform(std::uint64_t seed, const std::string& salt) : rng_(seed ^ fnv1a(salt)) {}
  double operator()(double lo, double hi) {
    const double u = double(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

inline IdentityReport residual_report(std::string name, std::map<std::string, cplx> params,
                                      double residual, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = residual;
  r.rhs = 0;
  r.abs_err = r.rel_err = residual;
  r.pass = residual < tol;
  return r;
}

inline IdentityReport exact_check_report(const std::string& suite, const ExactCheck& c) {
  IdentityReport r = residual_report(suite, {}, c.holds ? 0.0 : 1.0, 0.5);
  r.name = suite + ":" + c.name;
  return r;
}

// Guard a task so that library errors become failing reports instead of aborting the run.
inline SuiteTask guarded(std::string name, std::map<std::string, cplx> params, SuiteTask t) {
  return [name = std::move(name), params = std::move(params), t = std::move(t)]() {
    try {
      return t();
    } catch (const std::exception& e) {
      IdentityReport r;
      r.name = name + " [error: " + e.what() + "]";
      r.params = params;
      r.abs_err = r.rel_err = std::numeric_limits<double>::infinity();
      r.pass = false;
      return r;
    }
  };
}

inline std::vector<double> principal_points() { return {-1.5, -0.6, 0.0, 0.7, 1.3, 2.1}; }

inline WFunction1 principal_test_function() {
  return w_gaussian(1.0, 0.2) + w_gaussian(0.7, cplx(-0.3, 0.4), cplx(0.5, 0.1), 1);
}

inline WFunction<4> regular_test_function() {
  return WFunction<4>::gaussian({1.0, 1.0, 1.0, 1.0}, {0.1, -0.2, 0.15, 0.05}) +
         WFunction<4>::gaussian({0.8, 1.2, 0.9, 1.1}, {0.0, 0.1, -0.1, 0.2}, cplx(0.3, -0.2));
}

inline std::vector<std::array<cplx, 4>> regular_points() {
  return {{0.1, 0.2, -0.3, 0.4}, {-0.5, 0.3, 0.2, 0.1}, {0.7, -0.4, 0.1, -0.2},
          {0.0, 0.6, -0.5, 0.3}, {-0.2, -0.1, 0.4, -0.6}, {0.3, 0.0, 0.0, 0.5},
          {-0.7, 0.5, 0.3, 0.2}, {0.4, -0.6, -0.2, 0.0}, {0.2, 0.1, 0.6, -0.4},
          {-0.3, -0.5, -0.4, 0.1}};
}

// Base points of the integral identities, in units of Q, and a seeded ±15% jitter.
inline std::vector<std::vector<cplx>> identity_grid(const std::string& name, const SuiteContext& ctx,
                                                    const std::vector<double>& base, int count) {
  Uniform u(ctx.seed, name);
  std::vector<std::vector<cplx>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<cplx> pt;
    for (double v : base) {
      const double re = k == 0 ? v : v * (1 + u(-0.15, 0.15));
      const double im = k == 0 ? 0.0 : u(-0.1, 0.1);
      pt.push_back(cplx(re * ctx.params.Q, im));
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace detail

inline const std::vector<Suite>& suite_registry() {
  using detail::guarded;
  static const std::vector<Suite> reg = {
      {"functional-equation", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "functional-equation");
         const BParams p = c.params;
         for (int k = 0; k < 100; ++k) {
           const cplx z(u(0.1, p.Q - p.b - 0.1), u(-1, 1));
           t.push_back(guarded("functional-equation", {{"z", z}},
                               [=] { return check_functional_equation(z, false, p); }));
         }
         for (int k = 0; k < 20; ++k) {
           const cplx z(u(0.1, p.b - 0.1), u(-1, 1));
           t.push_back(guarded("functional-equation-dual", {{"z", z}},
                               [=] { return check_functional_equation(z, true, p); }));
         }
         return t;
       }},
      {"reflection", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "reflection");
         const BParams p = c.params;
         for (int k = 0; k < 100; ++k) {
           const cplx z(u(0.1, p.Q - 0.1), u(-1, 1));
           t.push_back(guarded("reflection", {{"z", z}}, [=] { return check_reflection(z, p); }));
         }
         return t;
       }},
      {"conjugation", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "conjugation");
         const BParams p = c.params;
         for (int k = 0; k < 100; ++k) {
           const cplx z(u(0.1, p.Q - 0.1), u(-1, 1));
           t.push_back(guarded("conjugation", {{"z", z}}, [=] { return check_conjugation(z, p); }));
         }
         return t;
       }},
      {"unitarity", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "unitarity");
         const BParams p = c.params;
         for (int k = 0; k < 100; ++k) {
           const double x = u(-4, 4);
           t.push_back(guarded("unitarity", {{"x", x}}, [=] { return check_unitarity(x, p); }));
         }
         return t;
       }},
      {"self-duality", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "self-duality");
         const BParams p = c.params;
         for (int k = 0; k < 100; ++k) {
           const cplx z(u(0.2, p.Q - 0.2), u(-1, 1));
           t.push_back(guarded("self-duality", {{"z", z}}, [=] { return check_self_duality(z, p); }));
         }
         return t;
       }},
      {"continuation", true,
       [](const SuiteContext& c) {
         std::vector<SuiteTask> t;
         detail::Uniform u(c.seed, "continuation");
         const BParams p = c.params;
         for (int k = 0; k < 20; ++k) {
           const cplx z(u(-2, 4), u(-1, 1));
           const int steps = 1 + k % 3;
           t.push_back(guarded("continuation", {{"z", z}},
                               [=] { return check_continuation(z, steps, p); }));
         }
         return t;
       }},
      {"residue", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t{guarded("residue-origin", {}, [=] { return check_residue_origin(p); })};
         for (auto [n, m] : {std::pair{1, 0}, {0, 1}, {1, 1}})
           t.push_back(guarded("residue-info", {{"n", double(n)}, {"m", double(m)}},
                               [=] { return check_residue_info(n, m, p); }));
         return t;
       }},
      {"asymptotics", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (double y : {8.0, -8.0})
           t.push_back(guarded("asymptotics", {{"y", y}}, [=] { return check_asymptotics(y, p); }));
         for (double x : {0.3, 1.0, 2.5, 7.0})
           t.push_back(guarded("g_b-modulus", {{"x", x}}, [=] { return check_gb_modulus(x, p); }));
         return t;
       }},
      {"fourier", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         CheckOptions opt;
         opt.tol = c.tol.value_or(1e-6);
         std::vector<SuiteTask> t;
         for (int v = 1; v <= 4; ++v)
           for (double r : {-1.0, 0.0, 0.5})
             t.push_back(guarded("fourier", {{"r", r}, {"variant", double(v)}},
                                 [=] { return check_fourier_gb(r, v, p, identity_config(), opt); }));
         return t;
       }},
      {"tau-beta", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         CheckOptions opt;
         opt.tol = c.tol.value_or(1e-6);
         std::vector<SuiteTask> t;
         for (const auto& a : detail::identity_grid("tau-beta", c, {0.4, 0.3}, 5))
           t.push_back(guarded("tau-beta", {{"alpha", a[0]}, {"beta", a[1]}},
                               [=] { return check_tau_beta(a[0], a[1], p, identity_config(), opt); }));
         return t;
       }},
      {"4-5", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         CheckOptions opt;
         opt.tol = c.tol.value_or(1e-6);
         std::vector<SuiteTask> t;
         for (const auto& a : detail::identity_grid("4-5", c, {0.3, 0.25, 0.2}, 5))
           t.push_back(guarded("4-5", {{"alpha", a[0]}, {"beta", a[1]}, {"gamma", a[2]}}, [=] {
             return check_45(a[0], a[1], a[2], p, identity_config(), opt);
           }));
         return t;
       }},
      {"6-9", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         CheckOptions opt;
         opt.tol = c.tol.value_or(1e-6);
         std::vector<SuiteTask> t;
         for (const auto& a : detail::identity_grid("6-9", c, {0.3, 0.2, 0.25, 0.15}, 5))
           t.push_back(guarded("6-9",
                               {{"alpha", a[0]}, {"beta", a[1]}, {"gamma", a[2]}, {"delta", a[3]}},
                               [=] { return check_69(a[0], a[1], a[2], a[3], p, identity_config(), opt); }));
         return t;
       }},
      {"3-2", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         CheckOptions opt;
         opt.tol = c.tol.value_or(1e-6);
         std::vector<SuiteTask> t;
         for (const auto& a : detail::identity_grid("3-2", c, {0.3, 0.3, 0.25}, 5))
           t.push_back(guarded("3-2", {{"alpha", a[0]}, {"beta", a[1]}, {"gamma", a[2]}}, [=] {
             return check_32(a[0], a[1], a[2], p, identity_config(), opt);
           }));
         return t;
       }},
      {"mellin-barnes", true,
       [](const SuiteContext& c) {
         const double tol = c.tol.value_or(1e-6);
         return std::vector<SuiteTask>{
             guarded("mb-first", {}, [=] { return check_mellin_barnes_first(1.2, 0.8, 0.5, identity_config(), tol); }),
             guarded("mb-second", {}, [=] {
               return check_mellin_barnes_second(0.6, 0.5, 0.4, 0.3, identity_config(), tol);
             })};
       }},
      {"principal-series", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         static const char* names[] = {"principal-K0-central", "principal-KE", "principal-KF",
                                       "principal-EF"};
         for (double lam : {0.0, 0.4, 1.1})
           for (double tt : {0.0, 0.7})
             for (int rel = 0; rel < 4; ++rel)
               t.push_back(guarded(names[rel], {{"lambda", lam}, {"t", tt}}, [=] {
                 const auto r = principal_relation_residuals(lam, tt, detail::principal_test_function(),
                                                             detail::principal_points(), p);
                 return detail::residual_report(names[rel], {{"lambda", lam}, {"t", tt}}, r[rel], 1e-10);
               }));
         return t;
       }},
      {"casimir", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (double lam : {0.4, 0.9}) {
           t.push_back(guarded("casimir-variance", {{"lambda", lam}}, [=] {
             const auto e = casimir_apply(lam, 0.3, detail::principal_test_function(),
                                          detail::principal_points(), p);
             return detail::residual_report("casimir-variance", {{"lambda", lam}}, e.variance, 1e-10);
           }));
           t.push_back(guarded("casimir-scalar", {{"lambda", lam}}, [=] {
             const auto e = casimir_apply(lam, 0.3, detail::principal_test_function(),
                                          detail::principal_points(), p);
             const cplx want = casimir_eigenvalue(lam, p);
             IdentityReport r = detail::residual_report("casimir-scalar", {{"lambda", lam}},
                                                        std::abs(e.scalar - want) / std::abs(want), 1e-10);
             r.lhs = e.scalar;
             r.rhs = want;
             return r;
           }));
           t.push_back(guarded("casimir-even", {{"lambda", lam}}, [=] {
             const auto f = detail::principal_test_function();
             const auto pts = detail::principal_points();
             const cplx a = casimir_apply(lam, 0.3, f, pts, p).scalar;
             const cplx b = casimir_apply(-lam, 0.3, f, pts, p).scalar;
             IdentityReport r = detail::residual_report("casimir-even", {{"lambda", lam}},
                                                        std::abs(a - b) / std::abs(a), 1e-10);
             r.lhs = a;
             r.rhs = b;
             return r;
           }));
           t.push_back(guarded("casimir-t-independent", {{"lambda", lam}}, [=] {
             const auto f = detail::principal_test_function();
             const auto pts = detail::principal_points();
             const cplx a = casimir_apply(lam, 0.0, f, pts, p).scalar;
             const cplx b = casimir_apply(lam, 1.3, f, pts, p).scalar;
             IdentityReport r = detail::residual_report("casimir-t-independent", {{"lambda", lam}},
                                                        std::abs(a - b) / std::abs(a), 1e-10);
             r.lhs = a;
             r.rhs = b;
             return r;
           }));
         }
         return t;
       }},
      {"eigenfunction", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (double lam : {0.1, 0.5, 0.9, 1.3, 1.7})
           t.push_back(guarded("phi-eigen", {{"lambda", lam}}, [=] {
             double worst = 0;
             for (int k = 0; k < 20; ++k) worst = std::max(worst, phi_eigen_residual(lam, -1.93 + 0.2 * k, p));
             return detail::residual_report("phi-eigen", {{"lambda", lam}}, worst, 1e-8);
           }));
         return t;
       }},
      {"plancherel", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (int k = 1; k <= 20; ++k) {
           const double lam = 0.1 * k;
           t.push_back(guarded("plancherel", {{"lambda", lam}}, [=] {
             const double lhs = plancherel_from_sb(lam, p), rhs = plancherel_density(lam, p);
             IdentityReport r = detail::residual_report("plancherel", {{"lambda", lam}},
                                                        std::abs(lhs - rhs) / rhs, 1e-8);
             r.lhs = lhs;
             r.rhs = rhs;
             return r;
           }));
         }
         return t;
       }},
      {"intertwiner", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (double lam : {0.3, 0.8})
           t.push_back(guarded("intertwiner", {{"lambda", lam}}, [=] {
             const double r = intertwiner_residual(lam, 0.2, detail::principal_test_function(),
                                                   detail::principal_points(), p);
             return detail::residual_report("intertwiner", {{"lambda", lam}}, r, 1e-10);
           }));
         return t;
       }},
      {"regular", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         static const char* names[] = {"K0-central", "KE", "KF", "EF"};
         for (auto side : {RegularSide::left, RegularSide::right})
           for (int rel = 0; rel < 4; ++rel) {
             const std::string nm = std::string(side == RegularSide::left ? "regular-left-" : "regular-right-") + names[rel];
             t.push_back(guarded(nm, {}, [=] {
               const auto r = regular_relation_residuals(side, detail::regular_test_function(),
                                                         detail::regular_points(), p);
               return detail::residual_report(nm, {}, r[rel], 1e-10);
             }));
           }
         t.push_back(guarded("regular-left-right-commute", {}, [=] {
           const double r = regular_commutation_residual(detail::regular_test_function(),
                                                         detail::regular_points(), p);
           return detail::residual_report("regular-left-right-commute", {}, r, 1e-10);
         }));
         return t;
       }},
      {"minkowski", true,
       [](const SuiteContext&) {
         std::vector<SuiteTask> t;
         for (const auto& ck : minkowski_checks())
           t.push_back([ck] { return detail::exact_check_report("minkowski", ck); });
         return t;
       }},
      {"coproduct", true,
       [](const SuiteContext&) {
         std::vector<SuiteTask> t;
         for (const auto& ck : coproduct_checks())
           t.push_back([ck] { return detail::exact_check_report("coproduct", ck); });
         return t;
       }},
      {"pairing", true,
       [](const SuiteContext&) {
         std::vector<SuiteTask> t;
         for (int l = 0; l <= 3; ++l)
           for (int m = 0; m <= 3; ++m)
             for (int n = 0; n <= 3; ++n)
               t.push_back([=] {
                 int bad = 0;
                 for (int l0 = -1; l0 <= 1; ++l0)
                   for (int Lp = 0; Lp <= 2; ++Lp)
                     for (int dL = 0; dL <= 2; ++dL)
                       for (int mp : {m, m + 1}) {
                         const int L = n + Lp + dL;
                         const QCoeff o = pairing_inductive_oracle(u_monomial(l0, l, m, n),
                                                                   plane_monomial(L, mp, n, Lp));
                         bad += o != pairing_monomial_derived(l, m, n, l0, L, mp, n, Lp);
                       }
                 return detail::residual_report(
                     "pairing-derived-vs-oracle",
                     {{"l", double(l)}, {"m", double(m)}, {"n", double(n)}}, double(bad), 0.5);
               });
         return t;
       }},
      {"factorial-substitution", true,
       [](const SuiteContext& c) {
         const BParams p = c.params;
         std::vector<SuiteTask> t;
         for (int n = 1; n <= 3; ++n)
           t.push_back(guarded("factorial-substitution", {{"n", double(n)}}, [=] {
             const auto r = check_factorial_substitution(n, p);
             IdentityReport rep = detail::residual_report("factorial-substitution",
                                                          {{"n", double(n)}}, r.rel_err, 1e-8);
             rep.lhs = r.value;
             rep.rhs = r.expected;
             return rep;
           }));
         return t;
       }},
      // Selectable by name only.
      {"pairing-published", false,
       [](const SuiteContext&) {
         std::vector<SuiteTask> t;
         for (int l = 0; l <= 3; ++l)
           for (int m = 0; m <= 3; ++m)
             for (int n = 0; n <= 3; ++n)
               t.push_back([=] {
                 int bad = 0;
                 for (int Lp = 0; Lp <= 2; ++Lp)
                   for (int dL = 0; dL <= 2; ++dL) {
                     const int L = n + Lp + dL;
                     bad += pairing_inductive_oracle(u_monomial(0, l, m, n), plane_monomial(L, m, n, Lp)) !=
                            pairing_monomial(l, m, n, 0, L, m, n, Lp);
                   }
                 return detail::residual_report(
                     "pairing-published-vs-oracle",
                     {{"l", double(l)}, {"m", double(m)}, {"n", double(n)}}, double(bad), 0.5);
               });
         return t;
       }},
      {"barnes", false,
       [](const SuiteContext&) {
         const std::vector<double> bl{0.35, 0.25};
         return std::vector<SuiteTask>{
             guarded("barnes-first", {}, [=] { return check_barnes_first(1.2, 0.8, 0.5, bl).summary; }),
             guarded("barnes-second", {}, [=] { return check_barnes_second(0.6, 0.5, 0.4, 0.3, bl).summary; })};
       }},
      {"classical-limit", false,
       [](const SuiteContext&) {
         std::vector<SuiteTask> t;
         for (cplx x : {cplx(1.3), cplx(2.6, 0.4)})
           t.push_back(guarded("classical-limit", {{"x", x}}, [=] {
             const auto rows = classical_limit_probe(x, {0.35, 0.25, 0.18});
             bool dec = true;
             for (std::size_t i = 1; i < rows.size(); ++i) dec = dec && rows[i].deviation < rows[i - 1].deviation;
             IdentityReport r = detail::residual_report("classical-limit", {{"x", x}},
                                                        rows.back().deviation, 1e-2);
             r.lhs = rows.back().ratio;
             r.rhs = gamma_c(x);
             r.pass = r.pass && dec;
             return r;
           }));
         return t;
       }},
  };
  return reg;
}

inline std::vector<std::string> suite_names(bool only_all = false) {
  std::vector<std::string> v;
  for (const auto& s : suite_registry())
    if (!only_all || s.in_all) v.push_back(s.name);
  return v;
}

/// Representation probes at a single (λ, t): relations, Casimir scalar and
/// spread, eigen-equation of Φ_λ on a short x grid and the spectral density.
inline std::vector<IdentityReport> casimir_probe_reports(double lambda, double t, const BParams& p,
                                                         double tol = 1e-10) {
  const auto f = detail::principal_test_function();
  const auto pts = detail::principal_points();
  const std::map<std::string, cplx> at{{"lambda", lambda}, {"t", t}};
  std::vector<IdentityReport> out;
  static const char* names[] = {"principal-K0-central", "principal-KE", "principal-KF", "principal-EF"};
  const auto rel = principal_relation_residuals(lambda, t, f, pts, p);
  for (int k = 0; k < 4; ++k) out.push_back(detail::residual_report(names[k], at, rel[k], tol));

  const auto est = casimir_apply(lambda, t, f, pts, p);
  const cplx want = casimir_eigenvalue(lambda, p);
  IdentityReport sc = detail::residual_report("casimir-scalar", at, std::abs(est.scalar - want) / std::abs(want), tol);
  sc.lhs = est.scalar;
  sc.rhs = want;
  out.push_back(sc);
  out.push_back(detail::residual_report("casimir-variance", at, est.variance, tol));

  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const double x = -1.93 + 0.2 * k;
    if (std::abs(std::abs(x) - std::abs(lambda)) < 1e-3) continue;  // Φ_λ is singular at x = ±λ
    worst = std::max(worst, phi_eigen_residual(lambda, x, p));
  }
  out.push_back(detail::residual_report("phi-eigen", {{"lambda", lambda}}, worst, 1e-8));

  if (lambda > 0) {
    const double lhs = plancherel_from_sb(lambda, p), rhs = plancherel_density(lambda, p);
    IdentityReport pl = detail::residual_report("plancherel", {{"lambda", lambda}}, std::abs(lhs - rhs) / rhs, 1e-8);
    pl.lhs = lhs;
    pl.rhs = rhs;
    out.push_back(pl);
  }
  return out;
}

/// Canonical text of a parameter map, used as the secondary sort key.
inline std::string params_key(const std::map<std::string, cplx>& params) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [k, v] : params) os << k << '=' << v.real() << ',' << v.imag() << ';';
  return os.str();
}

inline void sort_reports(std::vector<IdentityReport>& reps) {
  std::stable_sort(reps.begin(), reps.end(), [](const IdentityReport& a, const IdentityReport& b) {
    if (a.name != b.name) return a.name < b.name;
    return params_key(a.params) < params_key(b.params);
  });
}

/// Worker count: QDILOG_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QDILOG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = std::min<unsigned>(n, unsigned(v));
  }
  return n;
}

/// Runs the selected suites ("all" expands to every suite flagged for it).
inline std::vector<IdentityReport> run_suites(const std::vector<std::string>& names,
                                              const SuiteContext& ctx,
                                              unsigned threads = worker_count()) {
  std::vector<std::string> chosen;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& s : suite_names(true)) chosen.push_back(s);
      continue;
    }
    bool found = false;
    for (const auto& s : suite_registry()) found = found || s.name == n;
    if (!found) throw DomainError("unknown suite '" + n + "'");
    chosen.push_back(n);
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  std::vector<SuiteTask> tasks;
  for (const auto& s : suite_registry())
    if (std::find(chosen.begin(), chosen.end(), s.name) != chosen.end())
      for (auto& t : s.expand(ctx)) tasks.push_back(std::move(t));

  std::vector<IdentityReport> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = tasks[i]();
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::max(1u, threads); ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  sort_reports(out);
  return out;
}

}  // namespace qdilog
