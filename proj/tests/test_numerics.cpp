#include <gtest/gtest.h>

#include <cmath>

#include "qdilog/numerics.hpp"
#include "qdilog/qdilog.hpp"

using namespace qdilog;

namespace {

QuadratureConfig tight() {
  QuadratureConfig c;
  c.abs_tol = 1e-14;
  c.rel_tol = 1e-13;
  return c;
}

}  // namespace

TEST(Contour, GaussianOnRealLine) {
  QuadratureConfig c = tight();
  c.tail_policy = TailPolicy::analytic;
  auto f = [](cplx t) { return std::exp(-pi * t * t); };
  const auto r = integrate_contour(f, IndentedContour::line(0.0, -6, 6), c);
  EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.err_estimate, std::max(c.abs_tol, c.rel_tol * std::abs(r.value)));
}

TEST(Contour, GaussianWithTailRays) {
  auto f = [](cplx t) { return std::exp(-t * t); };
  const auto r = integrate_contour(f, IndentedContour::line(0.0, -1, 1), tight());
  EXPECT_NEAR(std::abs(r.value - std::sqrt(pi)), 0.0, 1e-12);
}

TEST(Contour, ShiftedLineIsCauchyInvariant) {
  auto f = [](cplx t) { return std::exp(-t * t + 0.3 * t); };
  const auto a = integrate_contour(f, IndentedContour::line(0.0, -3, 3), tight());
  const auto b = integrate_contour(f, IndentedContour::line(0.7, -3, 3), tight());
  EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a.value - std::sqrt(pi) * std::exp(0.0225)), 0.0, 1e-12);
}

TEST(Contour, HalfResidueAbovePole) {
  QuadratureConfig c = tight();
  c.tail_policy = TailPolicy::analytic;
  auto f = [](cplx t) { return 1.0 / t; };
  auto contour = IndentedContour::line(0.0, -4, 4);
  contour.indent(0.0, 0.1, Side::above);
  const auto r = integrate_contour(f, contour, c);
  EXPECT_NEAR(std::abs(r.value - cplx(0, -pi)), 0.0, 1e-10);
}

TEST(Contour, HalfResidueBelowPole) {
  QuadratureConfig c = tight();
  c.tail_policy = TailPolicy::analytic;
  auto f = [](cplx t) { return 1.0 / t; };
  auto contour = IndentedContour::line(0.0, -4, 4);
  contour.indent(0.0, 0.1, Side::below);
  const auto r = integrate_contour(f, contour, c);
  EXPECT_NEAR(std::abs(r.value - cplx(0, pi)), 0.0, 1e-10);
}

TEST(Contour, RejectsBadContours) {
  QuadratureConfig c;
  auto f = [](cplx t) { return t; };
  auto overlap = IndentedContour::line(0.0);
  overlap.indent(0.0, 0.3, Side::above).indent(0.5, 0.3, Side::below);
  EXPECT_THROW(integrate_contour(f, overlap, c), BadContour);

  auto off_line = IndentedContour::line(0.0);
  off_line.indent(cplx(0, 0.1), 0.05, Side::above);
  EXPECT_THROW(integrate_contour(f, off_line, c), BadContour);

  auto outside = IndentedContour::line(0.0, -1, 1);
  outside.indent(0.95, 0.1, Side::above);
  EXPECT_THROW(integrate_contour(f, outside, c), BadContour);

  EXPECT_THROW(integrate_contour(f, IndentedContour::line(0.0, 1, -1), c), BadContour);
}

TEST(Contour, RejectsBadConfig) {
  QuadratureConfig c;
  c.abs_tol = 0;
  EXPECT_THROW(integrate_contour([](cplx t) { return t; }, IndentedContour::line(0.0), c),
               DomainError);
  c = QuadratureConfig{};
  c.max_subdivisions = 0;
  EXPECT_THROW(integrate_contour([](cplx t) { return t; }, IndentedContour::line(0.0), c),
               DomainError);
}

TEST(SemiInfinite, ExponentialDecay) {
  auto f = [](double y) -> cplx { return std::exp(-y); };
  const auto r = semiinfinite_integrate(f, 40.0, [](double) { return cplx(0); }, tight());
  EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-12);
}

TEST(SemiInfinite, AnalyticTailIsAdded) {
  // ∫₀^∞ e^{−y} dy split at Y = 2 with the exact tail e^{−2}.
  auto f = [](double y) -> cplx { return std::exp(-y); };
  const auto r = semiinfinite_integrate(f, 2.0, [](double Y) { return cplx(std::exp(-Y)); }, tight());
  EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-13);
}

TEST(Ruijsenaars, VanishesAtOrigin) {
  const auto r = ruijsenaars_integral(cplx(0), 0.775, 1 / 0.775, function_config());
  EXPECT_EQ(r.value, cplx(0));
}

TEST(Ruijsenaars, MatchesEvalGb) {
  const BParams p = make_params(0.775);
  const cplx w(0, 0.2);
  const cplx logG = ruijsenaars_integral(w, p.b, 1 / p.b, function_config()).value;
  // G_b(x) = e^{(iπ/2)x(x−Q)} G(b, b⁻¹; ix − iQ/2), so w = 0.2i is x = Q/2 + 0.2.
  const cplx x = p.Q / 2 + 0.2;
  const cplx expect = eval_Gb(x, p) * std::exp(-I * (pi / 2) * x * (x - p.Q));
  EXPECT_NEAR(std::abs(std::exp(I * logG) - expect), 0.0, 1e-10);
}

TEST(Ruijsenaars, RejectsStripViolation) {
  EXPECT_THROW(ruijsenaars_integral(cplx(0, 2.0), 0.775, 1 / 0.775, function_config()),
               StripViolation);
}

TEST(Gamma, MatchesFactorialsAndReflection) {
  EXPECT_NEAR(std::abs(gamma_c(5.0) - 24.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gamma_c(0.5) - std::sqrt(pi)), 0.0, 1e-14);
  const cplx z(0.3, 1.7);
  EXPECT_NEAR(std::abs(gamma_c(z) * gamma_c(1.0 - z) - pi / std::sin(pi * z)) /
                  std::abs(pi / std::sin(pi * z)),
              0.0, 1e-13);
  EXPECT_NEAR(std::abs(gamma_c(z + 1.0) - z * gamma_c(z)) / std::abs(gamma_c(z + 1.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(gamma_c(-1.5) - 4 * std::sqrt(pi) / 3), 0.0, 1e-12);
}

TEST(Mellin, ExponentialGivesGamma) {
  auto f = [](double x) -> cplx { return std::exp(-x); };
  const cplx v = mellin_transform(f, 2.0, {0.0, 1e300}, tight());
  EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-10);
  const cplx s(1.5, 0.7);
  EXPECT_NEAR(std::abs(mellin_transform(f, s, {0.0, 1e300}, tight()) - gamma_c(s)), 0.0, 1e-10);
}

TEST(Mellin, OutOfStrip) {
  auto f = [](double x) -> cplx { return std::exp(-x); };
  EXPECT_THROW(mellin_transform(f, cplx(-0.5, 0), {0.0, 1e300}, tight()), OutOfStrip);
}

TEST(Mellin, ParsevalResidual) {
  auto f = [](double x) -> cplx { return std::exp(-x); };
  EXPECT_LT(parseval_residual(f, {0.0, 1e300}, tight()), 1e-6);
}

TEST(Richardson, RemovesLeadingOrders) {
  // f(h) = 1 + h + h² sampled at h = 0.1, 0.05, 0.025.
  std::vector<cplx> v;
  for (double h : {0.1, 0.05, 0.025}) v.push_back(1.0 + h + h * h);
  EXPECT_NEAR(std::abs(richardson(v, 2.0, 1) - 1.0), 0.0, 1e-14);
  EXPECT_THROW(richardson({}, 2.0, 1), DomainError);
}
