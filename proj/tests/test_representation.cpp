#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdilog/representation.hpp"

using namespace qdilog;

namespace {

const BParams P = make_params(0.775);

cplx at(const WFunction1& f, cplx s) { return f(std::array<cplx, 1>{s}); }

const std::vector<double> kPoints{-1.5, 0.0, 0.7, 2.1};

}  // namespace

TEST(WClass, ClosedUnderOperations) {
  const WFunction1 f = w_gaussian(1.0, 0.3) + w_gaussian(cplx(0.5, 0.2), 0.0, 2.0, 2);
  const cplx s(0.4, -0.3);
  EXPECT_NEAR(std::abs(at(f.shifted(0, cplx(0.1, 0.2)), s) - at(f, s + cplx(0.1, 0.2))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(at(f.times_exp(0, 0.7), s) - std::exp(0.7 * s) * at(f, s)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(at(f.times_power(0, 3), s) - s * s * s * at(f, s)), 0.0, 1e-14);
  EXPECT_THROW(w_gaussian(-1.0), DomainError);
}

TEST(Principal, KIsMultiplication) {
  const WFunction1 f = w_gaussian(1.0, 0.2);
  const WFunction1 Kf = apply_generator(Generator::K, 0.4, 0.0, f, P);
  ASSERT_EQ(Kf.terms().size(), f.terms().size());
  EXPECT_NEAR(std::abs(Kf.terms()[0].beta[0] - (f.terms()[0].beta[0] - pi * P.b)), 0.0, 1e-15);
  for (double s : kPoints) EXPECT_NEAR(std::abs(at(Kf, s) - std::exp(-pi * P.b * s) * at(f, s)), 0.0, 1e-14);
}

TEST(Principal, KEandKFRatios) {
  const WFunction1 f = w_gaussian(1.0);
  for (double s : {-1.0, 0.3, 2.0}) {
    const cplx ke = at(apply_generator(Generator::K, 0.4, 0, apply_generator(Generator::E, 0.4, 0, f, P), P), s);
    const cplx ek = at(apply_generator(Generator::E, 0.4, 0, apply_generator(Generator::K, 0.4, 0, f, P), P), s);
    EXPECT_NEAR(std::abs(ke / ek - P.q), 0.0, 1e-12) << s;
    const cplx kf = at(apply_generator(Generator::K, 0.4, 0, apply_generator(Generator::F, 0.4, 0, f, P), P), s);
    const cplx fk = at(apply_generator(Generator::F, 0.4, 0, apply_generator(Generator::K, 0.4, 0, f, P), P), s);
    EXPECT_NEAR(std::abs(kf / fk - 1.0 / P.q), 0.0, 1e-12) << s;
  }
}

TEST(Principal, K0IsScalar) {
  const WFunction1 f = w_gaussian(1.0, 0.2);
  const double t = 0.9;
  for (double s : kPoints)
    EXPECT_NEAR(std::abs(at(apply_generator(Generator::K0, 0.4, t, f, P), s) - std::exp(pi * P.b * t) * at(f, s)),
                0.0, 1e-13);
}

TEST(Principal, SerreRelations) {
  const WFunction1 f = w_gaussian(1.0);
  for (double lam : {0.4, 0.0}) {
    const auto r = check_serre_relations(lam, 0.0, f, kPoints, P);
    EXPECT_TRUE(r.pass) << lam << " " << r.rel_err;
    for (double v : principal_relation_residuals(lam, 0.0, f, kPoints, P)) EXPECT_LT(v, 1e-10);
  }
}

TEST(Principal, SymbolicMatchesPointwiseComposition) {
  // E f(s) = i/(q−q⁻¹) (q^{1/2}e^{−πbλ}e^{πbs} + q^{−1/2}e^{πbλ}e^{−πbs}) f(s + ib).
  const WFunction1 f = w_gaussian(1.0, cplx(0.2, 0.1)) + w_gaussian(0.6, 0.0, 0.3, 1);
  const double lam = 0.7;
  const cplx sq = std::exp(I * pi * P.b * P.b / 2.0);
  const cplx pref = I / (P.q - 1.0 / P.q);
  const WFunction1 Ef = apply_generator(Generator::E, lam, 0.0, f, P);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const double s = u(rng);
    const cplx direct = pref * (sq * std::exp(-pi * P.b * lam + pi * P.b * s) +
                                std::exp(pi * P.b * lam - pi * P.b * s) / sq) *
                        at(f, s + I * P.b);
    EXPECT_NEAR(std::abs(at(Ef, s) - direct) / std::abs(direct), 0.0, 1e-12) << s;
  }
}

TEST(Principal, GeneratorsKeepGaussianDecay) {
  const WFunction1 f = w_gaussian(1.0, 0.2);
  for (Generator g : {Generator::E, Generator::F, Generator::K, Generator::K0})
    for (const auto& term : apply_generator(g, 0.3, 0.2, f, P).terms()) EXPECT_GT(term.alpha[0].real(), 0.0);
}

TEST(Casimir, ScalarActionForThreeFunctions) {
  std::vector<double> pts;
  for (int k = 0; k < 10; ++k) pts.push_back(-2.0 + 0.45 * k);
  const std::vector<WFunction1> fs{w_gaussian(1.0), w_gaussian(0.5, cplx(0.3, -0.2), 1.0, 1),
                                   w_gaussian(2.0, 0.4) + w_gaussian(0.8, -0.5, 0.3, 2)};
  for (const auto& f : fs) {
    const auto e = casimir_apply(0.4, 0.0, f, pts, P);
    EXPECT_LT(e.variance, 1e-10);
    EXPECT_NEAR(std::abs(e.scalar - casimir_eigenvalue(0.4, P)) / std::abs(e.scalar), 0.0, 1e-10);
  }
}

TEST(Casimir, EvenInLambdaAndIndependentOfT) {
  const WFunction1 f = w_gaussian(1.0, 0.1);
  const cplx a = casimir_apply(0.4, 0.0, f, kPoints, P).scalar;
  EXPECT_NEAR(std::abs(a - casimir_apply(-0.4, 0.0, f, kPoints, P).scalar) / std::abs(a), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(a - casimir_apply(0.4, 1.7, f, kPoints, P).scalar) / std::abs(a), 0.0, 1e-10);
}

TEST(Intertwiner, ConjugatesGenerators) {
  const WFunction1 f = w_gaussian(1.0, 0.2) + w_gaussian(0.7, cplx(-0.3, 0.4), cplx(0.5, 0.1), 1);
  for (double lam : {0.3, 0.8}) EXPECT_LT(intertwiner_residual(lam, 0.2, f, kPoints, P), 1e-10);
}

TEST(Phi, EvenInLambda) {
  for (cplx x : {cplx(0.3), cplx(-1.2, 0.05)})
    EXPECT_EQ(eval_Phi(0.7, x, P), eval_Phi(-0.7, x, P));
}

TEST(Phi, EigenEquation) {
  EXPECT_LT(phi_eigen_residual(0.5, 0.3, P), 1e-8);
  EXPECT_LT(phi_eigen_residual(0.0, 0.3, P), 1e-8);
  for (double lam : {0.1, 0.5, 0.9, 1.3, 1.7})
    for (int k = 0; k < 20; ++k) EXPECT_LT(phi_eigen_residual(lam, -1.93 + 0.2 * k, P), 1e-8) << lam;
}

TEST(Phi, PoleAtLambdaEqualsX) { EXPECT_THROW(eval_Phi(0.4, 0.4, P), PoleHit); }

TEST(Plancherel, ValuesAndMonotonicity) {
  EXPECT_EQ(plancherel_density(0.0, P), 0.0);
  EXPECT_THROW(plancherel_density(-0.1, P), DomainError);
  double prev = 0;
  for (int k = 1; k < 30; ++k) {
    const double v = plancherel_density(0.1 * k, P);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Plancherel, MatchesSbModulus) {
  for (double lam : {0.1, 0.7, 1.5, 2.0}) {
    const double sb = plancherel_from_sb(lam, P);
    EXPECT_NEAR((sb - plancherel_density(lam, P)) / sb, 0.0, 1e-8) << lam;
  }
}

TEST(Plancherel, DisplayedHalfArgumentFormDiffers) {
  const double lam = 0.7;
  const double half = 4 * std::sinh(pi * P.b * lam) * std::sinh(pi * lam / P.b);
  EXPECT_GT(std::abs(plancherel_from_sb(lam, P) - half) / half, 10.0);
}

TEST(Transform, IntertwinesCasimir) {
  const WFunction1 f = w_gaussian(1.0) + w_gaussian(1.0, 0.0, 0.5, 1);
  const WFunction1 Cf = casimir_position_operator(P).apply(f);
  auto fa = [&](cplx x) { return at(f, x); };
  auto ca = [&](cplx x) { return at(Cf, x); };
  for (double lam : {0.2, 0.6, 1.0, 1.5}) {
    const cplx lhs = transform_forward(ca, lam, P);
    const cplx rhs = 2 * std::cosh(2 * pi * P.b * lam) * transform_forward(fa, lam, P);
    EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-3) << lam;
  }
}

TEST(Transform, SmearedOrthogonality) {
  // Inverse transforms of two spectral bumps: their L² inner product equals the dμ inner product.
  const double sg = 0.1;
  auto bump = [sg](double c) { return [=](cplx l) { return std::exp(-(l - c) * (l - c) / (2 * sg * sg)); }; };
  const auto F1 = bump(0.5), F2 = bump(0.9);
  const double h = 0.1;
  std::vector<double> xs;
  for (double x = -8 + h / 2; x < 8; x += h) xs.push_back(x);
  const auto g1 = transform_inverse(F1, xs, P), g2 = transform_inverse(F2, xs, P);
  cplx ip = 0;
  double n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ip += g1[i] * std::conj(g2[i]) * h;
    n1 += std::norm(g1[i]) * h;
    n2 += std::norm(g2[i]) * h;
  }
  cplx dmu = 0;
  const double d = 1e-3;
  for (double l = d / 2; l < 3; l += d) dmu += F1(l) * std::conj(F2(l)) * plancherel_density(l, P) * d;
  EXPECT_NEAR(std::abs(ip - dmu) / std::sqrt(n1 * n2), 0.0, 1e-3);
  EXPECT_THROW(transform_inverse(F1, {0.0}, P), DomainError);
}

TEST(Regular, LeftRightRelationsAndCommutation) {
  const auto f = WFunction<4>::gaussian({1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
  const std::vector<std::array<cplx, 4>> pts{{0.1, 0.2, -0.3, 0.4}, {-0.5, 0.3, 0.2, 0.1}, {0.7, -0.4, 0.1, -0.2}};
  for (auto side : {RegularSide::left, RegularSide::right})
    for (double v : regular_relation_residuals(side, f, pts, P)) EXPECT_LT(v, 1e-10);
  EXPECT_LT(regular_commutation_residual(f, pts, P), 1e-10);
  const auto K0K = apply_regular_generator(Generator::K0, RegularSide::left,
                                           apply_regular_generator(Generator::K, RegularSide::left, f, P), P);
  const auto KK0 = apply_regular_generator(Generator::K, RegularSide::left,
                                           apply_regular_generator(Generator::K0, RegularSide::left, f, P), P);
  for (const auto& x : pts) EXPECT_NEAR(std::abs(K0K(x) - KK0(x)), 0.0, 1e-13);
}

TEST(Regular, EleftFrightCommute) {
  const auto f = WFunction<4>::gaussian({1.0, 1.0, 1.0, 1.0}, {0.1, -0.2, 0.15, 0.05});
  const auto a = apply_regular_generator(Generator::E, RegularSide::left,
                                         apply_regular_generator(Generator::F, RegularSide::right, f, P), P);
  const auto b = apply_regular_generator(Generator::F, RegularSide::right,
                                         apply_regular_generator(Generator::E, RegularSide::left, f, P), P);
  for (const auto& x : std::vector<std::array<cplx, 4>>{{0.1, 0.2, -0.3, 0.4}, {0.0, 0.6, -0.5, 0.3}})
    EXPECT_NEAR(std::abs(a(x) - b(x)) / std::abs(f(x)), 0.0, 1e-10);
}

TEST(DualProbe, KTildeIsMultiplication) {
  const WFunction1 f = w_gaussian(1.0, 0.2);
  const WFunction1 Kt = dual_generator_probe(Generator::K, 0.4, 0.0, f, P);
  for (double s : kPoints) EXPECT_NEAR(std::abs(at(Kt, s) - std::exp(-pi * s / P.b) * at(f, s)), 0.0, 1e-13);
  const ShiftOp1 K = principal_generator(Generator::K, 0.4, 0.0, P);
  const ShiftOp1 Kd = dual_generator(Generator::K, 0.4, 0.0, P);
  for (double s : kPoints) EXPECT_NEAR(std::abs(at((K * Kd).apply(f), s) - at((Kd * K).apply(f), s)), 0.0, 1e-13);
}

TEST(DualProbe, CrossCommutators) {
  // Measured: [Ẽ, F] vanishes and K̃ anticommutes with E.
  const WFunction1 f = w_gaussian(1.0);
  for (double lam : {0.0, 0.4}) {
    const ShiftOp1 Et = dual_generator(Generator::E, lam, 0.0, P), Kt = dual_generator(Generator::K, lam, 0.0, P);
    const ShiftOp1 E = principal_generator(Generator::E, lam, 0.0, P), F = principal_generator(Generator::F, lam, 0.0, P);
    for (double s : {-1.0, 0.3, 2.0}) {
      const double fs = std::abs(at(f, s));
      EXPECT_LT(std::abs(at((Et * F - F * Et).apply(f), s)) / fs, 1e-10) << s;
      EXPECT_LT(std::abs(at((Kt * E + E * Kt).apply(f), s)) / fs, 1e-10) << s;
    }
  }
}
