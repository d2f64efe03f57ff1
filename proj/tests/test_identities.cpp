#include <gtest/gtest.h>

#include <cmath>

#include "qdilog/identities.hpp"

using namespace qdilog;

namespace {

const BParams P = make_params(0.775);
const double Q = P.Q;

void expect_pass(const IdentityReport& r) {
  EXPECT_TRUE(r.pass) << r.name << " rel_err " << r.rel_err;
  EXPECT_LT(r.rel_err, 1e-6) << r.name;
}

}  // namespace

TEST(Fourier, CentralValues) {
  const auto v1 = check_fourier_gb(0.0, 1, P);
  expect_pass(v1);
  EXPECT_LT(std::abs(v1.rhs - std::conj(P.zeta) * std::exp(I * pi * Q * Q / 8.0)), 1e-13);
  const auto v2 = check_fourier_gb(0.0, 2, P);
  expect_pass(v2);
  EXPECT_LT(std::abs(v2.rhs - P.zeta * std::exp(-I * pi * Q * Q / 8.0)), 1e-13);
  expect_pass(check_fourier_gb(0.5, 3, P));
}

TEST(Fourier, AllVariantsOnGrid) {
  for (int v = 1; v <= 4; ++v)
    for (double r : {-1.0, 0.0, 0.5}) expect_pass(check_fourier_gb(r, v, P));
  EXPECT_THROW(check_fourier_gb(0.0, 5, P), DomainError);
}

TEST(QBinomial, ResidueNormalisedLimitAtZero) {
  const cplx t(0.6, 0.3);
  std::vector<cplx> v;
  for (double e : {1e-3, 1e-4}) v.push_back(-2 * pi * (I * e) * qbinom_coeff(t, I * e, P));
  EXPECT_NEAR(std::abs(richardson(v, 10.0, 1) - 1.0), 0.0, 1e-5);
}

TEST(QBinomial, SymmetricUnderComplement) {
  const cplx t(0.6, 0.3), tau(0.2, -0.4);
  EXPECT_NEAR(std::abs(qbinom_coeff(t, tau, P) - qbinom_coeff(t, t - tau, P)) /
                  std::abs(qbinom_coeff(t, tau, P)),
              0.0, 1e-13);
}

TEST(QBinomial, OneQuantumStep) {
  const cplx t(0.6, 0.3), tau = I * P.b * 0.5;
  const cplx ratio = qbinom_coeff(t + P.b, tau, P) / qbinom_coeff(t, tau, P);
  const cplx expect = detail::one_minus_exp(2.0 * pi * I * P.b * (-t - P.b)) /
                      detail::one_minus_exp(2.0 * pi * I * P.b * (tau - t - P.b));
  EXPECT_NEAR(std::abs(ratio - expect) / std::abs(expect), 0.0, 1e-12);
}

TEST(QBinomial, PoleHit) { EXPECT_THROW(qbinom_coeff(0.5, 0.5, P), PoleHit); }

TEST(TauBeta, BasePointAndSwap) {
  const auto a = check_tau_beta(0.4 * Q, 0.3 * Q, P);
  expect_pass(a);
  const auto b = check_tau_beta(0.3 * Q, 0.4 * Q, P);
  expect_pass(b);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 2e-6);
}

TEST(TauBeta, ConvergenceViolation) {
  EXPECT_THROW(check_tau_beta(0.4 * Q, -0.1, P), ConvergenceViolation);
  EXPECT_THROW(check_tau_beta(0.6 * Q, 0.5 * Q, P), ConvergenceViolation);
}

TEST(TauBeta, HeightIndependence) {
  CheckOptions lo, hi;
  lo.height_fraction = 0.25;
  hi.height_fraction = 0.75;
  const auto a = check_tau_beta(0.4 * Q, 0.3 * Q, P, identity_config(), lo);
  const auto b = check_tau_beta(0.4 * Q, 0.3 * Q, P, identity_config(), hi);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 1e-9);
}

TEST(TauBeta, StableUnderTighterTolerance) {
  QuadratureConfig c = identity_config();
  c.abs_tol /= 2;
  expect_pass(check_tau_beta(0.4 * Q, 0.3 * Q, P, c));
}

TEST(FourFive, BasePointAndSwap) {
  const auto a = check_45(0.3 * Q, 0.25 * Q, 0.2 * Q, P);
  expect_pass(a);
  const auto b = check_45(0.25 * Q, 0.3 * Q, 0.2 * Q, P);
  expect_pass(b);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 2e-6);
  EXPECT_LT(std::abs(a.rhs - b.rhs), 1e-12);
  EXPECT_THROW(check_45(0.3 * Q, 0.25 * Q, -0.05, P), ConvergenceViolation);
}

TEST(FourFive, HeightIndependence) {
  CheckOptions lo, hi;
  lo.height_fraction = 0.3;
  hi.height_fraction = 0.7;
  const auto a = check_45(0.3 * Q, 0.25 * Q, 0.2 * Q, P, identity_config(), lo);
  const auto b = check_45(0.3 * Q, 0.25 * Q, 0.2 * Q, P, identity_config(), hi);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 1e-9);
}

TEST(SixNine, BasePoint) {
  expect_pass(check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, 0.15 * Q, P));
}

TEST(SixNine, PinchedWhenBandIsEmpty) {
  EXPECT_THROW(check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, -0.5 * Q, P), PinchedContour);
}

TEST(SixNine, ContinuousAsDeltaShrinks) {
  IdentityReport prev = check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, 0.08 * Q, P);
  expect_pass(prev);
  for (double d : {0.04, 0.02}) {
    const auto r = check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, d * Q, P);
    expect_pass(r);
    EXPECT_LT(std::abs(r.lhs - prev.lhs) / std::abs(prev.lhs), 0.5) << d;
    prev = r;
  }
}

TEST(SixNine, HeightIndependence) {
  CheckOptions lo, hi;
  lo.height_fraction = 0.3;
  hi.height_fraction = 0.7;
  const auto a = check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, 0.15 * Q, P, identity_config(), lo);
  const auto b = check_69(0.3 * Q, 0.2 * Q, 0.25 * Q, 0.15 * Q, P, identity_config(), hi);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 1e-9);
}

TEST(ThreeTwo, BasePointSwapAndViolation) {
  const auto a = check_32(0.3 * Q, 0.3 * Q, 0.25 * Q, P);
  expect_pass(a);
  const auto b = check_32(0.3 * Q, 0.25 * Q, 0.3 * Q, P);
  expect_pass(b);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 2e-6);
  EXPECT_THROW(check_32(0.9 * Q, 0.15 * Q, 0.15 * Q, P), ConvergenceViolation);
}

TEST(ThreeTwo, HeightIndependence) {
  CheckOptions lo, hi;
  lo.height_fraction = 0.3;
  hi.height_fraction = 0.7;
  const auto a = check_32(0.3 * Q, 0.3 * Q, 0.25 * Q, P, identity_config(), lo);
  const auto b = check_32(0.3 * Q, 0.3 * Q, 0.25 * Q, P, identity_config(), hi);
  EXPECT_LT(std::abs(a.lhs - b.lhs), 1e-9);
}

TEST(Barnes, GammaSideValue) {
  const auto r = check_barnes_first(1.0, 1.0, 1.0, {0.35});
  EXPECT_NEAR(std::abs(r.summary.rhs - 0.5), 0.0, 1e-13);
}

TEST(Barnes, DeviationShrinksWithB) {
  const auto first = check_barnes_first(1.2, 0.8, 0.5, {0.35, 0.25});
  ASSERT_EQ(first.rows.size(), 2u);
  EXPECT_TRUE(first.decreasing);
  const auto second = check_barnes_second(0.6, 0.5, 0.4, 0.3, {0.35, 0.25});
  ASSERT_EQ(second.rows.size(), 2u);
  EXPECT_TRUE(second.decreasing);
}

TEST(MellinBarnes, ClassicalOracles) {
  expect_pass(check_mellin_barnes_first(1.2, 0.8, 0.5));
  expect_pass(check_mellin_barnes_second(0.6, 0.5, 0.4, 0.3));
}

TEST(Delta, GaussianVariantOne) {
  const auto r = delta_limit_probe(w_gaussian(1.0), {0.00625, 0.003125, 0.0015625}, 1, P);
  EXPECT_NEAR(std::abs(r.extrapolated - 1.0), 0.0, 1e-3);
}

TEST(Delta, OddFunctionVanishes) {
  const auto r = delta_limit_probe(w_gaussian(1.0, 0.0, 1.0, 1), {0.00625, 0.003125, 0.0015625}, 1, P);
  EXPECT_NEAR(std::abs(r.extrapolated), 0.0, 1e-3);
}

TEST(Delta, ShiftedVariantThree) {
  const auto f = w_gaussian(1.0, 1.0);
  const auto r = delta_limit_probe(f, {0.00625, 0.003125, 0.0015625}, 3, P);
  const cplx target = -P.q * P.q + std::exp(-(-I * P.b) * (-I * P.b) - I * P.b);
  EXPECT_NEAR(std::abs(r.target - target), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(r.extrapolated - target), 0.0, 5e-3);
}

TEST(Delta, RejectsBadLadders) {
  EXPECT_THROW(delta_limit_probe(w_gaussian(1.0), {0.1, 0.2}, 1, P), DomainError);
  EXPECT_THROW(delta_limit_probe(w_gaussian(1.0), {0.1}, 4, P), DomainError);
  EXPECT_THROW(delta_limit_probe(w_gaussian(1.0), {0.5}, 3, P), DomainError);
}
