#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdilog/special.hpp"

using namespace qdilog;

namespace {

const BParams P = make_params(0.775);
const double Q = P.Q;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Fb, SymmetricInAlphaBeta) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.15, 0.35), zr(-2.0, -0.2), zi(-0.5, 0.5);
  for (int k = 0; k < 10; ++k) {
    const cplx a = u(rng) * Q, b = u(rng) * Q, g = (0.5 + u(rng)) * Q, z(zr(rng), zi(rng));
    EXPECT_LT(rel(eval_Fb({a, b, g, z}, P), eval_Fb({b, a, g, z}, P)), 1e-9) << a << b << g << z;
  }
}

TEST(Fb, HeightRobustness) {
  const FbArgs a{0.3 * Q, 0.25 * Q, 0.7 * Q, -0.5};
  const auto lo = eval_Fb_detail(a, P, identity_config(), 0.3);
  const auto hi = eval_Fb_detail(a, P, identity_config(), 0.7);
  EXPECT_LT(std::abs(lo.value - hi.value), 2e-6);
}

TEST(Fb, ApproachesOneAtOrigin) {
  std::vector<double> dev;
  for (double z : {-1e-2, -1e-3, -1e-4}) dev.push_back(std::abs(eval_Fb({0.3 * Q, 0.25 * Q, 0.7 * Q, z}, P) - 1.0));
  EXPECT_GT(dev[0], dev[1]);
  EXPECT_GT(dev[1], dev[2]);
  EXPECT_LT(dev[2], 2e-3);
}

TEST(Fb, Errors) {
  EXPECT_THROW(eval_Fb({0.3 * Q, 0.25 * Q, 0.7 * Q, 0.5}, P), BranchCut);
  EXPECT_THROW(eval_Fb({0.3 * Q, 0.3 * Q, 0.0, -0.5}, P), ConvergenceViolation);
}

TEST(Fb, SharesIntegrandWithFourFive) {
  // Replacing e^{iπτ²}(−z)^{iτ/b} by e^{−2πγ′τ} turns the F_b integrand into the 4-5 one,
  // up to the reflection factor of G_b(−iτ).
  const cplx a = 0.3 * Q, b = 0.25 * Q, g = 0.7 * Q;
  for (cplx tau : {cplx(0.3, 0.1), cplx(-0.7, 0.05), cplx(1.2, 0.2)}) {
    const cplx lhs = fb_integrand_core(a, b, g, tau, P) * std::exp(I * pi * tau * tau + pi * Q * tau);
    const cplx rhs = integrand_45_core(a, b, g - a - b, tau, P);
    EXPECT_LT(rel(lhs, rhs), 1e-10) << tau;
  }
}

TEST(TKernel, GroupingsAgree) {
  const TKernelArgs args{0.0, 0.0, 0.0, 0.0};
  const cplx tau(0, 0.1);
  const TKernel k = eval_T_kernel(args, tau, P);
  EXPECT_TRUE(std::isfinite(std::abs(k.value)));
  EXPECT_LT(rel(k.value, eval_T_kernel_binomial(args, tau, P)), 1e-9);
}

TEST(TKernel, GroupingsAgreeAtGenericPoints) {
  for (const TKernelArgs& a : {TKernelArgs{0.4, 0.1, 0.3, -0.2}, TKernelArgs{1.1, -0.5, 0.7, 0.25}}) {
    for (cplx tau : {cplx(0.2, 0.1), cplx(-0.4, 0.15)})
      EXPECT_LT(rel(eval_T_kernel(a, tau, P).value, eval_T_kernel_binomial(a, tau, P)), 1e-10);
  }
}

TEST(TKernel, ExponentLabels) {
  const TKernelArgs a{0.9, 0.4, 0.3, -0.2};
  const cplx tau(0.15, 0.05);
  const auto k = eval_T_kernel(a, tau, P);
  const cplx ib = I / P.b;
  EXPECT_EQ(k.exponents[0], ib * (a.t - a.s));
  EXPECT_EQ(k.exponents[1], ib * (a.s + tau));
  EXPECT_EQ(k.exponents[2], ib * (a.alpha_out + tau));
  EXPECT_EQ(k.exponents[3], ib * (a.t - tau));
}

TEST(TKernel, PhaseTrivialWhenTEqualsLambda) {
  // With t = λ only the e^{πQ(s+τ)} part of the phase survives.
  const TKernelArgs a{0.6, 0.6, 0.2, 0.1};
  const cplx tau(0.1, 0.05);
  const cplx k = eval_T_kernel(a, tau, P).value;
  const cplx bare = eval_T_kernel_binomial(a, tau, P) / std::exp(pi * Q * (a.s + tau));
  const cplx g = qbinom_coeff(-Q / 2 + I * a.lambda + I * a.alpha_out, I * tau + I * a.alpha_out, P) *
                 qbinom_coeff(-Q / 2 + I * a.lambda + I * tau, I * a.s + I * tau, P);
  EXPECT_LT(rel(bare, g), 1e-12);
  EXPECT_LT(rel(k, g * std::exp(pi * Q * (a.s + tau))), 1e-10);
}
