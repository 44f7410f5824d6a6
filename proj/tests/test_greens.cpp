#include "casimir/errors.hpp"
#include "casimir/greens.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace casimir;

TEST(GreenTensor, FarFieldIsTransverse) {
  const Vec3 r{0.0, 0.0, 5e6};
  const double w = 1.3;
  const double R = 5e6;
  const Tensor3 d = green_tensor_retarded(1.0, w, r);
  const cplx pref = w * w * std::exp(cplx{0.0, w * R}) / R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expected_shape = (i == j ? 1.0 : 0.0) - (i == 2 && j == 2 ? 1.0 : 0.0);
      EXPECT_NEAR(std::abs(d[i][j] - pref * expected_shape), 0.0, 1e-6 * std::abs(pref));
    }
  }
}

TEST(GreenTensor, SymmetricAndConjugateAdvanced) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const Vec3 r{u(rng), u(rng), u(rng) + 2.5};
    const cplx n{1.0 + 0.2 * std::abs(u(rng)), 0.05 * std::abs(u(rng))};
    const double w = 0.1 + std::abs(u(rng));
    const Tensor3 ret = green_tensor_retarded(n, w, r);
    const Tensor3 adv = green_tensor_advanced(n, w, r);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(ret[i][j], ret[j][i]);
        EXPECT_EQ(adv[i][j], std::conj(ret[i][j]));
      }
    }
  }
}

TEST(GreenTensor, ContractionIdentity) {
  // sum D_ij^2 = 2 (w^4 / R^2) f_nonres(x) e^{2 i x}; the 3A^2 + 2AB + B^2
  // expansion was checked symbolically.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const cplx n{1.0 + u(rng), 0.3 * u(rng)};
    const double w = 0.05 + 5.0 * u(rng);
    const double R = 0.05 + 10.0 * u(rng);
    const double theta = M_PI * u(rng);
    const double phi = 2.0 * M_PI * u(rng);
    const Vec3 r{R * std::sin(theta) * std::cos(phi), R * std::sin(theta) * std::sin(phi), R * std::cos(theta)};
    const cplx lhs = tensor_square_contraction(green_tensor_retarded(n, w, r));
    const auto k_val = radial_kernels(n, w, R);
    const cplx rhs = 2.0 * std::pow(w, 4) / (R * R) * k_val.f_nonres * std::exp(cplx{0.0, 2.0} * n * w * R);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(GreenTensor, CoincidentPointsRejected) {
  EXPECT_THROW(green_tensor_retarded(1.0, 1.0, Vec3{0.0, 0.0, 0.0}), DomainError);
}

TEST(RadialKernels, UnitArgument) {
  const auto k = radial_kernels(1.0, 1.0, 1.0);
  EXPECT_NEAR(std::abs(k.f_nonres - cplx(-1.0, -4.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k.g_res - cplx(5.0, 0.0)), 0.0, 1e-15);
}

TEST(RadialKernels, LargeArgumentLimit) {
  const auto k = radial_kernels(1.0, 1.0, 1e9);
  EXPECT_NEAR(std::abs(k.f_nonres - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(k.g_res - 1.0), 0.0, 1e-8);
  EXPECT_THROW(radial_kernels(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(radial_kernels(0.0, 1.0, 1.0), DomainError);
}

TEST(RadialKernels, ImaginaryAxisBracketMatchesRotation) {
  // f_nonres at x = i s times (i u)^4 equals u^4 (1 + 2/s + 5/s^2 + 6/s^3 + 3/s^4).
  for (double u : {0.1, 0.7, 3.0}) {
    for (double R : {0.2, 1.0, 4.0}) {
      const cplx n{1.3, 0.0};
      const auto k = radial_kernels(n, cplx{0.0, u}, R);
      const cplx rotated = std::pow(u, 4) * k.f_nonres;
      const cplx poly = imaginary_axis_bracket(n, u, R);
      EXPECT_NEAR(std::abs(rotated - poly), 0.0, 1e-12 * std::abs(poly));
    }
  }
  EXPECT_NEAR(imaginary_axis_bracket(2.0, 0.0, 0.5).real(), 3.0, 1e-15);
}
