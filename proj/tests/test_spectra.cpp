#include "casimir/errors.hpp"
#include "casimir/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace casimir;

namespace {

AtomSpecies species(double w, double d2, double g = 0.0) { return AtomSpecies::two_level(w, d2, g); }

} // namespace

TEST(Polarizability, ZeroDipoleVanishes) {
  const auto s = species(1.3, 0.0, 0.2);
  for (cplx w : {cplx{0.0, 0.0}, cplx{0.7, 0.0}, cplx{0.0, 2.0}, cplx{-3.0, 0.1}}) {
    EXPECT_EQ(polarizability_ground(s, w), cplx(0.0, 0.0));
    EXPECT_EQ(polarizability_excited(s, w), cplx(0.0, 0.0));
  }
}

TEST(Polarizability, HandValues) {
  const auto s = species(1.0, 3.0);
  EXPECT_DOUBLE_EQ(polarizability_ground(s, 0.0).real(), 2.0);
  EXPECT_DOUBLE_EQ(polarizability_ground(s, 0.0).imag(), 0.0);
  const cplx at_i = polarizability_ground(s, cplx{0.0, 1.0});
  EXPECT_DOUBLE_EQ(at_i.real(), 1.0);
  EXPECT_EQ(at_i.imag(), 0.0);
  EXPECT_DOUBLE_EQ(polarizability_excited(s, 0.0).real(), -2.0);
}

TEST(Polarizability, MultilevelHandValueAndReduction) {
  AtomSpecies s;
  s.transitions = {{1.0, 3.0, 0.0}, {2.0, 6.0, 0.0}};
  EXPECT_DOUBLE_EQ(polarizability_multilevel(s, 0.0).real(), 4.0);

  const auto one = species(1.7, 0.4, 0.05);
  AtomSpecies twice;
  twice.transitions = {one.transitions[0], one.transitions[0]};
  for (cplx w : {cplx{0.3, 0.0}, cplx{0.0, 0.8}, cplx{2.5, 0.2}}) {
    EXPECT_EQ(polarizability_multilevel(one, w), polarizability_ground(one, w));
    EXPECT_EQ(polarizability_multilevel(twice, w), 2.0 * polarizability_ground(one, w));
  }
  EXPECT_THROW(polarizability_multilevel(AtomSpecies{}, 1.0), DomainError);
}

TEST(Polarizability, UndampedPoleIsDomainError) {
  const auto s = species(1.0, 1.0);
  EXPECT_THROW(polarizability_ground(s, 1.0), DomainError);
  EXPECT_THROW(polarizability_excited(s, -1.0), DomainError);
}

TEST(Polarizability, RandomizedProperties) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::uniform_real_distribution<double> real(-6.0, 6.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double w0 = pos(rng);
    const double d2 = pos(rng);
    const double g = pos(rng) * 0.1;
    const auto s = species(w0, d2, g);
    const double w = real(rng);

    // Crossing symmetry on the real axis.
    const cplx plus = polarizability_ground(s, w);
    const cplx minus = polarizability_ground(s, -w);
    EXPECT_NEAR(minus.real(), plus.real(), 1e-13 * std::abs(plus));
    EXPECT_NEAR(minus.imag(), -plus.imag(), 1e-13 * std::abs(plus));

    // Imaginary-axis reality for an undamped line.
    const auto undamped = species(w0, d2, 0.0);
    EXPECT_EQ(polarizability_ground(undamped, cplx{0.0, w}).imag(), 0.0);

    // Excited/ground duality holds for every input.
    const cplx z{real(rng), real(rng)};
    EXPECT_EQ(polarizability_excited(s, z), lorentz_polarizability(-w0, d2, g, z));

    // Static limit of an undamped line.
    EXPECT_NEAR(polarizability_ground(undamped, 0.0).real(), 2.0 * d2 / (3.0 * w0), 1e-14 * d2 / w0);
  }
}

TEST(RefractiveIndex, VacuumIsOne) {
  const auto m = MediumSpec::vacuum();
  EXPECT_EQ(refractive_index(m, cplx{0.4, 0.0}), cplx(1.0, 0.0));
  EXPECT_EQ(refractive_index(m, cplx{0.0, 7.0}), cplx(1.0, 0.0));
}

TEST(RefractiveIndex, StaticValueTwo) {
  // 4 pi n0 alpha(0) = 3 with alpha(0) = 2 d2 / (3 w0) = 2.
  const auto s = species(1.0, 3.0);
  const double n0 = 3.0 / (4.0 * M_PI * 2.0);
  const MediumSpec m(s, n0, 0.0);
  const cplx n = refractive_index(m, 0.0);
  EXPECT_NEAR(n.real(), 2.0, 1e-15);
  EXPECT_EQ(n.imag(), 0.0);
}

TEST(RefractiveIndex, ImaginaryAxisRealAndAboveOne) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.01, 3.0);
  for (int i = 0; i < 300; ++i) {
    const MediumSpec m(species(pos(rng), pos(rng)), 0.05 * pos(rng), 0.0);
    const cplx n = refractive_index(m, cplx{0.0, 4.0 * pos(rng)});
    EXPECT_EQ(n.imag(), 0.0);
    EXPECT_GE(n.real(), 1.0);
  }
}

TEST(RefractiveIndex, AbsorbingOnPositiveAxisAndBranchError) {
  const MediumSpec damped(species(1.0, 1.0, 0.05), 0.02, 0.0);
  for (double w : {0.2, 0.99, 1.0, 1.01, 3.0}) {
    EXPECT_GE(refractive_index(damped, w).imag(), 0.0);
  }
  // Undamped line just above resonance with a dense gas: eps is real and negative.
  const MediumSpec dense(species(1.0, 3.0), 1.0, 0.0);
  EXPECT_LT(permittivity(dense, 1.01).real(), 0.0);
  EXPECT_THROW(refractive_index(dense, 1.01), DomainError);
}

TEST(RefractiveIndex, DensityChoice) {
  const auto s = species(1.0, 1.0);
  const MediumSpec m(s, 1e-3, 2.0);
  const double ng = m.populations().ground;
  EXPECT_LT(ng, 1e-3);
  const cplx eps_g = permittivity(m, 0.0, PermittivityDensity::ground_population);
  const cplx eps_t = permittivity(m, 0.0, PermittivityDensity::total);
  EXPECT_NEAR(eps_g.real() - 1.0, 4.0 * M_PI * ng * (2.0 / 3.0), 1e-15);
  EXPECT_NEAR(eps_t.real() - 1.0, 4.0 * M_PI * 1e-3 * (2.0 / 3.0), 1e-15);
}

TEST(Populations, Limits) {
  const auto frozen = boltzmann_populations(2.5, 1.0, 0.0);
  EXPECT_EQ(frozen.ground, 2.5);
  EXPECT_EQ(frozen.excited, 0.0);
  const auto hot = boltzmann_populations(2.5, 1.0, 1e300);
  EXPECT_DOUBLE_EQ(hot.ground, 1.25);
  EXPECT_DOUBLE_EQ(hot.excited, 1.25);
  const auto unit = boltzmann_populations(1.0, 1.0, 1.0);
  EXPECT_NEAR(unit.excited / unit.ground, 0.36787944117144233, 1e-15);
}

TEST(Populations, ClosureIsBitExact) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (int i = 0; i < 10000; ++i) {
    const double n0 = std::pow(10.0, u(rng));
    const double w = std::pow(10.0, u(rng) / 4.0);
    const double t = std::pow(10.0, u(rng) / 3.0);
    const auto p = boltzmann_populations(n0, w, t);
    ASSERT_EQ(p.ground + p.excited, n0);
    ASSERT_GE(p.excited, 0.0);
  }
}

TEST(Populations, MediumOverride) {
  const MediumSpec m(species(1.0, 1.0), 1.0, 0.5, Populations{0.3, 0.7});
  EXPECT_TRUE(m.populations_overridden());
  EXPECT_EQ(m.populations().excited, 0.7);
  EXPECT_THROW(MediumSpec(species(1.0, 1.0), -1.0, 0.5), DomainError);
}

TEST(CollisionalWidth, LinearInDensity) {
  auto s = species(1.0, 1.0);
  s.natural_width = 0.01;
  s.broadening_rate = 0.5;
  EXPECT_EQ(collisional_width(s, 0.0), 0.01);
  auto bare = s;
  bare.natural_width = 0.0;
  EXPECT_DOUBLE_EQ(collisional_width(bare, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(collisional_width(s, 4.0) - 0.01, 2.0 * (collisional_width(s, 2.0) - 0.01));
  EXPECT_LE(collisional_width(s, 1.0), collisional_width(s, 1.5));
  EXPECT_EQ(with_collisional_width(s, 2.0).transitions[0].width, collisional_width(s, 2.0));
}

TEST(ThermalCoth, Limits) {
  EXPECT_EQ(thermal_coth(1.0, 0.0), 1.0);
  EXPECT_NEAR(thermal_coth(1.0, 0.5), 1.0 / std::tanh(1.0), 1e-15);
  EXPECT_NEAR(thermal_coth(1e-3, 10.0), 2.0 * 10.0 / 1e-3, 1e-3);
}
