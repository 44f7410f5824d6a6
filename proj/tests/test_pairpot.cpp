#include "casimir/errors.hpp"
#include "casimir/pairpot.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace casimir;

namespace {

PairConfig vacuum_pair(double wa, double da, double wb, double db, AtomState state, double R) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(wa, da, 1e-6 * wa);
  c.species_B = AtomSpecies::two_level(wb, db, 1e-6 * wb);
  c.state_A = state;
  c.separation = R;
  return c;
}

// Independent evaluation of the vacuum ground-ground Matsubara series, one
// term at a time with a fixed cutoff.
double matsubara_oracle(double wa, double da, double wb, double db, double T, double R) {
  auto alpha = [](double w0, double d2, double u) { return 2.0 * d2 * w0 / (3.0 * (w0 * w0 + u * u)); };
  double sum = 0.0;
  for (int n = 0; n < 4000; ++n) {
    const double u = 2.0 * M_PI * n * T;
    double bracket;
    if (n == 0) {
      bracket = 3.0 / std::pow(R, 4);
    } else {
      const double s = u * R;
      bracket = std::pow(u, 4) * (1.0 + 2.0 / s + 5.0 / (s * s) + 6.0 / (s * s * s) + 3.0 / (s * s * s * s));
    }
    const double term = alpha(wa, da, u) * alpha(wb, db, u) * bracket / (R * R) * std::exp(-2.0 * u * R);
    sum += n == 0 ? 0.5 * term : term;
  }
  return -2.0 * T * sum;
}

} // namespace

TEST(PotentialT0, ZeroDipoleGivesZero) {
  auto c = vacuum_pair(1.0, 0.0, 1.4, 1.0, AtomState::excited, 0.7);
  const auto r = potential_T0(c);
  EXPECT_EQ(r.U_total, 0.0);
  EXPECT_EQ(r.U_res, 0.0);
}

TEST(PotentialT0, GroundStateHasNoResonantPart) {
  const auto r = potential_T0(vacuum_pair(1.0, 1.0, 1.4, 1.0, AtomState::ground, 0.7));
  EXPECT_EQ(r.U_res, 0.0);
  EXPECT_EQ(r.U_total, r.U_nonres + r.U_res);
}

TEST(PotentialT0, NonretardedExactClosedForm) {
  // At R -> 0 the fluctuation part tends to +(2/3) dA dB / ((wA + wB) R^6) and
  // the real-photon part to the printed nonretarded limit.
  const double wa = 1.0, wb = 3.0, da = 0.8, db = 1.3, R = 1e-3;
  const auto r = potential_T0(vacuum_pair(wa, da, wb, db, AtomState::excited, R));
  const double nonres = (2.0 / 3.0) * da * db / ((wa + wb) * std::pow(R, 6));
  const double res = -(4.0 / 3.0) * da * db * wb / ((wb * wb - wa * wa) * std::pow(R, 6));
  EXPECT_NEAR(r.U_nonres / nonres, 1.0, 1e-4);
  EXPECT_NEAR(r.U_res / res, 1.0, 1e-4);
}

TEST(PotentialT0, NonretardedLimitNearResonance) {
  const double wa = 1.0, wb = 1.01;
  const double R = 1e-3 * 2.0 * M_PI / wb;
  const auto c = vacuum_pair(wa, 1.0, wb, 1.0, AtomState::excited, R);
  const double limit = asymptotic_potential(AsymptoticRegime::nonretarded_vacuum_exc, c);
  EXPECT_LT(std::abs(potential_T0(c).U_total / limit - 1.0), 0.01);
}

TEST(PotentialT0, RetardedLimit) {
  for (double wb : {1.01, 0.5, 2.0}) {
    const double R = 1e2 * 2.0 * M_PI / std::max(1.0, wb);
    const auto c = vacuum_pair(1.0, 1.0, wb, 1.0, AtomState::excited, R);
    const double limit = asymptotic_potential(AsymptoticRegime::retarded_vacuum_exc, c);
    EXPECT_LT(std::abs(potential_T0(c).U_total / limit - 1.0), 0.01) << "wb = " << wb;
  }
}

TEST(PotentialT0, RealAndImaginaryAxisAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 12; ++k) {
    PairConfig c;
    c.species_A = AtomSpecies::two_level(0.5 + u(rng), 0.2 + u(rng));
    c.species_B = AtomSpecies::two_level(0.5 + 2.0 * u(rng), 0.2 + u(rng));
    c.separation = 0.05 + 5.0 * u(rng);
    if (k % 2 == 1) {
      // Absorbing host medium with its own line.
      c.medium = MediumSpec(AtomSpecies::two_level(0.8 + u(rng), 1.0, 0.05), 0.01 * u(rng), 0.0);
    }
    if (k % 3 == 2) c.state_A = AtomState::excited;
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const auto real_axis = potential_T0(c, spec);
    const auto rotated = potential_imaginary_axis(c, spec);
    EXPECT_NEAR(real_axis.U_nonres / rotated.U_nonres, 1.0, 1e-6) << "case " << k;
    EXPECT_EQ(real_axis.U_res, rotated.U_res);
  }
}

TEST(PotentialT0, RequiresZeroTemperatureAndPositiveSeparation) {
  auto c = vacuum_pair(1.0, 1.0, 2.0, 1.0, AtomState::ground, 1.0);
  c.temperature = 0.1;
  EXPECT_THROW(potential_T0(c), DomainError);
  c.temperature = 0.0;
  c.separation = 0.0;
  EXPECT_THROW(potential_T0(c), DomainError);
  EXPECT_THROW(potential_T0_ground_ground(vacuum_pair(1.0, 1.0, 2.0, 1.0, AtomState::excited, 1.0)), DomainError);
}

TEST(PotentialT0, DegenerateTransitionRejected) {
  // A zero transition frequency would need theta(0); it never reaches the potential.
  auto c = vacuum_pair(1.0, 1.0, 2.0, 1.0, AtomState::excited, 1.0);
  c.species_A.transitions[0].frequency = 0.0;
  EXPECT_THROW(potential_T0(c), DomainError);
}

TEST(PotentialT0, BudgetExhaustionIsReported) {
  QuadratureSpec spec;
  spec.max_evals = 40;
  try {
    potential_T0(vacuum_pair(1.0, 1.0, 2.0, 1.0, AtomState::ground, 1.0), spec);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GT(e.evaluations(), 0);
  }
}

TEST(GroundGround, MediumLimits) {
  // Transparent host with n(0) = 1.2: 4 pi n0 alpha(0) = 0.44.
  const auto host_species = AtomSpecies::two_level(2.0, 3.0);
  const double n0 = 0.44 / (4.0 * M_PI * 1.0);
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.5, 0.6);
  c.medium = MediumSpec(host_species, n0, 0.0);
  EXPECT_NEAR(refractive_index(c.medium, 0.0).real(), 1.2, 1e-14);

  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  c.separation = 1e-3;
  const double near = asymptotic_potential(AsymptoticRegime::nonretarded_medium_gg, c, spec);
  EXPECT_NEAR(potential_T0_ground_ground(c, spec).U_total / near, 1.0, 1e-4);

  c.separation = 2000.0;
  const double far = asymptotic_potential(AsymptoticRegime::retarded_medium_gg, c);
  EXPECT_NEAR(potential_T0_ground_ground(c, spec).U_total / far, 1.0, 1e-4);
}

TEST(Asymptotic, HandValuesAndSymmetries) {
  auto c = vacuum_pair(1.0, 1.0, 2.0, 1.0, AtomState::excited, 1.0);
  c.species_A.transitions[0].width = 0.0;
  c.species_B.transitions[0].width = 0.0;
  EXPECT_DOUBLE_EQ(asymptotic_potential(AsymptoticRegime::retarded_vacuum_exc, c), -8.0 / 27.0);

  auto swapped = vacuum_pair(2.0, 1.0, 1.0, 1.0, AtomState::excited, 1.0);
  EXPECT_GT(asymptotic_potential(AsymptoticRegime::nonretarded_vacuum_exc, swapped), 0.0);
  EXPECT_LT(asymptotic_potential(AsymptoticRegime::nonretarded_vacuum_exc, c), 0.0);

  auto equal = vacuum_pair(1.0, 1.0, 1.0, 1.0, AtomState::excited, 1.0);
  EXPECT_THROW(asymptotic_potential(AsymptoticRegime::nonretarded_vacuum_exc, equal), DomainError);
  EXPECT_THROW(asymptotic_potential(AsymptoticRegime::retarded_vacuum_exc, equal), DomainError);

  // Vacuum reduction of the retarded ground-ground form.
  auto gg = vacuum_pair(1.0, 3.0, 1.0, 3.0, AtomState::ground, 2.0);
  gg.species_A.transitions[0].width = 0.0;
  gg.species_B.transitions[0].width = 0.0;
  EXPECT_DOUBLE_EQ(asymptotic_potential(AsymptoticRegime::retarded_medium_gg, gg), -23.0 * 4.0 / (4.0 * M_PI * 128.0));
}

TEST(FiniteT, ZeroTemperatureMatchesT0) {
  auto c = vacuum_pair(1.0, 1.0, 1.7, 0.5, AtomState::excited, 0.9);
  const auto a = potential_T0(c);
  const auto b = potential_finite_T(c);
  EXPECT_EQ(a.U_total, b.U_total);
}

TEST(FiniteT, SingleTransitionMultilevelIsTwoLevel) {
  auto c = vacuum_pair(1.0, 1.0, 1.7, 0.5, AtomState::excited, 0.9);
  c.temperature = 0.3;
  AtomSpecies multi;
  multi.transitions = c.species_B.transitions;
  PairConfig m = c;
  m.species_B = multi;
  EXPECT_EQ(potential_finite_T(c).U_total, potential_finite_T(m).U_total);
}

TEST(FiniteT, MatchesMatsubaraOnRandomGrid) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    PairConfig c;
    c.species_A = AtomSpecies::two_level(0.5 + u(rng), 0.2 + u(rng));
    c.species_B = AtomSpecies::two_level(0.5 + 2.0 * u(rng), 0.2 + u(rng));
    c.separation = 0.2 + 4.0 * u(rng);
    c.temperature = std::pow(10.0, -2.0 + 2.5 * u(rng));
    QuadratureSpec real_spec;
    real_spec.rel_tol = 1e-11;
    real_spec.abs_tol = 1e-300;
    QuadratureSpec sum_spec;
    sum_spec.rel_tol = 1e-14;
    sum_spec.abs_tol = 1e-300;
    const double real_axis = potential_finite_T(c, real_spec).U_total;
    const double sum = potential_matsubara(c, sum_spec).U_total;
    EXPECT_NEAR(real_axis / sum, 1.0, 1e-6) << "case " << k;
  }
}

TEST(Matsubara, VacuumSeriesTermByTerm) {
  const double wa = 1.0, da = 1.0, wb = 1.5, db = 0.7, T = 0.2, R = 1.3;
  PairConfig c;
  c.species_A = AtomSpecies::two_level(wa, da);
  c.species_B = AtomSpecies::two_level(wb, db);
  c.separation = R;
  c.temperature = T;
  QuadratureSpec spec;
  spec.rel_tol = 1e-16;
  spec.abs_tol = 1e-300;
  const double oracle = matsubara_oracle(wa, da, wb, db, T, R);
  EXPECT_NEAR(potential_matsubara(c, spec).U_total / oracle, 1.0, 1e-13);
}

TEST(Matsubara, HighTemperatureStaticTerm) {
  // Only the half-weighted u = 0 term survives once 2 pi T R >> 1.
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.5, 0.7);
  c.separation = 5.0;
  c.temperature = 3.0;
  const double a0 = 2.0 / 3.0;
  const double b0 = 2.0 * 0.7 / (3.0 * 1.5);
  const double static_term = -3.0 * c.temperature * a0 * b0 / std::pow(c.separation, 6);
  EXPECT_NEAR(potential_matsubara(c).U_total / static_term, 1.0, 0.01);
}

TEST(Matsubara, LowTemperatureApproachesT0) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.5, 0.7);
  c.separation = 1.1;
  const double zero_t = potential_T0_ground_ground(c).U_nonres;
  c.temperature = 1e-3;
  EXPECT_NEAR(potential_matsubara(c).U_nonres / zero_t, 1.0, 1e-3);
}

TEST(Matsubara, RequiresPositiveTemperature) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.5, 0.7);
  EXPECT_THROW(potential_matsubara(c), DomainError);
}

TEST(GroundGround, MonotoneDecayInVacuum) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(2.0, 1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (double R = 0.05; R < 200.0; R *= 1.5) {
    c.separation = R;
    const double mag = std::abs(potential_T0_ground_ground(c).U_nonres);
    EXPECT_LT(mag, previous) << "R = " << R;
    previous = mag;
  }
}

TEST(Resonant, InverseSquareInTransparentMedium) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.6, 1.0);
  c.state_A = AtomState::excited;
  c.medium = MediumSpec(AtomSpecies::two_level(3.0, 1.0), 0.01, 0.0);
  c.separation = 1e4;
  const double a = resonant_term(c) * 1e8;
  c.separation = 1e6;
  const double b = resonant_term(c) * 1e12;
  EXPECT_NEAR(b / a, 1.0, 1e-7);
}

TEST(Resonant, GammaFloorOnUndampedPole) {
  PairConfig c;
  c.species_A = AtomSpecies::two_level(1.0, 1.0);
  c.species_B = AtomSpecies::two_level(1.0, 1.0);
  c.state_A = AtomState::excited;
  c.separation = 2.0;
  bool floor = false;
  const double v = resonant_term(c, true, &floor);
  EXPECT_TRUE(floor);
  EXPECT_TRUE(std::isfinite(v));
}

TEST(DivergenceProbe, PerturbativeGrowsLinearly) {
  DivergenceProbeConfig cfg;
  cfg.probe = AtomSpecies::two_level(1.0, 1.0);
  cfg.half_space = MediumSpec(AtomSpecies::two_level(1.3, 1.0, 0.01), 1e-3, 0.0);
  cfg.distance = 1.0;
  const auto rows = divergence_probe(cfg, {1e4, 2e4}, true);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[1].energy / rows[0].energy, 2.0, 0.02);
}

TEST(DivergenceProbe, AbsorptionMakesItConverge) {
  DivergenceProbeConfig cfg;
  cfg.probe = AtomSpecies::two_level(1.0, 1.0);
  cfg.half_space = MediumSpec(AtomSpecies::two_level(1.3, 1.0, 0.01), 1e-3, 0.0);
  cfg.distance = 1.0;
  const double lph = 1.0 / (2.0 * refractive_index(cfg.half_space, 1.0).imag());
  const auto rows = divergence_probe(cfg, {10.0 * lph, 20.0 * lph}, false);
  EXPECT_LT(std::abs(rows[1].energy / rows[0].energy - 1.0), 1e-3);

  // Without absorption the real-photon kernel diverges again.
  cfg.half_space = MediumSpec(AtomSpecies::two_level(1.3, 1.0, 0.0), 1e-3, 0.0);
  const auto bare = divergence_probe(cfg, {1e4, 2e4}, false);
  EXPECT_NEAR(bare[1].energy / bare[0].energy, 2.0, 0.02);
}
