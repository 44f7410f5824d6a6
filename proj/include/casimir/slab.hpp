#pragma once

// Force per unit area between two half-spaces of dilute two-level gases at
// separation L and temperature T. Positive values mean attraction.

#include "casimir/quad.hpp"
#include "casimir/spectra.hpp"

namespace casimir {

enum class MeanFreePathRoute {
  closed_form,  // 3 [D^2 + (g w_emit)^2] / (4 pi n^g |d|^2 g w_emit^2)
  refractive,   // (2 Im n(w_emit) w_emit)^-1 with collisional line widths
};

/// Force evaluation modes with Boltzmann populations at the slab temperature.
enum class SlabMode {
  explicit_form,     // Lifshitz term plus the resonant correction with mean free paths
  reduced,           // mean free paths substituted, natural widths neglected
  high_temperature,  // T >> w_A, w_B limit of the reduced form
};

struct SlabConfig {
  MediumSpec medium_A;
  MediumSpec medium_B;
  double separation = 1.0;
  double temperature = 1.0;
  MeanFreePathRoute route = MeanFreePathRoute::closed_form;
  /// Lorentzian width term of the resonant force: (g_B w_A)^2 when false,
  /// the A/B average of (g_B w_A)^2 and (g_A w_B)^2 when true.
  bool symmetrized_width = false;

  void validate() const;
};

/// Both media built at the slab temperature with Boltzmann populations.
SlabConfig make_slab_config(const AtomSpecies& species_A, double density_A, const AtomSpecies& species_B,
                            double density_B, double separation, double temperature);

struct MeanFreePaths {
  // L_ph1: photons at w_A absorbed in medium B. L_ph2: photons at w_B in medium A.
  double closed_1 = 0.0;
  double closed_2 = 0.0;
  double refractive_1 = 0.0;
  double refractive_2 = 0.0;

  double first(MeanFreePathRoute r) const { return r == MeanFreePathRoute::closed_form ? closed_1 : refractive_1; }
  double second(MeanFreePathRoute r) const { return r == MeanFreePathRoute::closed_form ? closed_2 : refractive_2; }
};

/// Infinite (not NaN) when the absorbing medium has zero width, ground
/// population or dipole.
MeanFreePaths mean_free_paths(const SlabConfig& cfg);

struct SlabValidity {
  bool large_LT = false;               // L T >= 10
  bool retarded = false;               // L >= 10 lambda_max
  bool beyond_mean_free_path = false;  // L >= 10 max(L_ph), finite
  bool all() const { return large_LT && retarded && beyond_mean_free_path; }
};

struct SlabForceResult {
  double F_total = 0.0;
  double F_res = 0.0;
  double F_nres = 0.0;
  double F_Lif = 0.0;
  double L_ph1 = 0.0;
  double L_ph2 = 0.0;
  SlabValidity validity;
};

SlabValidity slab_validity(const SlabConfig& cfg, double L_ph1, double L_ph2);

/// Resonant, non-resonant and Lifshitz forces from the populations stored in
/// the media. F_total = F_res + F_nres.
SlabForceResult force_components(const SlabConfig& cfg);

/// Lifshitz force plus the resonant correction of the chosen mode. F_res holds
/// the correction and F_nres the non-resonant force at Boltzmann populations.
/// The reduced and high-temperature modes reject zero densities or
/// broadening rates.
SlabForceResult force_total(const SlabConfig& cfg, SlabMode mode);

/// Scale s > 0 such that multiplying both total densities by s makes
/// force_total vanish, found by bisection in log s. Throws NumericalError when
/// no sign change exists in [s_min, s_max].
double balance_density_scale(const SlabConfig& cfg, SlabMode mode, double s_min = 1e-30, double s_max = 1e30);

struct PairwiseForce {
  double F_res = 0.0;
  double F_nres = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

/// Direct summation of vacuum pair potentials over the two half-spaces,
/// reduced to one dimension with the lateral integral done analytically:
///   F = -2 pi n_A n_B int U(h) h w(h) dh,
/// where w is the overlap of the two depth ranges at normal distance h. The
/// non-resonant part uses the Matsubara ground-ground potential weighted by
/// (n^g - n^e) of each medium over unbounded half-spaces. The resonant part
/// counts atoms of A within L_ph2 and atoms of B within L_ph1 of the
/// interface (refractive mean free paths) and drops the absorption factor.
PairwiseForce pairwise_halfspace_force(const SlabConfig& cfg, const QuadratureSpec& spec = {});

} // namespace casimir
