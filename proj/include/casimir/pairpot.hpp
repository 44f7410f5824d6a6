#pragma once

// Dispersion potentials U(R) between atom A (ground or excited) and a
// ground-state atom B embedded in a dilute absorbing medium.

#include "casimir/quad.hpp"
#include "casimir/spectra.hpp"

#include <vector>

namespace casimir {

struct PairConfig {
  AtomSpecies species_A;
  AtomSpecies species_B;
  AtomState state_A = AtomState::ground;
  MediumSpec medium;  // vacuum when the total density is zero
  double temperature = 0.0;
  double separation = 1.0;
  PermittivityDensity density = PermittivityDensity::ground_population;
  /// Width used in place of an exact zero when a resonant evaluation sits on
  /// an undamped pole, as a fraction of the transition frequency.
  double gamma_floor_ratio = 1e-6;

  void validate() const;
};

struct PairPotentialResult {
  double U_total = 0.0;
  double U_nonres = 0.0;
  double U_res = 0.0;
  double error = 0.0;
  long evaluations = 0;
  long matsubara_terms = 0;
  bool gamma_floor_applied = false;
};

/// Real-frequency representation at T = 0: the fluctuation integral along the
/// positive axis plus the real-photon term when A is excited.
PairPotentialResult potential_T0(const PairConfig& cfg, const QuadratureSpec& spec = {});

/// Real-frequency representation with the coth(w/2T) thermal weight. Reduces to
/// potential_T0 at T = 0. Multi-level species enter through their full
/// polarizabilities.
PairPotentialResult potential_finite_T(const PairConfig& cfg, const QuadratureSpec& spec = {});

/// T = 0 fluctuation integral rotated onto the imaginary axis, for two
/// ground-state atoms.
PairPotentialResult potential_T0_ground_ground(const PairConfig& cfg, const QuadratureSpec& spec = {});

/// Same rotation for either state of A; the real-photon term is added as a
/// closed form.
PairPotentialResult potential_imaginary_axis(const PairConfig& cfg, const QuadratureSpec& spec = {});

/// Matsubara sum over u_n = 2 pi n T (T > 0) plus the thermal real-photon term.
PairPotentialResult potential_matsubara(const PairConfig& cfg, const QuadratureSpec& spec = {});

/// Thermal real-photon term alone: -(2/3) sum_m |d_m|^2 coth(w_m/2T)
/// Re[alpha_B(w_m) w_m^4 g_res / R^2] e^{-2 Im n w_m R}, over the downward
/// transitions of A (only the primary line when A is excited).
double resonant_term(const PairConfig& cfg, bool with_absorption = true, bool* floor_applied = nullptr);

enum class AsymptoticRegime { nonretarded_vacuum_exc, retarded_vacuum_exc, nonretarded_medium_gg, retarded_medium_gg };

/// Closed-form limits built from the primary transitions of A and B:
///   nonretarded_vacuum_exc  -(4/3) dA dB wB / ((wB^2 - wA^2) R^6)
///   retarded_vacuum_exc     -(4/9) dA dB wB wA^4 / ((wB^2 - wA^2) R^2)
///   nonretarded_medium_gg   -(3/pi) Re int alpha_gA(iu) alpha_gB(iu) / (R^6 n(iu)^4) du
///   retarded_medium_gg      -23 alpha_gA(0) alpha_gB(0) / (4 pi n(0)^5 R^7)
/// with dA, dB the squared dipoles. wA = wB raises DomainError in the excited forms.
double asymptotic_potential(AsymptoticRegime regime, const PairConfig& cfg, const QuadratureSpec& spec = {});

/// An excited probe atom A at distance z0 from a half-space of ground-state
/// atoms filling z >= z0 at the medium density.
struct DivergenceProbeConfig {
  AtomSpecies probe;
  MediumSpec half_space;
  double distance = 1.0;
  PermittivityDensity density = PermittivityDensity::ground_population;
};

struct DivergenceProbeRow {
  double cutoff = 0.0;
  double energy = 0.0;
  double error = 0.0;
};

/// n0 int_{z0}^{R_cut} U(R) 2 pi R (R - z0) dR for each cutoff. With
/// perturbative = true, U is the retarded vacuum limit (grows linearly in
/// R_cut); otherwise the real-photon term with its absorption factor.
std::vector<DivergenceProbeRow> divergence_probe(const DivergenceProbeConfig& cfg, const std::vector<double>& cutoffs,
                                                 bool perturbative, const QuadratureSpec& spec = {});

} // namespace casimir
