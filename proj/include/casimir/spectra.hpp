#pragma once

// Atomic response functions of dilute gases in natural units (hbar = c = k_B = 1).
//
// Frequencies, temperatures and inverse lengths share one unit. |d|^2 carries
// frequency^-2, polarizabilities frequency^-3 and number densities frequency^3.

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace casimir {

using cplx = std::complex<double>;

struct Transition {
  double frequency = 1.0;  // omega_m0 > 0
  double dipole_sq = 0.0;  // |d_0m|^2 >= 0
  double width = 0.0;      // gamma_m >= 0 (Lorentzian FWHM of the level)
};

/// Transition data of a two-level (one transition) or multi-level atom.
struct AtomSpecies {
  std::vector<Transition> transitions;
  double natural_width = 0.0;    // gamma_nat
  double broadening_rate = 0.0;  // k_br, collisional width per unit density

  static AtomSpecies two_level(double frequency, double dipole_sq, double width = 0.0,
                               double natural_width = 0.0, double broadening_rate = 0.0);

  /// Throws DomainError unless every frequency > 0 and dipoles/widths >= 0.
  void validate() const;

  /// Lowest transition (the excited state of a two-level species).
  const Transition& primary() const;
};

enum class AtomState { ground, excited };

/// Which density enters eps(omega) = 1 + 4 pi n alpha_g(omega).
enum class PermittivityDensity { ground_population, total };

struct Populations {
  double ground = 0.0;
  double excited = 0.0;
};

/// A dilute gas medium. Populations default to the Boltzmann values of the
/// primary transition; an explicit override is kept as given.
class MediumSpec {
public:
  MediumSpec() = default;
  MediumSpec(AtomSpecies species, double total_density, double temperature,
             std::optional<Populations> populations = std::nullopt);

  static MediumSpec vacuum();

  const AtomSpecies& species() const noexcept { return species_; }
  double total_density() const noexcept { return total_density_; }
  double temperature() const noexcept { return temperature_; }
  const Populations& populations() const noexcept { return populations_; }
  bool populations_overridden() const noexcept { return overridden_; }
  bool is_vacuum() const noexcept { return total_density_ == 0.0; }

  double density_for(PermittivityDensity which) const noexcept;

private:
  AtomSpecies species_{};
  double total_density_ = 0.0;
  double temperature_ = 0.0;
  Populations populations_{};
  bool overridden_ = false;
};

/// An evaluable complex function of complex frequency.
class SpectralFunction {
public:
  enum class Analyticity { upper_half_plane, none };

  SpectralFunction(std::function<cplx(cplx)> fn, Analyticity tag)
      : fn_(std::move(fn)), tag_(tag) {}

  cplx operator()(cplx omega) const { return fn_(omega); }
  Analyticity analyticity() const noexcept { return tag_; }

private:
  std::function<cplx(cplx)> fn_;
  Analyticity tag_;
};

// Orientation-averaged scalar polarizabilities. The tensor d d is replaced by
// (|d|^2 / 3) delta, and the widths enter with the retarded sign pattern.
cplx polarizability_ground(const AtomSpecies& species, cplx omega);
cplx polarizability_excited(const AtomSpecies& species, cplx omega);
cplx polarizability_multilevel(const AtomSpecies& species, cplx omega);
cplx polarizability(const AtomSpecies& species, AtomState state, cplx omega);

/// Single-transition Lorentzian: (d2/3) [1/(w0 - w - i g/2) + 1/(w0 + w + i g/2)].
/// Passing -w0 gives the excited-state form.
cplx lorentz_polarizability(double transition_frequency, double dipole_sq, double width, cplx omega);

cplx permittivity(const MediumSpec& medium, cplx omega,
                  PermittivityDensity which = PermittivityDensity::ground_population);

/// n = sqrt(eps) with Im n >= 0 on the positive real axis. A real negative
/// permittivity has no preferred branch and raises DomainError.
cplx refractive_index(const MediumSpec& medium, cplx omega,
                      PermittivityDensity which = PermittivityDensity::ground_population);

SpectralFunction ground_polarizability_fn(const AtomSpecies& species);
SpectralFunction refractive_index_fn(const MediumSpec& medium,
                                     PermittivityDensity which = PermittivityDensity::ground_population);

Populations boltzmann_populations(double total_density, double transition_frequency, double temperature);

/// gamma = gamma_nat + n0 k_br.
double collisional_width(const AtomSpecies& species, double total_density);

/// Copy of the species with every level width replaced by the collisional width.
AtomSpecies with_collisional_width(const AtomSpecies& species, double total_density);

/// coth(x/2T) for x > 0, with the T = 0 limit handled explicitly.
double thermal_coth(double frequency, double temperature);

} // namespace casimir
