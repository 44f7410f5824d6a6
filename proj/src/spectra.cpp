#include "casimir/spectra.hpp"

#include "casimir/errors.hpp"

#include <cmath>
#include <string>

namespace casimir {

AtomSpecies AtomSpecies::two_level(double frequency, double dipole_sq, double width,
                                   double natural_width, double broadening_rate) {
  AtomSpecies s;
  s.transitions.push_back({frequency, dipole_sq, width});
  s.natural_width = natural_width;
  s.broadening_rate = broadening_rate;
  return s;
}

void AtomSpecies::validate() const {
  if (transitions.empty()) {
    throw DomainError("AtomSpecies: empty transition list");
  }
  for (std::size_t m = 0; m < transitions.size(); ++m) {
    const auto& t = transitions[m];
    const std::string where = "AtomSpecies.transitions[" + std::to_string(m) + "]";
    if (!(t.frequency > 0.0) || !std::isfinite(t.frequency)) {
      throw DomainError(where + ".frequency must be finite and > 0");
    }
    if (!(t.dipole_sq >= 0.0)) throw DomainError(where + ".dipole_sq must be >= 0");
    if (!(t.width >= 0.0)) throw DomainError(where + ".width must be >= 0");
  }
  if (!(natural_width >= 0.0)) throw DomainError("AtomSpecies.natural_width must be >= 0");
  if (!(broadening_rate >= 0.0)) throw DomainError("AtomSpecies.broadening_rate must be >= 0");
}

const Transition& AtomSpecies::primary() const {
  if (transitions.empty()) throw DomainError("AtomSpecies: empty transition list");
  const Transition* best = &transitions.front();
  for (const auto& t : transitions) {
    if (t.frequency < best->frequency) best = &t;
  }
  return *best;
}

MediumSpec::MediumSpec(AtomSpecies species, double total_density, double temperature,
                       std::optional<Populations> populations)
    : species_(std::move(species)), total_density_(total_density), temperature_(temperature) {
  if (!(total_density_ >= 0.0)) throw DomainError("MediumSpec.total_density must be >= 0");
  if (!(temperature_ >= 0.0)) throw DomainError("MediumSpec.temperature must be >= 0");
  if (total_density_ > 0.0) species_.validate();
  if (populations) {
    if (!(populations->ground >= 0.0) || !(populations->excited >= 0.0)) {
      throw DomainError("MediumSpec.populations must be >= 0");
    }
    populations_ = *populations;
    overridden_ = true;
  } else if (total_density_ > 0.0) {
    populations_ = boltzmann_populations(total_density_, species_.primary().frequency, temperature_);
  }
}

MediumSpec MediumSpec::vacuum() { return MediumSpec{}; }

double MediumSpec::density_for(PermittivityDensity which) const noexcept {
  if (which == PermittivityDensity::total) return total_density_;
  return populations_.ground;
}

cplx lorentz_polarizability(double w0, double dipole_sq, double width, cplx omega) {
  if (dipole_sq == 0.0) return {0.0, 0.0};
  const cplx half_width{0.0, 0.5 * width};
  const cplx a = w0 - omega - half_width;
  const cplx b = w0 + omega + half_width;
  if (a == 0.0 || b == 0.0) {
    throw DomainError("polarizability: frequency coincides with an undamped pole");
  }
  return (dipole_sq / 3.0) * (1.0 / a + 1.0 / b);
}

cplx polarizability_ground(const AtomSpecies& species, cplx omega) {
  const auto& t = species.primary();
  return lorentz_polarizability(t.frequency, t.dipole_sq, t.width, omega);
}

cplx polarizability_excited(const AtomSpecies& species, cplx omega) {
  const auto& t = species.primary();
  return lorentz_polarizability(-t.frequency, t.dipole_sq, t.width, omega);
}

cplx polarizability_multilevel(const AtomSpecies& species, cplx omega) {
  if (species.transitions.empty()) {
    throw DomainError("polarizability_multilevel: empty transition list");
  }
  cplx sum{0.0, 0.0};
  for (const auto& t : species.transitions) {
    sum += lorentz_polarizability(t.frequency, t.dipole_sq, t.width, omega);
  }
  return sum;
}

cplx polarizability(const AtomSpecies& species, AtomState state, cplx omega) {
  if (state == AtomState::excited) return polarizability_excited(species, omega);
  return polarizability_multilevel(species, omega);
}

cplx permittivity(const MediumSpec& medium, cplx omega, PermittivityDensity which) {
  const double density = medium.density_for(which);
  if (density == 0.0) return {1.0, 0.0};
  return 1.0 + 4.0 * M_PI * density * polarizability_multilevel(medium.species(), omega);
}

cplx refractive_index(const MediumSpec& medium, cplx omega, PermittivityDensity which) {
  const cplx eps = permittivity(medium, omega, which);
  if (eps.imag() == 0.0 && eps.real() < 0.0) {
    throw DomainError("refractive_index: permittivity is real and negative, branch is ambiguous");
  }
  // The principal root already has Im n >= 0 wherever Im eps >= 0, which holds
  // for a passive medium on the positive real axis and in the upper half plane.
  return std::sqrt(eps);
}

SpectralFunction ground_polarizability_fn(const AtomSpecies& species) {
  return SpectralFunction([species](cplx w) { return polarizability_multilevel(species, w); },
                          SpectralFunction::Analyticity::upper_half_plane);
}

SpectralFunction refractive_index_fn(const MediumSpec& medium, PermittivityDensity which) {
  return SpectralFunction([medium, which](cplx w) { return refractive_index(medium, w, which); },
                          SpectralFunction::Analyticity::upper_half_plane);
}

Populations boltzmann_populations(double total_density, double transition_frequency, double temperature) {
  if (!(total_density >= 0.0)) throw DomainError("boltzmann_populations: density must be >= 0");
  if (!(transition_frequency > 0.0)) throw DomainError("boltzmann_populations: frequency must be > 0");
  if (!(temperature >= 0.0)) throw DomainError("boltzmann_populations: temperature must be >= 0");
  if (temperature == 0.0) return {total_density, 0.0};
  const double boltz = std::exp(-transition_frequency / temperature);
  const double ground = total_density / (1.0 + boltz);
  // ground >= n0/2, so the subtraction is exact and ground + excited == n0.
  return {ground, total_density - ground};
}

double collisional_width(const AtomSpecies& species, double total_density) {
  if (!(total_density >= 0.0)) throw DomainError("collisional_width: density must be >= 0");
  return species.natural_width + total_density * species.broadening_rate;
}

AtomSpecies with_collisional_width(const AtomSpecies& species, double total_density) {
  AtomSpecies out = species;
  const double gamma = collisional_width(species, total_density);
  for (auto& t : out.transitions) t.width = gamma;
  return out;
}

double thermal_coth(double frequency, double temperature) {
  if (temperature == 0.0) return 1.0;
  const double x = frequency / (2.0 * temperature);
  if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x);
  return 1.0 / std::tanh(x);
}

} // namespace casimir
