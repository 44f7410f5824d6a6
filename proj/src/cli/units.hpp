#pragma once

// Conversions between configuration units and the natural units used by the
// library. The natural energy unit is 1 eV, so one unit of frequency is
// hbar w = 1 eV and one unit of length is hbar c / eV.

#include "json.hpp"

#include <string>

namespace casimir::cli {

enum class Quantity {
  frequency,        // config: eV (photon energy hbar w)
  temperature,      // config: K
  length,           // config: m
  density,          // config: cm^-3
  dipole_sq,        // config: (e a0)^2
  broadening_rate,  // config: eV cm^3
  energy,           // output: eV
  force_per_area,   // output: Pa
  dimensionless,
};

enum class UnitSystem { natural, si };

/// Throws std::invalid_argument for anything but "natural" or "si".
UnitSystem parse_unit_system(const std::string& name);
const char* unit_system_name(UnitSystem s);

double to_natural(UnitSystem s, Quantity q, double value);
double from_natural(UnitSystem s, Quantity q, double value);

/// Unit label of a quantity in the given system ("eV", "m", "1" ...).
const char* unit_label(UnitSystem s, Quantity q);

/// CODATA constants and derived scale factors, for the metadata sidecar.
nlohmann::json conversion_constants();

} // namespace casimir::cli
