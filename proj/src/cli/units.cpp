#include "cli/units.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::cli {

namespace {

// CODATA 2018 values; e and k_B are exact in SI.
constexpr double kElectronVolt = 1.602176634e-19;      // J
constexpr double kHbarC_eVm = 1.97326980459302e-7;     // hbar c in eV m
constexpr double kBoltzmann_eV = 1.380649e-23 / kElectronVolt;  // eV / K, exact
constexpr double kBohrRadius = 5.29177210903e-11;      // m
constexpr double kFineStructure = 7.2973525693e-3;

constexpr double kLengthUnit = kHbarC_eVm;                 // m
constexpr double kLengthUnitCm = kHbarC_eVm * 100.0;       // cm
constexpr double kVolumeUnitCm3 = kLengthUnitCm * kLengthUnitCm * kLengthUnitCm;

// Natural value = SI value * factor.
double factor(Quantity q) {
  switch (q) {
    case Quantity::frequency:
    case Quantity::energy:
    case Quantity::dimensionless:
      return 1.0;
    case Quantity::temperature:
      return kBoltzmann_eV;
    case Quantity::length:
      return 1.0 / kLengthUnit;
    case Quantity::density:
      return kVolumeUnitCm3;
    case Quantity::broadening_rate:
      return 1.0 / kVolumeUnitCm3;
    case Quantity::dipole_sq:
      // |d|^2 / (hbar c) = alpha_fs a0^2 for d = e a0.
      return kFineStructure * (kBohrRadius / kLengthUnit) * (kBohrRadius / kLengthUnit);
    case Quantity::force_per_area:
      // eV per (hbar c / eV)^3 to Pa.
      return 1.0 / (kElectronVolt / (kLengthUnit * kLengthUnit * kLengthUnit));
  }
  return 1.0;
}

} // namespace

UnitSystem parse_unit_system(const std::string& name) {
  if (name == "natural") return UnitSystem::natural;
  if (name == "si") return UnitSystem::si;
  throw std::invalid_argument("expected \"natural\" or \"si\", got \"" + name + "\"");
}

const char* unit_system_name(UnitSystem s) { return s == UnitSystem::si ? "si" : "natural"; }

double to_natural(UnitSystem s, Quantity q, double value) {
  return s == UnitSystem::natural ? value : value * factor(q);
}

double from_natural(UnitSystem s, Quantity q, double value) {
  return s == UnitSystem::natural ? value : value / factor(q);
}

const char* unit_label(UnitSystem s, Quantity q) {
  if (s == UnitSystem::natural) {
    switch (q) {
      case Quantity::frequency: return "eV (natural frequency unit)";
      case Quantity::temperature: return "eV (k_B = 1)";
      case Quantity::length: return "hbar c / eV";
      case Quantity::density: return "(eV / hbar c)^3";
      case Quantity::dipole_sq: return "(hbar c / eV)^2";
      case Quantity::broadening_rate: return "eV (hbar c / eV)^3";
      case Quantity::energy: return "eV";
      case Quantity::force_per_area: return "eV (eV / hbar c)^3";
      case Quantity::dimensionless: return "1";
    }
  }
  switch (q) {
    case Quantity::frequency: return "eV (hbar omega)";
    case Quantity::temperature: return "K";
    case Quantity::length: return "m";
    case Quantity::density: return "cm^-3";
    case Quantity::dipole_sq: return "(e a0)^2";
    case Quantity::broadening_rate: return "eV cm^3";
    case Quantity::energy: return "eV";
    case Quantity::force_per_area: return "Pa";
    case Quantity::dimensionless: return "1";
  }
  return "1";
}

nlohmann::json conversion_constants() {
  return {
      {"electron_volt_J", kElectronVolt},
      {"hbar_c_eV_m", kHbarC_eVm},
      {"boltzmann_eV_per_K", kBoltzmann_eV},
      {"bohr_radius_m", kBohrRadius},
      {"fine_structure", kFineStructure},
      {"natural_length_m", kLengthUnit},
      {"natural_volume_cm3", kVolumeUnitCm3},
      {"natural_dipole_sq_per_e2a0_2", factor(Quantity::dipole_sq)},
      {"natural_force_per_area_per_Pa", factor(Quantity::force_per_area)},
  };
}

} // namespace casimir::cli
