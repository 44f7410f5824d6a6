#pragma once

#include "cli/units.hpp"

#include "casimir/pairpot.hpp"
#include "casimir/quad.hpp"
#include "casimir/slab.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir::cli {

enum class Mode { pair_potential, slab_force, sweep, validate };

/// Throws ConfigError for an unknown mode name.
Mode parse_mode(const std::string& name);
const char* mode_name(Mode m);

/// Schema violation. `field` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

enum class PairMethod { automatic, real_axis, imaginary_axis, matsubara };

struct PairInput {
  PairConfig config;
  PairMethod method = PairMethod::automatic;
};

/// `components` reports force_components; `pairwise` the direct half-space sum.
enum class SlabEvaluation { components, explicit_form, reduced, high_temperature, pairwise };

struct SlabInput {
  SlabConfig config;
  SlabEvaluation evaluation = SlabEvaluation::components;
};

struct SweepAxis {
  std::string variable;  // dotted path, e.g. "pair.separation"
  double min = 0.0;
  double max = 0.0;
  int points = 2;
  bool log = false;

  /// Sample points in configuration units, in input order.
  std::vector<double> values() const;
};

struct RunConfig {
  Mode mode = Mode::validate;
  UnitSystem units = UnitSystem::natural;
  nlohmann::json document;  // as read, used for sweeps and the sidecar
  QuadratureSpec tolerances;
  std::optional<SweepAxis> sweep;
  std::string section;      // "pair" or "slab" for computing modes
  std::vector<int> criteria;  // validate mode; empty means all
};

/// Default tolerances of the tool: the absolute tolerance is effectively off
/// because potentials at large separations are far below any fixed floor.
QuadratureSpec default_tolerances();

/// Checks the whole document against the schema of the mode, including one
/// trial parse of the physical section.
RunConfig parse_config(const nlohmann::json& doc, Mode mode);
RunConfig load_config(const std::string& path, Mode mode);

PairInput parse_pair(const nlohmann::json& section, UnitSystem units);
SlabInput parse_slab(const nlohmann::json& section, UnitSystem units);

/// Copy of `doc` with the dotted numeric field replaced by `value`.
nlohmann::json with_field(const nlohmann::json& doc, const std::string& dotted, double value);

/// Unit of a sweepable field, inferred from its key.
Quantity field_quantity(const std::string& dotted);

} // namespace casimir::cli
