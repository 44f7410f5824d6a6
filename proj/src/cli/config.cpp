#include "cli/config.hpp"

#include "casimir/acceptance.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace casimir::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

enum class Bound { any, non_negative, positive };

double number(const json& obj, const std::string& path, const char* key, std::optional<double> fallback,
              Bound bound = Bound::any) {
  const std::string field = join(path, key);
  if (!obj.contains(key)) {
    if (!fallback) throw ConfigError(field, "missing required number");
    return *fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
  if (bound == Bound::non_negative && x < 0.0) throw ConfigError(field, "must be >= 0, got " + v.dump());
  if (bound == Bound::positive && !(x > 0.0)) throw ConfigError(field, "must be > 0, got " + v.dump());
  return x;
}

std::string text(const json& obj, const std::string& path, const char* key, const std::string& fallback,
                 std::initializer_list<const char*> choices) {
  const std::string field = join(path, key);
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw ConfigError(field, "expected a string");
  const std::string s = obj.at(key).get<std::string>();
  if (std::none_of(choices.begin(), choices.end(), [&](const char* c) { return s == c; })) {
    std::string list;
    for (const char* c : choices) list += std::string(list.empty() ? "" : ", ") + c;
    throw ConfigError(field, "expected one of {" + list + "}, got \"" + s + "\"");
  }
  return s;
}

bool flag(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  return obj.at(key).get<bool>();
}

Transition parse_transition(const json& v, const std::string& path, UnitSystem u) {
  require_object(v, path);
  check_keys(v, path, {"frequency", "dipole_sq", "width"});
  Transition t;
  t.frequency = to_natural(u, Quantity::frequency, number(v, path, "frequency", std::nullopt, Bound::positive));
  t.dipole_sq = to_natural(u, Quantity::dipole_sq, number(v, path, "dipole_sq", std::nullopt, Bound::non_negative));
  t.width = to_natural(u, Quantity::frequency, number(v, path, "width", 0.0, Bound::non_negative));
  return t;
}

// Either a "transitions" list or the two-level shorthand (frequency, dipole_sq, width).
AtomSpecies parse_species(const json& v, const std::string& path, UnitSystem u) {
  require_object(v, path);
  check_keys(v, path, {"transitions", "frequency", "dipole_sq", "width", "natural_width", "broadening_rate"});
  AtomSpecies s;
  if (v.contains("transitions")) {
    if (v.contains("frequency") || v.contains("dipole_sq") || v.contains("width")) {
      throw ConfigError(path, "give either \"transitions\" or the two-level fields, not both");
    }
    const json& list = v.at("transitions");
    const std::string lpath = join(path, "transitions");
    if (!list.is_array() || list.empty()) throw ConfigError(lpath, "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      s.transitions.push_back(parse_transition(list[i], join(lpath, std::to_string(i)), u));
    }
  } else {
    json two = json::object();
    for (const char* k : {"frequency", "dipole_sq", "width"}) {
      if (v.contains(k)) two[k] = v.at(k);
    }
    s.transitions.push_back(parse_transition(two, path, u));
  }
  s.natural_width = to_natural(u, Quantity::frequency, number(v, path, "natural_width", 0.0, Bound::non_negative));
  s.broadening_rate =
      to_natural(u, Quantity::broadening_rate, number(v, path, "broadening_rate", 0.0, Bound::non_negative));
  return s;
}

MediumSpec parse_medium(const json& v, const std::string& path, UnitSystem u, double temperature) {
  require_object(v, path);
  check_keys(v, path, {"species", "density", "populations"});
  if (!v.contains("species")) throw ConfigError(join(path, "species"), "missing required object");
  const AtomSpecies species = parse_species(v.at("species"), join(path, "species"), u);
  const double density = to_natural(u, Quantity::density, number(v, path, "density", std::nullopt, Bound::non_negative));
  std::optional<Populations> pops;
  if (v.contains("populations")) {
    const std::string ppath = join(path, "populations");
    const json& p = require_object(v.at("populations"), ppath);
    check_keys(p, ppath, {"ground", "excited"});
    pops = Populations{to_natural(u, Quantity::density, number(p, ppath, "ground", std::nullopt, Bound::non_negative)),
                       to_natural(u, Quantity::density, number(p, ppath, "excited", std::nullopt, Bound::non_negative))};
  }
  return MediumSpec(species, density, temperature, pops);
}

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

json::json_pointer pointer_of(const std::string& dotted) {
  std::string p;
  for (const auto& part : split_path(dotted)) {
    if (part.empty()) throw ConfigError("sweep.variable", "malformed path \"" + dotted + "\"");
    p += "/" + part;
  }
  return json::json_pointer(p);
}

const json* find_field(const json& doc, const std::string& dotted) {
  const json* cur = &doc;
  for (const auto& part : split_path(dotted)) {
    if (cur->is_object()) {
      auto it = cur->find(part);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) return nullptr;
      const std::size_t i = std::stoul(part);
      if (i >= cur->size()) return nullptr;
      cur = &(*cur)[i];
    } else {
      return nullptr;
    }
  }
  return cur;
}

SweepAxis parse_sweep(const json& doc) {
  const json& v = require_object(doc.at("sweep"), "sweep");
  check_keys(v, "sweep", {"variable", "min", "max", "points", "spacing"});
  SweepAxis axis;
  if (!v.contains("variable") || !v.at("variable").is_string()) {
    throw ConfigError("sweep.variable", "expected the dotted name of a numeric field");
  }
  axis.variable = v.at("variable").get<std::string>();
  pointer_of(axis.variable);
  const json* target = find_field(doc, axis.variable);
  if (target == nullptr) throw ConfigError("sweep.variable", "no field named \"" + axis.variable + "\"");
  if (!target->is_number()) throw ConfigError("sweep.variable", "\"" + axis.variable + "\" is not a numeric field");
  const std::string root = split_path(axis.variable).front();
  if (root != "pair" && root != "slab") {
    throw ConfigError("sweep.variable", "must lie inside \"pair\" or \"slab\", got \"" + axis.variable + "\"");
  }
  axis.min = number(v, "sweep", "min", std::nullopt);
  axis.max = number(v, "sweep", "max", std::nullopt);
  if (!v.contains("points") || !v.at("points").is_number_integer()) {
    throw ConfigError("sweep.points", "expected an integer >= 2");
  }
  const long long points = v.at("points").get<long long>();
  if (points < 2 || points > 1000000) throw ConfigError("sweep.points", "must be in [2, 1000000]");
  axis.points = static_cast<int>(points);
  axis.log = text(v, "sweep", "spacing", "lin", {"lin", "log"}) == "log";
  if (!(axis.min < axis.max)) throw ConfigError("sweep.max", "must be greater than sweep.min");
  if (axis.log && !(axis.min > 0.0)) throw ConfigError("sweep.min", "log spacing needs min > 0");
  return axis;
}

QuadratureSpec parse_tolerances(const json& doc) {
  QuadratureSpec spec = default_tolerances();
  if (!doc.contains("tolerances")) return spec;
  const json& v = require_object(doc.at("tolerances"), "tolerances");
  check_keys(v, "tolerances", {"abs_tol", "rel_tol", "max_evals"});
  spec.abs_tol = number(v, "tolerances", "abs_tol", spec.abs_tol, Bound::positive);
  spec.rel_tol = number(v, "tolerances", "rel_tol", spec.rel_tol, Bound::positive);
  if (v.contains("max_evals")) {
    if (!v.at("max_evals").is_number_integer() || v.at("max_evals").get<long long>() < 15) {
      throw ConfigError("tolerances.max_evals", "expected an integer >= 15");
    }
    spec.max_evals = v.at("max_evals").get<long>();
  }
  return spec;
}

} // namespace

Mode parse_mode(const std::string& name) {
  if (name == "pair-potential") return Mode::pair_potential;
  if (name == "slab-force") return Mode::slab_force;
  if (name == "sweep") return Mode::sweep;
  if (name == "validate") return Mode::validate;
  throw ConfigError("mode", "expected pair-potential, slab-force, sweep or validate, got \"" + name + "\"");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::pair_potential: return "pair-potential";
    case Mode::slab_force: return "slab-force";
    case Mode::sweep: return "sweep";
    case Mode::validate: return "validate";
  }
  return "";
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out[i] = log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

QuadratureSpec default_tolerances() {
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-8;
  return s;
}

PairInput parse_pair(const json& v, UnitSystem u) {
  const std::string path = "pair";
  require_object(v, path);
  check_keys(v, path,
             {"atom_A", "atom_B", "state_A", "separation", "temperature", "medium", "permittivity_density", "method",
              "gamma_floor_ratio"});
  PairInput in;
  PairConfig& c = in.config;
  for (const char* key : {"atom_A", "atom_B"}) {
    if (!v.contains(key)) throw ConfigError(join(path, key), "missing required object");
  }
  c.species_A = parse_species(v.at("atom_A"), "pair.atom_A", u);
  c.species_B = parse_species(v.at("atom_B"), "pair.atom_B", u);
  c.state_A = text(v, path, "state_A", "ground", {"ground", "excited"}) == "excited" ? AtomState::excited
                                                                                    : AtomState::ground;
  c.separation = to_natural(u, Quantity::length, number(v, path, "separation", std::nullopt, Bound::positive));
  c.temperature = to_natural(u, Quantity::temperature, number(v, path, "temperature", 0.0, Bound::non_negative));
  if (v.contains("medium")) c.medium = parse_medium(v.at("medium"), "pair.medium", u, c.temperature);
  c.density = text(v, path, "permittivity_density", "ground_population", {"ground_population", "total"}) == "total"
                  ? PermittivityDensity::total
                  : PermittivityDensity::ground_population;
  c.gamma_floor_ratio = number(v, path, "gamma_floor_ratio", c.gamma_floor_ratio, Bound::positive);
  const std::string method = text(v, path, "method", "auto", {"auto", "real_axis", "imaginary_axis", "matsubara"});
  if (method == "real_axis") in.method = PairMethod::real_axis;
  if (method == "imaginary_axis") in.method = PairMethod::imaginary_axis;
  if (method == "matsubara") in.method = PairMethod::matsubara;
  if (in.method == PairMethod::imaginary_axis && c.temperature != 0.0) {
    throw ConfigError("pair.method", "imaginary_axis needs temperature 0");
  }
  if (in.method == PairMethod::matsubara && c.temperature == 0.0) {
    throw ConfigError("pair.method", "matsubara needs temperature > 0");
  }
  return in;
}

SlabInput parse_slab(const json& v, UnitSystem u) {
  const std::string path = "slab";
  require_object(v, path);
  check_keys(v, path, {"medium_A", "medium_B", "separation", "temperature", "evaluation", "mean_free_path",
                       "symmetrized_width"});
  SlabInput in;
  SlabConfig& c = in.config;
  c.separation = to_natural(u, Quantity::length, number(v, path, "separation", std::nullopt, Bound::positive));
  c.temperature = to_natural(u, Quantity::temperature, number(v, path, "temperature", std::nullopt, Bound::positive));
  for (const char* key : {"medium_A", "medium_B"}) {
    if (!v.contains(key)) throw ConfigError(join(path, key), "missing required object");
  }
  c.medium_A = parse_medium(v.at("medium_A"), "slab.medium_A", u, c.temperature);
  c.medium_B = parse_medium(v.at("medium_B"), "slab.medium_B", u, c.temperature);
  c.route = text(v, path, "mean_free_path", "closed_form", {"closed_form", "refractive"}) == "refractive"
                ? MeanFreePathRoute::refractive
                : MeanFreePathRoute::closed_form;
  c.symmetrized_width = flag(v, path, "symmetrized_width", false);
  const std::string e = text(v, path, "evaluation", "components",
                             {"components", "explicit_form", "reduced", "high_temperature", "pairwise"});
  if (e == "explicit_form") in.evaluation = SlabEvaluation::explicit_form;
  if (e == "reduced") in.evaluation = SlabEvaluation::reduced;
  if (e == "high_temperature") in.evaluation = SlabEvaluation::high_temperature;
  if (e == "pairwise") in.evaluation = SlabEvaluation::pairwise;
  return in;
}

RunConfig parse_config(const json& doc, Mode mode) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  check_keys(doc, "", {"units", "pair", "slab", "sweep", "tolerances", "criteria"});
  RunConfig rc;
  rc.mode = mode;
  rc.document = doc;
  if (doc.contains("units") && !doc.at("units").is_string()) throw ConfigError("units", "expected a string");
  try {
    rc.units = parse_unit_system(doc.value("units", std::string("natural")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("units", e.what());
  }
  rc.tolerances = parse_tolerances(doc);

  if (mode == Mode::validate) {
    if (doc.contains("criteria")) {
      const json& list = doc.at("criteria");
      if (!list.is_array()) throw ConfigError("criteria", "expected an array of criterion numbers");
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (!list[i].is_number_integer() || list[i].get<int>() < 1 || list[i].get<int>() > kCriterionCount) {
          throw ConfigError("criteria." + std::to_string(i), "expected an integer in [1, 12]");
        }
        rc.criteria.push_back(list[i].get<int>());
      }
    }
    return rc;
  }

  if (doc.contains("sweep")) rc.sweep = parse_sweep(doc);
  switch (mode) {
    case Mode::pair_potential: rc.section = "pair"; break;
    case Mode::slab_force: rc.section = "slab"; break;
    default:
      if (!rc.sweep) throw ConfigError("sweep", "sweep mode needs a \"sweep\" object");
      rc.section = split_path(rc.sweep->variable).front();
  }
  if (rc.sweep && split_path(rc.sweep->variable).front() != rc.section) {
    throw ConfigError("sweep.variable", "must lie inside \"" + rc.section + "\" in " + mode_name(mode) + " mode");
  }
  if (!doc.contains(rc.section)) throw ConfigError(rc.section, "missing required object");

  // One trial parse of every sweep end point so schema errors surface before any work.
  std::vector<json> trials{doc};
  if (rc.sweep) {
    trials = {with_field(doc, rc.sweep->variable, rc.sweep->min), with_field(doc, rc.sweep->variable, rc.sweep->max)};
  }
  for (const json& t : trials) {
    try {
      if (rc.section == "pair") {
        parse_pair(t.at("pair"), rc.units).config.validate();
      } else {
        parse_slab(t.at("slab"), rc.units).config.validate();
      }
    } catch (const DomainError& e) {
      throw ConfigError(rc.section, e.what());
    }
  }
  return rc;
}

RunConfig load_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open \"" + path + "\"");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc, mode);
}

json with_field(const json& doc, const std::string& dotted, double value) {
  const json* target = find_field(doc, dotted);
  if (target == nullptr || !target->is_number()) throw ConfigError("sweep.variable", "no numeric field \"" + dotted + "\"");
  json out = doc;
  out[pointer_of(dotted)] = value;
  return out;
}

Quantity field_quantity(const std::string& dotted) {
  const std::vector<std::string> parts = split_path(dotted);
  const std::string& key = parts.back();
  const std::string parent = parts.size() > 1 ? parts[parts.size() - 2] : "";
  if (key == "frequency" || key == "width" || key == "natural_width") return Quantity::frequency;
  if (key == "temperature") return Quantity::temperature;
  if (key == "separation") return Quantity::length;
  if (key == "density" || parent == "populations") return Quantity::density;
  if (key == "dipole_sq") return Quantity::dipole_sq;
  if (key == "broadening_rate") return Quantity::broadening_rate;
  return Quantity::dimensionless;
}

} // namespace casimir::cli
