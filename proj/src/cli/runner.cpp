#include "cli/runner.hpp"

#include "casimir/acceptance.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

namespace casimir::cli {

using nlohmann::json;

namespace {

struct Point {
  double x = 0.0;       // in configuration units
  json document;
};

std::vector<Point> points_of(const RunConfig& rc) {
  if (!rc.sweep) {
    return {{rc.document.at(rc.section).at("separation").get<double>(), rc.document}};
  }
  std::vector<Point> out;
  for (double v : rc.sweep->values()) out.push_back({v, with_field(rc.document, rc.sweep->variable, v)});
  return out;
}

std::string x_column(const RunConfig& rc) { return rc.sweep ? rc.sweep->variable : rc.section + ".separation"; }

json tolerance_json(const QuadratureSpec& s) {
  return {{"abs_tol", s.abs_tol}, {"rel_tol", s.rel_tol}, {"max_evals", s.max_evals}};
}

json base_sidecar(const RunConfig& rc) {
  json j;
  j["tool"] = "casimir_cli";
  j["version"] = kToolVersion;
  j["mode"] = mode_name(rc.mode);
  j["inputs"] = rc.document;
  j["tolerances"] = tolerance_json(rc.tolerances);
  j["units"] = {{"system", unit_system_name(rc.units)}, {"constants", conversion_constants()}};
  return j;
}

PairPotentialResult evaluate_pair(const PairInput& in, const QuadratureSpec& spec) {
  const PairConfig& c = in.config;
  switch (in.method) {
    case PairMethod::real_axis: return potential_finite_T(c, spec);
    case PairMethod::imaginary_axis: return potential_imaginary_axis(c, spec);
    case PairMethod::matsubara: return potential_matsubara(c, spec);
    case PairMethod::automatic: break;
  }
  return c.temperature == 0.0 ? potential_imaginary_axis(c, spec) : potential_matsubara(c, spec);
}

RunOutput run_pair(const RunConfig& rc, int workers) {
  const std::vector<Point> pts = points_of(rc);
  std::vector<PairPotentialResult> results(pts.size());
  double floor_ratio = 0.0;
  {
    const PairInput first = parse_pair(pts.front().document.at("pair"), rc.units);
    floor_ratio = first.config.gamma_floor_ratio;
  }
  parallel_for(pts.size(), workers, [&](std::size_t i) {
    results[i] = evaluate_pair(parse_pair(pts[i].document.at("pair"), rc.units), rc.tolerances);
  });

  RunOutput out;
  out.stem = "pair_potential";
  const std::string xcol = x_column(rc);
  out.table.header = {xcol, "U_total", "U_nonres", "U_res", "error_estimate", "evaluations", "gamma_floor_applied"};
  bool floor_used = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& r = results[i];
    auto energy = [&](double v) { return from_natural(rc.units, Quantity::energy, v); };
    out.table.rows.push_back({pts[i].x, energy(r.U_total), energy(r.U_nonres), energy(r.U_res), energy(r.error),
                              r.evaluations, r.gamma_floor_applied});
    floor_used = floor_used || r.gamma_floor_applied;
    char line[200];
    std::snprintf(line, sizeof line, "%s=%s U_total=%s", xcol.c_str(), format_number(pts[i].x).c_str(),
                  format_number(energy(r.U_total)).c_str());
    out.lines.push_back(line);
  }
  out.sidecar = base_sidecar(rc);
  out.sidecar["gamma_floor_ratio"] = floor_ratio;
  out.sidecar["gamma_floor_applied"] = floor_used;
  out.sidecar["columns"] = {
      {xcol, unit_label(rc.units, field_quantity(xcol))},
      {"U_total", unit_label(rc.units, Quantity::energy)},
      {"U_nonres", unit_label(rc.units, Quantity::energy)},
      {"U_res", unit_label(rc.units, Quantity::energy)},
      {"error_estimate", unit_label(rc.units, Quantity::energy)},
      {"evaluations", "integrand evaluations or Matsubara terms"},
      {"gamma_floor_applied", "zero widths replaced by gamma_floor_ratio * omega on an undamped pole"},
  };
  return out;
}

struct SlabRow {
  SlabForceResult r;
  double error = 0.0;
};

SlabRow evaluate_slab(const SlabInput& in, const QuadratureSpec& spec) {
  const SlabConfig& c = in.config;
  switch (in.evaluation) {
    case SlabEvaluation::components: return {force_components(c), 0.0};
    case SlabEvaluation::explicit_form: return {force_total(c, SlabMode::explicit_form), 0.0};
    case SlabEvaluation::reduced: return {force_total(c, SlabMode::reduced), 0.0};
    case SlabEvaluation::high_temperature: return {force_total(c, SlabMode::high_temperature), 0.0};
    case SlabEvaluation::pairwise: break;
  }
  SlabRow row{force_components(c), 0.0};
  const PairwiseForce pw = pairwise_halfspace_force(c, spec);
  row.r.F_res = pw.F_res;
  row.r.F_nres = pw.F_nres;
  row.r.F_total = pw.F_res + pw.F_nres;
  row.error = pw.error;
  return row;
}

std::string validity_note(const SlabValidity& v) {
  std::string s;
  if (!v.large_LT) s += " L*T < 10";
  if (!v.retarded) s += " L < 10 wavelengths";
  if (!v.beyond_mean_free_path) s += " L < 10 mean free paths";
  return s;
}

RunOutput run_slab(const RunConfig& rc, int workers) {
  const std::vector<Point> pts = points_of(rc);
  std::vector<SlabRow> results(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) {
    results[i] = evaluate_slab(parse_slab(pts[i].document.at("slab"), rc.units), rc.tolerances);
  });

  RunOutput out;
  out.stem = "slab_force";
  const std::string xcol = x_column(rc);
  out.table.header = {xcol,    "F_total", "F_res",    "F_nres",   "F_Lif",          "L_ph1",
                      "L_ph2", "valid_LT", "valid_retarded", "valid_mean_free_path", "error_estimate"};
  auto force = [&](double v) { return from_natural(rc.units, Quantity::force_per_area, v); };
  auto length = [&](double v) { return from_natural(rc.units, Quantity::length, v); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& r = results[i].r;
    out.table.rows.push_back({pts[i].x, force(r.F_total), force(r.F_res), force(r.F_nres), force(r.F_Lif),
                              length(r.L_ph1), length(r.L_ph2), r.validity.large_LT, r.validity.retarded,
                              r.validity.beyond_mean_free_path, force(results[i].error)});
    if (!r.validity.all()) {
      out.warnings.push_back("row " + std::to_string(i) + " (" + xcol + "=" + format_number(pts[i].x) +
                             ") outside validity regime:" + validity_note(r.validity));
    }
    out.lines.push_back(xcol + "=" + format_number(pts[i].x) + " F_total=" + format_number(force(r.F_total)));
  }
  const std::string f = unit_label(rc.units, Quantity::force_per_area);
  const std::string l = unit_label(rc.units, Quantity::length);
  out.sidecar = base_sidecar(rc);
  out.sidecar["gamma_floor_ratio"] = nullptr;
  out.sidecar["gamma_floor_applied"] = false;
  out.sidecar["sign_convention"] = "positive force means attraction";
  out.sidecar["columns"] = {
      {xcol, unit_label(rc.units, field_quantity(xcol))},
      {"F_total", f},
      {"F_res", f},
      {"F_nres", f},
      {"F_Lif", f},
      {"L_ph1", l},
      {"L_ph2", l},
      {"valid_LT", "L T >= 10"},
      {"valid_retarded", "L >= 10 * 2 pi / omega_min"},
      {"valid_mean_free_path", "L >= 10 * max(L_ph1, L_ph2), finite"},
      {"error_estimate", f},
  };
  out.sidecar["warnings"] = out.warnings;
  return out;
}

RunOutput run_validate(const RunConfig& rc, int workers) {
  std::vector<int> ids = rc.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> results(ids.size());
  parallel_for(ids.size(), workers, [&](std::size_t i) { results[i] = run_criterion(ids[i]); });

  RunOutput out;
  out.stem = "validate";
  out.table.header = {"criterion", "name", "passed", "measured", "tolerance", "detail"};
  for (const auto& r : results) {
    out.table.rows.push_back({static_cast<long>(r.id), r.name, r.passed, r.measured, r.tolerance, r.detail});
    out.lines.push_back(format_criterion(r));
    out.all_passed = out.all_passed && r.passed;
  }
  out.sidecar = base_sidecar(rc);
  out.sidecar["gamma_floor_ratio"] = PairConfig{}.gamma_floor_ratio;
  out.sidecar["all_passed"] = out.all_passed;
  return out;
}

} // namespace

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

RunOutput execute(const RunConfig& rc, int workers) {
  switch (rc.mode) {
    case Mode::validate: return run_validate(rc, workers);
    default: return rc.section == "pair" ? run_pair(rc, workers) : run_slab(rc, workers);
  }
}

int run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunOutput result;
  try {
    const RunConfig rc = load_config(opts.config_path, opts.mode);
    result = execute(rc, opts.workers);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << " (estimate " << format_number(e.estimate()) << ", error "
        << format_number(e.error()) << ", evaluations " << e.evaluations() << ")\n";
    return exit_numerical;
  }

  try {
    write_outputs(opts.out_dir, result.stem, result.table, result.sidecar);
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return exit_config;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  for (const auto& l : result.lines) out << l << "\n";
  if (opts.mode == Mode::validate && !result.all_passed) return exit_numerical;
  return exit_ok;
}

} // namespace casimir::cli
