#include "casimir/pairpot.hpp"

#include "casimir/errors.hpp"
#include "casimir/greens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace casimir {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx coth_weight(cplx omega, double temperature) {
  if (temperature == 0.0) return {1.0, 0.0};
  return 1.0 / std::tanh(omega / (2.0 * temperature));
}

cplx alpha_A(const PairConfig& cfg, cplx omega) { return polarizability(cfg.species_A, cfg.state_A, omega); }
cplx alpha_B(const PairConfig& cfg, cplx omega) { return polarizability_multilevel(cfg.species_B, omega); }

// alpha_A alpha_B (w^4 / R^2) f_nonres(n w R) e^{2 i n w R}, with w^4 f_nonres
// expanded as a polynomial in w so that small w stays finite.
cplx fluctuation_integrand(const PairConfig& cfg, cplx omega) {
  const double R = cfg.separation;
  const cplx n = refractive_index(cfg.medium, omega, cfg.density);
  const cplx k = 1.0 / (n * R);
  const cplx k2 = k * k;
  const cplx poly = (((omega + 2.0 * kI * k) * omega - 5.0 * k2) * omega - 6.0 * kI * k2 * k) * omega + 3.0 * k2 * k2;
  return alpha_A(cfg, omega) * alpha_B(cfg, omega) * poly * std::exp(2.0 * kI * n * omega * R) / (R * R);
}

// Imaginary-axis integrand alpha_A(iu) alpha_B(iu) u^4 (...) e^{-2 n u R} / R^2.
cplx rotated_integrand(const PairConfig& cfg, double u) {
  const double R = cfg.separation;
  const cplx iu{0.0, u};
  const cplx n = refractive_index(cfg.medium, iu, cfg.density);
  return alpha_A(cfg, iu) * alpha_B(cfg, iu) * imaginary_axis_bracket(n, u, R) * std::exp(-2.0 * n * u * R) / (R * R);
}

struct Indentation {
  double center;
  double radius;
};

// Upper half-plane detours around every real-axis singularity cluster: the
// atomic lines of A and B, and the band [w_m, w_L] of each medium line where
// an undamped permittivity is negative.
std::vector<Indentation> indentations(const PairConfig& cfg) {
  std::vector<std::pair<double, double>> spans;
  for (const auto& t : cfg.species_A.transitions) spans.emplace_back(t.frequency, t.frequency);
  for (const auto& t : cfg.species_B.transitions) spans.emplace_back(t.frequency, t.frequency);
  const double density = cfg.medium.density_for(cfg.density);
  if (density > 0.0) {
    for (const auto& t : cfg.medium.species().transitions) {
      const double w = t.frequency;
      const double wl = std::sqrt(w * w + 4.0 * M_PI * density * 2.0 * t.dipole_sq * w / 3.0);
      spans.emplace_back(w, wl);
    }
  }
  std::sort(spans.begin(), spans.end());

  std::vector<std::pair<double, double>> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.first - merged.back().second < 0.25 * s.first) {
      merged.back().second = std::max(merged.back().second, s.second);
    } else {
      merged.push_back(s);
    }
  }

  std::vector<Indentation> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double lo = merged[i].first;
    const double hi = merged[i].second;
    const double gap_prev = i == 0 ? inf : lo - merged[i - 1].second;
    const double gap_next = i + 1 == merged.size() ? inf : merged[i + 1].first - hi;
    const double margin = 0.25 * std::min({lo, gap_prev, gap_next});
    out.push_back({0.5 * (lo + hi), 0.5 * (hi - lo) + margin});
  }
  return out;
}

void accumulate(QuadratureResult& total, const QuadratureResult& part, cplx scale) {
  total.value += scale * part.value;
  total.error += std::abs(scale) * part.error;
  total.evaluations += part.evaluations;
}

// Re (i/pi) int_0^inf coth(w/2T) F(w) dw along the indented contour. On the
// real segments only the projected value -coth Im F / pi is integrated, which
// stays finite at w = 0 where coth has its pole.
QuadratureResult real_axis_fluctuation(const PairConfig& cfg, const QuadratureSpec& spec) {
  const double T = cfg.temperature;
  const double R = cfg.separation;
  auto projected = [&](double w) -> cplx {
    const cplx v = coth_weight(w, T) * fluctuation_integrand(cfg, w);
    return {-v.imag() / M_PI, 0.0};
  };
  auto on_arc = [&](cplx z) -> cplx { return coth_weight(z, T) * fluctuation_integrand(cfg, z); };

  const double period = M_PI / R;  // period of e^{2 i w R}
  auto segment = [&](double a, double b) {
    std::vector<double> interior;
    const double step = std::max(period, (b - a) / 2000.0);
    for (double p = a + step; p < b; p += step) interior.push_back(p);
    return integrate_interval(projected, a, b, spec, interior);
  };

  QuadratureResult total;
  double left = 0.0;
  for (const auto& ind : indentations(cfg)) {
    accumulate(total, segment(left, ind.center - ind.radius), 1.0);
    const QuadratureResult arc = integrate_arc(on_arc, ind.center, ind.radius, M_PI, 0.0, spec);
    // Only the real part of (i/pi) times the arc integral survives.
    accumulate(total, arc, kI / M_PI);
    left = ind.center + ind.radius;
  }

  QuadratureSpec tail_spec = spec;
  tail_spec.breakpoints.clear();
  tail_spec.oscillation_scale = 2.0 * R;
  tail_spec.max_evals = std::max<long>(1, spec.max_evals - total.evaluations);
  const QuadratureResult tail = integrate_semiaxis([&](double t) { return projected(left + t); }, tail_spec);
  accumulate(total, tail, 1.0);
  total.tail_blocks = tail.tail_blocks;
  total.brute_tail = tail.brute_tail;
  total.value = {total.value.real(), 0.0};
  return total;
}

AtomSpecies floored(const AtomSpecies& s, double ratio) {
  AtomSpecies out = s;
  for (auto& t : out.transitions) {
    if (t.width == 0.0) t.width = ratio * t.frequency;
  }
  return out;
}

PairPotentialResult assemble(double nonres, double res, double error, long evals, long terms, bool floor) {
  PairPotentialResult r;
  r.U_nonres = nonres;
  r.U_res = res;
  r.U_total = nonres + res;
  r.error = error;
  r.evaluations = evals;
  r.matsubara_terms = terms;
  r.gamma_floor_applied = floor;
  return r;
}

} // namespace

void PairConfig::validate() const {
  species_A.validate();
  species_B.validate();
  if (!(separation > 0.0) || !std::isfinite(separation)) throw DomainError("PairConfig.separation must be > 0");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw DomainError("PairConfig.temperature must be >= 0");
  if (!(gamma_floor_ratio > 0.0)) throw DomainError("PairConfig.gamma_floor_ratio must be > 0");
}

double resonant_term(const PairConfig& cfg, bool with_absorption, bool* floor_applied) {
  if (floor_applied) *floor_applied = false;
  if (cfg.state_A != AtomState::excited) return 0.0;
  const Transition& t = cfg.species_A.primary();
  const double w = t.frequency;
  const double R = cfg.separation;

  cplx alpha;
  cplx n;
  try {
    alpha = alpha_B(cfg, w);
    n = refractive_index(cfg.medium, w, cfg.density);
  } catch (const DomainError&) {
    // Undamped line exactly on the emission frequency: take gamma -> 0+.
    PairConfig damped = cfg;
    damped.species_B = floored(cfg.species_B, cfg.gamma_floor_ratio);
    if (!cfg.medium.is_vacuum()) {
      damped.medium = MediumSpec(floored(cfg.medium.species(), cfg.gamma_floor_ratio), cfg.medium.total_density(),
                                 cfg.medium.temperature(), cfg.medium.populations());
    }
    alpha = alpha_B(damped, w);
    n = refractive_index(damped.medium, w, cfg.density);
    if (floor_applied) *floor_applied = true;
  }
  const cplx x = n * w * R;
  const cplx x2 = x * x;
  const cplx g = 1.0 + 1.0 / x2 + 3.0 / (x2 * x2);
  const double decay = with_absorption ? std::exp(-2.0 * n.imag() * w * R) : 1.0;
  const double w4 = w * w * w * w;
  return -(2.0 / 3.0) * t.dipole_sq * thermal_coth(w, cfg.temperature) * (alpha * g).real() * w4 / (R * R) * decay;
}

PairPotentialResult potential_finite_T(const PairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  const QuadratureResult q = real_axis_fluctuation(cfg, spec);
  bool floor = false;
  const double res = resonant_term(cfg, true, &floor);
  return assemble(q.value.real(), res, q.error, q.evaluations, 0, floor);
}

PairPotentialResult potential_T0(const PairConfig& cfg, const QuadratureSpec& spec) {
  if (cfg.temperature != 0.0) throw DomainError("potential_T0: temperature must be 0");
  return potential_finite_T(cfg, spec);
}

PairPotentialResult potential_imaginary_axis(const PairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  if (cfg.temperature != 0.0) throw DomainError("potential_imaginary_axis: temperature must be 0");
  const double R = cfg.separation;
  QuadratureSpec s = spec;
  s.oscillation_scale.reset();
  // Geometric points across the e^{-2uR} decay so that no panel straddles it blindly.
  s.breakpoints.clear();
  for (double f = 0.125; f <= 64.0; f *= 2.0) s.breakpoints.push_back(f / R);
  for (const auto& t : cfg.species_A.transitions) s.breakpoints.push_back(t.frequency);
  for (const auto& t : cfg.species_B.transitions) s.breakpoints.push_back(t.frequency);
  const QuadratureResult q = integrate_semiaxis([&](double u) { return rotated_integrand(cfg, u); }, s);
  bool floor = false;
  const double res = resonant_term(cfg, true, &floor);
  return assemble(-q.value.real() / M_PI, res, q.error / M_PI, q.evaluations, 0, floor);
}

PairPotentialResult potential_T0_ground_ground(const PairConfig& cfg, const QuadratureSpec& spec) {
  if (cfg.state_A != AtomState::ground) throw DomainError("potential_T0_ground_ground: atom A must be in the ground state");
  return potential_imaginary_axis(cfg, spec);
}

PairPotentialResult potential_matsubara(const PairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  const double T = cfg.temperature;
  if (!(T > 0.0)) throw DomainError("potential_matsubara: temperature must be > 0");
  const MatsubaraResult m = matsubara_sum([&](double u) { return rotated_integrand(cfg, u); }, T, spec);
  bool floor = false;
  const double res = resonant_term(cfg, true, &floor);
  return assemble(-(2.0 * T * m.value).real(), res, 2.0 * T * m.tail_bound, m.terms, m.terms, floor);
}

double asymptotic_potential(AsymptoticRegime regime, const PairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  const double R = cfg.separation;
  const Transition& a = cfg.species_A.primary();
  const Transition& b = cfg.species_B.primary();
  const double delta = b.frequency * b.frequency - a.frequency * a.frequency;
  switch (regime) {
    case AsymptoticRegime::nonretarded_vacuum_exc:
    case AsymptoticRegime::retarded_vacuum_exc: {
      if (delta == 0.0) throw DomainError("asymptotic_potential: w_A = w_B is a resonant pole");
      const double dd = a.dipole_sq * b.dipole_sq;
      if (regime == AsymptoticRegime::nonretarded_vacuum_exc) {
        return -(4.0 / 3.0) * dd * b.frequency / (delta * std::pow(R, 6));
      }
      return -(4.0 / 9.0) * dd * b.frequency * std::pow(a.frequency, 4) / (delta * R * R);
    }
    case AsymptoticRegime::nonretarded_medium_gg: {
      QuadratureSpec s = spec;
      s.oscillation_scale.reset();
      s.breakpoints = {a.frequency, b.frequency};
      auto f = [&](double u) {
        const cplx iu{0.0, u};
        const cplx n = refractive_index(cfg.medium, iu, cfg.density);
        const cplx n2 = n * n;
        return polarizability_multilevel(cfg.species_A, iu) * polarizability_multilevel(cfg.species_B, iu) / (n2 * n2);
      };
      const QuadratureResult q = integrate_semiaxis(f, s);
      return -(3.0 / M_PI) * q.value.real() / std::pow(R, 6);
    }
    case AsymptoticRegime::retarded_medium_gg: {
      const cplx n0 = refractive_index(cfg.medium, 0.0, cfg.density);
      const cplx value = 23.0 * polarizability_multilevel(cfg.species_A, 0.0) *
                         polarizability_multilevel(cfg.species_B, 0.0) / (4.0 * M_PI * std::pow(n0, 5) * std::pow(R, 7));
      return -value.real();
    }
  }
  throw DomainError("asymptotic_potential: unknown regime");
}

std::vector<DivergenceProbeRow> divergence_probe(const DivergenceProbeConfig& cfg, const std::vector<double>& cutoffs,
                                                 bool perturbative, const QuadratureSpec& spec) {
  cfg.probe.validate();
  const double z0 = cfg.distance;
  if (!(z0 > 0.0)) throw DomainError("divergence_probe: distance must be > 0");
  if (cfg.half_space.is_vacuum()) throw DomainError("divergence_probe: half-space density must be > 0");
  for (double c : cutoffs) {
    if (!(c > z0)) throw DomainError("divergence_probe: every cutoff must exceed the distance");
  }

  PairConfig pair;
  pair.species_A = cfg.probe;
  pair.species_B = cfg.half_space.species();
  pair.state_A = AtomState::excited;
  pair.medium = cfg.half_space;
  pair.density = cfg.density;
  pair.temperature = 0.0;

  const double density = cfg.half_space.populations().ground;
  auto kernel = [&](double R) -> double {
    if (perturbative) {
      PairConfig at = pair;
      at.separation = R;
      return asymptotic_potential(AsymptoticRegime::retarded_vacuum_exc, at);
    }
    PairConfig at = pair;
    at.separation = R;
    return resonant_term(at, true);
  };
  auto integrand = [&](double R) -> cplx { return {density * kernel(R) * 2.0 * M_PI * R * (R - z0), 0.0}; };

  std::vector<double> sorted = cutoffs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<DivergenceProbeRow> rows;
  double running = 0.0;
  double running_err = 0.0;
  double from = z0;
  for (double to : sorted) {
    std::vector<double> interior;
    for (double p = 2.0 * from; p < to; p *= 2.0) interior.push_back(p);
    const QuadratureResult q = integrate_interval(integrand, from, to, spec, interior);
    running += q.value.real();
    running_err += q.error;
    rows.push_back({to, running, running_err});
    from = to;
  }
  return rows;
}

} // namespace casimir
