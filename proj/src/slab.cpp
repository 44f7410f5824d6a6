#include "casimir/slab.hpp"

#include "casimir/errors.hpp"
#include "casimir/pairpot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace casimir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Line {
  double w;
  double d2;
  double width;  // collisional
  double n0;
  Populations pop;
  double k_br;
};

Line line_of(const MediumSpec& m) {
  const Transition& t = m.species().primary();
  return {t.frequency, t.dipole_sq, collisional_width(m.species(), m.total_density()), m.total_density(),
          m.populations(), m.species().broadening_rate};
}

double closed_form_path(double w_emit, const Line& absorber) {
  const double delta = absorber.w * absorber.w - w_emit * w_emit;
  const double gw = absorber.width * w_emit;
  const double den = 4.0 * M_PI * absorber.pop.ground * absorber.d2 * absorber.width * w_emit * w_emit;
  if (den == 0.0) return kInf;
  return 3.0 * (delta * delta + gw * gw) / den;
}

double refractive_path(double w_emit, const MediumSpec& absorber) {
  const Line l = line_of(absorber);
  if (l.width == 0.0 || l.pop.ground == 0.0 || l.d2 == 0.0) return kInf;
  const MediumSpec broadened(with_collisional_width(absorber.species(), absorber.total_density()),
                             absorber.total_density(), absorber.temperature(), absorber.populations());
  const double im = refractive_index(broadened, w_emit).imag();
  if (!(im > 0.0)) return kInf;
  return 1.0 / (2.0 * im * w_emit);
}

// w^3 (n_exc n_gnd) coth(w/2T); the density product is formed first so that
// swapping the media reproduces it bit for bit.
double bracket_term(double w, double exc, double gnd, double coth) { return w * w * w * (exc * gnd) * coth; }

double width_term(const SlabConfig& cfg, const Line& a, const Line& b) {
  const double gb = b.width * a.w;
  if (!cfg.symmetrized_width) return gb * gb;
  const double ga = a.width * b.w;
  return 0.5 * (gb * gb + ga * ga);
}

MediumSpec rebuilt(const MediumSpec& m, double density, double temperature) {
  return MediumSpec(m.species(), density, temperature);
}

SlabConfig with_boltzmann(const SlabConfig& cfg) {
  SlabConfig out = cfg;
  out.medium_A = rebuilt(cfg.medium_A, cfg.medium_A.total_density(), cfg.temperature);
  out.medium_B = rebuilt(cfg.medium_B, cfg.medium_B.total_density(), cfg.temperature);
  return out;
}

double lifshitz(const SlabConfig& cfg, const Line& a, const Line& b) {
  const double T = cfg.temperature;
  const double L = cfg.separation;
  return 2.0 * M_PI * T / (9.0 * L * L * L) * (b.d2 * a.d2) * (a.n0 * b.n0) / (a.w * b.w) * std::tanh(a.w / (2.0 * T)) *
         std::tanh(b.w / (2.0 * T));
}

double non_resonant(const SlabConfig& cfg, const Line& a, const Line& b) {
  const double T = cfg.temperature;
  const double L = cfg.separation;
  const double alpha_a = polarizability_multilevel(cfg.medium_A.species(), 0.0).real();
  const double alpha_b = polarizability_multilevel(cfg.medium_B.species(), 0.0).real();
  return M_PI / (2.0 * L * L * L) * T * alpha_a * alpha_b * (a.pop.ground - a.pop.excited) *
         (b.pop.ground - b.pop.excited);
}

} // namespace

void SlabConfig::validate() const {
  medium_A.species().validate();
  medium_B.species().validate();
  if (!(separation > 0.0) || !std::isfinite(separation)) throw DomainError("SlabConfig.separation must be > 0");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw DomainError("SlabConfig.temperature must be > 0");
}

SlabConfig make_slab_config(const AtomSpecies& species_A, double density_A, const AtomSpecies& species_B,
                            double density_B, double separation, double temperature) {
  SlabConfig cfg;
  cfg.medium_A = MediumSpec(species_A, density_A, temperature);
  cfg.medium_B = MediumSpec(species_B, density_B, temperature);
  cfg.separation = separation;
  cfg.temperature = temperature;
  cfg.validate();
  return cfg;
}

MeanFreePaths mean_free_paths(const SlabConfig& cfg) {
  cfg.validate();
  const Line a = line_of(cfg.medium_A);
  const Line b = line_of(cfg.medium_B);
  MeanFreePaths out;
  out.closed_1 = closed_form_path(a.w, b);
  out.closed_2 = closed_form_path(b.w, a);
  out.refractive_1 = refractive_path(a.w, cfg.medium_B);
  out.refractive_2 = refractive_path(b.w, cfg.medium_A);
  return out;
}

SlabValidity slab_validity(const SlabConfig& cfg, double L_ph1, double L_ph2) {
  const double L = cfg.separation;
  const double w_min = std::min(cfg.medium_A.species().primary().frequency, cfg.medium_B.species().primary().frequency);
  const double longest = std::max(L_ph1, L_ph2);
  SlabValidity v;
  v.large_LT = L * cfg.temperature >= 10.0;
  v.retarded = L >= 10.0 * 2.0 * M_PI / w_min;
  v.beyond_mean_free_path = std::isfinite(longest) && L >= 10.0 * longest;
  return v;
}

SlabForceResult force_components(const SlabConfig& cfg) {
  cfg.validate();
  const Line a = line_of(cfg.medium_A);
  const Line b = line_of(cfg.medium_B);
  const double T = cfg.temperature;
  const double L = cfg.separation;
  const MeanFreePaths mfp = mean_free_paths(cfg);

  SlabForceResult r;
  r.L_ph1 = mfp.first(cfg.route);
  r.L_ph2 = mfp.second(cfg.route);
  r.validity = slab_validity(cfg, r.L_ph1, r.L_ph2);

  const double delta = b.w * b.w - a.w * a.w;
  const double bracket = bracket_term(a.w, a.pop.excited, b.pop.ground, thermal_coth(a.w, T)) -
                         bracket_term(b.w, a.pop.ground, b.pop.excited, thermal_coth(b.w, T));
  if (delta != 0.0 && bracket != 0.0) {
    r.F_res = 4.0 * M_PI / 9.0 * (r.L_ph1 * r.L_ph2) / L * (a.d2 * b.d2) * (b.w * a.w) * delta /
              (delta * delta + width_term(cfg, a, b)) * bracket;
  }
  r.F_nres = non_resonant(cfg, a, b);
  r.F_Lif = lifshitz(cfg, a, b);
  r.F_total = r.F_res + r.F_nres;
  return r;
}

SlabForceResult force_total(const SlabConfig& input, SlabMode mode) {
  input.validate();
  const SlabConfig cfg = with_boltzmann(input);
  const Line a = line_of(cfg.medium_A);
  const Line b = line_of(cfg.medium_B);
  const double T = cfg.temperature;
  const double L = cfg.separation;
  const MeanFreePaths mfp = mean_free_paths(cfg);

  SlabForceResult r;
  r.L_ph1 = mfp.first(cfg.route);
  r.L_ph2 = mfp.second(cfg.route);
  r.validity = slab_validity(cfg, r.L_ph1, r.L_ph2);
  r.F_Lif = lifshitz(cfg, a, b);
  r.F_nres = non_resonant(cfg, a, b);

  if (mode != SlabMode::explicit_form) {
    if (!(a.n0 > 0.0) || !(b.n0 > 0.0)) {
      throw DomainError("force_total: densities must be > 0 when the mean free paths are substituted");
    }
    if (!(a.k_br > 0.0) || !(b.k_br > 0.0)) {
      throw DomainError("force_total: broadening rates must be > 0 when the mean free paths are substituted");
    }
  }

  const double delta = b.w * b.w - a.w * a.w;
  const double ea = std::exp(-a.w / T);
  const double eb = std::exp(-b.w / T);
  const double occupancy = (1.0 + ea) * (1.0 + eb);
  const double bracket =
      a.w * a.w * a.w * ea * thermal_coth(a.w, T) - b.w * b.w * b.w * eb * thermal_coth(b.w, T);

  double correction = 0.0;
  if (delta != 0.0) {
    switch (mode) {
      case SlabMode::explicit_form:
        correction = 4.0 * M_PI * (r.L_ph1 * r.L_ph2) / (9.0 * L) * (a.d2 * b.d2) * (b.w * a.w) * delta *
                     (a.n0 * b.n0) / ((delta * delta + width_term(cfg, a, b)) * occupancy) * bracket;
        break;
      case SlabMode::reduced:
        correction = delta * delta * delta * bracket /
                     (4.0 * M_PI * L * a.w * b.w * a.n0 * b.n0 * a.k_br * b.k_br * occupancy);
        break;
      case SlabMode::high_temperature:
        correction = -T * (delta * delta) * (delta * delta) / (8.0 * M_PI * L * a.w * b.w * a.n0 * b.n0 * a.k_br * b.k_br);
        break;
    }
  }
  r.F_res = correction;
  r.F_total = r.F_Lif + correction;
  return r;
}

double balance_density_scale(const SlabConfig& cfg, SlabMode mode, double s_min, double s_max) {
  if (!(s_min > 0.0) || !(s_max > s_min)) throw DomainError("balance_density_scale: need 0 < s_min < s_max");
  auto force_at = [&](double s) {
    SlabConfig scaled = cfg;
    scaled.medium_A = rebuilt(cfg.medium_A, s * cfg.medium_A.total_density(), cfg.temperature);
    scaled.medium_B = rebuilt(cfg.medium_B, s * cfg.medium_B.total_density(), cfg.temperature);
    return force_total(scaled, mode).F_total;
  };
  double lo = std::log(s_min);
  double hi = std::log(s_max);
  const double f_lo = force_at(s_min);
  const double f_hi = force_at(s_max);
  if (!(f_lo * f_hi < 0.0)) {
    throw NumericalError("balance_density_scale: force does not change sign on the bracket", f_lo, std::abs(f_hi), 2);
  }
  long evals = 2;
  while (hi - lo > 1e-15 * std::max(1.0, std::abs(lo)) && evals < 400) {
    const double mid = 0.5 * (lo + hi);
    const double f = force_at(std::exp(mid));
    ++evals;
    if (f == 0.0) return std::exp(mid);
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

PairwiseForce pairwise_halfspace_force(const SlabConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  const double L = cfg.separation;
  const double T = cfg.temperature;
  const Line a = line_of(cfg.medium_A);
  const Line b = line_of(cfg.medium_B);
  PairwiseForce out;

  PairConfig gg;
  gg.species_A = cfg.medium_A.species();
  gg.species_B = cfg.medium_B.species();
  gg.temperature = T;
  // Pair potentials at slab distances are far below any fixed absolute
  // tolerance, so the inner sums are purely relative and the outer integrals
  // run on integrands scaled to order one.
  QuadratureSpec inner = spec;
  inner.abs_tol = std::numeric_limits<double>::min();
  auto ground_ground = [&](double h) {
    PairConfig at = gg;
    at.separation = h;
    const PairPotentialResult p = potential_matsubara(at, inner);
    out.evaluations += p.evaluations;
    return p.U_total;
  };
  const double weight = (a.pop.ground - a.pop.excited) * (b.pop.ground - b.pop.excited);
  const double nres_scale = std::abs(ground_ground(L)) * L * L * L;
  QuadratureSpec outer = spec;
  outer.oscillation_scale.reset();
  outer.breakpoints = {L};
  if (nres_scale > 0.0) {
    const QuadratureResult nres = integrate_semiaxis(
        [&](double t) -> cplx { return {ground_ground(L + t) * (L + t) * t / nres_scale, 0.0}; }, outer);
    out.F_nres = -2.0 * M_PI * weight * nres.value.real() * nres_scale;
    out.error += 2.0 * M_PI * std::abs(weight) * nres.error * nres_scale;
    out.evaluations += nres.evaluations;
  }

  const double resonant_pairs = a.pop.excited * b.pop.ground + a.pop.ground * b.pop.excited;
  if (resonant_pairs == 0.0) return out;

  const MeanFreePaths mfp = mean_free_paths(cfg);
  const double depth_A = mfp.refractive_2;
  const double depth_B = mfp.refractive_1;
  if (!std::isfinite(depth_A) || !std::isfinite(depth_B)) {
    throw DomainError("pairwise_halfspace_force: infinite mean free path, the resonant sum diverges");
  }

  PairConfig ab;
  ab.species_A = cfg.medium_A.species();
  ab.species_B = cfg.medium_B.species();
  ab.state_A = AtomState::excited;
  ab.temperature = T;
  PairConfig ba = ab;
  std::swap(ba.species_A, ba.species_B);

  auto overlap = [&](double h) {
    const double t = h - L;
    return std::max(0.0, std::min({t, depth_A, depth_B, depth_A + depth_B - t}));
  };
  auto weighted = [&](double h) {
    ab.separation = h;
    ba.separation = h;
    const double u = a.pop.excited * b.pop.ground * resonant_term(ab, false) +
                     a.pop.ground * b.pop.excited * resonant_term(ba, false);
    return u * h * overlap(h);
  };
  const double top = L + depth_A + depth_B;
  const double knee = L + std::min(depth_A, depth_B);
  const double res_scale = std::abs(weighted(knee)) * (top - L);
  if (res_scale == 0.0) return out;
  const QuadratureResult res = integrate_interval([&](double h) -> cplx { return {weighted(h) / res_scale, 0.0}; },
                                                  L, top, spec, {knee, L + std::max(depth_A, depth_B)});
  out.F_res = -2.0 * M_PI * res.value.real() * res_scale;
  out.error += 2.0 * M_PI * res.error * res_scale;
  out.evaluations += res.evaluations;
  return out;
}

} // namespace casimir
