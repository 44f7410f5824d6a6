#include "casimir/quad.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace casimir {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// QUADPACK-style error scaling applied to one real component.
double scaled_error(double kronrod, double gauss, double resasc) {
  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return err;
}

Segment gk15(const RealIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx resk = fc * kWgk[7];
  cplx resg = fc * kWg[3];
  cplx fv1[7];
  cplx fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    resk += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) resg += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const cplx mean = 0.5 * resk;
  double asc_re = kWgk[7] * std::abs(fc.real() - mean.real());
  double asc_im = kWgk[7] * std::abs(fc.imag() - mean.imag());
  for (int j = 0; j < 7; ++j) {
    asc_re += kWgk[j] * (std::abs(fv1[j].real() - mean.real()) + std::abs(fv2[j].real() - mean.real()));
    asc_im += kWgk[j] * (std::abs(fv1[j].imag() - mean.imag()) + std::abs(fv2[j].imag() - mean.imag()));
  }
  const double ah = std::abs(half);
  const double err_re = scaled_error(resk.real() * ah, resg.real() * ah, asc_re * ah);
  const double err_im = scaled_error(resk.imag() * ah, resg.imag() * ah, asc_im * ah);
  const cplx value = resk * half;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw NumericalError("quadrature: integrand is not finite on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         0.0, std::numeric_limits<double>::infinity(), 15);
  }
  return {a, b, value, std::hypot(err_re, err_im)};
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec.abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec.rel_tol must be > 0");
  if (max_evals <= 0) throw DomainError("QuadratureSpec.max_evals must be > 0");
  if (oscillation_scale && !(*oscillation_scale > 0.0)) {
    throw DomainError("QuadratureSpec.oscillation_scale must be > 0");
  }
}

double QuadratureSpec::target(double magnitude) const noexcept {
  return std::max(abs_tol, rel_tol * magnitude);
}

QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec,
                                    const std::vector<double>& interior) {
  spec.validate();
  QuadratureResult out;
  if (a == b) return out;

  std::vector<double> cuts{a};
  for (double p : interior) {
    if (p > std::min(a, b) && p < std::max(a, b)) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end(), [&](double x, double y) { return a < b ? x < y : x > y; });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  cplx total{0.0, 0.0};
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gk15(f, cuts[i], cuts[i + 1]);
    out.evaluations += 15;
    total += s.value;
    err_total += s.error;
    heap.push(s);
  }

  cplx previous = total;
  std::vector<Segment> frozen;
  while (err_total > spec.target(std::abs(total))) {
    if (out.evaluations + 30 > spec.max_evals) {
      throw NumericalError("quadrature: max_evals exceeded", std::abs(total), err_total, out.evaluations);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
      // Interval at roundoff scale: freeze its estimate and stop refining it.
      frozen.push_back(worst);
      err_total -= worst.error;
      if (heap.empty()) break;
      continue;
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    previous = total;
    total += left.value + right.value - worst.value;
    err_total += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Recompute from the segments to avoid drift in the running sums.
  cplx sum{0.0, 0.0};
  double err = 0.0;
  std::vector<Segment> segs = frozen;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [&](const Segment& x, const Segment& y) { return a < b ? x.a < y.a : x.a > y.a; });
  for (const auto& s : segs) {
    sum += s.value;
    err += s.error;
  }
  out.value = sum;
  out.error = std::max(err, std::abs(sum - previous));
  return out;
}

QuadratureResult integrate_arc(const ComplexIntegrand& f, double center, double radius, double theta_begin,
                               double theta_end, const QuadratureSpec& spec) {
  if (!(radius > 0.0)) throw DomainError("integrate_arc: radius must be > 0");
  const cplx I{0.0, 1.0};
  auto along = [&](double theta) {
    const cplx e = std::exp(I * theta);
    return f(center + radius * e) * (I * radius * e);
  };
  return integrate_interval(along, theta_begin, theta_end, spec);
}

std::pair<cplx, double> wynn_epsilon(const std::vector<cplx>& s) {
  if (s.empty()) return {cplx{}, std::numeric_limits<double>::infinity()};
  if (s.size() < 3) return {s.back(), s.size() == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity()};

  auto extrapolate = [](const std::vector<cplx>& seq) -> cplx {
    // prev2 = column k-1, prev = column k; new column k+1.
    std::vector<cplx> prev2(seq.size() + 1, cplx{0.0, 0.0});
    std::vector<cplx> prev = seq;
    cplx best = seq.back();
    for (int k = 0; prev.size() > 1; ++k) {
      std::vector<cplx> next(prev.size() - 1);
      bool degenerate = false;
      for (std::size_t n = 0; n + 1 < prev.size(); ++n) {
        const cplx diff = prev[n + 1] - prev[n];
        if (diff == 0.0 || !finite(1.0 / diff)) {
          degenerate = true;
          break;
        }
        next[n] = prev2[n + 1] + 1.0 / diff;
      }
      if (degenerate) break;
      prev2 = std::move(prev);
      prev = std::move(next);
      if (k % 2 == 1) best = prev.back();  // even epsilon columns hold estimates
    }
    return best;
  };

  const cplx current = extrapolate(s);
  const std::vector<cplx> shorter(s.begin(), s.end() - 1);
  const cplx before = extrapolate(shorter);
  return {current, std::abs(current - before)};
}

QuadratureResult integrate_semiaxis(const RealIntegrand& f, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<double> pts;
  for (double p : spec.breakpoints) {
    if (p > 0.0 && std::isfinite(p)) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  const double split = pts.empty() ? 1.0 : 2.0 * pts.back();

  QuadratureResult out = integrate_interval(f, 0.0, split, spec, pts);
  long budget = spec.max_evals - out.evaluations;

  if (!spec.oscillation_scale) {
    // Divergence guard: w f(w) must fall off along the tail.
    const double w1 = split + 1e6 * (1.0 + split);
    const double w2 = split + 1e7 * (1.0 + split);
    const double m1 = std::abs(f(w1)) * w1;
    const double m2 = std::abs(f(w2)) * w2;
    if (m1 > spec.abs_tol && m2 >= 0.5 * m1) {
      throw NumericalError("integrate_semiaxis: non-decaying tail detected", std::abs(out.value),
                           std::numeric_limits<double>::infinity(), out.evaluations + 2);
    }
    auto mapped = [&](double t) -> cplx {
      if (t >= 1.0) return {0.0, 0.0};
      const double one_minus = 1.0 - t;
      const cplx v = f(split + t / one_minus);
      return v / (one_minus * one_minus);
    };
    QuadratureSpec tail_spec = spec;
    tail_spec.max_evals = budget;
    tail_spec.abs_tol = std::max(spec.abs_tol, 0.0) * 0.5;
    const QuadratureResult tail = integrate_interval(mapped, 0.0, 1.0, tail_spec);
    out.value += tail.value;
    out.error += tail.error;
    out.evaluations += tail.evaluations;
    return out;
  }

  // Oscillatory tail: half-period blocks starting at the split point.
  const double half_period = M_PI / *spec.oscillation_scale;
  const double block_target = 0.05 * spec.target(std::abs(out.value));
  std::vector<cplx> partial;
  cplx running{0.0, 0.0};
  cplx last_estimate{};
  double last_delta = std::numeric_limits<double>::infinity();
  int settled = 0;
  constexpr long kAccelBlocks = 400;
  constexpr long kBruteBlocks = 200000;
  double block_err = 0.0;
  for (long j = 0; j < kBruteBlocks; ++j) {
    const double lo = split + static_cast<double>(j) * half_period;
    QuadratureSpec bs = spec;
    bs.max_evals = budget;
    bs.abs_tol = std::max(block_target, std::numeric_limits<double>::min());
    const QuadratureResult block = integrate_interval(f, lo, lo + half_period, bs);
    budget -= block.evaluations;
    out.evaluations += block.evaluations;
    block_err += block.error;
    running += block.value;
    partial.push_back(running);
    out.tail_blocks = j + 1;

    const double target = spec.target(std::abs(out.value + running));
    if (j < kAccelBlocks) {
      if (partial.size() >= 6) {
        // Extrapolate from a bounded window to keep the table small.
        const std::size_t window = std::min<std::size_t>(partial.size(), 40);
        const std::vector<cplx> recent(partial.end() - static_cast<long>(window), partial.end());
        const auto [estimate, err] = wynn_epsilon(recent);
        const double delta = std::abs(estimate - last_estimate);
        last_estimate = estimate;
        last_delta = delta;
        settled = (delta <= 0.1 * target && err <= target) ? settled + 1 : 0;
        if (settled >= 2) {
          out.value += estimate;
          out.error += std::max(err, delta) + block_err;
          return out;
        }
      }
    } else {
      out.brute_tail = true;
      if (std::abs(block.value) <= 0.01 * target) {
        out.value += running;
        out.error += std::abs(block.value) + block_err;
        return out;
      }
    }
  }
  throw NumericalError("integrate_semiaxis: oscillatory tail did not converge",
                       std::abs(out.value + last_estimate), last_delta, out.evaluations);
}

MatsubaraResult matsubara_sum(const std::function<cplx(double)>& g, double temperature, const QuadratureSpec& spec,
                              long max_terms) {
  spec.validate();
  if (!(temperature > 0.0)) throw DomainError("matsubara_sum: temperature must be > 0");
  MatsubaraResult out;
  const double step = 2.0 * M_PI * temperature;
  cplx sum = 0.5 * g(0.0);
  double prev_mag = std::abs(sum) * 2.0;
  double prev_ratio = 1.0;
  for (long n = 1; n < max_terms; ++n) {
    const cplx term = g(step * static_cast<double>(n));
    if (!finite(term)) {
      throw NumericalError("matsubara_sum: non-finite term", std::abs(sum), std::numeric_limits<double>::infinity(), n);
    }
    sum += term;
    const double mag = std::abs(term);
    const double r = prev_mag > 0.0 ? mag / prev_mag : (mag == 0.0 ? 0.0 : 1.0);
    // Use the larger of the last two ratios so a single dip does not end the sum.
    const double ratio = n > 1 ? std::max(r, prev_ratio) : 1.0;
    prev_ratio = r;
    prev_mag = mag;
    const double target = spec.target(std::abs(sum));
    const double tail = ratio < 1.0 ? mag * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    if (mag <= target && tail <= target) {
      out.value = sum;
      out.terms = n + 1;
      out.tail_bound = tail;
      return out;
    }
  }
  throw NumericalError("matsubara_sum: term cap exceeded without decay", std::abs(sum),
                       std::numeric_limits<double>::infinity(), max_terms);
}

} // namespace casimir
