#pragma once

#include "casimir/spectra.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace casimir {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  long max_evals = 4'000'000;
  /// Frequencies where the integrand has structure (transition frequencies,
  /// resonances). The finite part of a semi-axis integral is split there.
  std::vector<double> breakpoints;
  /// Phase rate k of an e^{i k w} factor. When set, the tail of a semi-axis
  /// integral is summed in half-period blocks and accelerated.
  std::optional<double> oscillation_scale;

  void validate() const;
  double target(double magnitude) const noexcept;
};

struct QuadratureResult {
  cplx value{};
  double error = 0.0;
  long evaluations = 0;
  /// Number of tail blocks used (0 for the mapped non-oscillatory tail).
  long tail_blocks = 0;
  /// True when the block-sum acceleration stalled and the tail was summed by brute extension.
  bool brute_tail = false;
};

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

/// Globally adaptive 15-point Gauss-Kronrod over [a, b], optionally split at
/// interior points. Throws NumericalError when max_evals is exhausted.
QuadratureResult integrate_interval(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec,
                                    const std::vector<double>& interior = {});

/// Integral of f over (0, inf). Non-oscillatory tails are mapped to a finite
/// interval and must decay faster than 1/w; oscillatory tails are summed in
/// half-period blocks with Wynn epsilon acceleration.
QuadratureResult integrate_semiaxis(const RealIntegrand& f, const QuadratureSpec& spec);

/// Contour integral of f(z) dz along z = center + radius e^{i theta},
/// theta from theta_begin to theta_end.
QuadratureResult integrate_arc(const ComplexIntegrand& f, double center, double radius, double theta_begin,
                               double theta_end, const QuadratureSpec& spec);

struct MatsubaraResult {
  cplx value{};
  long terms = 0;
  double tail_bound = 0.0;
};

/// Sum over n >= 0 of g(2 pi n T), the n = 0 term weighted by 1/2. Terms are
/// added until the last term and the geometric tail bound from the observed
/// term ratio both fall below the tolerance.
MatsubaraResult matsubara_sum(const std::function<cplx(double)>& g, double temperature, const QuadratureSpec& spec,
                              long max_terms = 1'000'000);

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// extrapolated limit and an error estimate.
std::pair<cplx, double> wynn_epsilon(const std::vector<cplx>& partial_sums);

} // namespace casimir
