#include "casimir/greens.hpp"

#include "casimir/errors.hpp"

#include <cmath>

namespace casimir {

Tensor3 green_tensor_retarded(cplx n, cplx omega, const Vec3& separation) {
  const double r = std::sqrt(separation[0] * separation[0] + separation[1] * separation[1] +
                             separation[2] * separation[2]);
  if (!(r > 0.0)) throw DomainError("green_tensor_retarded: coincident points (R = 0)");
  const cplx x = n * omega * r;
  if (x == 0.0) throw DomainError("green_tensor_retarded: n omega R = 0");

  const cplx I{0.0, 1.0};
  const cplx inv = 1.0 / x;
  const cplx a = 1.0 + I * inv - inv * inv;
  const cplx b = 3.0 * inv * inv - 3.0 * I * inv - 1.0;
  const cplx pref = omega * omega * std::exp(I * x) / r;

  const Vec3 rhat{separation[0] / r, separation[1] / r, separation[2] / r};
  Tensor3 d{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      d[i][j] = pref * ((i == j ? a : cplx{0.0, 0.0}) + rhat[i] * rhat[j] * b);
    }
  }
  return d;
}

Tensor3 green_tensor_advanced(cplx n, cplx omega, const Vec3& separation) {
  Tensor3 d = green_tensor_retarded(n, omega, separation);
  for (auto& row : d) {
    for (auto& v : row) v = std::conj(v);
  }
  return d;
}

cplx tensor_square_contraction(const Tensor3& d) {
  cplx sum{0.0, 0.0};
  for (const auto& row : d) {
    for (const auto& v : row) sum += v * v;
  }
  return sum;
}

RadialKernelValue radial_kernels(cplx n, cplx omega, double distance) {
  if (!(distance > 0.0)) throw DomainError("radial_kernels: R must be > 0");
  const cplx x = n * omega * distance;
  if (x == 0.0) throw DomainError("radial_kernels: x = n omega R = 0");
  const cplx I{0.0, 1.0};
  const cplx inv = 1.0 / x;
  const cplx inv2 = inv * inv;
  const cplx f = 1.0 + inv * (2.0 * I + inv * (-5.0 + inv * (-6.0 * I + 3.0 * inv)));
  const cplx g = 1.0 + inv2 + 3.0 * inv2 * inv2;
  return {f, g, x};
}

cplx imaginary_axis_bracket(cplx n, double u, double distance) {
  const cplx k = 1.0 / (n * distance);
  // Horner in u: u^4 + 2k u^3 + 5k^2 u^2 + 6k^3 u + 3k^4
  return (((u + 2.0 * k) * u + 5.0 * k * k) * u + 6.0 * k * k * k) * u + 3.0 * k * k * k * k;
}

} // namespace casimir
