#pragma once

#include "casimir/spectra.hpp"

#include <array>

namespace casimir {

using Vec3 = std::array<double, 3>;
using Tensor3 = std::array<std::array<cplx, 3>, 3>;

/// Retarded photon Green tensor of an infinite homogeneous medium in the
/// frequency-coordinate domain:
///   D = (w^2 e^{i n w R} / R) [ delta A(x) + rhat rhat B(x) ],  x = n w R,
///   A = 1 + i/x - 1/x^2,   B = 3/x^2 - 3i/x - 1.
/// omega may be complex (analytic continuation).
Tensor3 green_tensor_retarded(cplx n, cplx omega, const Vec3& separation);

/// Elementwise complex conjugate of the retarded tensor.
Tensor3 green_tensor_advanced(cplx n, cplx omega, const Vec3& separation);

/// Sum over both indices of D_{ij}^2.
cplx tensor_square_contraction(const Tensor3& d);

struct RadialKernelValue {
  cplx f_nonres;  // 1 + 2i/x - 5/x^2 - 6i/x^3 + 3/x^4
  cplx g_res;     // 1 + 1/x^2 + 3/x^4
  cplx x;
};

RadialKernelValue radial_kernels(cplx n, cplx omega, double distance);

/// Imaginary-axis form of the fluctuation bracket multiplied by u^4:
///   u^4 (1 + 2/s + 5/s^2 + 6/s^3 + 3/s^4),  s = n u R.
/// Written as a polynomial so that u = 0 is finite (3 / (n R)^4).
cplx imaginary_axis_bracket(cplx n, double u, double distance);

} // namespace casimir
