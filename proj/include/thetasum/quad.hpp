#pragma once

#include <cstdint>
#include <vector>

#include "thetasum/hp.hpp"

namespace thetasum {

// sqrt(pi) exp(eta^2/4) = int_R exp(eta t - t^2) dt
Complex gaussian_selfsim(const Complex& eta);

// h(z,w) = int_0^1 t^z e^{wt} dt, Re(w) <= 0.
Complex h_kernel(int z, const Complex& w);

// h(0..zmax, w) by stable recurrences.
std::vector<Complex> h_table(int zmax, const Complex& w);

struct Approx {
  Complex value;
  double bound = 0.0;
};

struct ApproxVec {
  std::vector<Complex> values;
  double bound = 0.0;
};

// For each polynomial P (coefficients in s, low order first):
//   int_0^T P(s) exp(-lambda s - beta s^2) ds
// with Re(lambda) >= 0, Re(beta) >= 0. T < 0 means +infinity.
ApproxVec poly_gauss_integrals(const std::vector<std::vector<Complex>>& polys,
                               const Complex& lambda, const Complex& beta,
                               const Real& T, double tol);

struct JSpec {
  std::int64_t K = 1;
  int j = 0;
  Real M;  // nonnegative integer, may exceed 64 bits
  Real w;
  Real b;
};

// J(K,l;M,w,b) for l = 0..spec.j
//   = K^{-l} int_0^K t^l e^{-2 pi w t - 2 pi i b t^2} (1 - e^{-2 pi M t}) / (e^{2 pi t} - 1) dt
ApproxVec integral_J_all(const JSpec& spec, double tol);
Complex integral_J(const JSpec& spec, const PrecCtx& ctx, double eps);

enum class ContourTag { C0, C1bar, C7, C9, C9_rotated };

// Itilde_C(K,l;w,b) = K^{-l} int_C z^l exp(-2 pi w z - 2 pi i b z^2) dz, l = 0..jmax.
// C0 is [0,K] with e(a t + b t^2), i.e. w = -i a.  For C0 pass a in `w` (real).
// C9_rotated is the real ray; pass the complex w and b' = -2ib.
ApproxVec integral_I_tilde_all(ContourTag tag, std::int64_t K, int jmax, const Complex& w,
                               const Complex& b, double tol);
Complex integral_I_tilde(ContourTag tag, std::int64_t K, int j, const Complex& w, const Complex& b,
                         const PrecCtx& ctx, double eps);

// I_C0(K,l;a,b) = K^{-l} int_0^K t^l e(a t + b t^2) dt for l = 0..jmax, real a, b >= 0.
ApproxVec integral_C0_all(std::int64_t K, int jmax, const Real& a, const Real& b, double tol);

}  // namespace thetasum
