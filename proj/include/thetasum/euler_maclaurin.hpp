#pragma once

#include <cstdint>
#include <vector>

#include "thetasum/hp.hpp"
#include "thetasum/quad.hpp"

namespace thetasum {

// Exact B_n rounded to the working width. B_1 = -1/2.
Real bernoulli(int n);
// sup over [0,1] of |B_n(t)|
Real bernoulli_poly_bound(int n);
// numerator/denominator strings of the exact value
std::pair<std::string, std::string> bernoulli_exact(int n);

struct DerivPoly {
  int m = 0;
  std::vector<Complex> coeffs;  // in x, low order first
};

// f(x) = x^j/K^j e(ax + bx^2); f^{(m)}(x) = P_m(x) e(ax + bx^2)
DerivPoly deriv_poly(int m, std::int64_t K, int j, const Real& a, const Real& b);
Complex eval_poly(const std::vector<Complex>& c, const Real& x);

// sum_{m=m0}^{M} (2 pi m + 2 pi w)^{-alpha-1}, head of 10(m0+L) terms then Euler-Maclaurin.
Real em_tail_sum(long m0, const Real& M, int alpha, const Real& w, const PrecCtx& ctx, double eps);

struct RealVecApprox {
  std::vector<Real> values;
  double bound = 0.0;
};

// Same sum for alpha = 0..amax. head < 0 picks the head length adaptively.
RealVecApprox em_power_tails(long m0, const Real& M, int amax, const Real& w, double tol,
                             long head = -1);

// F(K,l;a,b) for l = 0..jmax on the branch floor(a+2bK) <= ceil(a).
ApproxVec em_quadratic_sums(std::int64_t K, int jmax, const Real& a, const Real& b, double tol);
Complex em_quadratic_sum(std::int64_t K, int j, const Real& a, const Real& b, const PrecCtx& ctx,
                         double eps);

// sum_{k=k0}^{k1} (k/scale)^l e(ak + bk^2), l = 0..jmax, by phase recurrences.
ApproxVec direct_sums(std::int64_t k0, std::int64_t k1, int jmax, const Real& a, const Real& b,
                      std::int64_t scale);

}  // namespace thetasum
