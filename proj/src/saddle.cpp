#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetasum/theta.hpp"

namespace thetasum {

std::vector<Complex> saddle_coefficients(int j, const Real& a, const Real& b, std::int64_t K) {
  if (!(b > 0.0)) throw std::domain_error("saddle_coefficients: b must be positive");
  const Real q = floor(a + b * Real(static_cast<long>(K)) * 2);
  if (q < 1.0) throw std::domain_error("saddle_coefficients: q = 0");

  const Real s2pb = sqrt(two_pi() / b);
  // j! sqrt(2pi) e^{i pi/4} e(-a^2/(4b)) / (2^{j/2} (2 sqrt(b pi))^{j+1} K^j)
  Complex common = eighth_root(1) * e2pi(-sqr(a) / (b * 4));
  Real mag = factorial(j) * sqrt(two_pi());
  mag /= pow(sqrt2(), j);
  mag /= pow(sqrt(b * pi()) * 2, j + 1);
  mag /= pow(Real(static_cast<long>(K)), j);
  common *= mag;

  // (a e^{-3 pi i/4} sqrt(2pi/b))^l
  Complex x = eighth_root(-3) * (a * s2pb);
  std::vector<Complex> xp(j + 1);
  xp[0] = Complex(1);
  for (int l = 1; l <= j; ++l) xp[l] = xp[l - 1] * x;

  std::vector<Complex> w(j + 1);
  Real qs(1), ss(1);
  for (int s = 0; s <= j; ++s) {
    Complex inner;
    for (int l = 0; l <= j - s; ++l) {
      if ((j - s - l) % 2) continue;
      Real c = Real(1) / (factorial(l) * factorial((j - s - l) / 2));
      if (((j + l - s) / 2) % 2) c = -c;
      fma_into(inner, xp[l], c);
    }
    Complex t = common * eighth_root(3 * (j - s));
    t *= qs * ss / factorial(s);
    w[s] = t * inner;
    qs *= q;
    ss *= s2pb;
  }
  return w;
}

CoefficientCheck check_coefficient_growth(int j, const Real& a, const Real& b, std::int64_t K,
                                          double eps) {
  CoefficientCheck c;
  std::vector<std::vector<Complex>> W(j + 1);
  for (int m = 0; m <= j; ++m) W[m] = saddle_coefficients(m, a, b, K);
  for (int s = 0; s <= j; ++s) {
    double sum = 0;
    for (int m = s; m <= j; ++m) sum += abs_d(W[m][s]);
    c.lhs = std::max(c.lhs, sum);
  }
  const double bd = b.to_double();
  const double x = 2 * bd * static_cast<double>(K);
  const double n = nu(static_cast<double>(K), j, eps);
  double rhs = std::numeric_limits<double>::infinity();
  if (x >= 2 * n * n * n) {
    double g = 0;
    for (int k = 0; k <= j; ++k) g += std::pow(j / x, k);
    rhs = std::min(rhs, std::exp(1.0) / std::sqrt(2 * bd) * std::pow(1 + 1 / x, j) * g);
  }
  if (x < 4 * n * n * n) rhs = std::min(rhs, (j + 1) * std::pow(4.0, j + 2) / std::sqrt(2 * bd));
  c.rhs = rhs;
  c.ok = c.lhs <= rhs * (1 + 1e-12);
  return c;
}

}  // namespace thetasum
