#include <cmath>
#include <stdexcept>

#include "thetasum/quad.hpp"

namespace thetasum {

Complex gaussian_selfsim(const Complex& eta) {
  Complex q = sqr(eta);
  q /= 4;
  return exp(q) * sqrt_pi();
}

namespace {

void check_half_plane(const Complex& w) {
  if (w.re > 0.0) throw std::domain_error("h_kernel: Re(w) > 0");
}

// Integral over [0,1] via t -> 1-t: e^w sum_k (-w)^k z!/(z+k+1)!.
Complex reflected_series(int z, const Complex& w) {
  const double r = abs_d(w);
  const double stop = std::ldexp(1.0, -static_cast<int>(working_bits()) - 8);
  Complex term(Real(1) / static_cast<long>(z + 1), Real(0));
  Complex sum = term;
  Complex mw = -w;
  double t_abs = 1.0 / (z + 1);
  const double t0 = t_abs;
  for (long k = 1;; ++k) {
    term *= mw;
    term /= static_cast<long>(z + k + 1);
    sum += term;
    double ratio = r / (z + k + 2);
    t_abs *= r / (z + k + 1);
    if (ratio < 0.5 && t_abs < stop * t0) break;
    if (k > 100000) throw std::runtime_error("h series did not converge");
  }
  return exp(w) * sum;
}

}  // namespace

std::vector<Complex> h_table(int zmax, const Complex& w) {
  check_half_plane(w);
  std::vector<Complex> h(zmax + 1);
  if (w.is_zero()) {
    for (int z = 0; z <= zmax; ++z) h[z] = Complex(Real(1) / static_cast<long>(z + 1), Real(0));
    return h;
  }
  const double r = abs_d(w);
  const Complex ew = exp(w);
  int zf = 0;
  if (r >= 1.0) zf = static_cast<int>(std::min<double>(zmax + 1, std::ceil(r)));
  if (zf > 0) {
    Complex winv = Complex(1) / w;
    h[0] = (ew - Complex(1)) * winv;
    for (int z = 1; z < zf; ++z) {
      Complex t = h[z - 1] * static_cast<long>(z);
      h[z] = (ew - t) * winv;
    }
  }
  if (zf <= zmax) {
    h[zmax] = reflected_series(zmax, w);
    for (int z = zmax; z > zf; --z) {
      Complex t = w * h[z];
      h[z - 1] = ew - t;
      h[z - 1] /= static_cast<long>(z);
    }
  }
  return h;
}

Complex h_kernel(int z, const Complex& w) {
  if (z < 0) throw std::domain_error("h_kernel: z < 0");
  check_half_plane(w);
  if (w.is_zero()) return Complex(Real(1) / static_cast<long>(z + 1), Real(0));
  const double r = abs_d(w);
  if (z < r) {
    // e^w sum_v (-1)^v z!/(z-v)! w^{-v-1} - (-1)^z z! w^{-z-1}
    Complex winv = Complex(1) / w;
    Complex term = winv;
    Complex sum = term;
    for (int v = 1; v <= z; ++v) {
      term *= winv;
      term *= -static_cast<long>(z - v + 1);
      sum += term;
    }
    // term = (-1)^z z! w^{-z-1}
    return exp(w) * sum - term;
  }
  // Split [0,1] into N pieces so |w|/N <= 1, then Taylor-expand e^{(w/N) u}.
  const long N = std::max<long>(1, static_cast<long>(std::ceil(r)));
  Complex lam = w / N;
  const double stop = std::ldexp(1.0, -static_cast<int>(working_bits()) - 8);
  std::vector<Complex> lam_pow{Complex(1)};
  {
    double mag = 1.0;
    for (long rr = 1; mag > stop; ++rr) {
      lam_pow.push_back(lam_pow.back() * lam / rr);
      mag *= std::max(1e-300, abs_d(lam)) / rr;
      if (rr > 4 * static_cast<long>(working_bits())) break;
    }
  }
  const int R = static_cast<int>(lam_pow.size());
  // A_i = int_0^1 u^i e^{lam u} du = sum_r lam^r/r! / (i+r+1), shared by every piece
  std::vector<Real> inv(z + R + 1);
  for (int n = 1; n <= z + R; ++n) inv[n] = Real(1) / static_cast<long>(n);
  std::vector<Complex> A(z + 1);
  for (int i = 0; i <= z; ++i)
    for (int rr = 0; rr < R; ++rr) fma_into(A[i], lam_pow[rr], inv[i + rr + 1]);
  // piece l contributes e^{lam l} int_0^1 (l+u)^z e^{lam u} du = e^{lam l} sum_i C(z,i) l^{z-i} A_i
  Complex total;
  const Complex step = exp(lam);
  Complex shift(1);
  for (long l = 0; l < N; ++l) {
    Complex inner = A[z];
    if (l > 0) {
      const Real lr(l);
      Real p(1);
      for (int i = z - 1; i >= 0; --i) {
        p *= lr;
        fma_into(inner, A[i], binom(z, i) * p);
      }
    }
    total += shift * inner;
    shift *= step;
  }
  return total / pow(Real(N), z + 1);
}

}  // namespace thetasum
