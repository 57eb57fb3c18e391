#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thetasum/euler_maclaurin.hpp"
#include "thetasum/quad.hpp"

namespace thetasum {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::vector<std::vector<Complex>> monomials(int jmax, std::int64_t K) {
  std::vector<std::vector<Complex>> polys(jmax + 1);
  Real kinv = Real(1) / Real(static_cast<long>(K));
  Real p(1);
  for (int l = 0; l <= jmax; ++l) {
    polys[l].assign(l + 1, Complex());
    polys[l][l] = Complex(p, Real(0));
    p *= kinv;
  }
  return polys;
}

// e^{i pi/4} int_0^inf P(x + e^{i pi/4} s) e(phi(x + e^{i pi/4} s)) ds, phi(t) = a t + b t^2,
// for polynomials (t/K)^l, l = 0..jmax. Requires phi'(x) >= 0 and b >= 0.
ApproxVec ray_from(const Real& x, std::int64_t K, int jmax, const Real& a, const Real& b,
                   double tol) {
  Complex rot = eighth_root(1);
  Real kinv = Real(1) / Real(static_cast<long>(K));
  Real xs = x * kinv;
  std::vector<std::vector<Complex>> polys(jmax + 1);
  // (xs + rot s/K)^l
  std::vector<Complex> rk(jmax + 1);
  std::vector<Real> xp(jmax + 1);
  rk[0] = Complex(1);
  xp[0] = Real(1);
  Complex rs = rot * kinv;
  for (int i = 1; i <= jmax; ++i) {
    rk[i] = rk[i - 1] * rs;
    xp[i] = xp[i - 1] * xs;
  }
  for (int l = 0; l <= jmax; ++l) {
    polys[l].resize(l + 1);
    for (int i = 0; i <= l; ++i) polys[l][i] = rk[i] * (binom(l, i) * xp[l - i]);
  }
  Real slope = a + b * x * 2;
  if (slope.sign() < 0) slope = Real(0);
  Complex lam(slope, -slope);
  lam *= sqrt2() * pi();
  Complex beta(two_pi() * b, Real(0));
  ApproxVec r = poly_gauss_integrals(polys, lam, beta, Real(-1), tol);
  Complex pref = e2pi(a * x + b * x * x) * rot;
  for (auto& v : r.values) v = pref * v;
  return r;
}

// int_{x0}^{x1} (t/K)^l e(at + bt^2) dt with a + 2bt >= 0 on the segment
void forward_segment(ApproxVec& acc, const Real& x0, const Real& x1, std::int64_t K, int jmax,
                     const Real& a, const Real& b, double tol, bool reflect) {
  ApproxVec r0 = ray_from(x0, K, jmax, a, b, tol / 2);
  ApproxVec r1 = ray_from(x1, K, jmax, a, b, tol / 2);
  for (int l = 0; l <= jmax; ++l) {
    Complex d = r0.values[l] - r1.values[l];
    // reflected polynomial (-t/K)^l
    if (reflect && (l % 2)) d = -d;
    acc.values[l] += d;
  }
  acc.bound += r0.bound + r1.bound;
}

}  // namespace

ApproxVec integral_C0_all(std::int64_t K, int jmax, const Real& a, const Real& b, double tol) {
  if (b.sign() < 0) throw std::domain_error("I_C0: b < 0");
  if (a < -1.0 || a > 1.0) throw std::domain_error("I_C0: |a| > 1");
  Real Kr(static_cast<long>(K));
  const double bd = b.to_double();
  const double Kd = static_cast<double>(K);
  if (kTwoPi * bd * Kd * Kd <= 400.0) {
    // direct on the real line
    Complex lam(Real(0), -two_pi() * a);
    Complex beta(Real(0), -two_pi() * b);
    return poly_gauss_integrals(monomials(jmax, K), lam, beta, Kr, tol);
  }
  ApproxVec acc;
  acc.values.assign(jmax + 1, Complex());
  Real t0 = -a / (b * 2);
  Real zero(0);
  Real na = -a;
  if (t0 <= 0.0) {
    forward_segment(acc, zero, Kr, K, jmax, a, b, tol / 2, false);
  } else if (t0 >= Kr) {
    // slope <= 0 throughout: t = -tau
    forward_segment(acc, -Kr, zero, K, jmax, na, b, tol / 2, true);
  } else {
    forward_segment(acc, -t0, zero, K, jmax, na, b, tol / 4, true);
    forward_segment(acc, t0, Kr, K, jmax, a, b, tol / 4, false);
  }
  return acc;
}

ApproxVec integral_I_tilde_all(ContourTag tag, std::int64_t K, int jmax, const Complex& w,
                               const Complex& b, double tol) {
  if (K < 1) throw std::domain_error("Itilde: K < 1");
  if (tag == ContourTag::C0) return integral_C0_all(K, jmax, w.re, b.re, tol);

  const auto polys = monomials(jmax, K);
  if (tag == ContourTag::C9_rotated) {
    // real ray, exp(-2 pi w t - 2 pi i b t^2) with complex b (caller passes -2ib)
    Complex lam = w * two_pi();
    Complex beta = mul_i(b) * two_pi();
    return poly_gauss_integrals(polys, lam, beta, Real(-1), tol);
  }

  if (!w.im.is_zero() || !b.im.is_zero())
    throw std::domain_error("Itilde: C1bar/C7/C9 take real w and b");
  const Real& wr = w.re;
  const Real& br = b.re;
  if (wr.sign() < 0 || br.sign() < 0) throw std::domain_error("Itilde: need w >= 0, b >= 0");
  if (tag == ContourTag::C9 && wr.is_zero() && br.is_zero())
    throw std::domain_error("Itilde: C9 diverges for w = b = 0");

  if (tag == ContourTag::C7 || tag == ContourTag::C9) {
    // z = e^{-i pi/4} s
    Complex lam(wr, -wr);
    lam *= sqrt2() * pi();
    Complex beta(two_pi() * br, Real(0));
    Real T = tag == ContourTag::C7 ? sqrt2() * Real(static_cast<long>(K)) : Real(-1);
    ApproxVec r = poly_gauss_integrals(polys, lam, beta, T, tol);
    for (int l = 0; l <= jmax; ++l) r.values[l] *= eighth_root(-(l + 1));
    return r;
  }

  // C1bar: z = K - i t, t in [0, K]
  const double Kd = static_cast<double>(K);
  const double lpref = -kTwoPi * wr.to_double() * Kd;
  ApproxVec out;
  out.values.assign(jmax + 1, Complex());
  const double env = lpref + jmax * std::log(2.0) + std::log(Kd + 1);
  if (env < std::log(tol) - 30) {
    out.bound = std::exp(env);
    return out;
  }
  Real Kr(static_cast<long>(K));
  std::vector<std::vector<Complex>> pol(jmax + 1);
  Complex step(Real(0), Real(-1) / Kr);
  for (int l = 0; l <= jmax; ++l) {
    pol[l].resize(l + 1);
    Complex p(1);
    for (int i = 0; i <= l; ++i) {
      pol[l][i] = p * binom(l, i);
      p *= step;
    }
  }
  Complex lam(two_pi() * br * Kr * 2, -two_pi() * wr);
  Complex beta(Real(0), -two_pi() * br);
  double inner_tol = std::min(1.0, tol * std::exp(std::min(700.0, -lpref)));
  ApproxVec r = poly_gauss_integrals(pol, lam, beta, Kr, inner_tol);
  Complex pref = e2pi(-br * Kr * Kr) * exp(-two_pi() * wr * Kr);
  pref = mul_i(-pref);
  for (int l = 0; l <= jmax; ++l) out.values[l] = pref * r.values[l];
  out.bound = r.bound * std::exp(std::max(-700.0, lpref));
  return out;
}

Complex integral_I_tilde(ContourTag tag, std::int64_t K, int j, const Complex& w, const Complex& b,
                         const PrecCtx& ctx, double eps) {
  PrecisionScope scope(ctx.bits);
  return integral_I_tilde_all(tag, K, j, w, b, eps).values[j];
}

// ---- J ----

ApproxVec integral_J_all(const JSpec& s, double tol) {
  const int jm = s.j;
  ApproxVec out;
  out.values.assign(jm + 1, Complex());
  if (s.M.sign() < 0) throw std::domain_error("J: M < 0");
  if (s.M.is_zero()) return out;
  if (s.K < 1) throw std::domain_error("J: K < 1");
  if (s.w.sign() < 0 || s.w >= Real(static_cast<long>(s.K)))
    throw std::domain_error("J: need 0 <= w < K");
  if (s.b.sign() < 0 || s.b > 1.0) throw std::domain_error("J: need 0 <= b <= 1");

  const double wd = s.w.to_double();
  const double bd = s.b.to_double();
  const double lnM = log(s.M).to_double();
  const double Md = lnM > 60 ? 1e30 : s.M.to_double();
  const long Mcap = Md > 1e15 ? static_cast<long>(1e15) : static_cast<long>(Md + 0.5);
  const double kernel_mass = lnM / kTwoPi + 2.0;

  // unit intervals [n, n+1], n < n_int
  long n_int = 1;
  while (n_int < s.K &&
         std::exp(-kTwoPi * (1 + wd) * n_int) / (kTwoPi * (1 + wd)) * 1.01 >= tol / 8)
    ++n_int;
  double err = n_int < s.K ? tol / 8 : 0.0;

  // Taylor of exp(-2 pi i b u^2) on [0,1]
  const double rho = kTwoPi * bd;
  int R = 0;
  if (rho > 0) {
    double target = tol / (8 * kernel_mass);
    double acc = std::log(rho) + rho;
    while (acc >= std::log(target)) {
      ++R;
      acc += std::log(rho) - std::log(R + 1.0);
    }
    err += std::exp(acc) * kernel_mass;
  }
  const int D = jm + 2 * R;
  std::vector<Complex> g(R + 1);
  g[0] = Complex(1);
  {
    Complex mb(Real(0), -two_pi() * s.b);
    for (int r = 1; r <= R; ++r) g[r] = g[r - 1] * mb / static_cast<long>(r);
  }
  std::vector<Real> kinv(jm + 1);
  kinv[0] = Real(1);
  for (int l = 1; l <= jm; ++l) kinv[l] = kinv[l - 1] / Real(static_cast<long>(s.K));
  const Real tp = two_pi();

  for (long n = 0; n < n_int; ++n) {
    std::vector<Complex> H(D + 1);
    if (n == 0) {
      const long m_split = std::max<long>(1, static_cast<long>(std::ceil((D + 1) / kTwoPi - wd)));
      const long m_direct = std::min(Mcap, m_split - 1);
      for (long m = 1; m <= m_direct; ++m) {
        Complex wh(-tp * (s.w + m), Real(0));
        auto h = h_table(D, wh);
        for (int a = 0; a <= D; ++a) H[a] += h[a];
      }
      if (s.M >= Real(m_split)) {
        RealVecApprox pt = em_power_tails(m_split, s.M, D, s.w, tol / (64 * std::exp(rho)));
        err += pt.bound * std::exp(rho);
        Real fac(1);
        for (int a = 0; a <= D; ++a) {
          if (a > 0) fac *= static_cast<long>(a);
          H[a].re += fac * pt.values[a];
        }
        // minus sum_m e^{-c_m} A_a(c_m), A_a = (1 + a A_{a-1})/c
        for (long m = m_split; m <= Mcap; ++m) {
          const double c = kTwoPi * (m + wd);
          if (std::exp(-c) * (D + 2) < tol / 64) {
            err += std::exp(-c) * (D + 2) * 2;
            break;
          }
          Real cm = tp * (s.w + m);
          Real ec = exp(-cm);
          Real A = Real(1) / cm;
          for (int a = 0; a <= D; ++a) {
            if (a > 0) A = (A * static_cast<long>(a) + 1) / cm;
            H[a].re -= ec * A;
          }
        }
      }
    } else {
      const double nd = static_cast<double>(n);
      for (long m = 1; m <= Mcap; ++m) {
        const double tail = std::exp(-kTwoPi * nd * m) / (1 - std::exp(-kTwoPi * nd)) * 3.0;
        if (tail < tol / (16.0 * n_int)) {
          err += tail;
          break;
        }
        Complex wh(-tp * (s.w + m), -tp * s.b * (2 * n));
        auto h = h_table(D, wh);
        Real em = exp(-tp * Real(m * n));
        for (int a = 0; a <= D; ++a) fma_into(H[a], h[a], em);
      }
    }
    // HP(i) = sum_r g_r H(i + 2r)
    std::vector<Complex> HP(jm + 1);
    for (int i = 0; i <= jm; ++i)
      for (int r = 0; r <= R; ++r) fma_into(HP[i], g[r], H[i + 2 * r]);
    Complex En(1);
    if (n > 0) {
      Real nn(n);
      En = e2pi(-s.b * nn * nn) * exp(-tp * s.w * nn);
    }
    std::vector<Real> np(jm + 1);
    np[0] = Real(1);
    for (int i = 1; i <= jm; ++i) np[i] = np[i - 1] * Real(n);
    for (int l = 0; l <= jm; ++l) {
      Complex acc;
      for (int i = 0; i <= l; ++i) fma_into(acc, HP[i], binom(l, i) * np[l - i]);
      out.values[l] += En * acc * kinv[l];
    }
  }
  err += kernel_mass * std::ldexp(1.0, 8 - static_cast<int>(working_bits())) * (D + 4);
  out.bound = err;
  return out;
}

Complex integral_J(const JSpec& spec, const PrecCtx& ctx, double eps) {
  PrecisionScope scope(ctx.bits);
  return integral_J_all(spec, eps).values[spec.j];
}

}  // namespace thetasum
