#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "thetasum/euler_maclaurin.hpp"

namespace thetasum {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// B_{2k}/(2k)! for k = 0..n
const std::vector<Real>& bernoulli_over_fact(int n) {
  thread_local std::map<prec_t, std::vector<Real>> cache;
  auto& v = cache[working_bits()];
  if (v.empty()) v.push_back(Real(1));
  for (int k = static_cast<int>(v.size()); k <= n; ++k) {
    Real fact = factorial(2 * k);
    v.push_back(bernoulli(2 * k) / fact);
  }
  return v;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

DerivPoly deriv_poly(int m, std::int64_t K, int j, const Real& a, const Real& b) {
  if (m < 0 || j < 0) throw std::domain_error("deriv_poly: negative order");
  DerivPoly p;
  p.m = m;
  p.coeffs.assign(j + 1, Complex());
  p.coeffs[j] = Complex(pow(Real(static_cast<long>(K)), -j), Real(0));
  Complex ia(Real(0), two_pi() * a);
  Complex ib(Real(0), two_pi() * b * 2);
  for (int step = 0; step < m; ++step) {
    const std::size_t n = p.coeffs.size();
    std::vector<Complex> next(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] += ia * p.coeffs[i];
      next[i + 1] += ib * p.coeffs[i];
      if (i > 0) next[i - 1] += p.coeffs[i] * static_cast<long>(i);
    }
    p.coeffs = std::move(next);
  }
  return p;
}

Complex eval_poly(const std::vector<Complex>& c, const Real& x) {
  Complex acc;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= x;
    acc += c[i];
  }
  return acc;
}

RealVecApprox em_power_tails(long m0, const Real& M, int amax, const Real& w, double tol,
                             long head) {
  if (m0 < 1 || amax < 0 || w.sign() < 0) throw std::domain_error("em_power_tails: bad input");
  if (M < Real(m0)) throw std::domain_error("em_power_tails: M < m0");
  RealVecApprox out;
  out.values.assign(amax + 1, Real());
  const double wd = w.to_double();
  const double lnM = log(M).to_double();

  long A;
  if (head >= 0) {
    A = m0 + head;
  } else {
    double P_est = std::ceil(std::max(1.0, -std::log(tol)) / std::log(4.0)) + 2;
    A = std::max<long>(m0, static_cast<long>(std::ceil((amax + 1 + 2 * P_est) / M_PI - wd)) + 1);
  }
  const bool all_direct = lnM < 40 && M.to_double() < static_cast<double>(A) + 0.5;
  const long head_end = all_direct ? static_cast<long>(M.to_double() + 0.5) : A - 1;

  for (long m = m0; m <= head_end; ++m) {
    Real x = Real(1) / (two_pi() * (w + m));
    Real p = x;
    for (int a = 0; a <= amax; ++a) {
      out.values[a] += p;
      p *= x;
    }
  }
  double err = (head_end - m0 + 1) * std::ldexp(1.0, 4 - static_cast<int>(working_bits()));
  if (all_direct) {
    out.bound = err;
    return out;
  }

  // Euler-Maclaurin on [A, M]
  const Real Aw = w + A;
  const Real Mw = w + M;
  const Real invA = Real(1) / Aw;
  const Real invM = Real(1) / Mw;
  const Real inv2pi = Real(1) / two_pi();
  const Real invA2 = sqr(invA);
  const Real invM2 = sqr(invM);
  const double lAw = std::log(wd + A);
  Real fA = inv2pi * invA;  // (2 pi (A+w))^{-s}
  Real fM = inv2pi * invM;
  Real logratio = log(Mw / Aw);
  for (int a = 0; a <= amax; ++a) {
    const long s = a + 1;
    if (a > 0) {
      fA *= inv2pi * invA;
      fM *= inv2pi * invM;
    }
    const double tol_a = tol / std::exp(log_factorial(a)) / (amax + 1);
    Real sum;
    if (s == 1) {
      sum = inv2pi * logratio;
    } else {
      // (2pi)^{-s} [(A+w)^{1-s} - (M+w)^{1-s}]/(s-1) = [fA (A+w) - fM (M+w)]/(s-1)
      sum = (fA * Aw - fM * Mw) / (s - 1);
    }
    sum += (fA + fM) / 2;
    // corrections: -B_{2k}/(2k)! (s)_{2k-1} [fM invM^{2k-1} - fA invA^{2k-1}]
    Real rise(s);  // (s)_1
    Real pA = fA * invA;
    Real pM = fM * invM;
    const double lfA = fA.log2_abs() * std::log(2.0);
    double lrise = std::log(static_cast<double>(s));
    int k = 1;
    double last = 0;
    for (;; ++k) {
      const auto& bf = bernoulli_over_fact(k);
      // magnitude estimate of the A-side term
      double lterm = std::log(std::fabs(bf[k].to_double())) + lrise + lfA - (2 * k - 1) * lAw;
      Real t = bf[k] * rise * (pM - pA);
      sum -= t;
      last = std::exp(lterm);
      if (last < tol_a / 4 && k > 1) break;
      if (k > 5000) throw std::runtime_error("em_power_tails: no convergence");
      rise *= Real((s + 2 * k - 1) * (s + 2 * k));
      lrise += std::log(static_cast<double>(s + 2 * k - 1)) + std::log(static_cast<double>(s + 2 * k));
      pA *= invA2;
      pM *= invM2;
    }
    err += 2 * last * std::exp(log_factorial(a));
    out.values[a] += sum;
  }
  out.bound = err;
  return out;
}

Real em_tail_sum(long m0, const Real& M, int alpha, const Real& w, const PrecCtx& ctx, double eps) {
  PrecisionScope scope(ctx.bits);
  const long L = static_cast<long>(std::ceil(std::log(1.0 / eps))) + 1;
  RealVecApprox r = em_power_tails(m0, M, alpha, w, eps * std::exp(log_factorial(alpha)), 10 * (m0 + L));
  return r.values[alpha];
}

ApproxVec direct_sums(std::int64_t k0, std::int64_t k1, int jmax, const Real& a, const Real& b,
                      std::int64_t scale) {
  ApproxVec out;
  out.values.assign(jmax + 1, Complex());
  if (k1 < k0) return out;
  const prec_t outer = working_bits();
  const long extra = 12;
  std::vector<Complex> acc(jmax + 1);
  {
    PrecisionScope scope(outer + extra);
    for (auto& v : acc) v = Complex();
    const Real inv_scale = Real(1) / Real(static_cast<long>(scale));
    const Complex step2 = e2pi(b * 2);
    constexpr std::int64_t kBlock = 256;
    Complex e, r, t;
    Real x, xp;
    for (std::int64_t ks = k0; ks <= k1; ks += kBlock) {
      Real kr(static_cast<long>(ks));
      e = e2pi((a + b * kr) * kr);
      r = e2pi(a + b * (kr * 2 + 1));
      const std::int64_t ke = std::min(k1, ks + kBlock - 1);
      for (std::int64_t k = ks; k <= ke; ++k) {
        acc[0] += e;
        if (jmax > 0) {
          x = Real(static_cast<long>(k)) * inv_scale;
          xp = x;
          for (int l = 1; l <= jmax; ++l) {
            fma_into(acc[l], e, xp);
            if (l < jmax) xp *= x;
          }
        }
        mul_into(e, e, r);
        mul_into(r, r, step2);
      }
    }
  }
  for (int l = 0; l <= jmax; ++l) {
    out.values[l] = Complex(Real(0), Real(0));
    out.values[l] += acc[l];
  }
  double maxw = std::max(1.0, std::pow(static_cast<double>(k1) / scale, jmax));
  out.bound = static_cast<double>(k1 - k0 + 1) * maxw *
              std::ldexp(1.0, 12 - static_cast<int>(outer + extra));
  return out;
}

ApproxVec em_quadratic_sums(std::int64_t K, int jmax, const Real& a, const Real& b, double tol) {
  const Real p = ceil(a);
  const Real q = floor(a + b * Real(static_cast<long>(K)) * 2);
  if (q > p) throw std::domain_error("em_quadratic_sums: wrong branch (q > p)");
  const std::int64_t K1 = K / 8;
  const double bd = b.to_double();
  const double tol_block = tol / 64;
  const double A = 0.5 + 2 * bd * static_cast<double>(K1);

  int P = 0;
  if (K1 >= 16) {
    const double Nmax = std::ceil(2 * std::log(std::pow(8.0, jmax) * std::pow(double(K), 3) / tol) /
                                  std::log(8.0 / 7.0) + 1);
    for (int c = 1; c <= Nmax; ++c) {
      double theta = A + (2.0 * c + jmax) / (kTwoPi * K1);
      if (theta >= 1) break;
      if (2 * c * std::log(theta) + std::log(4.0 * K1) < std::log(tol_block / 4)) {
        P = c;
        break;
      }
    }
  }
  if (P == 0) return direct_sums(0, K, jmax, a, b, K);

  ApproxVec out;
  out.values.assign(jmax + 1, Complex());
  const double theta = A + (2.0 * P + jmax) / (kTwoPi * K1);
  double err = 8 * 4.0 * K1 * std::exp(2 * P * std::log(theta));

  const Real K1r(static_cast<long>(K1));
  const Real ratio = K1r / Real(static_cast<long>(K));
  std::vector<Real> ratio_pow(jmax + 1);
  ratio_pow[0] = Real(1);
  for (int l = 1; l <= jmax; ++l) ratio_pow[l] = ratio_pow[l - 1] * ratio;
  const auto& bf = bernoulli_over_fact(P);
  // B_{2k}/(2k) = bf[k] (2k-1)!
  std::vector<Real> wk(P + 1);
  for (int k = 1; k <= P; ++k) wk[k] = bf[k] * factorial(2 * k - 1);
  std::vector<Real> kinv(jmax + 1);
  kinv[0] = Real(1);
  for (int i = 1; i <= jmax; ++i) kinv[i] = kinv[i - 1] / K1r;
  const Complex beta(Real(0), two_pi() * b);

  for (int m = 0; m < 8; ++m) {
    const Real Nm(static_cast<long>(m * K1));
    const Real am = centered_frac(a + b * Nm * 2);
    const Complex cm = e2pi((a + b * Nm) * Nm);
    ApproxVec I = integral_C0_all(K1, jmax, am, b, tol_block / 4);
    err += I.bound;
    const Complex E1 = e2pi((am + b * K1r) * K1r);
    std::vector<Complex> G = I.values;
    G[0] += (Complex(1) - E1) / 2;
    for (int i = 1; i <= jmax; ++i) G[i] -= E1 / 2;

    // Taylor coefficients of exp(2 pi i (phi'(x0) u + b u^2)) at x0 = 0 and K1
    for (int side = 0; side < 2; ++side) {
      const Real x0 = side == 0 ? Real(0) : K1r;
      Complex alpha(Real(0), two_pi() * (am + b * x0 * 2));
      std::vector<Complex> g(2 * P + 1);
      g[0] = Complex(1);
      g[1] = alpha;
      for (int k = 1; k < 2 * P; ++k) {
        Complex t = alpha * g[k];
        fma_into(t, beta * 2, g[k - 1]);
        g[k + 1] = t / static_cast<long>(k + 1);
      }
      for (int i = 0; i <= jmax; ++i) {
        Complex corr;
        for (int k = 1; k <= P; ++k) {
          const int n = 2 * k - 1;
          Complex d;
          if (side == 0) {
            if (i <= n) d = g[n - i] * kinv[i];
          } else {
            for (int r = 0; r <= std::min(i, n); ++r) fma_into(d, g[n - r], binom(i, r) * kinv[r]);
          }
          fma_into(corr, d, wk[k]);
        }
        if (side == 1) {
          G[i] += E1 * corr;
        } else {
          G[i] -= corr;
        }
      }
    }
    // shift back: sum_i C(l,i) m^{l-i} G[i] (K1/K)^l
    for (int l = 0; l <= jmax; ++l) {
      Complex acc;
      for (int i = 0; i <= l; ++i) fma_into(acc, G[i], binom(l, i) * pow(Real(m), l - i));
      out.values[l] += cm * acc * ratio_pow[l];
    }
  }
  ApproxVec tail = direct_sums(8 * K1, K, jmax, a, b, K);
  for (int l = 0; l <= jmax; ++l) out.values[l] += tail.values[l];
  out.bound = err + tail.bound;
  return out;
}

Complex em_quadratic_sum(std::int64_t K, int j, const Real& a, const Real& b, const PrecCtx& ctx,
                         double eps) {
  PrecisionScope scope(ctx.bits);
  return em_quadratic_sums(K, j, a, b, eps).values[j];
}

}  // namespace thetasum
