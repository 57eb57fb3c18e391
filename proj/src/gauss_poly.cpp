#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetasum/quad.hpp"

namespace thetasum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double ln_abs(const Complex& z) {
  double l = std::max(z.re.log2_abs(), z.im.log2_abs());
  if (l < -1e299) return kNegInf;
  // |z| is within a factor sqrt(2) of max(|re|,|im|)
  return (l + 0.5) * std::log(2.0);
}

// ln of sum_i exp(lp[i]) s^i
double log_poly(const std::vector<double>& lp, double s) {
  double acc = kNegInf;
  double ls = std::log(std::max(s, 1e-300));
  for (std::size_t i = 0; i < lp.size(); ++i)
    if (lp[i] != kNegInf) acc = logsumexp(acc, lp[i] + ls * static_cast<double>(i));
  return acc;
}

// coefficients of P(x + n), in place
void taylor_shift(std::vector<Complex>& c, long n) {
  if (n == 0) return;
  const int d = static_cast<int>(c.size()) - 1;
  for (int i = 0; i < d; ++i)
    for (int k = d - 1; k >= i; --k) c[k] += c[k + 1] * n;
}

// smallest R with rho^{R+1}/(R+1)! e^rho < target
int taylor_terms(double rho, double target) {
  if (rho == 0.0) return 0;
  double lt = std::log(target) - rho;
  double acc = std::log(rho);  // ln(rho^{R+1}/(R+1)!) at R = 0
  int R = 0;
  while (acc >= lt && R < 100000) {
    ++R;
    acc += std::log(rho) - std::log(R + 1.0);
  }
  return R;
}

}  // namespace

ApproxVec poly_gauss_integrals(const std::vector<std::vector<Complex>>& polys,
                               const Complex& lambda, const Complex& beta, const Real& T,
                               double tol) {
  ApproxVec out;
  out.values.assign(polys.size(), Complex());
  int d = 0;
  for (const auto& p : polys) d = std::max<int>(d, static_cast<int>(p.size()) - 1);
  if (polys.empty() || d < 0) return out;

  std::vector<double> lp(d + 1, kNegInf);
  for (const auto& p : polys)
    for (std::size_t i = 0; i < p.size(); ++i) lp[i] = std::max(lp[i], ln_abs(p[i]));
  double lp_max = *std::max_element(lp.begin(), lp.end());
  if (lp_max == kNegInf) return out;

  const double lab = abs_d(lambda);
  const double bab = abs_d(beta);
  double lr = lambda.re.to_double();
  double br = beta.re.to_double();
  if (lr < -1e-20 * std::max(1.0, lab) || br < -1e-20 * std::max(1.0, bab))
    throw std::domain_error("poly_gauss_integrals: growing integrand");
  lr = std::max(lr, 0.0);
  br = std::max(br, 0.0);
  const bool infinite = T.sign() < 0;
  if (infinite && lr == 0.0 && br == 0.0)
    throw std::domain_error("poly_gauss_integrals: divergent integral");
  const double Td = infinite ? std::numeric_limits<double>::infinity() : T.to_double();
  if (!infinite && Td == 0.0) return out;

  // scale s = sigma u
  double sigma = std::numeric_limits<double>::infinity();
  if (bab > 0) sigma = 1.0 / std::sqrt(bab);
  if (lr > 0) sigma = std::min(sigma, (std::max(0.0, lp_max - std::log(tol)) + 2.0 * d + 1.0) / lr);
  if (!infinite) sigma = std::min(sigma, Td);
  Real sig;
  if (!infinite && sigma == Td) {
    sig = T;
  } else {
    sig = Real(sigma);
  }
  const double lsig = std::log(sigma);

  auto g = [&](double u) {
    return log_poly(lp, sigma * u) - lr * sigma * u - br * sigma * sigma * u * u + lsig;
  };
  auto tail_ok = [&](double u) {
    double rate = lr * sigma + 2.0 * br * sigma * sigma * u - d / u;
    if (rate <= 0) return false;
    return g(u) - std::log(rate) < std::log(tol / 16);
  };

  double u_end = infinite ? std::numeric_limits<double>::infinity() : Td / sigma;
  bool truncated = false;
  if (lr > 0 || br > 0) {
    double u = 1.0;
    int guard = 0;
    while (!tail_ok(u) && guard++ < 400) u *= 2;
    double lo = u / 2;
    if (tail_ok(lo)) lo = 0;
    for (int it = 0; it < 40; ++it) {
      double mid = 0.5 * (lo + u);
      if (tail_ok(mid)) u = mid; else lo = mid;
    }
    if (u < u_end) {
      u_end = std::max(u, 1e-3);
      truncated = true;
    }
  }
  Real U;
  if (truncated) {
    U = Real(u_end);
  } else {
    U = T / sig;
  }
  const long n_int = std::max<long>(1, static_cast<long>(std::ceil(u_end - 1e-12)));

  // per-interval magnitude estimates
  std::vector<double> lmag(n_int);
  double lM0 = kNegInf;
  for (long n = 0; n < n_int; ++n) {
    double len = (n == n_int - 1) ? std::min(1.0, u_end - n) : 1.0;
    double nd = static_cast<double>(n);
    lmag[n] = lsig + std::log(std::max(len, 1e-300)) + log_poly(lp, sigma * (nd + len)) -
              lr * sigma * nd - br * sigma * sigma * nd * nd;
    lM0 = logsumexp(lM0, lmag[n]);
  }

  std::vector<std::vector<Complex>> ps(polys.size());
  {
    Real sp(1);
    std::vector<Real> spow(d + 1);
    for (int i = 0; i <= d; ++i) {
      spow[i] = sp;
      sp *= sig;
    }
    for (std::size_t k = 0; k < polys.size(); ++k) {
      ps[k].resize(polys[k].size());
      for (std::size_t i = 0; i < polys[k].size(); ++i) ps[k][i] = polys[k][i] * spow[i];
    }
  }

  const Complex lam_s = lambda * sig;
  const Complex beta_s = beta * sqr(sig);
  const double rho = bab * sigma * sigma;
  double err = truncated ? tol / 16 : 0.0;
  int max_D = 0;

  for (long n = 0; n < n_int; ++n) {
    const bool last = n == n_int - 1;
    Real len = last ? U - n : Real(1);
    const double lend = last ? std::min(1.0, u_end - n) : 1.0;
    if (lend <= 0) continue;
    if (lmag[n] < std::log(tol) - 40.0) {
      err += std::exp(lmag[n]);
      continue;
    }
    const double rho_n = rho * lend * lend;
    const double target = tol / (16.0 * n_int) / std::exp(std::min(lmag[n], 700.0));
    const int R = taylor_terms(rho_n, target);
    if (rho_n > 0) {
      double lr_ = std::log(rho_n) * (R + 1) - std::lgamma(R + 2.0) + rho_n;
      err += std::exp(lr_ + lmag[n]);
    }
    const int D = d + 2 * R;
    max_D = std::max(max_D, D);

    Complex En(1);
    if (n > 0) {
      Complex arg = lam_s * Real(n) + beta_s * Real(n * n);
      En = exp(-arg);
    }
    Complex wn = lam_s + beta_s * Real(2 * n);
    wn = -(wn * len);
    Complex bh = beta_s * sqr(len);

    std::vector<Complex> gco(R + 1);
    gco[0] = Complex(1);
    Complex mb = -bh;
    for (int r = 1; r <= R; ++r) gco[r] = gco[r - 1] * mb / static_cast<long>(r);

    std::vector<Complex> h = h_table(D, wn);
    std::vector<Complex> Hp(d + 1);
    for (int i = 0; i <= d; ++i)
      for (int r = 0; r <= R; ++r) fma_into(Hp[i], gco[r], h[i + 2 * r]);

    Complex pref = En * (sig * len);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::vector<Complex> q = ps[k];
      taylor_shift(q, n);
      Complex acc;
      Real lp_(1);
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (i > 0 && last) lp_ *= len;
        if (last && i > 0) {
          fma_into(acc, q[i] * lp_, Hp[i]);
        } else {
          fma_into(acc, q[i], Hp[i]);
        }
      }
      out.values[k] += pref * acc;
    }
  }
  err += std::exp(lM0) * std::ldexp(1.0, 6 - static_cast<int>(working_bits())) * (max_D + 8);
  out.bound = err;
  return out;
}

}  // namespace thetasum
