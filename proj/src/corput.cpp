#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thetasum/quad.hpp"
#include "thetasum/theta.hpp"

namespace thetasum {

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Family {
  std::vector<Complex> v;
  double bound = 0;
};

Family J_family(std::int64_t K, int j, const Real& M, const Real& w, const Real& b, double tol) {
  JSpec s;
  s.K = K;
  s.j = j;
  s.M = M;
  s.w = w;
  s.b = b;
  ApproxVec r = integral_J_all(s, tol);
  return {std::move(r.values), r.bound};
}

Family I_family(ContourTag tag, std::int64_t K, int j, const Complex& w, const Complex& b,
                double tol) {
  ApproxVec r = integral_I_tilde_all(tag, K, j, w, b, tol);
  return {std::move(r.values), r.bound};
}

}  // namespace

IterStep corput_step(const ThetaArgs& args, const std::vector<Complex>& z, const PrecCtx& ctx,
                     double eps, const EvalOptions& opts) {
  PrecisionScope scope(ctx.bits);
  const std::int64_t K = args.K;
  const int j = args.j;
  if (static_cast<int>(z.size()) != j + 1) throw std::invalid_argument("corput_step: z has wrong length");
  const Real& a = args.a;
  const Real& b = args.b;
  if (a.sign() < 0 || a >= 1.0 || !(b > 0.0) || b > 0.25)
    throw std::domain_error("corput_step: (a,b) not normalized");
  const Real Kr(static_cast<long>(K));
  const Real p = ceil(a);
  const Real qr = floor(a + b * Kr * 2);
  if (qr <= p) throw std::domain_error("corput_step: wrong branch (q <= p)");
  if (static_cast<double>(K) <= direct_threshold(K, j, eps, opts))
    throw std::domain_error("corput_step: K not large enough, use the direct branch");

  const long pi_ = p.to_long_floor();
  const std::int64_t q = qr.to_long_floor();
  const Real omega = a + b * Kr * 2 - qr;
  const Real omega1 = p - a;
  const Real p1 = qr - p;

  IterStep st;
  st.q = q;
  st.a_star = frac(a / (b * 2));
  st.b_star = frac(Real(-1) / (b * 4));

  double sz = 0;
  for (const auto& c : z) sz += abs_d(c);

  // saddle coefficients: W[m][s] = w_{s,m}
  std::vector<std::vector<Complex>> W(j + 1);
  for (int m = 0; m <= j; ++m) W[m] = saddle_coefficients(m, a, b, K);
  st.coeffs.assign(j + 1, Complex());
  for (int s = 0; s <= j; ++s)
    for (int m = s; m <= j; ++m) fma_into(st.coeffs[s], z[m], W[m][s]);
  st.check = check_coefficient_growth(j, a, b, K, eps);
  if (sz == 0) return st;

  const double n = nu(static_cast<double>(K), j, eps);
  const double target = std::pow(8.0, -j) / (static_cast<double>(K) * K) * eps / std::max(1.0, sz) / 16;
  const double tol = target / (16.0 * std::pow(2.0, j) * std::pow(2.0, 0.5 * (j + 1)));

  // PV truncation M = ceil(8^j K^3 e^nu)
  Real M = ceil(pow(Real(8), j) * pow(Kr, 3) * exp(Real(n)));
  const Real one(1);
  const Real twobK = b * Kr * 2;

  Family JA = J_family(K, j, p1, omega, b, tol);
  Family JB = J_family(K, j, p1, omega1, b, tol);
  Family I7A = I_family(ContourTag::C7, K, j, Complex(omega), Complex(b), tol);
  Family I1 = I_family(ContourTag::C1bar, K, j, Complex(omega), Complex(b), tol);
  Family I7B = I_family(ContourTag::C7, K, j, Complex(omega1), Complex(b), tol);
  Family JC = J_family(K, j, M - qr - 1, one - omega, b, tol);
  Family JD = J_family(K, j, M - qr, twobK - omega, b, tol);
  Family JE = J_family(K, j, M + p, twobK - omega1, b, tol);
  Family JF = J_family(K, j, M + p - 1, one - omega1, b, tol);
  Family I9A = I_family(ContourTag::C9, K, j, Complex(one - omega), Complex(b), tol);
  Family I9B = I_family(ContourTag::C9, K, j, Complex(one - omega1), Complex(b), tol);

  // rotated C9 term, weighted by e^{-2 pi omega K}
  Family I9r;
  const double l_damp = -kTwoPi * omega.to_double() * static_cast<double>(K);
  Complex damp;
  if (l_damp > std::log(tol) - 40) {
    Complex wp(omega + twobK, twobK - omega);
    Complex bp(Real(0), b * -2);
    I9r = I_family(ContourTag::C9_rotated, K, j, wp, bp, tol * std::exp(std::min(-l_damp, 700.0)));
    damp = Complex(exp(-two_pi() * omega * Kr), Real(0));
    I9r.bound *= std::exp(l_damp);
  } else {
    I9r.v.assign(j + 1, Complex());
    I9r.bound = std::exp(l_damp) * std::pow(2.0, j);
  }

  const Complex eK = e2pi((a + b * Kr) * Kr);
  const Complex c1 = mul_i(eK);
  const Complex c5 = -c1;
  const Complex eaK = e2pi(a * Kr);

  Complex R;
  double bound = 0;
  for (int l = 0; l <= j; ++l) {
    if (z[l].is_zero()) continue;
    const Complex c2 = (l % 2 ? -i_pow(l + 1) : i_pow(l + 1));
    const Complex c3 = eighth_root(l + 1) * eaK;
    const Complex c4 = i_pow(-(l + 1));
    const Complex c6 = i_pow(l + 1);

    Complex s1, s9r, sC, sE;
    for (int i = 0; i <= l; ++i) {
      const Real c = binom(l, i);
      Complex t = JA.v[i] + I7A.v[i] - I1.v[i];
      fma_into(s1, i_pow(i) * t, c);
      fma_into(s9r, I9r.v[i], c);
      fma_into(sC, i_pow(-i) * (JC.v[i] + I9A.v[i]), c);
      fma_into(sE, i_pow(i) * JE.v[i], c);
    }
    Complex Rl = -(c1 * s1);
    Rl -= c2 * (JB.v[l] + I7B.v[l]);
    Rl -= c3 * s9r * damp * pow(sqrt2(), l + 1);
    Rl -= c5 * sC;
    Rl += c4 * JD.v[l];
    Rl += c5 * sE;
    Rl += c6 * (JF.v[l] + I9B.v[l]);
    Rl += eK / 2;
    if (l == 0) Rl += Complex(Real(1) / 2, Real(0));
    if (pi_ == 1) Rl -= W[l][0];
    fma_into(R, z[l], Rl);

    const double bl = std::pow(2.0, l) * (JA.bound + I7A.bound + I1.bound + I9A.bound + JC.bound +
                                          JE.bound + std::pow(2.0, 0.5 * (l + 1)) * I9r.bound) +
                      JB.bound + I7B.bound + JD.bound + JF.bound + I9B.bound;
    bound += abs_d(z[l]) * bl;
  }
  // neglected contour pieces are O(poly(K) e^{-2 pi K}); PV truncation is O(K/M)
  const double Kd = static_cast<double>(K);
  const double lneg = std::lgamma(j + 2.0) + (j + 6) * std::log(2.0) + 2 * std::log(Kd) - kTwoPi * Kd;
  const double lpv = std::log(64.0 * (j + 1) * Kd) - log(M).to_double();
  bound += sz * (std::exp(lneg) + std::exp(lpv));
  bound += sz * std::ldexp(1.0, 16 - static_cast<int>(ctx.bits)) * Kd;
  st.remainder = R;
  st.bound = bound;
  return st;
}

}  // namespace thetasum
