#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "thetasum/oracle.hpp"

namespace thetasum {

namespace {

constexpr int kNodes = 20;

struct Rule {
  std::vector<Real> x;  // nodes on [-1,1]
  std::vector<Real> w;
};

// Gauss-Legendre nodes by Newton iteration at the working width
const Rule& legendre_rule() {
  thread_local std::map<prec_t, Rule> cache;
  const prec_t bits = working_bits();
  auto it = cache.find(bits);
  if (it != cache.end()) return it->second;
  Rule r;
  const int n = kNodes;
  for (int i = 1; i <= n; ++i) {
    Real x(std::cos(M_PI * (i - 0.25) / (n + 0.5)));
    Real dp;
    for (int it2 = 0; it2 < 200; ++it2) {
      Real p0(1), p1(x);
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = Real(n) * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (dx.is_zero() || dx.log2_abs() < x.log2_abs() - static_cast<double>(bits) + 2) {
        // refresh the derivative at the final node
        Real q0(1), q1(x);
        for (int k = 2; k <= n; ++k) {
          Real q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
          q0 = std::move(q1);
          q1 = std::move(q2);
        }
        dp = Real(n) * (x * q1 - q0) / (x * x - 1);
        break;
      }
    }
    r.x.push_back(x);
    r.w.push_back(Real(2) / ((Real(1) - x * x) * dp * dp));
  }
  return cache.emplace(bits, std::move(r)).first->second;
}

Complex gl(const RealToComplex& f, const Real& lo, const Real& hi) {
  const Rule& r = legendre_rule();
  const Real h = (hi - lo) / 2;
  const Real mid = (hi + lo) / 2;
  Complex s;
  for (int i = 0; i < kNodes; ++i) fma_into(s, f(mid + h * r.x[i]), r.w[i]);
  return s * h;
}

void adapt(const RealToComplex& f, const Real& lo, const Real& hi, const Complex& whole, double tol,
           int depth, Approx& acc) {
  const Real mid = (lo + hi) / 2;
  Complex left = gl(f, lo, mid);
  Complex right = gl(f, mid, hi);
  Complex both = left + right;
  const double diff = abs_d(both - whole);
  if (diff <= tol || depth <= 0) {
    acc.value += both;
    acc.bound += diff;
    return;
  }
  adapt(f, lo, mid, left, tol / 2, depth - 1, acc);
  adapt(f, mid, hi, right, tol / 2, depth - 1, acc);
}

// smallest T >= 1 with g2 T^2 + g1 T >= target
double decay_cut(double g1, double g2, double target) {
  if (g1 <= 0 && g2 <= 0) throw std::domain_error("oracle: integrand does not decay");
  double T = 1;
  while (g2 * T * T + g1 * T < target) T *= 1.25;
  return T;
}

std::vector<Real> grid(double T, int pieces) {
  std::vector<Real> pts;
  for (int i = 0; i <= pieces; ++i) pts.emplace_back(T * i / pieces);
  return pts;
}

}  // namespace

Approx quadrature(const RealToComplex& f, const std::vector<Real>& pts, double tol, int max_depth) {
  if (pts.size() < 2) throw std::invalid_argument("quadrature: need at least two points");
  Approx acc;
  const Real total = pts.back() - pts.front();
  if (total.is_zero()) return acc;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    const double share = ((pts[i + 1] - pts[i]) / total).to_double();
    adapt(f, pts[i], pts[i + 1], gl(f, pts[i], pts[i + 1]), tol * share, max_depth, acc);
  }
  return acc;
}

Approx oracle_J(const JSpec& s, int l, double tol) {
  if (s.M.is_zero()) return {};
  const Real Kr(static_cast<long>(s.K));
  const double target = std::log(1 / tol) + 20;
  const double T = std::min(static_cast<double>(s.K), decay_cut(2 * M_PI, 0, target));
  auto f = [&](const Real& t) {
    Complex g = exp(Complex(-two_pi() * s.w * t, -two_pi() * s.b * t * t));
    Real k = -expm1(-two_pi() * s.M * t) / expm1(two_pi() * t);
    if (l > 0) k *= pow(t / Kr, l);
    return g * k;
  };
  // breakpoints resolve the 1/M boundary layer at t = 0
  std::vector<Real> pts{Real(0)};
  Real x = Real(1) / s.M;
  while (x < 1.0 && x < T) {
    pts.push_back(x);
    x *= 4;
  }
  for (double y = 1; y < T; y += 1) pts.emplace_back(y);
  pts.emplace_back(T);
  Approx r = quadrature(f, pts, tol / 2);
  if (T < static_cast<double>(s.K)) r.bound += std::exp(-2 * M_PI * T) / M_PI;
  return r;
}

Approx oracle_I_tilde(ContourTag tag, std::int64_t K, int l, const Complex& w, const Complex& b,
                      double tol) {
  const Real Kr(static_cast<long>(K));
  const double target = std::log(1 / tol) + 20 + l * std::log(2.0 + 1.0 / K);
  auto g = [&](const Complex& z) {
    Complex e = exp(-(w * z + mul_i(b * z * z)) * two_pi());
    if (l > 0) e *= pow(z / Kr, l);
    return e;
  };
  const double Kd = static_cast<double>(K);
  switch (tag) {
    case ContourTag::C0: {
      const Real& a = w.re;
      const Real& bb = b.re;
      auto f = [&](const Real& t) {
        Complex e = e2pi((a + bb * t) * t);
        if (l > 0) e *= pow(t / Kr, l);
        return e;
      };
      return quadrature(f, grid(Kd, 64), tol);
    }
    case ContourTag::C7: {
      const Complex d = eighth_root(-1);
      const double g1 = std::sqrt(2.0) * M_PI * w.re.to_double();
      const double g2 = 2 * M_PI * b.re.to_double();
      const double T = std::min(std::sqrt(2.0) * Kd, decay_cut(g1, g2, target));
      auto f = [&](const Real& s) { return g(d * s) * d; };
      return quadrature(f, grid(T, 32), tol);
    }
    case ContourTag::C9:
    case ContourTag::C9_rotated: {
      // real ray; decay from Re(w) and from -Im(b)
      const double g1 = 2 * M_PI * w.re.to_double();
      const double g2 = -2 * M_PI * b.im.to_double();
      const double T = decay_cut(g1, g2, target);
      auto f = [&](const Real& t) { return g(Complex(t)); };
      Approx r = quadrature(f, grid(T, 64), tol);
      r.bound += tol;
      return r;
    }
    case ContourTag::C1bar: {
      const double g1 = 4 * M_PI * b.re.to_double() * Kd;
      const double T = std::min(Kd, decay_cut(g1, 0, target));
      auto f = [&](const Real& t) { return mul_i(-g(Complex(Kr, -t))); };
      return quadrature(f, grid(T, 16), tol);
    }
  }
  throw std::invalid_argument("oracle_I_tilde: unknown contour");
}

}  // namespace thetasum
