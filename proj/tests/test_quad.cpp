#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/quad.hpp"

using namespace thetasum;
using ts_test::dist;

TEST_CASE("gaussian self-similarity closed form") {
  PrecisionScope s(128);
  const double tiny = 1e-35;
  CHECK(dist(gaussian_selfsim(Complex(0)), Complex(sqrt_pi())) < tiny);
  CHECK(dist(gaussian_selfsim(Complex(2)), Complex(sqrt_pi() * exp(Real(1)))) < tiny);
  CHECK(dist(gaussian_selfsim(Complex(Real(0), Real(2))), Complex(sqrt_pi() / exp(Real(1)))) < tiny);
}

TEST_CASE("gaussian self-similarity against quadrature") {
  PrecisionScope s(128);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 6; ++i) {
    Complex eta(Real(4 * u(rng)), Real(4 * u(rng)));
    if (abs_d(eta) > 4) eta = eta / 2;
    const double T = std::ceil(abs_d(eta) + std::sqrt(128 * std::log(2.0)));
    auto f = [&](const Real& t) { return exp(eta * t - Complex(t * t)); };
    std::vector<Real> pts;
    for (int k = 0; k <= 16; ++k) pts.emplace_back(-T + 2 * T * k / 16);
    const Approx q = quadrature(f, pts, 1e-30);
    const double scale = std::exp(abs_d(eta) * abs_d(eta) / 4);
    CHECK(dist(q.value, gaussian_selfsim(eta)) <= std::ldexp(1.0, 8 - 128) * scale + 1e-28);
  }
}

TEST_CASE("h_kernel special values") {
  PrecisionScope s(128);
  const double tiny = 1e-35;
  CHECK(dist(h_kernel(0, Complex(0)), Complex(1)) < tiny);
  CHECK(dist(h_kernel(3, Complex(0)), Complex(Real(1) / 4)) < tiny);
  const Real tp = two_pi();
  CHECK(dist(h_kernel(0, Complex(-tp)), Complex((Real(1) - exp(-tp)) / tp)) < tiny);
  CHECK(std::abs(h_kernel(0, Complex(-tp)).re.to_double() - 0.1588577) < 1e-7);
  CHECK(dist(h_kernel(1, Complex(-1)), Complex(Real(1) - Real(2) / exp(Real(1)))) < tiny);
  CHECK_THROWS_AS(h_kernel(2, Complex(0.5, 0.0)), std::domain_error);
}

TEST_CASE("h_kernel satisfies the integration-by-parts recursion") {
  for (prec_t bits : {128, 256}) {
    PrecisionScope s(bits);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> re(-60, -1e-3), im(-60, 60);
    for (int g = 0; g < 20; ++g) {
      const Complex w(re(rng), im(rng));
      const Complex ew = exp(w);
      for (int z = 1; z <= 50; ++z) {
        const Complex lhs = w * h_kernel(z, w) + h_kernel(z - 1, w) * static_cast<long>(z);
        CHECK(dist(lhs, ew) <= std::ldexp(1.0, 24 - static_cast<int>(bits)) * std::max(1.0, abs_d(w)));
      }
    }
  }
}

TEST_CASE("h_table agrees with h_kernel") {
  PrecisionScope s(160);
  for (const Complex& w : {Complex(-0.5, 3.0), Complex(-30.0, -2.0), Complex(0.0, 12.0)}) {
    const auto t = h_table(40, w);
    for (int z = 0; z <= 40; ++z) CHECK(dist(t[z], h_kernel(z, w)) < 1e-40);
  }
}

TEST_CASE("J special cases") {
  PrecisionScope s(160);
  JSpec sp;
  sp.K = 10000;
  sp.j = 2;
  sp.M = Real(0);
  sp.w = Real(0.3);
  sp.b = Real(0.01);
  for (const auto& v : integral_J_all(sp, 1e-30).values) CHECK(v.is_zero());

  sp.j = 0;
  sp.M = Real(1);
  sp.w = Real(0);
  sp.b = Real(0);
  const ApproxVec r = integral_J_all(sp, 1e-30);
  // (1 - e^{-2 pi t}) / (e^{2 pi t} - 1) = e^{-2 pi t}
  CHECK(dist(r.values[0], Complex(Real(1) / two_pi())) < 1e-20);
}

TEST_CASE("J matches quadrature") {
  PrecisionScope s(192);
  JSpec sp;
  sp.K = 10000;
  sp.j = 2;
  sp.M = Real(7);
  sp.w = Real::parse("0.3");
  sp.b = Real::parse("0.001");
  const double eps = 1e-20;
  const ApproxVec r = integral_J_all(sp, eps);
  for (int l = 0; l <= 2; ++l) {
    const Approx o = oracle_J(sp, l, eps / 100);
    CHECK(dist(r.values[l], o.value) <= 64 * ts_test::nu3(1e4, l, eps) * eps);
  }
}

TEST_CASE("J rejects inadmissible specs") {
  PrecisionScope s(128);
  JSpec sp;
  sp.K = 100;
  sp.M = Real(3);
  sp.w = Real(200);
  sp.b = Real(0.1);
  CHECK_THROWS_AS(integral_J_all(sp, 1e-10), std::domain_error);
  sp.w = Real(0.5);
  sp.b = Real(1.5);
  CHECK_THROWS_AS(integral_J_all(sp, 1e-10), std::domain_error);
  sp.b = Real(0.5);
  sp.M = Real(-1);
  CHECK_THROWS_AS(integral_J_all(sp, 1e-10), std::domain_error);
}

TEST_CASE("I_C0 polynomial cases") {
  PrecisionScope s(128);
  const ApproxVec r = integral_I_tilde_all(ContourTag::C0, 100, 1, Complex(0), Complex(0), 1e-25);
  CHECK(dist(r.values[0], Complex(100)) < 1e-20);
  CHECK(dist(r.values[1], Complex(50)) < 1e-20);
}

TEST_CASE("I_C7 matches quadrature") {
  PrecisionScope s(160);
  const double eps = 1e-20;
  const Complex w(Real::parse("0.5")), b(Real::parse("0.01"));
  const ApproxVec r = integral_I_tilde_all(ContourTag::C7, 10000, 0, w, b, eps);
  const Approx o = oracle_I_tilde(ContourTag::C7, 10000, 0, w, b, eps / 100);
  CHECK(dist(r.values[0], o.value) <= 64 * ts_test::nu3(1e4, 0, eps) * eps);
}

TEST_CASE("all contours match quadrature on random specs") {
  PrecisionScope s(192);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  const double eps = 1e-18;
  for (int i = 0; i < 12; ++i) {
    const std::int64_t K = ts_test::rand_log_int(rng, 2e3, 1e5);
    const int j = static_cast<int>(u(rng) * 3);
    const Real b = Real(0.5 + u(rng)) / Real(static_cast<long>(K)) * Real(1 + 40 * u(rng));
    const Real w = Real(0.05 + 0.95 * u(rng));
    const double tol = 64 * ts_test::nu3(static_cast<double>(K), j, eps) * eps;
    for (ContourTag tag : {ContourTag::C1bar, ContourTag::C7, ContourTag::C9}) {
      const ApproxVec r = integral_I_tilde_all(tag, K, j, Complex(w), Complex(b), eps);
      const Approx o = oracle_I_tilde(tag, K, j, Complex(w), Complex(b), eps / 100);
      CHECK(dist(r.values[j], o.value) <= tol);
    }
    const Real x = w + b * Real(static_cast<long>(K)) * 2;
    const Complex wp(x, b * Real(static_cast<long>(K)) * 2 - w), bp(Real(0), b * -2);
    const ApproxVec r = integral_I_tilde_all(ContourTag::C9_rotated, K, j, wp, bp, eps);
    const Approx o = oracle_I_tilde(ContourTag::C9_rotated, K, j, wp, bp, eps / 100);
    CHECK(dist(r.values[j], o.value) <= tol);
  }
}
