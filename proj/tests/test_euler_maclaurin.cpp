#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "thetasum/euler_maclaurin.hpp"
#include "thetasum/oracle.hpp"

using namespace thetasum;
using ts_test::dist;

TEST_CASE("derivative polynomials for small orders") {
  PrecisionScope s(128);
  const Real a = Real::parse("0.3"), b = Real::parse("0.07");
  const DerivPoly p0 = deriv_poly(0, 50, 0, a, b);
  REQUIRE(p0.coeffs.size() == 1);
  CHECK(dist(p0.coeffs[0], Complex(1)) == 0.0);

  const DerivPoly p1 = deriv_poly(1, 50, 0, a, b);
  REQUIRE(p1.coeffs.size() >= 2);
  CHECK(dist(p1.coeffs[0], Complex(Real(0), two_pi() * a)) < 1e-35);
  CHECK(dist(p1.coeffs[1], Complex(Real(0), two_pi() * b * 2)) < 1e-35);

  // (2 pi i)^2 (a + 2bx)^2 + 4 pi i b
  const DerivPoly p2 = deriv_poly(2, 50, 0, a, b);
  const Real x = Real::parse("3.7");
  const Complex u = Complex(Real(0), two_pi()) * (a + b * x * 2);
  const Complex want = u * u + Complex(Real(0), two_pi() * b * 2);
  CHECK(dist(eval_poly(p2.coeffs, x), want) < 1e-30);
}

TEST_CASE("derivative polynomial size bound") {
  PrecisionScope s(160);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t K = 1 + static_cast<std::int64_t>(999 * std::abs(u(rng)));
    const int j = static_cast<int>(5 * std::abs(u(rng)));
    const int m = static_cast<int>(13 * std::abs(u(rng)));
    const double ad = u(rng), bd = u(rng);
    const DerivPoly p = deriv_poly(m, K, j, Real(ad), Real(bd));
    const double bound =
        std::pow(2 * M_PI * (std::abs(ad) + std::abs(2 * bd * K)) + static_cast<double>(m + j) / K, m);
    for (int k = 0; k <= 64; ++k) {
      const Real x = Real(static_cast<long>(K)) * k / 64;
      CHECK(abs_d(eval_poly(p.coeffs, x)) <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("Bernoulli numbers") {
  PrecisionScope s(128);
  CHECK(bernoulli(0) == Real(1));
  CHECK(bernoulli(1) == Real(-0.5));
  CHECK(abs(bernoulli(2) - Real(1) / 6) < Real(1e-37));
  CHECK(bernoulli(3).is_zero());
  CHECK(abs(bernoulli(12) + Real(691) / 2730) < Real(1e-37));
  const auto e = bernoulli_exact(12);
  CHECK(e.first == "-691");
  CHECK(e.second == "2730");
  CHECK_THROWS(bernoulli(-1));
  CHECK_THROWS(bernoulli(200000));
  // |B_2(t)| = |t^2 - t + 1/6| peaks at 1/6
  CHECK(abs(bernoulli_poly_bound(2) - Real(1) / 6) < Real(1e-30));
  CHECK(bernoulli_poly_bound(7) > Real(0));
}

TEST_CASE("Euler-Maclaurin branch small cases") {
  PrecisionScope s(128);
  const ApproxVec a = em_quadratic_sums(16, 0, Real(0), Real(0), 1e-25);
  CHECK(dist(a.values[0], Complex(17)) < 1e-20);
  const ApproxVec b = em_quadratic_sums(16, 0, Real(0.5), Real(0), 1e-25);
  CHECK(dist(b.values[0], Complex(1)) < 1e-20);
}

TEST_CASE("Euler-Maclaurin branch against direct summation") {
  PrecisionScope s(192);
  const std::int64_t K = 10000;
  const int j = 1;
  const double eps = 1e-10;
  const Real a = Real::parse("0.2"), b = Real::parse("1e-9");
  const double branch = 64 * ts_test::nu3(1e4, j, eps) * std::pow(8.0, -j) * eps / (1e4 * 1e4);
  const ApproxVec r = em_quadratic_sums(K, j, a, b, 1e-2 * branch / (64 * ts_test::nu3(1e4, j, eps)));
  const ApproxVec o = direct_theta_all(K, j, a, b);
  for (int l = 0; l <= j; ++l) CHECK(dist(r.values[l], o.values[l]) <= 1e-2 * branch);
}

TEST_CASE("Euler-Maclaurin branch rejects q > p") {
  PrecisionScope s(128);
  CHECK_THROWS_AS(em_quadratic_sums(1000, 0, Real(0.5), Real(0.2), 1e-10), std::domain_error);
}

TEST_CASE("tightening the tolerance stays within the reported bound") {
  PrecisionScope s(256);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10; ++i) {
    const std::int64_t K = ts_test::rand_log_int(rng, 100, 1e5);
    const int j = static_cast<int>(4 * u(rng));
    const Real a(u(rng)), b(u(rng) / (2.0 * K));
    const ApproxVec loose = em_quadratic_sums(K, j, a, b, 1e-12);
    const ApproxVec tight = em_quadratic_sums(K, j, a, b, 1e-30);
    for (int l = 0; l <= j; ++l) CHECK(dist(loose.values[l], tight.values[l]) <= loose.bound + tight.bound);
  }
}

TEST_CASE("power tails") {
  PrecisionScope s(160);
  PrecCtx ctx{160, 32};
  const Real one = em_tail_sum(1, Real(1), 0, Real(0), ctx, 1e-30);
  CHECK(abs(one - Real(1) / two_pi()) < Real(1e-35));

  Real direct;
  for (long m = 1; m <= 1000; ++m) direct += Real(1) / sqr(two_pi() * m);
  CHECK(abs(em_tail_sum(1, Real(1000), 1, Real(0), ctx, 1e-30) - direct) < Real(1e-28));

  Real d2;
  for (long m = 2; m <= 1000000; ++m) d2 += Real(1) / pow(two_pi() * (Real(m) + Real(0.5)), 4);
  CHECK(abs(em_tail_sum(2, Real(1000000), 3, Real(0.5), ctx, 1e-30) - d2) < Real(1e-28));
}
