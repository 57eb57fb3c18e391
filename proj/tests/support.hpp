#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "thetasum/hp.hpp"

namespace ts_test {

inline double dist(const thetasum::Complex& x, const thetasum::Complex& y) {
  return thetasum::abs_d(x - y);
}

inline thetasum::Complex cplx(double re, double im) { return thetasum::Complex(re, im); }

// decimal string with `digits` random digits in [0,1)
inline std::string rand_unit(std::mt19937_64& rng, int digits = 30) {
  std::uniform_int_distribution<int> d(0, 9);
  std::string s = "0.";
  for (int i = 0; i < digits; ++i) s.push_back(static_cast<char>('0' + d(rng)));
  return s;
}

inline std::int64_t rand_log_int(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return static_cast<std::int64_t>(std::llround(std::exp(u(rng))));
}

inline double nu3(double K, int j, double eps) {
  const double n = thetasum::nu(K, j, eps);
  return n * n * n;
}

}  // namespace ts_test
