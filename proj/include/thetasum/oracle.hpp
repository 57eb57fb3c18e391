#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "thetasum/applications.hpp"
#include "thetasum/hp.hpp"
#include "thetasum/quad.hpp"

namespace thetasum {

struct OracleCfg {
  double bits_multiplier = 4.0;
  // width the multiplier applies to; 0 picks 64 + 2 log2(K)
  prec_t base_bits = 0;
  std::int64_t max_terms = 100000000;
};

prec_t oracle_bits(std::int64_t K, const OracleCfg& cfg);

// K^{-l} sum_{k=0}^{K} k^l e(ak + bk^2) for l = 0..jmax, summed literally.
ApproxVec direct_theta_all(std::int64_t K, int jmax, const Real& a, const Real& b,
                           const OracleCfg& cfg = {});
ApproxVec direct_theta_all_serial(std::int64_t K, int jmax, const Real& a, const Real& b,
                                  const OracleCfg& cfg = {});
Approx direct_theta(std::int64_t K, int j, const Real& a, const Real& b, const OracleCfg& cfg = {});

// sum_{k=1}^{K} k^{-j} e(ak + bk^2)
Approx direct_g(std::int64_t K, int j, const Real& a, const Real& b, const OracleCfg& cfg = {});

// Exhaustive count over all (K+1)^(s+t) tuples, integer arithmetic only.
std::int64_t brute_diophantine(const DioSystem& sys, std::int64_t max_states = 100000000);

// Adaptive Gauss-Legendre on [pts.front(), pts.back()], split at every interior point.
using RealToComplex = std::function<Complex(const Real&)>;
Approx quadrature(const RealToComplex& f, const std::vector<Real>& pts, double tol,
                  int max_depth = 60);

// Quadrature on the defining parametrizations.
Approx oracle_J(const JSpec& spec, int l, double tol);
Approx oracle_I_tilde(ContourTag tag, std::int64_t K, int l, const Complex& w, const Complex& b,
                      double tol);

}  // namespace thetasum
