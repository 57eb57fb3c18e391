#pragma once

#include <cstdint>
#include <vector>

#include "thetasum/hp.hpp"
#include "thetasum/theta.hpp"

namespace thetasum {

struct GSumResult {
  Complex value;
  double err_bound = 0;
  int theta_calls = 0;
  std::int64_t direct_terms = 0;
};

// G(K,j;a,b) = sum_{k=1}^{K} k^{-j} e(ak + bk^2)
GSumResult g_sum(std::int64_t K, int j, const Real& a, const Real& b, double eps,
                 const EvalOptions& opts = {});

// Count of 0 <= k_r <= K with
//   sum_{r<s} (alpha_r k_r + beta_r k_r^2) = sum_{r>=s} (alpha_r k_r + beta_r k_r^2)  mod M.
struct DioSystem {
  std::int64_t M = 1;
  std::int64_t K = 0;
  int s = 0;
  int t = 0;
  std::vector<std::int64_t> alphas;
  std::vector<std::int64_t> betas;
};

void validate(const DioSystem& sys);

struct DioResult {
  std::int64_t count = 0;
  double err_bound = 0;
  double eps_term = 0;
  Complex raw;
};

DioResult diophantine_count_report(const DioSystem& sys, double eps, const EvalOptions& opts = {});
std::int64_t diophantine_count(const DioSystem& sys, double eps, const EvalOptions& opts = {});

}  // namespace thetasum
