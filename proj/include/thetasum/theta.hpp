#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetasum/hp.hpp"

namespace thetasum {

struct ThetaArgs {
  std::int64_t K = 1;
  int j = 0;
  Real a;
  Real b;
};

struct NormArgs {
  Real a0;
  Real b0;
  bool conjugated = false;
};

// (a0,b0) in [0,1) x [0,1/4] with F(K,j;a,b) = F(K,j;a0,b0) or its conjugate.
NormArgs normalize(const Real& a, const Real& b);

enum class Branch { corput, euler_maclaurin, direct };
const char* branch_name(Branch b);

struct EvalOptions {
  PrecisionPolicy precision = PrecisionPolicy::practical();
  prec_t bits_override = 0;
  // K <= threshold is summed directly; < 0 selects max(64, ceil(nu)).
  double direct_threshold = -1;
  bool asymptotic_threshold = false;
  // throw instead of counting when a coefficient bound check fails
  bool strict_checks = false;
};

double direct_threshold(std::int64_t K, int j, double eps, const EvalOptions& opts);
PrecCtx eval_ctx(std::int64_t K, int j, double eps, const EvalOptions& opts);

struct CoefficientCheck {
  double lhs = 0;
  double rhs = 0;
  bool ok = true;
};

// w_{s,j,a,b,K}, s = 0..j. Needs b > 0 and floor(a+2bK) >= 1.
std::vector<Complex> saddle_coefficients(int j, const Real& a, const Real& b, std::int64_t K);
// max over s of sum_{m=s}^{j} |w_{s,m}| against the bound(s) that apply.
CoefficientCheck check_coefficient_growth(int j, const Real& a, const Real& b, std::int64_t K,
                                          double eps);

struct IterStep {
  std::int64_t q = 0;
  Real a_star;
  Real b_star;
  std::vector<Complex> coeffs;
  Complex remainder;
  bool conjugated = false;
  double bound = 0;
  CoefficientCheck check;
};

// One van der Corput step on normalized (a,b) with ceil(a) < floor(a+2bK):
// sum_l z_l F(K,l;a,b) = sum_l coeffs_l F(q,l;a*,b*) + remainder.
IterStep corput_step(const ThetaArgs& args, const std::vector<Complex>& z, const PrecCtx& ctx,
                     double eps, const EvalOptions& opts = {});

struct EvalReport {
  Complex value;
  double err_bound = 0;
  int iterations = 0;
  std::vector<Branch> branch_trace;
  std::vector<std::int64_t> lengths;
  prec_t bits = 0;
  std::uint64_t op_count = 0;
  int check_failures = 0;
  double max_coeff = 0;
};

int j_max(std::int64_t K);

EvalReport theta_linear_combination(std::int64_t K, const std::vector<Complex>& z, const Real& a,
                                    const Real& b, double eps, const EvalOptions& opts = {});
EvalReport theta_sum(std::int64_t K, int j, const Real& a, const Real& b, double eps,
                     const EvalOptions& opts = {});
// a, b given as decimal or "p/q", parsed at the working width
EvalReport theta_sum(std::int64_t K, int j, const std::string& a, const std::string& b, double eps,
                     const EvalOptions& opts = {});

}  // namespace thetasum
