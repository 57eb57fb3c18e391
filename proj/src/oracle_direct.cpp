#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "thetasum/oracle.hpp"

namespace thetasum {

prec_t oracle_bits(std::int64_t K, const OracleCfg& cfg) {
  if (!(cfg.bits_multiplier >= 1.0)) throw std::domain_error("oracle: bits_multiplier must be >= 1");
  const double base = cfg.base_bits > 0 ? static_cast<double>(cfg.base_bits)
                                        : 64 + 2 * std::log2(static_cast<double>(std::max<std::int64_t>(K, 2)));
  return static_cast<prec_t>(std::ceil(cfg.bits_multiplier * base));
}

namespace {

constexpr std::int64_t kBlock = 256;

// Per-term error in units of 2^-bits: recurrence drift over a block plus rounding of the
// phase argument, whose size is about (|a| + |b|K)K.
double term_error(std::int64_t K, const Real& a, const Real& b, prec_t bits) {
  const double Kd = static_cast<double>(K);
  const double g = std::abs(a.to_double()) + std::abs(b.to_double()) * Kd;
  return std::ldexp(65536.0 + 16 * M_PI * g * (Kd + 2 * kBlock), -static_cast<int>(bits));
}

void check_size(std::int64_t terms, const OracleCfg& cfg) {
  if (terms > cfg.max_terms) throw std::domain_error("oracle infeasible: too many terms");
}

// sum_{k=k0}^{k1} (k/K)^l e(ak + bk^2) for l = 0..jmax; the phase is reset exactly every block
void theta_chunk(std::int64_t k0, std::int64_t k1, std::int64_t K, int jmax, const Real& a,
                 const Real& b, std::vector<Complex>& acc) {
  const Real Kr(static_cast<long>(K));
  const Complex e2b = e2pi(b * 2);
  for (std::int64_t s = k0; s <= k1; s += kBlock) {
    const std::int64_t e = std::min(k1, s + kBlock - 1);
    const Real sr(static_cast<long>(s));
    Complex ph = e2pi((a + b * sr) * sr);
    Complex ratio = e2pi(a + b * (sr * 2 + 1));
    for (std::int64_t k = s; k <= e; ++k) {
      acc[0] += ph;
      if (jmax > 0) {
        const Real x = Real(static_cast<long>(k)) / Kr;
        Real p = x;
        for (int l = 1; l <= jmax; ++l) {
          fma_into(acc[l], ph, p);
          if (l < jmax) p *= x;
        }
      }
      ph *= ratio;
      ratio *= e2b;
    }
  }
}

ApproxVec theta_all(std::int64_t K, int jmax, const Real& a, const Real& b, const OracleCfg& cfg,
                    bool parallel) {
  if (K < 0 || jmax < 0) throw std::domain_error("oracle: need K >= 0 and j >= 0");
  check_size(K + 1, cfg);
  const prec_t bits = oracle_bits(K, cfg);
  PrecisionScope scope(bits);
  const Real a0(a), b0(b);
  const int nchunks = parallel ? std::max(1, omp_get_max_threads()) * 4 : 1;
  const std::int64_t per = ((K + 1) / nchunks / kBlock + 1) * kBlock;
  std::vector<std::vector<Complex>> parts(nchunks, std::vector<Complex>(jmax + 1));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int c = 0; c < nchunks; ++c) {
    PrecisionScope inner(bits);
    const std::int64_t k0 = c * per;
    const std::int64_t k1 = std::min<std::int64_t>(K, k0 + per - 1);
    if (k0 <= k1) theta_chunk(k0, k1, K, jmax, a0, b0, parts[c]);
  }
  ApproxVec out;
  out.values.assign(jmax + 1, Complex());
  for (const auto& p : parts)
    for (int l = 0; l <= jmax; ++l) out.values[l] += p[l];
  const double n = static_cast<double>(K + 1);
  out.bound = n * term_error(K, a0, b0, bits) * (jmax + 1);
  return out;
}

}  // namespace

ApproxVec direct_theta_all(std::int64_t K, int jmax, const Real& a, const Real& b,
                           const OracleCfg& cfg) {
  return theta_all(K, jmax, a, b, cfg, true);
}

ApproxVec direct_theta_all_serial(std::int64_t K, int jmax, const Real& a, const Real& b,
                                  const OracleCfg& cfg) {
  return theta_all(K, jmax, a, b, cfg, false);
}

Approx direct_theta(std::int64_t K, int j, const Real& a, const Real& b, const OracleCfg& cfg) {
  if (j > 0 && K == 0) throw std::domain_error("oracle: K = 0 with j > 0 is undefined");
  const prec_t bits = oracle_bits(K, cfg);
  PrecisionScope scope(bits);
  // only the l = j row is needed; sum (k/K)^j directly
  check_size(K + 1, cfg);
  const Real a0(a), b0(b), Kr(static_cast<long>(K));
  const int nchunks = std::max(1, omp_get_max_threads()) * 4;
  const std::int64_t per = ((K + 1) / nchunks / kBlock + 1) * kBlock;
  std::vector<Complex> parts(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < nchunks; ++c) {
    PrecisionScope inner(bits);
    const std::int64_t k0 = c * per;
    const std::int64_t k1 = std::min<std::int64_t>(K, k0 + per - 1);
    const Complex e2b = e2pi(b0 * 2);
    for (std::int64_t s = k0; s <= k1; s += kBlock) {
      const std::int64_t e = std::min(k1, s + kBlock - 1);
      const Real sr(static_cast<long>(s));
      Complex ph = e2pi((a0 + b0 * sr) * sr);
      Complex ratio = e2pi(a0 + b0 * (sr * 2 + 1));
      for (std::int64_t k = s; k <= e; ++k) {
        if (j == 0) {
          parts[c] += ph;
        } else {
          fma_into(parts[c], ph, pow(Real(static_cast<long>(k)) / Kr, j));
        }
        ph *= ratio;
        ratio *= e2b;
      }
    }
  }
  Approx out;
  for (const auto& p : parts) out.value += p;
  out.bound = static_cast<double>(K + 1) * term_error(K, a0, b0, bits) * (j + 1);
  return out;
}

Approx direct_g(std::int64_t K, int j, const Real& a, const Real& b, const OracleCfg& cfg) {
  if (K < 1 || j < 0) throw std::domain_error("oracle: need K >= 1 and j >= 0");
  check_size(K, cfg);
  const prec_t bits = oracle_bits(K, cfg);
  PrecisionScope scope(bits);
  const Real a0(a), b0(b);
  const int nchunks = std::max(1, omp_get_max_threads()) * 4;
  const std::int64_t per = (K / nchunks / kBlock + 1) * kBlock;
  std::vector<Complex> parts(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < nchunks; ++c) {
    PrecisionScope inner(bits);
    const std::int64_t k0 = 1 + c * per;
    const std::int64_t k1 = std::min<std::int64_t>(K, k0 + per - 1);
    const Complex e2b = e2pi(b0 * 2);
    for (std::int64_t s = k0; s <= k1; s += kBlock) {
      const std::int64_t e = std::min(k1, s + kBlock - 1);
      const Real sr(static_cast<long>(s));
      Complex ph = e2pi((a0 + b0 * sr) * sr);
      Complex ratio = e2pi(a0 + b0 * (sr * 2 + 1));
      for (std::int64_t k = s; k <= e; ++k) {
        if (j == 0)
          parts[c] += ph;
        else
          parts[c] += ph / pow(Real(static_cast<long>(k)), j);
        ph *= ratio;
        ratio *= e2b;
      }
    }
  }
  Approx out;
  for (const auto& p : parts) out.value += p;
  out.bound = static_cast<double>(K) * term_error(K, a0, b0, bits) * (j + 1);
  return out;
}

std::int64_t brute_diophantine(const DioSystem& sys, std::int64_t max_states) {
  validate(sys);
  const int n = sys.s + sys.t;
  double states = std::pow(static_cast<double>(sys.K + 1), n);
  if (states > static_cast<double>(max_states)) throw std::domain_error("oracle infeasible: too many states");
  const std::int64_t M = sys.M;
  // signed residue of each variable's contribution
  std::vector<std::vector<std::int64_t>> val(n, std::vector<std::int64_t>(sys.K + 1));
  for (int r = 0; r < n; ++r)
    for (std::int64_t k = 0; k <= sys.K; ++k) {
      __int128 v = (static_cast<__int128>(sys.alphas[r]) * k +
                    static_cast<__int128>(sys.betas[r]) * k * k) % M;
      if (v < 0) v += M;
      if (r >= sys.s) v = (M - v) % M;
      val[r][k] = static_cast<std::int64_t>(v);
    }
  std::vector<std::int64_t> idx(n, 0);
  std::int64_t count = 0;
  for (;;) {
    std::int64_t s = 0;
    for (int r = 0; r < n; ++r) s = (s + val[r][idx[r]]) % M;
    if (s == 0) ++count;
    int r = 0;
    while (r < n && ++idx[r] > sys.K) idx[r++] = 0;
    if (r == n) break;
  }
  return count;
}

}  // namespace thetasum
