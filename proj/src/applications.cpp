#include "thetasum/applications.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <stdexcept>
#include <utility>

namespace thetasum {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps <= std::exp(-1.0))) throw std::domain_error("eps must lie in (0, 1/e]");
}

// sum_{k=k0}^{k1} k^{-j} e(ak + bk^2), term by term
Complex direct_g_terms(std::int64_t k0, std::int64_t k1, int j, const Real& a, const Real& b) {
  Complex s;
  for (std::int64_t k = k0; k <= k1; ++k) {
    const Real kr(static_cast<long>(k));
    Complex t = e2pi((a + b * kr) * kr);
    if (j > 0) t /= pow(kr, j);
    s += t;
  }
  return s;
}

struct Block {
  std::int64_t N;  // first index
  std::int64_t Q;  // length
};

// [32, K] cut into runs of 16 equal sub-blocks with Q <= N/16, leaving < 16 trailing terms.
std::vector<Block> dyadic_blocks(std::int64_t K, std::int64_t& tail_start) {
  std::vector<Block> out;
  std::int64_t s = 32;
  while (K - s + 1 >= 16) {
    const std::int64_t Q = std::min(s / 16, (K - s + 1) / 16);
    for (int m = 0; m < 16; ++m) out.push_back({s + m * Q, Q});
    s += 16 * Q;
  }
  tail_start = s;
  return out;
}

struct BlockResult {
  Complex value;
  double bound = 0;
};

BlockResult g_block(const Block& blk, int j, const Real& a, const Real& b, double eps_call,
                    const EvalOptions& opts) {
  const double r = static_cast<double>(blk.Q) / static_cast<double>(blk.N);
  const double Qd = static_cast<double>(blk.Q);
  // (1 + h/N)^{-j} = sum_l (-1)^l C(j+l-1,l) (h/N)^l, truncated once the tail is negligible
  std::vector<double> mag{1.0};
  double tail = 0;
  if (j > 0) {
    for (int l = 1;; ++l) {
      const double next = mag.back() * r * (j + l - 1) / l;
      const double ratio = r * (j + l) / (l + 1);
      if (next * (Qd + 1) * 2 < eps_call * 1e-3 && ratio < 0.5) {
        tail = 2 * next * (Qd + 1);
        break;
      }
      mag.push_back(next);
    }
  }
  const int L = static_cast<int>(mag.size());
  const Real Nr(static_cast<long>(blk.N));
  const Real Qr(static_cast<long>(blk.Q));
  const Real rr = Qr / Nr;
  double scale = 0;
  std::vector<Complex> z(L);
  Real c(1);
  for (int l = 0; l < L; ++l) {
    if (l > 0) {
      c *= rr * (j + l - 1);
      c /= l;
    }
    z[l] = Complex(l % 2 ? -c : c, Real(0));
    scale = std::max(scale, std::abs(c.to_double()));
  }
  const Real sr(scale);
  for (auto& x : z) x /= sr;

  const Real a1 = a + b * Nr * 2;
  EvalReport rep = theta_linear_combination(blk.Q, z, a1, b, eps_call, opts);
  Complex zs;
  for (const auto& x : z) zs += x;
  Complex v = rep.value - zs * e2pi((a1 + b * Qr) * Qr);
  Real pref = sr;
  if (j > 0) pref /= pow(Nr, j);
  v *= pref;
  v *= e2pi((a + b * Nr) * Nr);
  BlockResult out;
  out.value = v;
  const double nj = std::pow(static_cast<double>(blk.N), -j);
  out.bound = nj * (scale * rep.err_bound + tail);
  return out;
}

}  // namespace

GSumResult g_sum(std::int64_t K, int j, const Real& a, const Real& b, double eps,
                 const EvalOptions& opts) {
  check_eps(eps);
  if (K < 1) throw std::domain_error("K must be positive");
  if (j < 0) throw std::domain_error("j must be nonnegative");
  const prec_t bits = eval_ctx(K, j, eps, opts).bits + 16;
  PrecisionScope scope(bits);

  GSumResult res;
  std::int64_t tail_start = 0;
  const std::vector<Block> blocks = dyadic_blocks(K, tail_start);
  const double eps_call = eps / std::max<std::size_t>(1, blocks.size());
  const Real a0(a), b0(b);

  std::vector<BlockResult> parts(blocks.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    try {
      PrecisionScope inner(bits);
      parts[i] = g_block(blocks[i], j, Real(a0), Real(b0), eps_call, opts);
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  Complex total = direct_g_terms(1, std::min<std::int64_t>(K, 31), j, a0, b0);
  res.direct_terms = std::min<std::int64_t>(K, 31);
  if (tail_start <= K) {
    total += direct_g_terms(tail_start, K, j, a0, b0);
    res.direct_terms += K - tail_start + 1;
  }
  for (const auto& p : parts) {
    total += p.value;
    res.err_bound += p.bound;
  }
  res.theta_calls = static_cast<int>(blocks.size());
  res.err_bound += std::ldexp(1.0, 8 - static_cast<int>(bits)) * static_cast<double>(K + 1);
  res.value = total;
  return res;
}

void validate(const DioSystem& sys) {
  if (sys.M < 1) throw std::domain_error("modulus M must be positive");
  if (sys.K < 1) throw std::domain_error("range K must be positive");
  if (sys.s < 0 || sys.t < 0 || sys.s + sys.t < 1) throw std::domain_error("need s, t >= 0 and s + t >= 1");
  const std::size_t n = static_cast<std::size_t>(sys.s + sys.t);
  if (sys.alphas.size() != n || sys.betas.size() != n)
    throw std::domain_error("alphas and betas must have length s + t");
}

DioResult diophantine_count_report(const DioSystem& sys, double eps, const EvalOptions& opts) {
  validate(sys);
  check_eps(eps);
  const int n = sys.s + sys.t;
  const double K1 = static_cast<double>(sys.K + 1);
  DioResult res;
  // each factor has |F| <= K+1; first-order growth of the product error is n (K+1)^{n-1}
  res.eps_term = std::min(eps, 1.0 / (4.0 * n * std::pow(K1, n - 1)));
  if (!(res.eps_term > 1e-300)) throw std::domain_error("insufficient precision: system too large");

  const prec_t bits = eval_ctx(sys.K, 0, res.eps_term, opts).bits +
                      static_cast<prec_t>(n * std::log2(K1)) + 32;
  PrecisionScope scope(bits);

  auto red = [&](std::int64_t c, std::int64_t l) {
    __int128 v = static_cast<__int128>(c) * l % sys.M;
    if (v < 0) v += sys.M;
    return static_cast<std::int64_t>(v);
  };

  // distinct (alpha l, beta l) mod M arguments
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;
  std::vector<std::pair<std::int64_t, std::int64_t>> keys;
  for (std::int64_t l = 0; l < sys.M; ++l)
    for (int r = 0; r < n; ++r) {
      auto key = std::make_pair(red(sys.alphas[r], l), red(sys.betas[r], l));
      if (index.emplace(key, keys.size()).second) keys.push_back(key);
    }

  std::vector<Complex> vals(keys.size());
  std::vector<double> errs(keys.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < keys.size(); ++i) {
    try {
      PrecisionScope inner(bits);
      const Real Mr(static_cast<long>(sys.M));
      EvalOptions o = opts;
      o.bits_override = bits;
      EvalReport rep = theta_sum(sys.K, 0, Real(static_cast<long>(keys[i].first)) / Mr,
                                 Real(static_cast<long>(keys[i].second)) / Mr, res.eps_term, o);
      vals[i] = rep.value;
      errs[i] = rep.err_bound;
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  Complex total;
  double bound = 0;
  for (std::int64_t l = 0; l < sys.M; ++l) {
    Complex prod(1);
    double pa = 1, pe = 1;
    for (int r = 0; r < n; ++r) {
      const std::size_t i = index.at({red(sys.alphas[r], l), red(sys.betas[r], l)});
      prod *= r < sys.s ? vals[i] : conj(vals[i]);
      const double m = abs_d(vals[i]);
      pa *= m;
      pe *= m + errs[i];
    }
    if (l == 0) {
      const Real want = pow(Real(sys.K + 1), n);
      if (abs_d(prod - Complex(want)) > (pe - pa) + 1e-6)
        throw std::logic_error("diophantine_count: l = 0 term is not (K+1)^(s+t)");
    }
    total += prod;
    bound += pe - pa;
  }
  total /= static_cast<long>(sys.M);
  bound /= static_cast<double>(sys.M);
  bound += std::ldexp(1.0, 16 - static_cast<int>(bits)) * std::pow(K1, n);
  res.raw = total;
  res.err_bound = bound;
  if (!(bound < 0.5)) throw std::runtime_error("insufficient precision: error bound reaches 1/2");
  res.count = floor(total.re + Real(0.5)).to_long_floor();
  return res;
}

std::int64_t diophantine_count(const DioSystem& sys, double eps, const EvalOptions& opts) {
  return diophantine_count_report(sys, eps, opts).count;
}

}  // namespace thetasum
