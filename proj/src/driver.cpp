#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thetasum/euler_maclaurin.hpp"
#include "thetasum/theta.hpp"

namespace thetasum {

double direct_threshold(std::int64_t K, int j, double eps, const EvalOptions& opts) {
  if (opts.direct_threshold >= 0) return opts.direct_threshold;
  const double n = nu(static_cast<double>(K), j, eps);
  if (opts.asymptotic_threshold) return 1000.0 * std::pow(n, 6);
  return std::max(64.0, std::ceil(n));
}

PrecCtx eval_ctx(std::int64_t K, int j, double eps, const EvalOptions& opts) {
  PrecCtx c = ctx_for(K, j, eps, opts.precision);
  if (opts.bits_override > 0) c.bits = std::max<prec_t>(64, opts.bits_override);
  return c;
}

int j_max(std::int64_t K) {
  const double l = 1 + std::log(static_cast<double>(std::max<std::int64_t>(K, 1)));
  return static_cast<int>(64 * l * l);
}

namespace {

double coeff_sum(const std::vector<Complex>& z) {
  double s = 0;
  for (const auto& c : z) s += abs_d(c);
  return s;
}

Complex combine(const std::vector<Complex>& z, const std::vector<Complex>& v) {
  Complex r;
  for (std::size_t l = 0; l < z.size(); ++l)
    if (!z[l].is_zero()) fma_into(r, z[l], v[l]);
  return r;
}

}  // namespace

// Invariant: target = (g ? conj(S) : S) + acc, S = sum_l z_l F(Kc,l;a,b).
EvalReport theta_linear_combination(std::int64_t K, const std::vector<Complex>& z_in, const Real& a_in,
                                    const Real& b_in, double eps, const EvalOptions& opts) {
  if (!(eps > 0.0) || !(eps <= std::exp(-1.0))) throw std::domain_error("eps must lie in (0, 1/e]");
  if (K < 1) throw std::domain_error("K must be positive");
  if (z_in.empty()) throw std::invalid_argument("coefficient vector is empty");
  const int j = static_cast<int>(z_in.size()) - 1;
  if (j > j_max(K)) throw std::domain_error("j exceeds j_max(K)");
  for (const auto& c : z_in)
    if (!(abs_d(c) <= 1.0 + 1e-12)) throw std::domain_error("coefficients must satisfy |z_l| <= 1");

  const PrecCtx ctx = eval_ctx(K, j, eps, opts);
  PrecisionScope scope(ctx.bits);
  const std::uint64_t ops0 = op_count();

  EvalReport rep;
  rep.bits = ctx.bits;
  const double lam = direct_threshold(K, j, eps, opts);
  const double Kd = static_cast<double>(K);
  const double lk = std::max(1.0, 2 * std::log(Kd));
  const double coeff_cap = std::pow(8.0, j) * Kd * Kd * std::exp(1.0) * lk * lk * 16;

  std::vector<Complex> z;
  z.reserve(z_in.size());
  for (const auto& c : z_in) z.emplace_back(Real(c.re), Real(c.im));
  Real a(a_in), b(b_in);
  std::int64_t Kc = K;
  bool g = false;
  Complex acc;
  double err = 0;

  auto push = [&](const Complex& r) { acc += g ? conj(r) : r; };

  for (;;) {
    NormArgs n = normalize(a, b);
    a = n.a0;
    b = n.b0;
    if (n.conjugated) {
      for (auto& c : z) c = conj(c);
      g = !g;
    }
    const double sz = coeff_sum(z);
    rep.lengths.push_back(Kc);
    if (sz == 0) {
      rep.branch_trace.push_back(Branch::direct);
      break;
    }
    if (static_cast<double>(Kc) <= lam) {
      rep.branch_trace.push_back(Branch::direct);
      ApproxVec d = direct_sums(0, Kc, j, a, b, Kc);
      push(combine(z, d.values));
      err += sz * d.bound;
      break;
    }
    const Real qr = floor(a + b * Real(static_cast<long>(Kc)) * 2);
    if (qr <= ceil(a)) {
      rep.branch_trace.push_back(Branch::euler_maclaurin);
      ApproxVec d = em_quadratic_sums(Kc, j, a, b, eps / (16 * std::max(1.0, sz)));
      push(combine(z, d.values));
      err += sz * d.bound;
      break;
    }
    rep.branch_trace.push_back(Branch::corput);
    ThetaArgs args{Kc, j, a, b};
    IterStep st = corput_step(args, z, ctx, eps, opts);
    ++rep.iterations;
    push(st.remainder);
    err += st.bound;
    double mc = 0;
    for (const auto& c : st.coeffs) mc = std::max(mc, abs_d(c));
    rep.max_coeff = std::max(rep.max_coeff, mc);
    if (!st.check.ok || mc > coeff_cap) {
      ++rep.check_failures;
      if (opts.strict_checks) throw std::runtime_error("coefficient growth bound violated");
    }
    z = std::move(st.coeffs);
    a = st.a_star;
    b = st.b_star;
    Kc = st.q;
  }

  rep.value = acc;
  // rounding in the final accumulation
  rep.err_bound = err + std::ldexp(1.0, 8 - static_cast<int>(ctx.bits)) * (Kd + 1) * (rep.iterations + 1);
  rep.op_count = op_count() - ops0;
  return rep;
}

EvalReport theta_sum(std::int64_t K, int j, const Real& a, const Real& b, double eps,
                     const EvalOptions& opts) {
  if (j < 0) throw std::domain_error("j must be nonnegative");
  std::vector<Complex> z(j + 1);
  z[j] = Complex(1);
  return theta_linear_combination(K, z, a, b, eps, opts);
}

EvalReport theta_sum(std::int64_t K, int j, const std::string& a, const std::string& b, double eps,
                     const EvalOptions& opts) {
  if (K < 1) throw std::domain_error("K must be positive");
  if (j < 0) throw std::domain_error("j must be nonnegative");
  PrecisionScope scope(eval_ctx(K, j, eps, opts).bits);
  return theta_sum(K, j, Real::parse(a), Real::parse(b), eps, opts);
}

}  // namespace thetasum
