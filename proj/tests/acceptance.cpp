// Acceptance run: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "thetasum/applications.hpp"
#include "thetasum/euler_maclaurin.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/quad.hpp"
#include "thetasum/theta.hpp"

using namespace thetasum;
using ts_test::dist;
using ts_test::nu3;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

// shared across criteria 1, 3 and 9
struct FuzzCase {
  std::int64_t K;
  int j;
  EvalReport rep;
};
std::vector<FuzzCase> g_fuzz;
int g_step_check_failures = 0;

OracleCfg oracle_cfg(std::int64_t K, double eps) {
  OracleCfg c;
  c.base_bits = static_cast<prec_t>(64 + std::log2(static_cast<double>(K)) + std::log2(1 / eps));
  return c;
}

double worst_ratio(double have, double diff, double tol) { return std::max(have, diff / tol); }

void fuzz_theta(Outcome& out) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> jd(0, 5);
  double worst = 0;
  int fails = 0;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t K = ts_test::rand_log_int(rng, 1e3, 1e6);
    const int j = jd(rng);
    const std::string a = ts_test::rand_unit(rng), b = ts_test::rand_unit(rng);
    const double eps = i % 2 ? 1e-10 : 1e-6;
    EvalReport rep = theta_sum(K, j, a, b, eps);
    const OracleCfg cfg = oracle_cfg(K, eps);
    PrecisionScope s(oracle_bits(K, cfg));
    const Approx o = direct_theta(K, j, Real::parse(a), Real::parse(b), cfg);
    const double tol = 1e4 * nu3(static_cast<double>(K), j, eps) * eps;
    const double d = dist(rep.value, o.value);
    worst = worst_ratio(worst, d, tol);
    if (!(d <= tol)) {
      ++fails;
      std::fprintf(stderr, "criterion 1: K=%lld j=%d a=%s b=%s eps=%g diff=%g tol=%g\n",
                   static_cast<long long>(K), j, a.c_str(), b.c_str(), eps, d, tol);
    }
    g_fuzz.push_back({K, j, std::move(rep)});
  }
  out.pass = fails == 0;
  out.detail << "200 cases, " << fails << " over tolerance, worst diff/tol " << worst;
}

void reconstruction(Outcome& out) {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> jd(0, 3);
  int done = 0, fails = 0;
  double worst = 0;
  while (done < 100) {
    const std::int64_t K = ts_test::rand_log_int(rng, 1e3, 1e4);
    const int j = jd(rng);
    const double eps = done % 2 ? 1e-10 : 1e-6;
    const PrecCtx ctx = eval_ctx(K, j, eps, {});
    PrecisionScope s(ctx.bits);
    const Real a = Real::parse(ts_test::rand_unit(rng));
    const Real b = Real::parse(ts_test::rand_unit(rng)) / 4;
    if (floor(a + b * Real(static_cast<long>(K)) * 2) <= ceil(a)) continue;
    std::vector<Complex> z(j + 1);
    for (auto& c : z) {
      const double r = u(rng), t = 2 * M_PI * u(rng);
      c = Complex(r * std::cos(t), r * std::sin(t));
    }
    const IterStep st = corput_step(ThetaArgs{K, j, a, b}, z, ctx, eps);
    if (!st.check.ok) ++g_step_check_failures;
    const OracleCfg cfg = oracle_cfg(K, eps);
    PrecisionScope so(oracle_bits(K, cfg));
    const ApproxVec lhs = direct_theta_all(K, j, a, b, cfg);
    const ApproxVec rhs = direct_theta_all(st.q, j, st.a_star, st.b_star, cfg);
    Complex res = st.remainder;
    for (int l = 0; l <= j; ++l) res += st.coeffs[l] * rhs.values[l] - z[l] * lhs.values[l];
    const double Kd = static_cast<double>(K);
    const double tol = 64 * nu3(Kd, j, eps) * std::pow(8.0, -j) / (Kd * Kd) * eps * (j + 1);
    const double d = abs_d(res);
    worst = worst_ratio(worst, d, tol);
    if (!(d <= tol)) {
      ++fails;
      std::fprintf(stderr, "criterion 2: K=%lld j=%d residual=%g tol=%g\n", static_cast<long long>(K), j, d,
                   tol);
    }
    ++done;
  }
  out.pass = fails == 0;
  out.detail << "100 steps, " << fails << " over tolerance, worst residual/tol " << worst;
}

void depth(Outcome& out) {
  int fails = 0, steps = 0, max_iter = 0;
  for (const auto& c : g_fuzz) {
    const int cap = static_cast<int>(std::floor(std::log2(static_cast<double>(c.K)))) + 1;
    max_iter = std::max(max_iter, c.rep.iterations);
    if (c.rep.iterations > cap) ++fails;
    for (std::size_t i = 0; i + 1 < c.rep.lengths.size(); ++i) {
      if (c.rep.branch_trace[i] != Branch::corput) continue;
      ++steps;
      if (2 * c.rep.lengths[i + 1] > c.rep.lengths[i] + 1) ++fails;
    }
  }
  out.pass = fails == 0 && !g_fuzz.empty();
  out.detail << g_fuzz.size() << " runs, " << steps << " steps, max iterations " << max_iter << ", " << fails
             << " violations";
}

void scaling(Outcome& out) {
  const std::string a = "0.41421356237309504880168872420969807856967187537694";
  const std::string b = "0.17320508075688772935274463415058723669428052538103";
  std::uint64_t first = 0, last = 0;
  double wall = 0;
  int checks = 0;
  for (std::int64_t K = 10000; K <= 100000000; K *= 10) {
    const auto t0 = Clock::now();
    const EvalReport r = theta_sum(K, 0, a, b, 1e-6);
    wall = std::chrono::duration<double>(Clock::now() - t0).count();
    checks += r.check_failures;
    if (K == 10000) first = r.op_count;
    last = r.op_count;
  }
  const EvalReport x = theta_sum(100000000, 0, a, b, 1e-6);
  const EvalReport y = theta_sum(100000000, 0, a, b, 1e-8);
  checks += x.check_failures + y.check_failures;
  g_step_check_failures += checks;
  const double ratio = static_cast<double>(last) / static_cast<double>(first);
  const double d = dist(x.value, y.value);
  const bool agree = d <= std::max(x.err_bound, y.err_bound);
  out.pass = ratio <= 50 && wall < 5 && agree;
  out.detail << "op ratio " << ratio << " (limit 50), wall at 1e8 " << wall << " s (limit 5), eps vs eps/100 diff "
             << d << " vs bound " << std::max(x.err_bound, y.err_bound);
}

void euler_maclaurin(Outcome& out) {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> jd(0, 5);
  int fails = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::int64_t K = ts_test::rand_log_int(rng, 1e2, 1e5);
    const int j = jd(rng);
    const double eps = i % 2 ? 1e-10 : 1e-6;
    const double Kd = static_cast<double>(K);
    const double branch = 64 * nu3(Kd, j, eps) * std::pow(8.0, -j) * eps / (Kd * Kd);
    const OracleCfg cfg = oracle_cfg(K, eps);
    PrecisionScope s(eval_ctx(K, j, eps, {}).bits);
    const Real a = Real::parse(ts_test::rand_unit(rng));
    const Real b = Real::parse(ts_test::rand_unit(rng)) / Real(static_cast<long>(2 * K));
    const ApproxVec r = em_quadratic_sums(K, j, a, b, branch / 16);
    PrecisionScope so(oracle_bits(K, cfg));
    const ApproxVec o = direct_theta_all(K, j, a, b, cfg);
    for (int l = 0; l <= j; ++l) {
      const double d = dist(r.values[l], o.values[l]);
      worst = worst_ratio(worst, d, branch);
      if (!(d <= branch)) {
        ++fails;
        std::fprintf(stderr, "criterion 5: K=%lld j=%d l=%d diff=%g tol=%g\n", static_cast<long long>(K), j, l,
                     d, branch);
      }
    }
  }
  out.pass = fails == 0;
  out.detail << "100 cases, " << fails << " over tolerance, worst diff/tol " << worst;
}

void integrals(Outcome& out) {
  std::mt19937_64 rng(999);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> jd(0, 3);
  int fails = 0, count = 0;
  double worst = 0;
  auto record = [&](const char* what, double d, double tol) {
    ++count;
    worst = worst_ratio(worst, d, tol);
    if (!(d <= tol)) {
      ++fails;
      std::fprintf(stderr, "criterion 6: %s diff=%g tol=%g\n", what, d, tol);
    }
  };
  PrecisionScope s(192);
  for (int i = 0; i < 50; ++i) {
    JSpec sp;
    sp.K = ts_test::rand_log_int(rng, 1e3, 1e5);
    sp.j = jd(rng);
    const double eps = i % 2 ? 1e-10 : 1e-6;
    sp.M = Real(static_cast<long>(ts_test::rand_log_int(rng, 1, 1e9)));
    sp.w = Real(u(rng));
    sp.b = Real(u(rng) / 4);
    const ApproxVec r = integral_J_all(sp, eps);
    const Approx o = oracle_J(sp, sp.j, eps / 100);
    record("J", dist(r.values[sp.j], o.value), 64 * nu3(static_cast<double>(sp.K), sp.j, eps) * eps);
  }
  for (int i = 0; i < 30; ++i) {
    const std::int64_t K = 6000 + static_cast<std::int64_t>(4000 * u(rng));
    const int j = jd(rng);
    const double eps = 1e-6;
    const Real a(u(rng)), b(u(rng) / static_cast<double>(K));
    const ApproxVec r = integral_I_tilde_all(ContourTag::C0, K, j, Complex(a), Complex(b), eps);
    const Approx o = oracle_I_tilde(ContourTag::C0, K, j, Complex(a), Complex(b), eps / 100);
    record("C0", dist(r.values[j], o.value), 64 * nu3(static_cast<double>(K), j, eps) * eps);
  }
  for (ContourTag tag : {ContourTag::C1bar, ContourTag::C7, ContourTag::C9, ContourTag::C9_rotated}) {
    for (int i = 0; i < 30; ++i) {
      const std::int64_t K = ts_test::rand_log_int(rng, 2e3, 1e5);
      const int j = jd(rng);
      const double eps = i % 2 ? 1e-10 : 1e-6;
      const Real Kr(static_cast<long>(K));
      const Real b = Real(0.5 + u(rng)) / Kr * Real(1 + 40 * u(rng));
      const Real w = Real(0.05 + 0.95 * u(rng));
      Complex wc(w), bc(b);
      if (tag == ContourTag::C9_rotated) {
        wc = Complex(w + b * Kr * 2, b * Kr * 2 - w);
        bc = Complex(Real(0), b * -2);
      }
      const ApproxVec r = integral_I_tilde_all(tag, K, j, wc, bc, eps);
      const Approx o = oracle_I_tilde(tag, K, j, wc, bc, eps / 100);
      record("contour", dist(r.values[j], o.value), 64 * nu3(static_cast<double>(K), j, eps) * eps);
    }
  }
  // h(z,w) recursion: w h(z,w) + z h(z-1,w) = e^w
  int hfails = 0;
  std::uniform_real_distribution<double> re(-60, -1e-3), im(-60, 60);
  for (int g = 0; g < 20; ++g) {
    const Complex w(re(rng), im(rng));
    const Complex ew = exp(w);
    for (int z = 1; z <= 50; ++z) {
      const Complex lhs = w * h_kernel(z, w) + h_kernel(z - 1, w) * static_cast<long>(z);
      if (!(dist(lhs, ew) <= std::ldexp(1.0, 24 - 192) * std::max(1.0, abs_d(w)))) ++hfails;
    }
  }
  out.pass = fails == 0 && hfails == 0;
  out.detail << count << " integral cases, " << fails << " over tolerance, worst diff/tol " << worst
             << "; h recursion " << hfails << " failures on 20x50 grid";
}

void diophantine(Outcome& out) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> nd(1, 4);
  std::uniform_int_distribution<std::int64_t> cd(-50, 50);
  int fails = 0, checked = 0;
  for (int i = 0; i < 50; ++i) {
    DioSystem sys;
    const int n = nd(rng);
    sys.s = std::uniform_int_distribution<int>(0, n)(rng);
    sys.t = n - sys.s;
    const double kmax = std::floor(std::pow(1e6, 1.0 / n)) - 1;
    sys.K = std::uniform_int_distribution<std::int64_t>(1, static_cast<std::int64_t>(kmax))(rng);
    sys.M = std::uniform_int_distribution<std::int64_t>(1, 30)(rng);
    for (int r = 0; r < n; ++r) {
      sys.alphas.push_back(cd(rng));
      sys.betas.push_back(cd(rng));
    }
    ++checked;
    const std::int64_t got = diophantine_count(sys, 1e-6);
    const std::int64_t want = brute_diophantine(sys);
    if (got != want) {
      ++fails;
      std::fprintf(stderr, "criterion 7: case %d got %lld want %lld\n", i, static_cast<long long>(got),
                   static_cast<long long>(want));
    }
  }
  out.pass = fails == 0;
  out.detail << checked << " systems, " << fails << " mismatches";
}

void gsums(Outcome& out) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> jd(0, 4);
  int fails = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::int64_t K = ts_test::rand_log_int(rng, 10, 1e5);
    const int j = jd(rng);
    const double eps = i % 2 ? 1e-10 : 1e-6;
    PrecisionScope s(eval_ctx(K, j, eps, {}).bits);
    const Real a = Real::parse(ts_test::rand_unit(rng)), b = Real::parse(ts_test::rand_unit(rng));
    const GSumResult g = g_sum(K, j, a, b, eps);
    const OracleCfg cfg = oracle_cfg(K, eps);
    PrecisionScope so(oracle_bits(K, cfg));
    const Approx o = direct_g(K, j, a, b, cfg);
    const double tol = 1e5 * nu3(static_cast<double>(K), j, eps) * eps;
    const double d = dist(g.value, o.value);
    worst = worst_ratio(worst, d, tol);
    if (!(d <= tol)) {
      ++fails;
      std::fprintf(stderr, "criterion 8: K=%lld j=%d diff=%g tol=%g\n", static_cast<long long>(K), j, d, tol);
    }
  }
  out.pass = fails == 0;
  out.detail << "100 cases, " << fails << " over tolerance, worst diff/tol " << worst;
}

void growth_checks(Outcome& out) {
  int n = g_step_check_failures;
  std::int64_t steps = 0;
  for (const auto& c : g_fuzz) {
    n += c.rep.check_failures;
    steps += c.rep.iterations;
  }
  out.pass = n == 0;
  out.detail << n << " coefficient-growth violations over " << steps << " fuzz steps plus the single-step and bench runs";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion all[] = {
      {1, "theta_sum matches direct summation on 200 random cases", fuzz_theta},
      {2, "single-step reconstruction identity", reconstruction},
      {3, "iteration depth and length halving", depth},
      {4, "poly-log scaling up to K = 1e8", scaling},
      {5, "Euler-Maclaurin branch against direct summation", euler_maclaurin},
      {6, "integral layer against quadrature, h recursion", integrals},
      {7, "Diophantine counts equal enumeration", diophantine},
      {8, "G sums against direct summation", gsums},
      {9, "coefficient growth check never fires", growth_checks},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
