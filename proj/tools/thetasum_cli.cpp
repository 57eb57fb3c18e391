#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetasum/applications.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/run_record.hpp"
#include "thetasum/theta.hpp"

using namespace thetasum;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ns_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

struct Common {
  std::int64_t K = 0;
  int j = 0;
  std::string a = "0";
  std::string b = "0";
  double eps = 1e-8;
  double threshold = -1;
  bool asymptotic_threshold = false;
  bool strict = false;
  bool json = false;
  long bits = 0;
};

void add_theta_flags(CLI::App* c, Common& o, bool with_eps = true) {
  c->add_option("--K", o.K, "sum length")->required()->check(CLI::PositiveNumber);
  c->add_option("--j", o.j, "power of k")->check(CLI::NonNegativeNumber);
  c->add_option("--a", o.a, "linear coefficient, decimal or p/q");
  c->add_option("--b", o.b, "quadratic coefficient, decimal or p/q");
  if (with_eps) c->add_option("--eps", o.eps, "target accuracy in (0, 1/e]");
}

void add_algo_flags(CLI::App* c, Common& o) {
  c->add_option("--threshold", o.threshold, "direct-summation length threshold");
  c->add_flag("--asymptotic-threshold", o.asymptotic_threshold, "use 1000 nu^6 as the threshold");
  c->add_flag("--strict", o.strict, "fail when a coefficient bound check fails");
  c->add_option("--bits", o.bits, "working precision override");
  c->add_flag("--json", o.json, "emit one JSON record per line");
}

EvalOptions options(const Common& o) {
  EvalOptions e;
  e.direct_threshold = o.threshold;
  e.asymptotic_threshold = o.asymptotic_threshold;
  e.strict_checks = o.strict;
  e.bits_override = o.bits;
  if (e.bits_override == 0) {
    if (const char* env = std::getenv("THETASUM_BITS_OVERRIDE")) e.bits_override = std::atol(env);
  }
  return e;
}

Real parse_at(const std::string& s, prec_t bits) {
  PrecisionScope scope(bits);
  return Real::parse(s);
}

void print_human(const RunRecord& r) {
  const bool neg = !r.value_im.empty() && r.value_im[0] == '-';
  std::cout << "value       " << r.value_re << (neg ? " - " : " + ") << (neg ? r.value_im.substr(1) : r.value_im)
            << " i\n"
            << "err_bound   " << r.err_bound << "\n"
            << "iterations  " << r.iterations << "\n"
            << "branches   ";
  for (const auto& b : r.branch_trace) std::cout << " " << b;
  std::cout << "\nlengths    ";
  for (auto k : r.lengths) std::cout << " " << k;
  std::cout << "\nbits        " << r.bits << "\nop_count    " << r.op_count << "\nwall_ns     "
            << r.wall_time_ns << "\n";
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

int cmd_eval(const Common& o) {
  const EvalOptions opts = options(o);
  const auto t0 = Clock::now();
  EvalReport rep = theta_sum(o.K, o.j, o.a, o.b, o.eps, opts);
  RunRecord r = make_record(o.K, o.j, o.a, o.b, o.eps, rep, ns_since(t0));
  if (o.json)
    std::cout << to_json(r) << "\n";
  else
    print_human(r);
  return 0;
}

int cmd_oracle(const Common& o, const std::string& kind, double mult) {
  OracleCfg cfg;
  cfg.bits_multiplier = mult;
  const prec_t bits = oracle_bits(o.K, cfg);
  const Real a = parse_at(o.a, bits), b = parse_at(o.b, bits);
  const auto t0 = Clock::now();
  Approx v = kind == "g" ? direct_g(o.K, o.j, a, b, cfg) : direct_theta(o.K, o.j, a, b, cfg);
  EvalReport rep;
  rep.value = v.value;
  rep.err_bound = v.bound;
  rep.bits = bits;
  rep.branch_trace.push_back(Branch::direct);
  rep.lengths.push_back(o.K);
  RunRecord r = make_record(o.K, o.j, o.a, o.b, 0.0, rep, ns_since(t0));
  r.command = "oracle-" + kind;
  if (o.json)
    std::cout << to_json(r) << "\n";
  else
    print_human(r);
  return 0;
}

int cmd_gsum(const Common& o) {
  const EvalOptions opts = options(o);
  const prec_t bits = eval_ctx(o.K, o.j, o.eps, opts).bits + 16;
  const Real a = parse_at(o.a, bits), b = parse_at(o.b, bits);
  const auto t0 = Clock::now();
  GSumResult g = g_sum(o.K, o.j, a, b, o.eps, opts);
  EvalReport rep;
  rep.value = g.value;
  rep.err_bound = g.err_bound;
  rep.bits = bits;
  rep.iterations = g.theta_calls;
  RunRecord r = make_record(o.K, o.j, o.a, o.b, o.eps, rep, ns_since(t0));
  r.command = "gsum";
  if (o.json)
    std::cout << to_json(r) << "\n";
  else
    print_human(r);
  return 0;
}

int cmd_count(const DioSystem& sys, const std::string& alpha, const std::string& beta, double eps,
              bool check, bool json) {
  DioSystem s = sys;
  s.alphas = parse_list(alpha);
  s.betas = parse_list(beta);
  const auto t0 = Clock::now();
  DioResult r = diophantine_count_report(s, eps);
  const std::int64_t wall = ns_since(t0);
  const double states = std::pow(static_cast<double>(s.K + 1), s.s + s.t);
  std::string cross = "skipped";
  if (check && states <= 1e6) {
    const std::int64_t brute = brute_diophantine(s);
    cross = brute == r.count ? "agrees" : "MISMATCH";
    if (brute != r.count) {
      std::cerr << "count " << r.count << " disagrees with enumeration " << brute << "\n";
      return 2;
    }
  }
  if (json) {
    std::cout << "{\"command\":\"count\",\"count\":" << r.count << ",\"err_bound\":\""
              << format_double(r.err_bound) << "\",\"brute_check\":\"" << cross
              << "\",\"wall_time_ns\":" << wall << "}\n";
  } else {
    std::cout << r.count << "\n";
    std::cerr << "err_bound " << format_double(r.err_bound) << ", brute-force check " << cross << "\n";
  }
  return 0;
}

struct BenchArgs {
  double kmin = 1e4;
  double kmax = 1e8;
  int points = 5;
  double eps = 1e-6;
  int j = 0;
  std::string a = "0.41421356237309504880168872420969807856967187537694";
  std::string b = "0.17320508075688772935274463415058723669428052538103";
  double max_ratio = 50;
};

int cmd_bench(const BenchArgs& ba, const Common& o) {
  if (ba.points < 2 || !(ba.kmax > ba.kmin) || !(ba.kmin >= 1)) throw CLI::ValidationError("bench: bad grid");
  const EvalOptions opts = options(o);
  std::cout << bench_csv_header() << "\n";
  std::vector<double> lk, llk, lo;
  std::uint64_t first = 0, last = 0;
  for (int i = 0; i < ba.points; ++i) {
    const double e = std::log(ba.kmin) + (std::log(ba.kmax) - std::log(ba.kmin)) * i / (ba.points - 1);
    const std::int64_t K = std::llround(std::exp(e));
    const auto t0 = Clock::now();
    EvalReport rep = theta_sum(K, ba.j, ba.a, ba.b, ba.eps, opts);
    BenchRow row;
    row.K = K;
    row.eps = ba.eps;
    row.iterations = rep.iterations;
    row.op_count = rep.op_count;
    row.wall_time_ns = ns_since(t0);
    row.value_re = to_decimal(rep.value.re, 20);
    row.value_im = to_decimal(rep.value.im, 20);
    row.err_bound = format_double(rep.err_bound);
    std::cout << to_csv(row) << "\n" << std::flush;
    lk.push_back(std::log(static_cast<double>(K)));
    llk.push_back(std::log(std::log(static_cast<double>(K))));
    lo.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(rep.op_count, 1))));
    if (i == 0) first = rep.op_count;
    last = rep.op_count;
  }
  const double ratio = static_cast<double>(last) / static_cast<double>(std::max<std::uint64_t>(first, 1));
  std::cout << "# exponent_vs_K " << format_double(fit_slope(lk, lo)) << "\n"
            << "# exponent_vs_logK " << format_double(fit_slope(llk, lo)) << "\n"
            << "# op_ratio " << format_double(ratio) << "\n";
  return ratio <= ba.max_ratio ? 0 : 3;
}

std::string rand_decimal(std::mt19937_64& rng) {
  // 30 random digits in [0,1)
  std::string s = "0.";
  std::uniform_int_distribution<int> d(0, 9);
  for (int i = 0; i < 30; ++i) s.push_back(static_cast<char>('0' + d(rng)));
  return s;
}

int cmd_fuzz(std::uint64_t seed, int count, double kmax, int jmax, bool json) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lk(std::log(1e3), std::log(kmax));
  std::uniform_int_distribution<int> jd(0, jmax);
  const double eps = 1e-8;
  int fails = 0;
  for (int i = 0; i < count; ++i) {
    const std::int64_t K = std::llround(std::exp(lk(rng)));
    const int j = jd(rng);
    const std::string a = rand_decimal(rng), b = rand_decimal(rng);
    EvalReport rep = theta_sum(K, j, a, b, eps);
    OracleCfg cfg;
    cfg.base_bits = static_cast<prec_t>(64 + std::log2(static_cast<double>(K)) + std::log2(1 / eps));
    const prec_t ob = oracle_bits(K, cfg);
    Approx d = direct_theta(K, j, parse_at(a, ob), parse_at(b, ob), cfg);
    const double diff = abs_d(rep.value - d.value);
    const double n = nu(static_cast<double>(K), j, eps);
    const bool ok = diff <= 1e4 * n * n * n * eps;
    fails += !ok;
    RunRecord r = make_record(K, j, a, b, eps, rep, 0);
    r.command = "fuzz";
    if (json)
      std::cout << to_json(r) << "\n";
    else
      std::cout << i << " K=" << K << " j=" << j << " diff=" << format_double(diff)
                << " bound=" << format_double(rep.err_bound + d.bound) << (ok ? " ok" : " FAIL")
                << "\n";
  }
  return fails ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated theta sums, G sums and Diophantine counts"};
  app.require_subcommand(1);

  Common ev;
  auto* eval = app.add_subcommand("eval", "evaluate F(K,j;a,b)");
  add_theta_flags(eval, ev);
  add_algo_flags(eval, ev);

  Common orc;
  std::string kind = "theta";
  double mult = 4;
  auto* oracle = app.add_subcommand("oracle", "direct summation reference");
  add_theta_flags(oracle, orc, false);
  oracle->add_option("--kind", kind, "theta or g")->check(CLI::IsMember({"theta", "g"}));
  oracle->add_option("--mult", mult, "precision multiplier")->check(CLI::Range(1.0, 64.0));
  oracle->add_flag("--json", orc.json, "emit JSON");

  Common gs;
  auto* gsum = app.add_subcommand("gsum", "evaluate G(K,j;a,b)");
  add_theta_flags(gsum, gs);
  add_algo_flags(gsum, gs);

  DioSystem sys;
  std::string alpha, beta;
  double ceps = 1e-6;
  bool no_check = false, cjson = false;
  auto* count = app.add_subcommand("count", "count solutions of the quadratic congruence system");
  count->add_option("--M", sys.M, "modulus")->required()->check(CLI::PositiveNumber);
  count->add_option("--K", sys.K, "range 0..K")->required()->check(CLI::PositiveNumber);
  count->add_option("--s", sys.s, "terms on the left")->required()->check(CLI::NonNegativeNumber);
  count->add_option("--t", sys.t, "terms on the right")->required()->check(CLI::NonNegativeNumber);
  count->add_option("--alpha", alpha, "comma separated linear coefficients")->required();
  count->add_option("--beta", beta, "comma separated quadratic coefficients")->required();
  count->add_option("--eps", ceps, "per-factor accuracy cap");
  count->add_flag("--no-check", no_check, "skip the enumeration cross-check");
  count->add_flag("--json", cjson, "emit JSON");

  BenchArgs ba;
  Common bo;
  auto* bench = app.add_subcommand("bench", "op_count and wall time over a geometric K grid (CSV)");
  bench->add_option("--kmin", ba.kmin, "smallest K");
  bench->add_option("--kmax", ba.kmax, "largest K");
  bench->add_option("--points", ba.points, "grid points, geometric");
  bench->add_option("--eps", ba.eps, "target accuracy");
  bench->add_option("--j", ba.j, "power of k");
  bench->add_option("--a", ba.a, "linear coefficient");
  bench->add_option("--b", ba.b, "quadratic coefficient");
  bench->add_option("--max-ratio", ba.max_ratio, "exit 3 when op_count(kmax)/op_count(kmin) exceeds this");
  bench->add_option("--threshold", bo.threshold, "direct-summation length threshold");
  bench->add_option("--bits", bo.bits, "working precision override");

  std::uint64_t seed = 1;
  int fcount = 10, fj = 3;
  double fkmax = 1e5;
  bool fjson = false;
  auto* fuzz = app.add_subcommand("fuzz", "seeded random comparison against the direct oracle");
  fuzz->add_option("--seed", seed, "RNG seed");
  fuzz->add_option("--count", fcount, "number of cases");
  fuzz->add_option("--kmax", fkmax, "largest K, sampled log-uniformly from 1000");
  fuzz->add_option("--jmax", fj, "largest j");
  fuzz->add_flag("--json", fjson, "emit one JSON record per case");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return cmd_eval(ev);
    if (*oracle) return cmd_oracle(orc, kind, mult);
    if (*gsum) return cmd_gsum(gs);
    if (*count) return cmd_count(sys, alpha, beta, ceps, !no_check, cjson);
    if (*bench) return cmd_bench(ba, bo);
    if (*fuzz) return cmd_fuzz(seed, fcount, fkmax, fj, fjson);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
