#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thetasum/run_record.hpp"

using namespace thetasum;

TEST_CASE("run record JSON round trip is exact") {
  const EvalReport rep = theta_sum(100000, 0, "0.123", "0.217", 1e-8);
  const RunRecord r = make_record(100000, 0, "0.123", "0.217", 1e-8, rep, 12345);
  CHECK(r.iterations == rep.iterations);
  CHECK(r.iterations <= 17);
  CHECK(r.branch_trace.size() == rep.branch_trace.size());
  const std::string js = to_json(r);
  const RunRecord back = from_json(js);
  CHECK(back == r);
  CHECK(to_json(back) == js);
  CHECK(js.find('\n') == std::string::npos);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS(from_json("{"));
  CHECK_THROWS(from_json("{\"command\": 3}"));
}

TEST_CASE("doubles format to round-trip decimals") {
  for (double x : {0.1, 1e-300, 3.0, -2.5e17, 0.123456789012345678}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("bench CSV") {
  CHECK(bench_csv_header() == "K,eps,iterations,op_count,wall_time_ns,value_re,value_im,err_bound");
  BenchRow r;
  r.K = 10000;
  r.eps = 1e-6;
  r.iterations = 4;
  r.op_count = 99;
  r.wall_time_ns = 7;
  r.value_re = "1";
  r.value_im = "-2";
  r.err_bound = "1e-9";
  CHECK(to_csv(r) == "10000,1e-06,4,99,7,1,-2,1e-9");
}

TEST_CASE("slope fit") {
  std::vector<double> x{1, 2, 3, 4}, y;
  for (double v : x) y.push_back(2 * v + 1);
  CHECK(fit_slope(x, y) == doctest::Approx(2.0));
  CHECK_THROWS(fit_slope({1}, {1}));
}
