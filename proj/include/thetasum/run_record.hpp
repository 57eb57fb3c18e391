#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetasum/theta.hpp"

namespace thetasum {

struct RunRecord {
  std::string command = "eval";
  std::string K;
  std::string j;
  std::string a;
  std::string b;
  std::string eps;
  std::string value_re;
  std::string value_im;
  std::string err_bound;
  int iterations = 0;
  std::vector<std::string> branch_trace;
  std::vector<std::int64_t> lengths;
  std::int64_t bits = 0;
  std::int64_t wall_time_ns = 0;
  std::uint64_t op_count = 0;

  bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(std::int64_t K, int j, const std::string& a, const std::string& b, double eps,
                      const EvalReport& rep, std::int64_t wall_ns);

// one JSON object, no trailing newline
std::string to_json(const RunRecord& r);
RunRecord from_json(const std::string& s);

// shortest round-trip decimal for a double
std::string format_double(double x);

struct BenchRow {
  std::int64_t K = 0;
  double eps = 0;
  int iterations = 0;
  std::uint64_t op_count = 0;
  std::int64_t wall_time_ns = 0;
  std::string value_re;
  std::string value_im;
  std::string err_bound;
};

std::string bench_csv_header();
std::string to_csv(const BenchRow& r);

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace thetasum
