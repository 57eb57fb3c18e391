#include "thetasum/run_record.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace thetasum {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

RunRecord make_record(std::int64_t K, int j, const std::string& a, const std::string& b, double eps,
                      const EvalReport& rep, std::int64_t wall_ns) {
  RunRecord r;
  r.K = std::to_string(K);
  r.j = std::to_string(j);
  r.a = a;
  r.b = b;
  r.eps = format_double(eps);
  r.value_re = to_decimal(rep.value.re);
  r.value_im = to_decimal(rep.value.im);
  r.err_bound = format_double(rep.err_bound);
  r.iterations = rep.iterations;
  for (Branch br : rep.branch_trace) r.branch_trace.emplace_back(branch_name(br));
  r.lengths = rep.lengths;
  r.bits = static_cast<std::int64_t>(rep.bits);
  r.wall_time_ns = wall_ns;
  r.op_count = rep.op_count;
  return r;
}

std::string to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["input"] = {{"K", r.K}, {"j", r.j}, {"a", r.a}, {"b", r.b}, {"eps", r.eps}};
  j["value"] = {{"re", r.value_re}, {"im", r.value_im}};
  j["err_bound"] = r.err_bound;
  j["iterations"] = r.iterations;
  j["branch_trace"] = r.branch_trace;
  j["lengths"] = r.lengths;
  j["bits"] = r.bits;
  j["wall_time_ns"] = r.wall_time_ns;
  j["op_count"] = r.op_count;
  return j.dump();
}

RunRecord from_json(const std::string& s) {
  const auto j = nlohmann::json::parse(s);
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  const auto& in = j.at("input");
  r.K = in.at("K").get<std::string>();
  r.j = in.at("j").get<std::string>();
  r.a = in.at("a").get<std::string>();
  r.b = in.at("b").get<std::string>();
  r.eps = in.at("eps").get<std::string>();
  r.value_re = j.at("value").at("re").get<std::string>();
  r.value_im = j.at("value").at("im").get<std::string>();
  r.err_bound = j.at("err_bound").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.branch_trace = j.at("branch_trace").get<std::vector<std::string>>();
  r.lengths = j.at("lengths").get<std::vector<std::int64_t>>();
  r.bits = j.at("bits").get<std::int64_t>();
  r.wall_time_ns = j.at("wall_time_ns").get<std::int64_t>();
  r.op_count = j.at("op_count").get<std::uint64_t>();
  return r;
}

std::string bench_csv_header() { return "K,eps,iterations,op_count,wall_time_ns,value_re,value_im,err_bound"; }

std::string to_csv(const BenchRow& r) {
  return std::to_string(r.K) + "," + format_double(r.eps) + "," + std::to_string(r.iterations) + "," +
         std::to_string(r.op_count) + "," + std::to_string(r.wall_time_ns) + "," + r.value_re + "," +
         r.value_im + "," + r.err_bound;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("fit_slope: degenerate x");
  return (n * sxy - sx * sy) / den;
}

}  // namespace thetasum
