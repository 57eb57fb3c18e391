#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "thetasum/euler_maclaurin.hpp"

namespace thetasum {

namespace {

constexpr int kMaxBernoulli = 100000;

class BernoulliTable {
 public:
  ~BernoulliTable() {
    for (auto& q : b_) mpq_clear(&q);
  }

  // Extends the exact table to index n (inclusive) and copies B_n into out.
  void get(int n, mpq_t out) {
    std::lock_guard<std::mutex> lock(mu_);
    if (b_.empty()) {
      b_.emplace_back();
      mpq_init(&b_[0]);
      mpq_set_ui(&b_[0], 1, 1);
    }
    mpz_t c;
    mpz_init(c);
    mpq_t t, s;
    mpq_init(t);
    mpq_init(s);
    while (static_cast<int>(b_.size()) <= n) {
      // sum_{k=0}^{m} C(m+1,k) B_k = 0
      const int m = static_cast<int>(b_.size());
      b_.emplace_back();
      mpq_init(&b_[m]);
      if (m > 1 && m % 2 == 1) continue;
      mpq_set_ui(s, 0, 1);
      for (int k = 0; k < m; ++k) {
        if (mpq_sgn(&b_[k]) == 0) continue;
        mpz_bin_uiui(c, m + 1, k);
        mpq_set_z(t, c);
        mpq_mul(t, t, &b_[k]);
        mpq_add(s, s, t);
      }
      mpq_set_ui(t, m + 1, 1);
      mpq_div(s, s, t);
      mpq_neg(&b_[m], s);
    }
    mpq_set(out, &b_[n]);
    mpq_clear(t);
    mpq_clear(s);
    mpz_clear(c);
  }

 private:
  std::mutex mu_;
  std::vector<__mpq_struct> b_;
};

BernoulliTable& table() {
  static BernoulliTable t;
  return t;
}

void check(int n) {
  if (n < 0 || n > kMaxBernoulli) throw std::domain_error("bernoulli: index out of range");
}

}  // namespace

Real bernoulli(int n) {
  check(n);
  thread_local std::map<prec_t, std::vector<Real>> cache;
  auto& v = cache[working_bits()];
  if (static_cast<int>(v.size()) <= n) {
    mpq_t q;
    mpq_init(q);
    for (int k = static_cast<int>(v.size()); k <= n; ++k) {
      table().get(k, q);
      v.push_back(Real::from_mpq(q));
    }
    mpq_clear(q);
  }
  return v[n];
}

std::pair<std::string, std::string> bernoulli_exact(int n) {
  check(n);
  mpq_t q;
  mpq_init(q);
  table().get(n, q);
  char* num = mpz_get_str(nullptr, 10, mpq_numref(q));
  char* den = mpz_get_str(nullptr, 10, mpq_denref(q));
  std::pair<std::string, std::string> r{num, den};
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(num, std::strlen(num) + 1);
  freefunc(den, std::strlen(den) + 1);
  mpq_clear(q);
  return r;
}

Real bernoulli_poly_bound(int n) {
  check(n);
  if (n == 0) return Real(1);
  if (n == 1) return Real(1) / 2;
  if (n % 2 == 0) return abs(bernoulli(n));
  // 2 zeta(n) n! / (2 pi)^n with zeta(n) <= zeta(3) < 1.21
  Real z(1.21);
  return z * 2 * factorial(n) / pow(two_pi(), n);
}

}  // namespace thetasum
