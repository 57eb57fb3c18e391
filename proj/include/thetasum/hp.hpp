#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmp.h>
#include <mpfr.h>

namespace thetasum {

using prec_t = mpfr_prec_t;

// Width used for every value created on this thread.
prec_t working_bits();

class PrecisionScope {
 public:
  explicit PrecisionScope(prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  prec_t saved_;
};

// Multiplication counter (mul, div, sqr, fma count as one each).
std::uint64_t op_count();
void add_op_count(std::uint64_t n);

class Real {
 public:
  Real();
  Real(int x);
  Real(long x);
  Real(long long x);
  Real(unsigned long x);
  Real(double x);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  ~Real();

  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  Real& operator=(long x);
  Real& operator=(double x);

  static Real with_bits(prec_t bits);
  // Decimal, scientific or "p/q", correctly rounded.
  static Real parse(std::string_view s);
  static Real from_mpz(const mpz_t z);
  static Real from_mpq(const mpq_t q);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  prec_t bits() const { return mpfr_get_prec(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }
  // log2|x|, -inf safe (returns -1e300 for zero).
  double log2_abs() const;

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);
Real operator-(const Real& a);

bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);
bool operator<=(const Real& a, double b);
bool operator>=(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real sqr(const Real& x);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real ceil(const Real& x);
// x - floor(x), exact.
Real frac(const Real& x);
// Exact reduction to [-1/2, 1/2).
Real centered_frac(const Real& x);
void sin_cos(Real& s, Real& c, const Real& x);

const Real& pi();
const Real& two_pi();
const Real& sqrt_pi();
const Real& sqrt2();

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(const Real& r) : re(r) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r) {}
  Complex(long r) : re(r) {}
  Complex(double r) : re(r) {}
  Complex(double r, double i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Real& o);
  Complex& operator*=(long o);
  Complex& operator/=(long o);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);
Complex operator/(const Complex& a, long b);
Complex operator-(const Complex& a);

// r = a*b, aliasing allowed.
void mul_into(Complex& r, const Complex& a, const Complex& b);
// acc += a*b
void fma_into(Complex& acc, const Complex& a, const Complex& b);
void fma_into(Complex& acc, const Complex& a, const Real& b);

Complex conj(const Complex& z);
Complex mul_i(const Complex& z);
// i^n
Complex i_pow(long n);
Real norm(const Complex& z);
Real abs(const Complex& z);
double abs_d(const Complex& z);
Complex exp(const Complex& z);
Complex sqr(const Complex& z);
Complex pow(const Complex& z, long n);
// exp(2 pi i x)
Complex e2pi(const Real& x);
// exp(i pi n / 4)
Complex eighth_root(long n);

Real binom(long n, long k);
Real factorial(long n);

// Shortest decimal string that reads back to the same value.
std::string to_decimal(const Real& x, std::size_t digits = 0);
std::string to_decimal(const Complex& z, std::size_t digits = 0);

// nu(K,j,eps) = (j+1) ln(K/eps)
double nu(double K, int j, double eps);

struct PrecCtx {
  prec_t bits = 128;
  unsigned eps_guard = 32;
};

struct PrecisionPolicy {
  enum class Growth { quadratic, linear };
  Growth growth = Growth::quadratic;
  double coeff = 4.0;
  unsigned guard = 32;

  static PrecisionPolicy conservative() { return {}; }
  static PrecisionPolicy practical() { return {Growth::linear, 4.0, 32}; }
};

// Working width: ceil(C3 nu^2) + guard, or ceil(C3 log2(K/eps)) + 3j + guard for the linear policy.
PrecCtx ctx_for(std::int64_t K, int j, double eps, const PrecisionPolicy& policy = {});

}  // namespace thetasum
