#include "thetasum/hp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace thetasum {

namespace {

thread_local prec_t tl_bits = 128;
thread_local std::uint64_t tl_ops = 0;

inline void count(std::uint64_t n = 1) { tl_ops += n; }

struct Consts {
  Real pi, two_pi, sqrt_pi, sqrt2;
};

const Consts& consts() {
  thread_local std::map<prec_t, Consts> cache;
  auto it = cache.find(tl_bits);
  if (it != cache.end()) return it->second;
  Consts c;
  mpfr_const_pi(c.pi.raw(), MPFR_RNDN);
  mpfr_mul_2ui(c.two_pi.raw(), c.pi.raw(), 1, MPFR_RNDN);
  mpfr_sqrt(c.sqrt_pi.raw(), c.pi.raw(), MPFR_RNDN);
  mpfr_sqrt_ui(c.sqrt2.raw(), 2, MPFR_RNDN);
  return cache.emplace(tl_bits, std::move(c)).first->second;
}

}  // namespace

prec_t working_bits() { return tl_bits; }

PrecisionScope::PrecisionScope(prec_t bits) : saved_(tl_bits) {
  tl_bits = std::max<prec_t>(bits, MPFR_PREC_MIN);
}
PrecisionScope::~PrecisionScope() { tl_bits = saved_; }

std::uint64_t op_count() { return tl_ops; }
void add_op_count(std::uint64_t n) { tl_ops += n; }

// ---- Real ----

Real::Real() {
  mpfr_init2(v_, tl_bits);
  mpfr_set_zero(v_, 1);
}
Real::Real(int x) : Real(static_cast<long>(x)) {}
Real::Real(long x) {
  mpfr_init2(v_, tl_bits);
  mpfr_set_si(v_, x, MPFR_RNDN);
}
Real::Real(long long x) : Real(static_cast<long>(x)) {}
Real::Real(unsigned long x) {
  mpfr_init2(v_, tl_bits);
  mpfr_set_ui(v_, x, MPFR_RNDN);
}
Real::Real(double x) {
  mpfr_init2(v_, tl_bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
}
Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  std::memcpy(v_, o.v_, sizeof(v_));
  o.v_->_mpfr_d = nullptr;
}
Real::~Real() {
  if (v_->_mpfr_d) mpfr_clear(v_);
}

Real& Real::operator=(const Real& o) {
  if (this == &o) return *this;
  if (!v_->_mpfr_d) mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  __mpfr_struct tmp;
  std::memcpy(&tmp, v_, sizeof(tmp));
  std::memcpy(v_, o.v_, sizeof(tmp));
  std::memcpy(o.v_, &tmp, sizeof(tmp));
  return *this;
}
Real& Real::operator=(long x) {
  if (!v_->_mpfr_d) mpfr_init2(v_, tl_bits);
  mpfr_set_si(v_, x, MPFR_RNDN);
  return *this;
}
Real& Real::operator=(double x) {
  if (!v_->_mpfr_d) mpfr_init2(v_, tl_bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
  return *this;
}

Real Real::with_bits(prec_t bits) {
  PrecisionScope s(bits);
  return Real();
}

Real Real::parse(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  Real r;
  if (slash != std::string::npos) {
    mpq_t q;
    mpq_init(q);
    if (mpq_set_str(q, str.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q)) == 0) {
      mpq_clear(q);
      throw std::invalid_argument("bad rational: " + str);
    }
    mpq_canonicalize(q);
    mpfr_set_q(r.raw(), q, MPFR_RNDN);
    mpq_clear(q);
    return r;
  }
  char* end = nullptr;
  if (mpfr_strtofr(r.raw(), str.c_str(), &end, 10, MPFR_RNDN), end == str.c_str() || *end != '\0')
    throw std::invalid_argument("bad number: " + str);
  return r;
}

Real Real::from_mpz(const mpz_t z) {
  Real r;
  mpfr_set_z(r.raw(), z, MPFR_RNDN);
  return r;
}

Real Real::from_mpq(const mpq_t q) {
  Real r;
  mpfr_set_q(r.raw(), q, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  count();
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  count();
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

double Real::log2_abs() const {
  if (mpfr_zero_p(v_)) return -1e300;
  long e;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  count();
  Real r;
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  count();
  Real r;
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r;
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r;
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r;
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r;
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r;
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()); }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()); }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()); }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()); }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()); }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }

Real abs(const Real& x) {
  Real r;
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real sqrt(const Real& x) {
  count();
  Real r;
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real exp(const Real& x) {
  count(4);
  Real r;
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real expm1(const Real& x) {
  count(4);
  Real r;
  mpfr_expm1(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real log(const Real& x) {
  count(4);
  Real r;
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real sqr(const Real& x) {
  count();
  Real r;
  mpfr_sqr(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, long n) {
  count();
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
Real floor(const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), tl_bits));
  mpfr_floor(r.raw(), x.raw());
  return r;
}
Real ceil(const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), tl_bits));
  mpfr_ceil(r.raw(), x.raw());
  return r;
}
Real frac(const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), tl_bits));
  mpfr_frac(r.raw(), x.raw(), MPFR_RNDN);
  if (r.sign() < 0) mpfr_add_ui(r.raw(), r.raw(), 1, MPFR_RNDN);
  // frac of a tiny negative number rounds to 1
  if (mpfr_cmp_ui(r.raw(), 1) >= 0) mpfr_set_zero(r.raw(), 1);
  return r;
}
Real centered_frac(const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), tl_bits));
  mpfr_frac(r.raw(), x.raw(), MPFR_RNDN);
  if (mpfr_cmp_d(r.raw(), 0.5) >= 0)
    mpfr_sub_ui(r.raw(), r.raw(), 1, MPFR_RNDN);
  else if (mpfr_cmp_d(r.raw(), -0.5) < 0)
    mpfr_add_ui(r.raw(), r.raw(), 1, MPFR_RNDN);
  return r;
}
void sin_cos(Real& s, Real& c, const Real& x) {
  count(8);
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

const Real& pi() { return consts().pi; }
const Real& two_pi() { return consts().two_pi; }
const Real& sqrt_pi() { return consts().sqrt_pi; }
const Real& sqrt2() { return consts().sqrt2; }

// ---- Complex ----

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  mul_into(*this, *this, o);
  return *this;
}
Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(const Real& o) {
  re /= o;
  im /= o;
  return *this;
}
Complex& Complex::operator*=(long o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(long o) {
  re /= o;
  im /= o;
  return *this;
}

void mul_into(Complex& r, const Complex& a, const Complex& b) {
  count(4);
  thread_local Real t;
  if (t.bits() != tl_bits) t = Real::with_bits(tl_bits);
  mpfr_fmms(t.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_swap(r.re.raw(), t.raw());
}

void fma_into(Complex& acc, const Complex& a, const Complex& b) {
  count(4);
  thread_local Real t;
  if (t.bits() != tl_bits) t = Real::with_bits(tl_bits);
  mpfr_fmms(t.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_add(acc.re.raw(), acc.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_fmma(t.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(acc.im.raw(), acc.im.raw(), t.raw(), MPFR_RNDN);
}

void fma_into(Complex& acc, const Complex& a, const Real& b) {
  count(2);
  thread_local Real t;
  if (t.bits() != tl_bits) t = Real::with_bits(tl_bits);
  mpfr_mul(t.raw(), a.re.raw(), b.raw(), MPFR_RNDN);
  mpfr_add(acc.re.raw(), acc.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.raw(), MPFR_RNDN);
  mpfr_add(acc.im.raw(), acc.im.raw(), t.raw(), MPFR_RNDN);
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  Complex r;
  mul_into(r, a, b);
  return r;
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = norm(b);
  Complex r = a * conj(b);
  r /= d;
  return r;
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Complex mul_i(const Complex& z) { return {-z.im, z.re}; }
Complex i_pow(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return Complex(Real(1), Real(0));
    case 1: return Complex(Real(0), Real(1));
    case 2: return Complex(Real(-1), Real(0));
    default: return Complex(Real(0), Real(-1));
  }
}
Real norm(const Complex& z) {
  count(2);
  Real r;
  mpfr_fmma(r.raw(), z.re.raw(), z.re.raw(), z.im.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}
Real abs(const Complex& z) {
  count(3);
  Real r;
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}
double abs_d(const Complex& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s, c;
  sin_cos(s, c, z.im);
  return {m * c, m * s};
}
Complex sqr(const Complex& z) { return z * z; }
Complex pow(const Complex& z, long n) {
  Complex r(1), base = z;
  bool inv = n < 0;
  unsigned long e = inv ? -static_cast<unsigned long>(n) : n;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  if (inv) r = Complex(1) / r;
  return r;
}

Complex e2pi(const Real& x) {
  Real y = centered_frac(x);
  Real arg = Real::with_bits(tl_bits + 8);
  {
    PrecisionScope s(tl_bits + 8);
    mpfr_mul(arg.raw(), y.raw(), two_pi().raw(), MPFR_RNDN);
  }
  Complex r;
  sin_cos(r.im, r.re, arg);
  return r;
}

Complex eighth_root(long n) {
  long m = ((n % 8) + 8) % 8;
  if (m % 2 == 0) return i_pow(m / 2);
  Real h = sqrt2() / 2;
  switch (m) {
    case 1: return {h, h};
    case 3: return {-h, h};
    case 5: return {-h, -h};
    default: return {h, -h};
  }
}

Real binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("binom: need 0 <= k <= n");
  mpz_t z;
  mpz_init(z);
  mpz_bin_uiui(z, n, k);
  Real r = Real::from_mpz(z);
  mpz_clear(z);
  return r;
}

Real factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  mpz_t z;
  mpz_init(z);
  mpz_fac_ui(z, n);
  Real r = Real::from_mpz(z);
  mpz_clear(z);
  return r;
}

std::string to_decimal(const Real& x, std::size_t digits) {
  if (mpfr_nan_p(x.raw())) return "nan";
  if (mpfr_inf_p(x.raw())) return x.sign() > 0 ? "inf" : "-inf";
  if (x.is_zero()) return mpfr_signbit(x.raw()) ? "-0" : "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, x.raw(), MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  std::string sign;
  if (m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  // positional for exponents in [-6, 21), scientific otherwise
  const long ex = static_cast<long>(e) - 1;
  const long n = static_cast<long>(m.size());
  if (ex >= 0 && ex < 21) {
    if (n <= ex + 1) return sign + m + std::string(ex + 1 - n, '0');
    return sign + m.substr(0, ex + 1) + "." + m.substr(ex + 1);
  }
  if (ex < 0 && ex >= -6) return sign + "0." + std::string(-ex - 1, '0') + m;
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(ex);
  return out;
}

std::string to_decimal(const Complex& z, std::size_t digits) {
  std::string im = to_decimal(z.im, digits);
  if (im[0] == '-') return to_decimal(z.re, digits) + " - " + im.substr(1) + "i";
  return to_decimal(z.re, digits) + " + " + im + "i";
}

double nu(double K, int j, double eps) { return (j + 1) * std::log(K / eps); }

PrecCtx ctx_for(std::int64_t K, int j, double eps, const PrecisionPolicy& policy) {
  if (!(eps > 0.0) || !(eps <= std::exp(-1.0)))
    throw std::domain_error("eps must lie in (0, 1/e]");
  if (K < 1) throw std::domain_error("K must be positive");
  if (j < 0) throw std::domain_error("j must be nonnegative");
  double need;
  if (policy.growth == PrecisionPolicy::Growth::quadratic) {
    double n = nu(static_cast<double>(K), j, eps);
    need = std::ceil(policy.coeff * n * n);
  } else {
    need = std::ceil(policy.coeff * std::log2(static_cast<double>(K) / eps)) + 3.0 * j;
  }
  PrecCtx c;
  c.eps_guard = policy.guard;
  c.bits = std::max<prec_t>(64, static_cast<prec_t>(need) + policy.guard);
  return c;
}

}  // namespace thetasum
