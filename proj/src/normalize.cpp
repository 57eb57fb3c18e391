#include <stdexcept>

#include "thetasum/theta.hpp"

namespace thetasum {

namespace {

// F(a,b) = F(a + 1/2, b - 1/2) since k^2 = k mod 2
void half_shift(Real& a, Real& b) {
  Real h(0.5);
  a = frac(a + h);
  b = b - h;
}

}  // namespace

NormArgs normalize(const Real& a, const Real& b) {
  if (!a.is_finite() || !b.is_finite()) throw std::domain_error("normalize: non-finite input");
  NormArgs n;
  n.a0 = frac(a);
  n.b0 = frac(b);
  if (n.b0 > 0.5) half_shift(n.a0, n.b0);
  if (n.b0 > 0.25) {
    n.conjugated = true;
    n.a0 = frac(-n.a0);
    n.b0 = frac(-n.b0);
    if (n.b0 >= 0.5) half_shift(n.a0, n.b0);
  }
  return n;
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::corput: return "corput";
    case Branch::euler_maclaurin: return "euler_maclaurin";
    default: return "direct";
  }
}

}  // namespace thetasum
