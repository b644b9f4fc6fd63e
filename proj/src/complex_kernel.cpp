#include "bloch/complex_kernel.hpp"

#include <cmath>

namespace bloch {

namespace {

// Direct power series, adequate for |z| <= 1/2.
cplx li2_series(cplx z) {
  cplx sum = 0.0;
  cplx term = 1.0;
  for (int k = 1; k <= 200; ++k) {
    term *= z;
    cplx inc = term / double(k * k);
    sum += inc;
    if (std::abs(inc) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Series in u = -log(1-z). Coefficient of u^{2n+1} is B_{2n}/(2n+1)! where
// B_{2n} are the Bernoulli numbers; odd powers beyond u^2 vanish. Converges
// for |u| < 2*pi; callers keep |u| <= ~1.1 so fifteen terms reach 1e-17.
cplx li2_log_series(cplx z) {
  static const double bern[] = {
      1.0 / 6,         -1.0 / 30,          1.0 / 42,
      -1.0 / 30,       5.0 / 66,           -691.0 / 2730,
      7.0 / 6,         -3617.0 / 510,      43867.0 / 798,
      -174611.0 / 330, 854513.0 / 138,     -236364091.0 / 2730,
      8553103.0 / 6,   -23749461029.0 / 870,
      8615841276005.0 / 14322};
  static double coeff[15];
  static bool ready = false;
  if (!ready) {
    double fact = 1.0;  // grows to (2n+1)! via the two-factor step below
    for (int n = 1; n <= 15; ++n) {
      fact *= (2.0 * n) * (2.0 * n + 1.0);
      coeff[n - 1] = bern[n - 1] / fact;
    }
    ready = true;
  }
  cplx u = -plog(1.0 - z);
  cplx u2 = u * u;
  cplx sum = u - 0.25 * u2;
  cplx upow = u * u2;
  for (int n = 1; n <= 15; ++n) {
    cplx inc = coeff[n - 1] * upow;
    sum += inc;
    if (std::abs(inc) < 1e-18 * (1.0 + std::abs(sum))) break;
    upow *= u2;
  }
  return sum;
}

}  // namespace

cplx plog(cplx z) {
  if (z == cplx(0.0, 0.0)) throw kernel_domain_error("plog: argument is zero");
  double a = std::arg(z);
  if (a <= -kPi) a += 2.0 * kPi;  // force the half-open range (-pi, pi]
  return {std::log(std::abs(z)), a};
}

cplx li2(cplx z) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z == cplx(1.0, 0.0)) return kPiSq / 6.0;
  double az = std::abs(z);
  if (az <= 0.5) return li2_series(z);
  if (az > 1.0) {
    cplx l = plog(-z);
    return -kPiSq / 6.0 - 0.5 * l * l - li2(1.0 / z);
  }
  if (z.real() > 0.5) {
    // |1-z| <= 1 whenever |z| <= 1 and Re z >= 1/2
    return kPiSq / 6.0 - plog(z) * plog(1.0 - z) - li2(1.0 - z);
  }
  return li2_log_series(z);
}

double bloch_wigner(cplx z) {
  if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0))
    throw kernel_domain_error("bloch_wigner: undefined at 0 and 1");
  if (z.imag() == 0.0) return 0.0;
  return std::imag(li2(z)) + std::arg(1.0 - z) * std::log(std::abs(z));
}

double ModLatticeValue::reduced_re(double tol) const {
  double r = std::fmod(value.real(), modulus);
  if (r < 0.0) r += modulus;
  if (modulus - r < 0.5 * tol) r = 0.0;
  return r;
}

bool ModLatticeValue::equals(const ModLatticeValue& other, double tol) const {
  if (modulus != other.modulus) return false;
  return lattice_distance(value, other.value, modulus) < tol;
}

ModLatticeValue& ModLatticeValue::operator+=(const ModLatticeValue& other) {
  value += other.value;
  return *this;
}

ModLatticeValue& ModLatticeValue::operator-=(const ModLatticeValue& other) {
  value -= other.value;
  return *this;
}

double lattice_residual(cplx v, double modulus) {
  double re = std::remainder(v.real(), modulus);
  return std::hypot(re, v.imag());
}

double lattice_distance(cplx a, cplx b, double modulus) {
  return lattice_residual(a - b, modulus);
}

}  // namespace bloch
