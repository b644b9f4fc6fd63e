#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

namespace bloch {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPiSq = kPi * kPi;
inline constexpr double kFourPiSq = 4.0 * kPiSq;

// Default absolute tolerances: R-level identities accumulate error over
// sums of ~10 dilogarithm terms, pure log identities do not.
inline constexpr double kTolR = 1e-9;
inline constexpr double kTolLog = 1e-12;

// Dead band used when classifying a value against a strict/weak sign case
// boundary (Re or Im exactly 0 or 1 up to roundoff).
inline constexpr double kCaseDeadband = 1e-14;

inline const cplx kImagUnit{0.0, 1.0};
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

struct kernel_domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Principal logarithm, imaginary part in (-pi, pi]. Throws on z = 0.
cplx plog(cplx z);

// Dilogarithm. On the cut [1,oo) the value is the limit from the lower
// half plane, so Im li2(x) = -pi*log(x) for real x > 1; this is the choice
// consistent with plog(1-z) at such points.
cplx li2(cplx z);

// Bloch-Wigner function Im li2(z) + arg(1-z)*log|z|. Vanishes on the reals;
// throws on z = 0 and z = 1 where it is undefined.
double bloch_wigner(cplx z);

// A complex number whose real part is only meaningful modulo a real lattice
// (4*pi^2 or pi^2 here). Imaginary parts compare directly.
struct ModLatticeValue {
  cplx value{0.0, 0.0};
  double modulus = kFourPiSq;

  // Real part reduced to [0, modulus); values within tol/2 of the top edge
  // snap to 0 so near-lattice points do not flap between 0 and modulus.
  double reduced_re(double tol = kTolR) const;

  bool equals(const ModLatticeValue& other, double tol = kTolR) const;

  ModLatticeValue& operator+=(const ModLatticeValue& other);
  ModLatticeValue& operator-=(const ModLatticeValue& other);
};

// Distance from v to the nearest lattice point k*modulus (real direction only,
// imaginary part enters at face value). Zero iff v represents 0.
double lattice_residual(cplx v, double modulus);

// |a - b| measured with a's real part taken modulo the lattice.
double lattice_distance(cplx a, cplx b, double modulus);

}  // namespace bloch
