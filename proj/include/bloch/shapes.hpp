#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <bloch/complex_kernel.hpp>

namespace bloch {

/// Thrown when a structural precondition fails: invalid shape coordinates,
/// violated five-term side conditions, mismatched flavors, or a logarithm
/// lift that is not an integer multiple of 2*pi*i.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Validation failure of a shape constraint; carries the offending residual.
struct shape_validation_error : precondition_error {
  double residual;
  shape_validation_error(const std::string& msg, double r)
      : precondition_error(msg), residual(r) {}
};

enum class Flavor { SL, PSL };

/// Lattice modulus for Rogers values of the given flavor: 4*pi^2 for SL,
/// pi^2 for PSL.
double flavor_modulus(Flavor flavor);

/// One generator of the extended pre-Bloch group: a pair of logarithm lifts
/// satisfying sign_e*exp(e) + sign_f*exp(f) = 1. SL shapes always carry the
/// sign pair (+1,+1); PSL shapes store the resolved signs.
struct FlattenedShape {
  cplx e{0.0, 0.0};
  cplx f{0.0, 0.0};
  Flavor flavor = Flavor::SL;
  int sign_e = 1;
  int sign_f = 1;

  /// The cross ratio sign_e * exp(e).
  cplx z() const;
};

/// Relative residual of the defining constraint for s.
double shape_residual(const FlattenedShape& s);

/// Validates the constraint and, for PSL, resolves the sign pair with the
/// smallest residual. Rejects cross ratios at 0 or 1.
FlattenedShape make_shape(cplx e, cplx f, Flavor flavor = Flavor::SL, double tol = kTolR);

struct ZPQForm {
  cplx z;
  long long p = 0;
  long long q = 0;
};

/// Decomposes an SL shape as e = plog(z) + 2p*pi*i, f = plog(1-z) + 2q*pi*i.
/// Throws precondition_error when p or q fails to be integral within tol.
ZPQForm to_zpq(const FlattenedShape& s, double tol = 1e-6);

/// The SL shape (plog(z) + 2p*pi*i, plog(1-z) + 2q*pi*i).
FlattenedShape from_zpq(cplx z, long long p, long long q);

/// Extended Rogers dilogarithm of one shape, reduced modulo 4*pi^2 for SL
/// and modulo pi^2 for PSL.
ModLatticeValue rogers_extended(const FlattenedShape& s);

struct WeightedShape {
  long long coeff = 0;
  FlattenedShape shape;
};

/// Formal integer combination of shapes sharing one flavor.
struct PreBlochElement {
  Flavor flavor = Flavor::SL;
  std::vector<WeightedShape> terms;

  void add(long long coeff, const FlattenedShape& s);
  PreBlochElement& operator+=(const PreBlochElement& rhs);
  PreBlochElement& operator-=(const PreBlochElement& rhs);
  PreBlochElement negated() const;
  void scale(long long k);

  /// Merges terms whose coordinates agree within merge_tol, drops zero
  /// coefficients, and orders terms deterministically.
  void canonicalize(double merge_tol = kTolR);

  /// Sum of coeff * R(shape) over all terms, in the flavor lattice.
  ModLatticeValue rogers() const;
};

PreBlochElement zero_element(Flavor flavor = Flavor::SL);

/// chi(e) = (e, f+2*pi*i) - (e, f) with exp(e) + exp(f) = 1. Requires
/// exp(e) distinct from 0 and 1; satisfies R(chi(e)) = -pi*i*e mod 4*pi^2.
PreBlochElement chi(cplx e);

/// chi as a function of e mod 4*pi*i: returns the zero element on
/// 4*pi*i*Z and routes through log(1/2) when exp(e) = 1 with e outside
/// 4*pi*i*Z. Used to materialize correction terms.
PreBlochElement chi_periodic(cplx e, Flavor flavor = Flavor::SL);

/// Alternating sum R(t0) - R(t1) + R(t2) - R(t3) + R(t4) after checking the
/// five-term side conditions; throws precondition_error naming the first
/// violated equation. The result is a lattice representative of zero.
ModLatticeValue five_term_defect(const std::array<FlattenedShape, 5>& t, double tol = kTolR);

/// Parametrized valid five-term tuple for any z off the real axis and any
/// integers p, q. Sampler for the five-term verification suites.
std::array<FlattenedShape, 5> five_term_instance(cplx z, long long p, long long q);

struct ShiftResult {
  FlattenedShape shape;
  PreBlochElement correction;
};

/// Adds 2*dp*pi*i to e and 2*dq*pi*i to f. The correction element satisfies
/// R(shifted) = R(original) + R(correction) in the flavor lattice.
ShiftResult shift_pq(const FlattenedShape& s, long long dp, long long dq);

enum class Symmetry { INV, SWAP, ONE_MINUS_INV, SWAP_INV, CONJ_VARIANT };

struct SymmetryResult {
  FlattenedShape shape;
  PreBlochElement correction;
  /// R(image) = sign * R(input) + R(correction) mod 4*pi^2.
  int sign = 1;
};

/// Cross-ratio symmetries on SL shapes with Im(z) != 0. The case analysis
/// switches on the sign of Im(z); CONJ_VARIANT exists only for Im(z) < 0.
SymmetryResult apply_symmetry(const FlattenedShape& s, Symmetry which);

/// Termwise complex conjugation of (e, f). R of the conjugate equals the
/// conjugate of R.
PreBlochElement conjugate_element(const PreBlochElement& x);

/// The logarithm of the sign representative of v with argument in [0, pi):
/// plog(v) when arg(v) lies in [0, pi), otherwise plog(-v).
cplx psl_log_lift(cplx v);

/// Signed identities relating plog at z, conj(z), and derived points, as
/// (label, residual) pairs. All residuals vanish for z off the real axis.
std::vector<std::pair<std::string, double>> log_identity_residuals(cplx z);

/// Rows [coeff, Re e, Im e, Re f, Im f]; doubles round-trip bit-exactly.
nlohmann::json element_to_json(const PreBlochElement& x);
PreBlochElement element_from_json(const nlohmann::json& rows, Flavor flavor);

}  // namespace bloch
