#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bloch/shapes.hpp"

namespace bloch {

// Coefficient list (b1, ..., bk) with value 1/(b1 + 1/(b2 + ...)); an empty
// tail contributes 0. Zero coefficients are legal only until collapse_zeros
// removes them.
struct ContinuedFraction {
  std::vector<long long> coeffs;

  bool operator==(const ContinuedFraction&) const = default;
};

// Reduced fraction with positive denominator. The two-bridge conventions in
// this module read it as numerator/denominator and run modular tests with
// p = denominator, q = numerator.
struct TwoBridgeFraction {
  long long numerator = 0;
  long long denominator = 1;

  bool operator==(const TwoBridgeFraction&) const = default;
};

// Reduces and normalizes the sign; denominator of zero is rejected.
TwoBridgeFraction reduced_fraction(long long numerator, long long denominator);

// Evaluation ran into 1/0. The suffix is the shortest coefficient tail whose
// literal evaluation divides by zero.
class degenerate_expansion_error : public precondition_error {
 public:
  degenerate_expansion_error(const std::string& what, std::vector<long long> suffix);

  const std::vector<long long>& suffix() const { return suffix_; }

 private:
  std::vector<long long> suffix_;
};

// Exact value of the expansion. Intermediate infinities are carried
// projectively, so transient zero coefficients are fine; only a divergent
// total value raises degenerate_expansion_error. Values outside 64-bit
// integers raise std::overflow_error.
TwoBridgeFraction cf_value(const ContinuedFraction& cf);

// All-positive expansion of a fraction with 0 < numerator < denominator,
// inverse to cf_value on its image.
ContinuedFraction fraction_to_cf(const TwoBridgeFraction& fr);

// Eliminates zero coefficients by [.., a, 0, b, ..] -> [.., a+b, ..], applied
// left to right; the value is preserved exactly. A result that is empty or
// still holds a zero (at either end, or produced by a cancelling merge)
// raises degenerate_expansion_error.
ContinuedFraction collapse_zeros(const ContinuedFraction& cf);

// Alternating sign sum of the block signs; entries must be +-1.
long long ors_degree(const std::vector<int>& eps);

struct OrsResult {
  ContinuedFraction raw;
  std::optional<ContinuedFraction> collapsed;
  std::optional<TwoBridgeFraction> bracket_value;
  std::optional<TwoBridgeFraction> total_value;
  long long degree = 0;
  std::vector<long long> equivalent_numerators;
  // Empty when every evaluation succeeded; otherwise the conditions hit.
  std::string condition;
};

// Substitution producing the coefficient list
//   [eps1*b, 2*c1, eps2*reverse(b), 2*c2, eps3*b, ...]
// evaluated as 2*c plus the bracket value. Degenerate or out-of-range
// evaluations are reported in the result, not thrown; no identification with
// any particular target fraction is asserted.
OrsResult ors_substitute(const ContinuedFraction& b, long long c,
                         const std::vector<long long>& cs,
                         const std::vector<int>& eps);

// The n-th member of the all-twos family: 2*3^(n-1) coefficients equal to 2.
// Requires 1 <= n <= 12.
ContinuedFraction ln_family(int n);
long long ln_twist_number(int n);

// Count of nonzero coefficients.
long long twist_number(const ContinuedFraction& cf);

struct SymmetryReport {
  bool symmetric = false;
  bool q_squared_check = false;
  bool cs_vanishes = false;
};

// Palindrome test on the coefficients, the modular test q^2 = -1 mod p on the
// exact value (computed in arbitrary precision, so long expansions are fine),
// and the implied vanishing of the Chern-Simons invariant for symmetric
// fractions.
SymmetryReport symmetry_and_cs(const ContinuedFraction& cf);

// Numerators q' with K(p/q') equivalent to K(p/q) up to mirroring:
// q' = +-q^{+-1} mod p, sorted without duplicates.
std::vector<long long> equivalent_numerators(const TwoBridgeFraction& fr);

struct VolumeTwistBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Linear bounds c1*twist + c2 <= vol <= c3*twist + c4 for caller-supplied
// constants.
VolumeTwistBounds volume_twist_bounds(long long twist, double c1, double c2,
                                      double c3, double c4);

}  // namespace bloch
