#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bloch/matrix.hpp"
#include "bloch/shapes.hpp"

namespace bloch {

// Action of a determinant-one 2x2 matrix on the monomial basis
// x^{n-1-k} y^k, k = 0..n-1, of homogeneous polynomials of degree n-1.
// The basis is un-normalized, so diag(t, 1/t) maps to
// diag(t^{n-1}, t^{n-3}, ..., t^{1-n}) and the result has determinant one.
// Requires n >= 1 and det(a) = 1 within 1e-6; throws precondition_error
// otherwise.
Matrix sym_power(const Matrix& a, int n);

// sl(2) basis labels: X = [[0,1],[0,0]], Y = [[0,0],[1,0]], H = diag(1,-1).
enum class LieBasis { X, Y, H };

// Derivative at the identity of sym_power along the one-parameter subgroup
// generated by the chosen basis element, in exact integers:
//   H -> diag(n-1, n-3, ..., -n+1)
//   X -> strictly upper triangular with entry k at (k-1, k)
//   Y -> strictly lower triangular with entry n-1-k at (k+1, k)
// Requires n >= 2.
Matrix lie_image(LieBasis basis, int n);

// Trace of lie_image(H, n) squared, computed in integer arithmetic.
// Equals 2 * C(n+1, 3); the nilpotent images X and Y have traceless squares,
// which is re-checked on every call. Requires n >= 2.
long long trace_multiplier(int n);

// Coefficient pair (m, n) describing how a rank-n times conjugate-rank-m
// product scales a packed -cs + i*vol value: the image invariant is
// m * value + n * conj(value). Verified internally against the exact trace of
// (lie_image(H, n) (x) 1_m + 1_n (x) lie_image(H, m))^2. Requires n, m >= 2.
std::pair<long long, long long> mixed_trace_multiplier(int n, int m);

// Real 4x4 image of a determinant-one complex 2x2 matrix acting on Hermitian
// forms in Minkowski coordinates (trace part first, difference part last).
// Entries have exactly zero imaginary part; tau(-a) = tau(a); the image has
// determinant one and preserves tau_invariant_form(). Requires det(a) = 1
// within 1e-6; throws precondition_error otherwise.
Matrix tau(const Matrix& a);

// Diagonal signature (3,1) form preserved by every tau image: diag(-1,1,1,1).
Matrix tau_invariant_form();

// Real 4x4 block embedding of a complex 2x2 matrix: each entry w expands to
// the 2x2 block [[Re w, Im w], [-Im w, Re w]]. A change of basis by
// kappa_conjugator() splits the image into the matrix and its conjugate.
Matrix kappa(const Matrix& a);

// Change of basis M with M^{-1} kappa(a) M = dirsum(a, conj(a)).
Matrix kappa_conjugator();

// Monic characteristic polynomial coefficients, highest degree first
// (size rows+1, leading entry 1), by the Faddeev-LeVerrier recursion.
std::vector<cplx> characteristic_polynomial(const Matrix& a);

// Formal finite-dimensional pieces built from the irreducible actions, their
// conjugates, direct sums, conjugate tensor products, and trivial summands.
struct RepDescriptor {
  enum class Kind { Irreducible, Conjugate, DirectSum, TensorPair, Trivial };

  Kind kind = Kind::Trivial;
  int n = 0;
  int m = 0;
  std::vector<RepDescriptor> parts;

  int dimension() const;

  // ASCII rendering: "rho4", "rho4~", "rho2*rho2~", "rho3+1", "1+1+1+1".
  // Conjugation postfixes '~', parenthesizing compound inner names.
  std::string name() const;
};

RepDescriptor rho_n(int n);
RepDescriptor conj(RepDescriptor inner);
RepDescriptor dirsum(RepDescriptor lhs, RepDescriptor rhs);
RepDescriptor tensor_conj_pair(int n, int m);
RepDescriptor trivial(int count);

// Integer scaling a descriptor applies to volume and Chern-Simons values.
struct CCSMultiplier {
  long long vol_mult = 0;
  long long cs_mult = 0;

  // Scales a packed -cs + i*vol value componentwise.
  cplx apply(cplx ccs) const {
    return {static_cast<double>(cs_mult) * ccs.real(),
            static_cast<double>(vol_mult) * ccs.imag()};
  }
};

// Multiplier of a descriptor, derived from trace_multiplier and
// mixed_trace_multiplier: an irreducible of rank n scales both components by
// C(n+1, 3), conjugation negates the volume component, direct sums add.
CCSMultiplier multiplier(const RepDescriptor& rep);

// Volume and Chern-Simons packed as a single complex value -cs + i*vol.
inline cplx ccs_value(double vol, double cs) { return {-cs, vol}; }
inline double ccs_volume(cplx v) { return v.imag(); }
inline double ccs_chern_simons(cplx v) { return -v.real(); }

// Invariant downstairs of a degree-d covering, given the value computed
// upstairs. Requires degree != 0.
cplx ccs_through_degree(cplx value, long long degree);

struct RepTableRow {
  RepDescriptor rep;
  CCSMultiplier mult;
};

// The ten four-dimensional descriptors with their computed multipliers, from
// the rank-4 irreducible pair down to the trivial sum.
std::vector<RepTableRow> rep_table();

}  // namespace bloch
