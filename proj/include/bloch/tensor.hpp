#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include <bloch/shapes.hpp>
#include <bloch/triangulation.hpp>

namespace bloch {

/// Edge coordinates a..f of one rank-2 decorated simplex together with the
/// per-face sign marking, signs[i] = (-1)^{bit on face opposite vertex i}.
/// The stored coordinates satisfy s1*a*f + s3*c*d = s2*b*e; multiplying b, c,
/// f by s2, s3, s1 yields working coordinates satisfying a*f + c*d = b*e.
/// All sign-sensitive computations carry the flips through the logarithm
/// choice log(-x) = pi*i + log(x) rather than re-deriving a principal branch.
struct StandardSimplexCoords {
  cplx a, b, c, d, e, f;
  std::array<int, 4> signs{1, 1, 1, 1};

  /// Derives f = (s2*b*e - s3*c*d) / (s1*a). Throws precondition_error when a
  /// given coordinate vanishes or the derived f degenerates.
  StandardSimplexCoords(cplx a, cplx b, cplx c, cplx d, cplx e,
                        std::array<int, 4> signs = {1, 1, 1, 1});

  /// Letters with the sign flips applied: (a, s2*b, s3*c, d, e, s1*f).
  std::array<cplx, 6> working() const;

  /// Cross ratio z = (s3*c*d) / (s2*b*e) of the working letters.
  cplx cross_ratio() const;

  /// Cross ratio bounded away from the real axis.
  bool generic(double tol = kCaseDeadband) const;
};

/// Residual sign pattern for coordinates known only up to the relation
/// s1*a*f + s3*c*d = b*e: returns {1, s1, 1, s3} minimizing the residual.
std::array<int, 4> detect_relation_signs(cplx a, cplx b, cplx c, cplx d, cplx e,
                                         cplx f);

/// Rank-2 letters of simplex k of an assignment, paired with the face signs.
StandardSimplexCoords coords_from_assignment(const PtolemyAssignment& assignment,
                                             int k, const SigmaBits& sigma);

/// Weight-4 coordinates of the doubled construction, parallel to
/// weight_tuples(4). Vertex tuples carry value 1 and lift 0; every other
/// entry is a signed monomial in the working letters and their conjugates,
/// with the fixed logarithm lift recorded alongside the value.
struct TensorPtolemyTable {
  std::vector<std::array<int, 4>> tuples;
  std::vector<cplx> values;
  std::vector<cplx> lifts;

  int index_of(const std::array<int, 4>& t) const;
  cplx value_at(const std::array<int, 4>& t) const;
  cplx lift_at(const std::array<int, 4>& t) const;
};

TensorPtolemyTable tensor_ptolemy(const StandardSimplexCoords& coords);

/// Maps every coset representative A to kron(A, conj(A)) and drops the face
/// marking, which becomes trivial at rank 4. Requires a rank-2 decoration.
Decoration tensor_decoration(const Decoration& dec);

/// The ten weight-2 subsimplex labels in table order.
extern const std::array<std::array<int, 4>, 10> kSubsimplexAlphas;

struct LambdaTable {
  std::array<FlattenedShape, 10> shapes;

  const FlattenedShape& at(const std::array<int, 4>& alpha) const;
  /// Sum of the ten shapes with unit coefficients.
  PreBlochElement sum() const;
};

/// Shapes of the ten weight-2 subsimplices, computed from the four-term
/// alternating sums of the fixed coordinate lifts. Requires generic coords.
LambdaTable lifted_lambda_table(const StandardSimplexCoords& coords,
                                Flavor flavor = Flavor::SL);

/// The same ten shapes written directly in the letter logarithms.
LambdaTable lambda_closed_forms(const StandardSimplexCoords& coords,
                                Flavor flavor = Flavor::SL);

/// The shape (log c + log d - log b - log e, log a + log f - log b - log e)
/// in the working-letter lifts; exponentials are (z, 1-z).
FlattenedShape reference_shape(const StandardSimplexCoords& coords,
                               Flavor flavor = Flavor::SL);

/// (z, p, q) with log c + log d - log b - log e = log z + 2 p pi i and
/// log a + log f - log b - log e = log(1-z) + 2 q pi i.
ZPQForm coords_zpq(const StandardSimplexCoords& coords);

/// The ten subsimplex shapes as piecewise formulas in (z, p, q) alone, with
/// case boundaries at Re z in {0, 1} and a deadband of kCaseDeadband.
/// Throws precondition_error for real z.
LambdaTable zpq_table(cplx z, long long p, long long q);

/// Sum of the ten zpq_table shapes with unit coefficients.
PreBlochElement subsimplex_sum(cplx z, long long p, long long q);

/// R-distance mod 4 pi^2 between subsimplex_sum and the doubled pair
/// 2*(z,p,q) + 2*conjugate.
double verify_cancellation(cplx z, long long p, long long q);

/// Five-term tuple relating (z,p,q) to its conjugate data; satisfies the
/// side conditions for every p, q and has defect 0.
std::array<FlattenedShape, 5> conjugate_five_term(cplx z, long long p, long long q);

/// R-residual of the three-shape rearrangement of the conjugate five-term
/// relation against (z,p,q) - conjugate plus its chi corrections.
double five_term_reduction_residual(cplx z, long long p, long long q);

/// R-residual of the grouped form of the ten-shape sum: four doubled
/// reference shapes plus a regionwise chi correction.
double grouped_sum_residual(cplx z, long long p, long long q);

/// Residual of the underlying dilogarithm identity evaluated through
/// bloch_wigner: 4[zbar] + 2[z/zbar] + 2[z(1-zbar)/(z-zbar)] +
/// 2[(z-zbar)/(1-zbar)] against 2[zbar] + 2[z]. Throws for real z.
double toy_bloch_check(cplx z);

/// One simplex of the doubled-class comparison.
struct SimplexReduction {
  cplx z;
  double p = 0;
  double q = 0;
  FlattenedShape reference;
  PreBlochElement lambda_sum;
  double residual = 0;
};

/// Computes the ten-shape sum of one simplex and its R-distance from
/// 2*reference + 2*conj(reference), measured in the flavor modulus.
SimplexReduction simplex_reduction(const StandardSimplexCoords& coords,
                                   Flavor flavor);

/// Rank-4 assignment whose per-simplex values are the doubled coordinate
/// table of the sign-marked rank-2 letters. Classes and lifts use SL rules.
PtolemyAssignment tensor_assignment(const Triangulation& tri, const Decoration& dec,
                                    Flavor rank2_flavor);

struct TensorClassReport {
  cplx lhs_R;
  cplx rhs_R;
  double residual = 0;
  double modulus = kFourPiSq;
  std::vector<SimplexReduction> per_simplex;
};

/// Compares R of the rank-4 side, summed simplexwise from the lifted lambda
/// tables, against 2*class + 2*conjugate(class) of the rank-2 decoration.
/// flavor selects the rank-2 class rules and the comparison modulus.
TensorClassReport tensor_class_check(const Triangulation& tri, const Decoration& dec,
                                     Flavor flavor);

nlohmann::json tensor_report_to_json(const TensorClassReport& report);

}  // namespace bloch
