#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <bloch/matrix.hpp>
#include <bloch/shapes.hpp>

namespace bloch {

/// Document ingestion failure; location points at the offending JSON node.
class load_error : public std::runtime_error {
 public:
  load_error(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Ordered ideal 3-simplex. Vertices are global ids; orientation is +1 or -1.
struct Simplex {
  std::array<int, 4> vertices{};
  int orientation = 1;
};

/// One face of a simplex, named by its ordered global vertex triple.
struct Face {
  int simplex = 0;
  std::array<int, 3> vertices{};
};

/// Order-preserving identification of two faces.
struct Gluing {
  Face from;
  Face to;
};

struct Triangulation {
  std::vector<Simplex> simplices;
  std::vector<Gluing> gluings;
};

/// Structural checks: orientations in {+1,-1}, gluing faces exist as ordered
/// subtuples of their simplices, no face glued twice, no face glued to itself.
void validate_triangulation(const Triangulation& tri);

Triangulation load_triangulation(const nlohmann::json& doc);

/// Sorted global vertex triple naming a face up to simplex membership.
using FaceKey = std::array<int, 3>;

FaceKey face_key(const std::array<int, 3>& vertices);
std::string face_key_string(const FaceKey& key);
FaceKey parse_face_key(const std::string& text);

struct Decoration {
  int n = 2;
  std::map<int, Matrix> cosets;
  /// Z/2 marking per face key; empty means identically zero.
  std::map<FaceKey, int> obstruction;
};

Decoration load_decoration(const nlohmann::json& doc);

/// Z/2 marks on the four faces of one simplex, indexed by opposite vertex.
using SigmaBits = std::array<int, 4>;

SigmaBits simplex_sigma(const Simplex& simplex, const Decoration& dec);

/// All weight 4-tuples with the given total, in lexicographic order.
std::vector<std::array<int, 4>> weight_tuples(int total);

/// Subsimplex labels for rank n: tuples summing to n-2.
std::vector<std::array<int, 4>> alpha_tuples(int n);

/// Projective coordinates of one decorated simplex: for each weight tuple t,
/// the determinant of the first t_i columns of each vertex matrix, assembled
/// in vertex order. For n=2 with a nontrivial marking, the b, c, f entries
/// are sign-adjusted by sigma_2, sigma_3, sigma_1 so the signed quadratic
/// relation holds whenever the raw determinants satisfy the unsigned one.
/// Values are parallel to weight_tuples(dec.n).
std::vector<cplx> ptolemy_coords(const Simplex& simplex, const Decoration& dec);

/// Coordinate system of a decorated triangulation. Coordinates identified by
/// shared vertex labels or by gluings form classes; each class carries one
/// chosen logarithm lift of its representative value.
struct PtolemyAssignment {
  int n = 2;
  Flavor flavor = Flavor::SL;
  std::vector<std::array<int, 4>> tuples;
  /// values[k][i] is the coordinate of simplex k at tuples[i].
  std::vector<std::vector<cplx>> values;
  /// classes[k][i] is the coordinate class id.
  std::vector<std::vector<int>> classes;
  std::vector<cplx> class_values;
  std::vector<cplx> lifts;
  double scale = 1.0;

  int tuple_index(const std::array<int, 4>& t) const;
  cplx value_at(int simplex, const std::array<int, 4>& t) const;
  cplx lift_at(int simplex, const std::array<int, 4>& t) const;
  int class_at(int simplex, const std::array<int, 4>& t) const;
};

/// Resolves the marking through face classes: glued faces must carry equal
/// bits, every simplex must have even bit parity. Returns a copy of dec whose
/// obstruction lists every face of the triangulation explicitly.
Decoration complete_obstruction(const Triangulation& tri, const Decoration& dec);

/// Builds coordinates, coordinate classes and default lifts (principal for
/// SL; half-strip normalized for PSL). Glued coordinates must agree in value,
/// up to sign for PSL.
PtolemyAssignment build_assignment(const Triangulation& tri, const Decoration& dec,
                                   Flavor flavor);

/// Unifies externally supplied per-simplex coordinates into classes and
/// lifts. values[k] must run parallel to weight_tuples(n). Same consistency
/// rules as build_assignment.
PtolemyAssignment assemble_assignment(const Triangulation& tri, int n, Flavor flavor,
                                      std::vector<std::vector<cplx>> values);

/// True iff every coordinate exceeds the degeneracy threshold
/// 1e-12 * max(1, largest coordinate magnitude).
bool is_generic(const PtolemyAssignment& assignment);

/// Residual of the signed quadratic relation on simplex k (rank 2 only):
/// |s0*s1*a*f + s0*s3*c*d - s0*s2*b*e| with s_i = (-1)^{sigma_i}.
double check_ptolemy_relation(const PtolemyAssignment& assignment, int k,
                              const SigmaBits& sigma);

/// The shape attached to subsimplex alpha of simplex k, built from the six
/// class lifts at alpha + e_i + e_j.
FlattenedShape lambda_element(const PtolemyAssignment& assignment, int k,
                              const std::array<int, 4>& alpha);

/// Orientation-weighted sum of all subsimplex shapes, terms in simplex-major
/// order. Rejects degenerate assignments.
PreBlochElement fundamental_class_from_assignment(const Triangulation& tri,
                                                  const PtolemyAssignment& assignment);

PreBlochElement fundamental_class(const Triangulation& tri, const Decoration& dec,
                                  Flavor flavor);

/// Adds 2*pi*i*k to the chosen lift of one coordinate class.
void shift_class_lift(PtolemyAssignment& assignment, int class_id, long long k);

/// Built-in fixture: the two-simplex ideal triangulation of the figure-eight
/// knot complement with its hyperbolic rank-2 decoration and the nontrivial
/// face marking that makes the coordinate classes consistent.
Triangulation fig8_triangulation();
Decoration fig8_decoration();

nlohmann::json triangulation_to_json(const Triangulation& tri);
nlohmann::json decoration_to_json(const Decoration& dec);

}  // namespace bloch
