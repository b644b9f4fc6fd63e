#include <bloch/triangulation.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace bloch {

namespace {

using nlohmann::json;

std::string at_index(const std::string& base, size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& require_field(const json& j, const char* name, const std::string& loc) {
  if (!j.is_object()) throw load_error(loc, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw load_error(loc, std::string("missing field '") + name + "'");
  return *it;
}

long long require_integer(const json& j, const std::string& loc) {
  if (!j.is_number_integer()) throw load_error(loc, "expected an integer");
  return j.get<long long>();
}

double require_number(const json& j, const std::string& loc) {
  if (!j.is_number()) throw load_error(loc, "expected a number");
  return j.get<double>();
}

const json& require_array(const json& j, size_t size, const std::string& loc) {
  if (!j.is_array()) throw load_error(loc, "expected an array");
  if (j.size() != size)
    throw load_error(loc, "expected " + std::to_string(size) + " entries, got " +
                              std::to_string(j.size()));
  return j;
}

int require_vertex_id(const json& j, const std::string& loc) {
  const long long v = require_integer(j, loc);
  if (v < 0) throw load_error(loc, "vertex ids must be nonnegative");
  return static_cast<int>(v);
}

// Positions whose removal turns the simplex tuple into the face triple, in
// order. Empty when the triple is not an ordered subtuple.
bool face_positions(const std::array<int, 4>& tuple, const std::array<int, 3>& face,
                    int* dropped) {
  for (int drop = 0; drop < 4; ++drop) {
    std::array<int, 3> rest{};
    int w = 0;
    for (int i = 0; i < 4; ++i)
      if (i != drop) rest[w++] = tuple[i];
    if (rest == face) {
      if (dropped) *dropped = drop;
      return true;
    }
  }
  return false;
}

struct DisjointSets {
  std::vector<int> parent;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Canonical name of a coordinate of the glued complex: its nonzero weights
// keyed by global vertex id.
using CoordKey = std::vector<std::pair<int, int>>;

CoordKey coord_key(const std::array<int, 4>& vertices, const std::array<int, 4>& weights) {
  CoordKey key;
  for (int i = 0; i < 4; ++i)
    if (weights[i] > 0) key.emplace_back(vertices[i], weights[i]);
  std::sort(key.begin(), key.end());
  return key;
}

Matrix coset_for(const Decoration& dec, int vertex) {
  auto it = dec.cosets.find(vertex);
  if (it == dec.cosets.end())
    throw precondition_error("vertex " + std::to_string(vertex) + " has no coset matrix");
  const Matrix& m = it->second;
  if (m.rows() != dec.n || m.cols() != dec.n)
    throw precondition_error("coset matrix for vertex " + std::to_string(vertex) +
                             " is not " + std::to_string(dec.n) + "x" + std::to_string(dec.n));
  return m;
}

double degeneracy_threshold(double scale) { return 1e-12 * std::max(1.0, scale); }

}  // namespace

void validate_triangulation(const Triangulation& tri) {
  for (size_t k = 0; k < tri.simplices.size(); ++k) {
    const Simplex& s = tri.simplices[k];
    const std::string loc = at_index("simplices", k);
    if (s.orientation != 1 && s.orientation != -1)
      throw load_error(loc + ".orientation", "orientation must be +1 or -1");
    for (int v : s.vertices)
      if (v < 0) throw load_error(loc + ".vertices", "vertex ids must be nonnegative");
  }
  std::set<std::pair<int, std::array<int, 3>>> used;
  for (size_t g = 0; g < tri.gluings.size(); ++g) {
    const Gluing& gl = tri.gluings[g];
    const std::string loc = at_index("gluings", g);
    for (const auto& [side, face] :
         {std::pair<const char*, const Face*>{"from", &gl.from}, {"to", &gl.to}}) {
      const std::string floc = loc + "." + side;
      if (face->simplex < 0 || face->simplex >= static_cast<int>(tri.simplices.size()))
        throw load_error(floc, "simplex index out of range");
      if (!face_positions(tri.simplices[face->simplex].vertices, face->vertices, nullptr))
        throw load_error(floc, "face is not an ordered subtuple of its simplex");
      if (!used.emplace(face->simplex, face->vertices).second)
        throw load_error(floc, "face glued more than once");
    }
    if (gl.from.simplex == gl.to.simplex && gl.from.vertices == gl.to.vertices)
      throw load_error(loc, "face glued to itself");
  }
}

Triangulation load_triangulation(const json& doc) {
  Triangulation tri;
  const json& simplices = require_field(doc, "simplices", "document");
  if (!simplices.is_array()) throw load_error("simplices", "expected an array");
  for (size_t k = 0; k < simplices.size(); ++k) {
    const std::string loc = at_index("simplices", k);
    const json& vertices = require_array(require_field(simplices[k], "vertices", loc), 4,
                                         loc + ".vertices");
    Simplex s;
    for (size_t i = 0; i < 4; ++i)
      s.vertices[i] = require_vertex_id(vertices[i], at_index(loc + ".vertices", i));
    s.orientation = static_cast<int>(
        require_integer(require_field(simplices[k], "orientation", loc), loc + ".orientation"));
    tri.simplices.push_back(s);
  }
  if (doc.contains("gluings")) {
    const json& gluings = doc.at("gluings");
    if (!gluings.is_array()) throw load_error("gluings", "expected an array");
    for (size_t g = 0; g < gluings.size(); ++g) {
      const std::string loc = at_index("gluings", g);
      Gluing gl;
      for (const auto& [name, face] :
           {std::pair<const char*, Face*>{"from", &gl.from}, {"to", &gl.to}}) {
        const std::string floc = loc + "." + name;
        const json& side = require_array(require_field(gluings[g], name, loc), 2, floc);
        face->simplex = static_cast<int>(require_integer(side[0], floc + "[0]"));
        const json& verts = require_array(side[1], 3, floc + "[1]");
        for (size_t i = 0; i < 3; ++i)
          face->vertices[i] = require_vertex_id(verts[i], at_index(floc + "[1]", i));
      }
      tri.gluings.push_back(gl);
    }
  }
  validate_triangulation(tri);
  return tri;
}

FaceKey face_key(const std::array<int, 3>& vertices) {
  FaceKey key = vertices;
  std::sort(key.begin(), key.end());
  return key;
}

std::string face_key_string(const FaceKey& key) {
  return std::to_string(key[0]) + "-" + std::to_string(key[1]) + "-" + std::to_string(key[2]);
}

FaceKey parse_face_key(const std::string& text) {
  std::array<int, 3> parts{};
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d%c", &parts[0], &parts[1], &parts[2], &extra) != 3)
    throw load_error("obstruction", "face key '" + text + "' is not of the form a-b-c");
  if (parts[0] < 0 || parts[1] < 0 || parts[2] < 0)
    throw load_error("obstruction", "face key '" + text + "' has a negative vertex id");
  return face_key(parts);
}

Decoration load_decoration(const json& doc) {
  Decoration dec;
  const long long n = require_integer(require_field(doc, "n", "document"), "n");
  if (n < 1 || n > 16) throw load_error("n", "rank must lie in 1..16");
  dec.n = static_cast<int>(n);
  const json& cosets = require_field(doc, "cosets", "document");
  if (!cosets.is_object()) throw load_error("cosets", "expected an object");
  for (const auto& [key, rows] : cosets.items()) {
    const std::string loc = "cosets." + key;
    int vertex = 0;
    try {
      size_t used = 0;
      vertex = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw load_error(loc, "vertex key must be a nonnegative integer");
    }
    if (vertex < 0) throw load_error(loc, "vertex key must be a nonnegative integer");
    Matrix m(dec.n, dec.n);
    require_array(rows, static_cast<size_t>(dec.n), loc);
    for (int r = 0; r < dec.n; ++r) {
      const json& row = require_array(rows[r], static_cast<size_t>(dec.n),
                                      at_index(loc, static_cast<size_t>(r)));
      for (int c = 0; c < dec.n; ++c) {
        const std::string eloc =
            at_index(at_index(loc, static_cast<size_t>(r)), static_cast<size_t>(c));
        const json& entry = require_array(row[c], 2, eloc);
        m.at(r, c) = cplx(require_number(entry[0], eloc + "[0]"),
                          require_number(entry[1], eloc + "[1]"));
      }
    }
    const double scale = std::pow(std::max(1.0, m.max_abs()), dec.n);
    if (std::abs(m.det()) <= 1e-12 * scale)
      throw load_error(loc, "coset matrix is not invertible");
    dec.cosets[vertex] = m;
  }
  if (doc.contains("obstruction")) {
    const json& obs = doc.at("obstruction");
    if (!obs.is_object()) throw load_error("obstruction", "expected an object");
    for (const auto& [key, value] : obs.items()) {
      const long long bit = require_integer(value, "obstruction." + key);
      if (bit != 0 && bit != 1)
        throw load_error("obstruction." + key, "marking must be 0 or 1");
      dec.obstruction[parse_face_key(key)] = static_cast<int>(bit);
    }
  }
  return dec;
}

SigmaBits simplex_sigma(const Simplex& simplex, const Decoration& dec) {
  SigmaBits bits{};
  for (int i = 0; i < 4; ++i) {
    std::array<int, 3> face{};
    int w = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) face[w++] = simplex.vertices[j];
    auto it = dec.obstruction.find(face_key(face));
    bits[i] = it == dec.obstruction.end() ? 0 : it->second;
  }
  return bits;
}

std::vector<std::array<int, 4>> weight_tuples(int total) {
  if (total < 0) throw precondition_error("weight total must be nonnegative");
  std::vector<std::array<int, 4>> out;
  for (int t0 = 0; t0 <= total; ++t0)
    for (int t1 = 0; t1 + t0 <= total; ++t1)
      for (int t2 = 0; t2 + t1 + t0 <= total; ++t2)
        out.push_back({t0, t1, t2, total - t0 - t1 - t2});
  return out;
}

std::vector<std::array<int, 4>> alpha_tuples(int n) {
  if (n < 2) throw precondition_error("subsimplex labels need rank at least 2");
  return weight_tuples(n - 2);
}

std::vector<cplx> ptolemy_coords(const Simplex& simplex, const Decoration& dec) {
  const int n = dec.n;
  std::array<Matrix, 4> g;
  for (int i = 0; i < 4; ++i) g[i] = coset_for(dec, simplex.vertices[i]);

  const auto tuples = weight_tuples(n);
  std::vector<cplx> values(tuples.size());
  for (size_t idx = 0; idx < tuples.size(); ++idx) {
    const auto& t = tuples[idx];
    Matrix m(n, n);
    int col = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < t[i]; ++j, ++col)
        for (int r = 0; r < n; ++r) m.at(r, col) = g[i].at(r, j);
    values[idx] = m.det();
  }

  if (n == 2 && !dec.obstruction.empty()) {
    const SigmaBits sigma = simplex_sigma(simplex, dec);
    const auto sign = [&](int i) { return sigma[i] ? -1.0 : 1.0; };
    const auto flip = [&](std::array<int, 4> t, double s) {
      const auto it = std::find(tuples.begin(), tuples.end(), t);
      values[static_cast<size_t>(it - tuples.begin())] *= s;
    };
    flip({1, 0, 1, 0}, sign(2));
    flip({1, 0, 0, 1}, sign(3));
    flip({0, 0, 1, 1}, sign(1));
  }
  return values;
}

int PtolemyAssignment::tuple_index(const std::array<int, 4>& t) const {
  const auto it = std::find(tuples.begin(), tuples.end(), t);
  if (it == tuples.end())
    throw precondition_error("no coordinate with the requested weights");
  return static_cast<int>(it - tuples.begin());
}

cplx PtolemyAssignment::value_at(int simplex, const std::array<int, 4>& t) const {
  return values.at(static_cast<size_t>(simplex)).at(static_cast<size_t>(tuple_index(t)));
}

cplx PtolemyAssignment::lift_at(int simplex, const std::array<int, 4>& t) const {
  return lifts.at(static_cast<size_t>(class_at(simplex, t)));
}

int PtolemyAssignment::class_at(int simplex, const std::array<int, 4>& t) const {
  return classes.at(static_cast<size_t>(simplex)).at(static_cast<size_t>(tuple_index(t)));
}

Decoration complete_obstruction(const Triangulation& tri, const Decoration& dec) {
  std::map<FaceKey, int> node_of;
  DisjointSets sets;
  const auto node = [&](const FaceKey& key) {
    auto [it, fresh] = node_of.try_emplace(key, 0);
    if (fresh) it->second = sets.make();
    return it->second;
  };
  for (const Simplex& s : tri.simplices)
    for (int i = 0; i < 4; ++i) {
      std::array<int, 3> face{};
      int w = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i) face[w++] = s.vertices[j];
      node(face_key(face));
    }
  for (const Gluing& g : tri.gluings)
    sets.unite(node(face_key(g.from.vertices)), node(face_key(g.to.vertices)));

  std::map<int, int> bit_of_root;
  for (const auto& [key, bit] : dec.obstruction) {
    auto it = node_of.find(key);
    if (it == node_of.end())
      throw load_error("obstruction." + face_key_string(key),
                       "face does not occur in the triangulation");
    const int root = sets.find(it->second);
    auto [slot, fresh] = bit_of_root.try_emplace(root, bit);
    if (!fresh && slot->second != bit)
      throw load_error("obstruction." + face_key_string(key),
                       "identified faces carry conflicting markings");
  }

  Decoration out = dec;
  out.obstruction.clear();
  for (const auto& [key, id] : node_of) {
    auto it = bit_of_root.find(sets.find(id));
    out.obstruction[key] = it == bit_of_root.end() ? 0 : it->second;
  }

  for (size_t k = 0; k < tri.simplices.size(); ++k) {
    const SigmaBits bits = simplex_sigma(tri.simplices[k], out);
    if ((bits[0] + bits[1] + bits[2] + bits[3]) % 2 != 0)
      throw load_error(at_index("simplices", k),
                       "face markings have odd parity on this simplex");
  }
  return out;
}

PtolemyAssignment build_assignment(const Triangulation& tri, const Decoration& dec,
                                   Flavor flavor) {
  validate_triangulation(tri);
  const Decoration completed = complete_obstruction(tri, dec);
  std::vector<std::vector<cplx>> values;
  for (const Simplex& s : tri.simplices) values.push_back(ptolemy_coords(s, completed));
  return assemble_assignment(tri, dec.n, flavor, std::move(values));
}

PtolemyAssignment assemble_assignment(const Triangulation& tri, int n, Flavor flavor,
                                      std::vector<std::vector<cplx>> values) {
  validate_triangulation(tri);
  if (n < 2) throw precondition_error("coordinate rank must be at least 2");

  PtolemyAssignment a;
  a.n = n;
  a.flavor = flavor;
  a.tuples = weight_tuples(n);
  if (values.size() != tri.simplices.size())
    throw precondition_error("coordinate rows do not match the simplex count");
  for (const auto& row : values)
    if (row.size() != a.tuples.size())
      throw precondition_error("coordinate row does not match the weight tuples");
  a.values = std::move(values);

  std::map<CoordKey, int> node_of;
  DisjointSets sets;
  const auto node = [&](const CoordKey& key) {
    auto [it, fresh] = node_of.try_emplace(key, 0);
    if (fresh) it->second = sets.make();
    return it->second;
  };
  for (const Simplex& s : tri.simplices)
    for (const auto& t : a.tuples) node(coord_key(s.vertices, t));
  for (const Gluing& g : tri.gluings) {
    // Weights supported on the glued face transfer along the positional
    // vertex correspondence.
    for (int u = 0; u <= a.n; ++u)
      for (int v = 0; u + v <= a.n; ++v) {
        const int w = a.n - u - v;
        CoordKey from, to;
        const std::array<int, 3> weights{u, v, w};
        for (int i = 0; i < 3; ++i) {
          if (weights[i] == 0) continue;
          from.emplace_back(g.from.vertices[i], weights[i]);
          to.emplace_back(g.to.vertices[i], weights[i]);
        }
        std::sort(from.begin(), from.end());
        std::sort(to.begin(), to.end());
        sets.unite(node(from), node(to));
      }
  }

  std::map<int, int> class_of_root;
  for (size_t k = 0; k < tri.simplices.size(); ++k) {
    a.classes.emplace_back(a.tuples.size(), -1);
    for (size_t i = 0; i < a.tuples.size(); ++i) {
      const int root = sets.find(node_of.at(coord_key(tri.simplices[k].vertices, a.tuples[i])));
      auto [slot, fresh] = class_of_root.try_emplace(root, static_cast<int>(a.class_values.size()));
      if (fresh) a.class_values.push_back(a.values[k][i]);
      a.classes[k][i] = slot->second;
    }
  }

  a.scale = 1.0;
  for (const auto& row : a.values)
    for (const cplx& v : row) a.scale = std::max(a.scale, std::abs(v));

  for (size_t k = 0; k < a.values.size(); ++k)
    for (size_t i = 0; i < a.values[k].size(); ++i) {
      const cplx v = a.values[k][i];
      const cplx rep = a.class_values[static_cast<size_t>(a.classes[k][i])];
      const double tol = kTolR * std::max(1.0, std::abs(rep));
      double dist = std::abs(v - rep);
      if (flavor == Flavor::PSL) dist = std::min(dist, std::abs(v + rep));
      if (dist > tol)
        throw precondition_error(
            "coordinate values disagree across an identification at simplex " +
            std::to_string(k));
    }

  a.lifts.resize(a.class_values.size());
  for (size_t c = 0; c < a.class_values.size(); ++c) {
    const cplx rep = a.class_values[c];
    if (std::abs(rep) <= degeneracy_threshold(a.scale)) {
      a.lifts[c] = 0.0;
      continue;
    }
    a.lifts[c] = flavor == Flavor::PSL ? psl_log_lift(rep) : plog(rep);
  }
  return a;
}

bool is_generic(const PtolemyAssignment& assignment) {
  const double threshold = degeneracy_threshold(assignment.scale);
  for (const auto& row : assignment.values)
    for (const cplx& v : row)
      if (std::abs(v) <= threshold) return false;
  return true;
}

double check_ptolemy_relation(const PtolemyAssignment& assignment, int k,
                              const SigmaBits& sigma) {
  if (assignment.n != 2)
    throw precondition_error("the quadratic coordinate relation needs rank 2");
  const auto sign = [&](int i) { return sigma[i] ? -1.0 : 1.0; };
  const cplx av = assignment.value_at(k, {1, 1, 0, 0});
  const cplx bv = assignment.value_at(k, {1, 0, 1, 0});
  const cplx cv = assignment.value_at(k, {1, 0, 0, 1});
  const cplx dv = assignment.value_at(k, {0, 1, 1, 0});
  const cplx ev = assignment.value_at(k, {0, 1, 0, 1});
  const cplx fv = assignment.value_at(k, {0, 0, 1, 1});
  return std::abs(sign(0) * sign(1) * av * fv + sign(0) * sign(3) * cv * dv -
                  sign(0) * sign(2) * bv * ev);
}

FlattenedShape lambda_element(const PtolemyAssignment& assignment, int k,
                              const std::array<int, 4>& alpha) {
  if (assignment.lifts.empty())
    throw precondition_error("assignment carries no lifts");
  int total = 0;
  for (int v : alpha) {
    if (v < 0) throw precondition_error("subsimplex weights must be nonnegative");
    total += v;
  }
  if (total != assignment.n - 2)
    throw precondition_error("subsimplex weights must sum to rank minus 2");
  const auto lift = [&](int i, int j) {
    std::array<int, 4> t = alpha;
    ++t[i];
    ++t[j];
    return assignment.lift_at(k, t);
  };
  const cplx e = lift(0, 3) + lift(1, 2) - lift(0, 2) - lift(1, 3);
  const cplx f = lift(0, 1) + lift(2, 3) - lift(0, 2) - lift(1, 3);
  return make_shape(e, f, assignment.flavor);
}

PreBlochElement fundamental_class_from_assignment(const Triangulation& tri,
                                                  const PtolemyAssignment& assignment) {
  if (tri.simplices.size() != assignment.values.size())
    throw precondition_error("assignment does not match the triangulation");
  if (!is_generic(assignment))
    throw precondition_error(
        "degenerate coordinates: a determinant vanishes; subdividing the "
        "triangulation can restore genericity");
  PreBlochElement out = zero_element(assignment.flavor);
  const auto alphas = alpha_tuples(assignment.n);
  for (size_t k = 0; k < tri.simplices.size(); ++k)
    for (const auto& alpha : alphas)
      out.add(tri.simplices[k].orientation,
              lambda_element(assignment, static_cast<int>(k), alpha));
  return out;
}

PreBlochElement fundamental_class(const Triangulation& tri, const Decoration& dec,
                                  Flavor flavor) {
  return fundamental_class_from_assignment(tri, build_assignment(tri, dec, flavor));
}

void shift_class_lift(PtolemyAssignment& assignment, int class_id, long long k) {
  assignment.lifts.at(static_cast<size_t>(class_id)) += static_cast<double>(k) * kTwoPiI;
}

Triangulation fig8_triangulation() {
  Triangulation tri;
  tri.simplices.push_back({{0, 1, 2, 4}, 1});
  tri.simplices.push_back({{1, 2, 3, 4}, -1});
  tri.gluings.push_back({{0, {0, 1, 2}}, {1, {1, 3, 4}}});
  tri.gluings.push_back({{0, {0, 2, 4}}, {1, {1, 2, 3}}});
  tri.gluings.push_back({{0, {0, 1, 4}}, {1, {2, 3, 4}}});
  return tri;
}

Decoration fig8_decoration() {
  const cplx omega = std::exp(cplx(0.0, kPi / 3.0));
  const cplx omega2 = omega * omega;
  const auto mat = [](cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
  };
  Decoration dec;
  dec.n = 2;
  dec.cosets[0] = Matrix::identity(2);
  dec.cosets[1] = mat(0.0, -1.0, 1.0, 0.0);
  dec.cosets[2] = mat(-omega, -omega2, -omega, 0.0);
  dec.cosets[3] = mat(-1.0, 0.0, omega2 - 1.0, -1.0);
  dec.cosets[4] = mat(-omega, 1.0, -1.0, 0.0);
  dec.obstruction[{0, 1, 2}] = 1;
  dec.obstruction[{0, 1, 4}] = 1;
  dec.obstruction[{1, 3, 4}] = 1;
  dec.obstruction[{2, 3, 4}] = 1;
  dec.obstruction[{0, 2, 4}] = 0;
  dec.obstruction[{1, 2, 3}] = 0;
  dec.obstruction[{1, 2, 4}] = 0;
  return dec;
}

nlohmann::json triangulation_to_json(const Triangulation& tri) {
  json simplices = json::array();
  for (const Simplex& s : tri.simplices)
    simplices.push_back({{"vertices", s.vertices}, {"orientation", s.orientation}});
  json gluings = json::array();
  for (const Gluing& g : tri.gluings)
    gluings.push_back({{"from", json::array({g.from.simplex, g.from.vertices})},
                       {"to", json::array({g.to.simplex, g.to.vertices})}});
  return {{"simplices", simplices}, {"gluings", gluings}};
}

nlohmann::json decoration_to_json(const Decoration& dec) {
  json cosets = json::object();
  for (const auto& [vertex, m] : dec.cosets) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c)
        row.push_back(json::array({m.at(r, c).real(), m.at(r, c).imag()}));
      rows.push_back(row);
    }
    cosets[std::to_string(vertex)] = rows;
  }
  json doc = {{"n", dec.n}, {"cosets", cosets}};
  if (!dec.obstruction.empty()) {
    json obs = json::object();
    for (const auto& [key, bit] : dec.obstruction) obs[face_key_string(key)] = bit;
    doc["obstruction"] = obs;
  }
  return doc;
}

}  // namespace bloch
