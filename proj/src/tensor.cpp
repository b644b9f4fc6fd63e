#include <bloch/tensor.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include <bloch/matrix.hpp>

namespace bloch {

namespace {

constexpr cplx kPiI{0.0, kPi};

cplx turns(long long k) { return cplx(0.0, 2.0 * kPi * static_cast<double>(k)); }

int band(double x) { return std::abs(x) <= kCaseDeadband ? 0 : (x > 0 ? 1 : -1); }

void require_nonzero(cplx v, const char* name) {
  if (!(std::abs(v) > 0.0))
    throw precondition_error(std::string("coordinate ") + name + " vanishes");
}

/// Working letters a..f with the lift choice log(s*x) = plog(x) + [s<0] pi*i
/// and the matching lifts of the conjugate letters.
struct LetterData {
  std::array<cplx, 6> value{};
  std::array<cplx, 6> lift{};
  std::array<cplx, 6> clift{};
  cplx z;
  cplx ratio;      // z / conj(z)
  cplx log1m;      // plog(1 - ratio)

  cplx conj_value(int i) const { return std::conj(value[i]); }
};

LetterData letter_data(const StandardSimplexCoords& c, bool need_ratio) {
  LetterData L;
  const std::array<cplx, 6> stored{c.a, c.b, c.c, c.d, c.e, c.f};
  const std::array<bool, 6> flip{false, c.signs[2] < 0, c.signs[3] < 0,
                                 false, false, c.signs[1] < 0};
  for (int i = 0; i < 6; ++i) {
    const cplx extra = flip[i] ? kPiI : cplx(0.0, 0.0);
    L.value[i] = flip[i] ? -stored[i] : stored[i];
    L.lift[i] = plog(stored[i]) + extra;
    L.clift[i] = plog(std::conj(stored[i])) + extra;
  }
  L.z = (L.value[2] * L.value[3]) / (L.value[1] * L.value[4]);
  L.ratio = L.z / std::conj(L.z);
  L.log1m = 0.0;
  if (need_ratio) {
    if (!c.generic())
      throw precondition_error(
          "cross ratio is real: the doubled coordinates degenerate");
    L.log1m = plog(1.0 - L.ratio);
  }
  return L;
}

/// Monomial of one weight-4 coordinate: optional leading minus, then letters
/// a..f, '~' marking a conjugate. "1" is a vertex entry, "*" the mixed entry
/// with value 2*Im(conj(b)*c*d*conj(e))*i.
struct MonomialSpec {
  std::array<int, 4> t;
  const char* monomial;
};

constexpr MonomialSpec kTensorMonomials[] = {
    {{4, 0, 0, 0}, "1"},       {{0, 4, 0, 0}, "1"},
    {{0, 0, 4, 0}, "1"},       {{0, 0, 0, 4}, "1"},
    {{3, 1, 0, 0}, "a a~"},    {{3, 0, 1, 0}, "b b~"},
    {{3, 0, 0, 1}, "c c~"},    {{2, 2, 0, 0}, "a a"},
    {{2, 1, 1, 0}, "a b d~"},  {{2, 1, 0, 1}, "a c e~"},
    {{2, 0, 2, 0}, "b b"},     {{2, 0, 1, 1}, "b c f~"},
    {{2, 0, 0, 2}, "c c"},     {{1, 3, 0, 0}, "- a a~"},
    {{1, 2, 1, 0}, "- a b~ d"}, {{1, 2, 0, 1}, "- a c~ e"},
    {{1, 1, 2, 0}, "a~ b d"},  {{1, 1, 1, 1}, "*"},
    {{1, 1, 0, 2}, "a~ c e"},  {{1, 0, 3, 0}, "- b b~"},
    {{1, 0, 2, 1}, "- b c~ f"}, {{1, 0, 1, 2}, "b~ c f"},
    {{1, 0, 0, 3}, "- c c~"},  {{0, 3, 1, 0}, "d d~"},
    {{0, 3, 0, 1}, "e e~"},    {{0, 2, 2, 0}, "d d"},
    {{0, 2, 1, 1}, "d e f~"},  {{0, 2, 0, 2}, "e e"},
    {{0, 1, 3, 0}, "- d d~"},  {{0, 1, 2, 1}, "- d e~ f"},
    {{0, 1, 1, 2}, "d~ e f"},  {{0, 1, 0, 3}, "- e e~"},
    {{0, 0, 3, 1}, "f f~"},    {{0, 0, 2, 2}, "f f"},
    {{0, 0, 1, 3}, "- f f~"},
};

std::pair<cplx, cplx> evaluate_monomial(const LetterData& L, const char* spec) {
  if (std::strcmp(spec, "1") == 0) return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  if (std::strcmp(spec, "*") == 0) {
    const cplx value = L.conj_value(1) * L.value[2] * L.value[3] * L.conj_value(4) -
                       L.value[1] * L.conj_value(2) * L.conj_value(3) * L.value[4];
    const cplx lift =
        kPiI + L.lift[1] + L.clift[2] + L.clift[3] + L.lift[4] + L.log1m;
    return {value, lift};
  }
  cplx value(1.0, 0.0);
  cplx lift(0.0, 0.0);
  for (const char* s = spec; *s; ++s) {
    if (*s == ' ') continue;
    if (*s == '-') {
      value = -value;
      lift += kPiI;
      continue;
    }
    const int i = *s - 'a';
    const bool conj = s[1] == '~';
    if (conj) ++s;
    value *= conj ? L.conj_value(i) : L.value[i];
    lift += conj ? L.clift[i] : L.lift[i];
  }
  return {value, lift};
}

}  // namespace

StandardSimplexCoords::StandardSimplexCoords(cplx a_, cplx b_, cplx c_, cplx d_,
                                             cplx e_, std::array<int, 4> signs_)
    : a(a_), b(b_), c(c_), d(d_), e(e_), signs(signs_) {
  for (int s : signs)
    if (s != 1 && s != -1)
      throw precondition_error("face signs must be +1 or -1");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  require_nonzero(c, "c");
  require_nonzero(d, "d");
  require_nonzero(e, "e");
  const cplx be = b * e;
  const cplx cd = c * d;
  f = (double(signs[2]) * be - double(signs[3]) * cd) / (double(signs[1]) * a);
  if (std::abs(f) <= 1e-12 * (std::abs(be) + std::abs(cd)) / std::abs(a))
    throw precondition_error("derived coordinate f vanishes");
}

std::array<cplx, 6> StandardSimplexCoords::working() const {
  return {a, double(signs[2]) * b, double(signs[3]) * c, d, e, double(signs[1]) * f};
}

cplx StandardSimplexCoords::cross_ratio() const {
  const auto w = working();
  return (w[2] * w[3]) / (w[1] * w[4]);
}

bool StandardSimplexCoords::generic(double tol) const {
  const cplx z = cross_ratio();
  return std::abs(z.imag()) > tol * std::max(1.0, std::abs(z));
}

std::array<int, 4> detect_relation_signs(cplx a, cplx b, cplx c, cplx d, cplx e,
                                         cplx f) {
  const cplx af = a * f;
  const cplx cd = c * d;
  const cplx be = b * e;
  std::array<int, 4> best{1, 1, 1, 1};
  double best_residual = -1.0;
  for (int s1 : {1, -1})
    for (int s3 : {1, -1}) {
      const double residual = std::abs(double(s1) * af + double(s3) * cd - be);
      if (best_residual < 0 || residual < best_residual) {
        best_residual = residual;
        best = {1, s1, 1, s3};
      }
    }
  return best;
}

StandardSimplexCoords coords_from_assignment(const PtolemyAssignment& assignment,
                                             int k, const SigmaBits& sigma) {
  if (assignment.n != 2)
    throw precondition_error("simplex letters need a rank-2 assignment");
  const cplx av = assignment.value_at(k, {1, 1, 0, 0});
  const cplx bv = assignment.value_at(k, {1, 0, 1, 0});
  const cplx cv = assignment.value_at(k, {1, 0, 0, 1});
  const cplx dv = assignment.value_at(k, {0, 1, 1, 0});
  const cplx ev = assignment.value_at(k, {0, 1, 0, 1});
  const cplx fv = assignment.value_at(k, {0, 0, 1, 1});
  const double tol = kTolR * std::max(1.0, std::abs(fv));
  const std::array<int, 4> marked{sigma[0] ? -1 : 1, sigma[1] ? -1 : 1,
                                  sigma[2] ? -1 : 1, sigma[3] ? -1 : 1};
  try {
    const StandardSimplexCoords out(av, bv, cv, dv, ev, marked);
    if (std::abs(out.f - fv) <= tol) return out;
  } catch (const precondition_error&) {
  }
  const StandardSimplexCoords out(av, bv, cv, dv, ev,
                                  detect_relation_signs(av, bv, cv, dv, ev, fv));
  if (std::abs(out.f - fv) > tol)
    throw precondition_error(
        "simplex letters satisfy no signed quadratic relation");
  return out;
}

int TensorPtolemyTable::index_of(const std::array<int, 4>& t) const {
  const auto it = std::find(tuples.begin(), tuples.end(), t);
  if (it == tuples.end())
    throw precondition_error("no coordinate with the requested weights");
  return static_cast<int>(it - tuples.begin());
}

cplx TensorPtolemyTable::value_at(const std::array<int, 4>& t) const {
  return values.at(static_cast<size_t>(index_of(t)));
}

cplx TensorPtolemyTable::lift_at(const std::array<int, 4>& t) const {
  return lifts.at(static_cast<size_t>(index_of(t)));
}

TensorPtolemyTable tensor_ptolemy(const StandardSimplexCoords& coords) {
  const LetterData L = letter_data(coords, coords.generic());
  TensorPtolemyTable table;
  table.tuples = weight_tuples(4);
  table.values.resize(table.tuples.size());
  table.lifts.resize(table.tuples.size());
  for (size_t i = 0; i < table.tuples.size(); ++i) {
    const auto spec =
        std::find_if(std::begin(kTensorMonomials), std::end(kTensorMonomials),
                     [&](const MonomialSpec& m) { return m.t == table.tuples[i]; });
    auto [value, lift] = evaluate_monomial(L, spec->monomial);
    table.values[i] = value;
    table.lifts[i] = lift;
  }
  return table;
}

Decoration tensor_decoration(const Decoration& dec) {
  if (dec.n != 2)
    throw precondition_error("the doubled decoration needs rank-2 cosets");
  Decoration out;
  out.n = 4;
  for (const auto& [vertex, g] : dec.cosets) out.cosets[vertex] = kron(g, g.conjugate());
  return out;
}

const std::array<std::array<int, 4>, 10> kSubsimplexAlphas = {{
    {2, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 0, 1, 0},
    {1, 0, 0, 1},
    {0, 2, 0, 0},
    {0, 1, 1, 0},
    {0, 1, 0, 1},
    {0, 0, 2, 0},
    {0, 0, 1, 1},
    {0, 0, 0, 2},
}};

const FlattenedShape& LambdaTable::at(const std::array<int, 4>& alpha) const {
  const auto it = std::find(kSubsimplexAlphas.begin(), kSubsimplexAlphas.end(), alpha);
  if (it == kSubsimplexAlphas.end())
    throw precondition_error("no subsimplex with the requested weights");
  return shapes[static_cast<size_t>(it - kSubsimplexAlphas.begin())];
}

PreBlochElement LambdaTable::sum() const {
  PreBlochElement out = zero_element(shapes[0].flavor);
  for (const FlattenedShape& s : shapes) out.add(1, s);
  return out;
}

LambdaTable lifted_lambda_table(const StandardSimplexCoords& coords, Flavor flavor) {
  if (!coords.generic())
    throw precondition_error(
        "cross ratio is real: the doubled coordinates degenerate");
  const TensorPtolemyTable table = tensor_ptolemy(coords);
  LambdaTable out;
  for (size_t i = 0; i < kSubsimplexAlphas.size(); ++i) {
    const auto lift = [&](int u, int v) {
      std::array<int, 4> t = kSubsimplexAlphas[i];
      ++t[u];
      ++t[v];
      return table.lift_at(t);
    };
    const cplx e = lift(0, 3) + lift(1, 2) - lift(0, 2) - lift(1, 3);
    const cplx f = lift(0, 1) + lift(2, 3) - lift(0, 2) - lift(1, 3);
    out.shapes[i] = make_shape(e, f, flavor);
  }
  return out;
}

LambdaTable lambda_closed_forms(const StandardSimplexCoords& coords, Flavor flavor) {
  if (!coords.generic())
    throw precondition_error(
        "cross ratio is real: the doubled coordinates degenerate");
  const LetterData L = letter_data(coords, true);
  const cplx La = L.lift[0], Lb = L.lift[1], Lc = L.lift[2], Ld = L.lift[3],
             Le = L.lift[4], Lf = L.lift[5];
  const cplx Ca = L.clift[0], Cb = L.clift[1], Cc = L.clift[2], Cd = L.clift[3],
             Ce = L.clift[4], Cf = L.clift[5];
  const cplx m = L.log1m;

  const cplx corner_e = -Cb + Cc + Cd - Ce;
  const cplx corner_f = Ca - Cb - Ce + Cf;
  const cplx edge_e = Cb - Lb + Lc - Cc + Ld - Cd + Ce - Le;
  const cplx mid_e = -kPiI + Ca - Lb + Lc - Cc + Ld - Cd - Le + Cf - m;
  const cplx mid_f = La - Lb - Le + Lf - m;
  const cplx far_e = kPiI - Ca + Cc + Cd - Cf + m;
  const cplx far_f = La - Ca + Cb - Lb + Ce - Le + Lf - Cf;

  LambdaTable out;
  const auto shape = [&](const std::array<int, 4>& alpha, cplx e, cplx f) {
    const auto it =
        std::find(kSubsimplexAlphas.begin(), kSubsimplexAlphas.end(), alpha);
    out.shapes[static_cast<size_t>(it - kSubsimplexAlphas.begin())] =
        make_shape(e, f, flavor);
  };
  shape({2, 0, 0, 0}, corner_e, corner_f);
  shape({0, 2, 0, 0}, corner_e, corner_f);
  shape({0, 0, 0, 2}, corner_e, corner_f);
  shape({0, 0, 2, 0}, corner_e, corner_f - turns(1));
  shape({1, 1, 0, 0}, edge_e, m);
  shape({0, 0, 1, 1}, edge_e, m);
  shape({1, 0, 1, 0}, mid_e, mid_f);
  shape({0, 1, 0, 1}, mid_e, mid_f);
  shape({1, 0, 0, 1}, far_e, far_f);
  shape({0, 1, 1, 0}, far_e, far_f + turns(1));
  return out;
}

FlattenedShape reference_shape(const StandardSimplexCoords& coords, Flavor flavor) {
  const LetterData L = letter_data(coords, false);
  const cplx e = L.lift[2] + L.lift[3] - L.lift[1] - L.lift[4];
  const cplx f = L.lift[0] + L.lift[5] - L.lift[1] - L.lift[4];
  return make_shape(e, f, flavor);
}

ZPQForm coords_zpq(const StandardSimplexCoords& coords) {
  return to_zpq(reference_shape(coords));
}

LambdaTable zpq_table(cplx z, long long p, long long q) {
  if (band(z.imag()) == 0)
    throw precondition_error("cross ratio is real: the case table degenerates");
  const bool up = z.imag() > 0;
  const int re0 = band(z.real());
  const int re1 = band(z.real() - 1.0);
  // Within the deadband the cut-adjacent quantities below sit on the branch
  // cut; pin them to the line so the case split stays deterministic.
  if (re0 == 0) z = cplx(0.0, z.imag());
  if (re1 == 0) z = cplx(1.0, z.imag());
  const cplx zb = std::conj(z);
  const cplx ratio = z / zb;
  const cplx w1 = z * (1.0 - zb) / (z - zb);
  const cplx w2 = (1.0 - z) * zb / (zb - z);
  const cplx v1 = (zb - z) / (zb - 1.0);
  const cplx v2 = (1.0 - z) / (1.0 - zb);

  const cplx corner_e = plog(zb) - turns(p);
  const cplx corner_f = plog(1.0 - zb) - turns(q);

  cplx edge_e = plog(ratio) + turns(2 * p);
  if (re0 < 0 && up)
    edge_e += turns(1);
  else if (re0 <= 0 && !up)
    edge_e -= turns(1);

  const cplx mid_e = plog(w1) + turns(2 * p - q) - (up ? cplx(0.0, 0.0) : turns(1));
  const cplx mid_f = plog(w2) + turns(q);

  cplx far_e = plog(v1) + turns(q - p);
  cplx far_f = plog(v2) + turns(2 * q);
  if (!up) far_e += turns(1);
  if (up && re1 >= 0) far_f -= turns(1);
  if (!up && re1 > 0) far_f += turns(1);

  LambdaTable out;
  const auto shape = [&](const std::array<int, 4>& alpha, cplx e, cplx f) {
    const auto it =
        std::find(kSubsimplexAlphas.begin(), kSubsimplexAlphas.end(), alpha);
    out.shapes[static_cast<size_t>(it - kSubsimplexAlphas.begin())] =
        make_shape(e, f, Flavor::SL);
  };
  shape({2, 0, 0, 0}, corner_e, corner_f);
  shape({0, 2, 0, 0}, corner_e, corner_f);
  shape({0, 0, 0, 2}, corner_e, corner_f);
  shape({0, 0, 2, 0}, corner_e, corner_f - turns(1));
  shape({1, 1, 0, 0}, edge_e, plog(1.0 - ratio));
  shape({0, 0, 1, 1}, edge_e, plog(1.0 - ratio));
  shape({1, 0, 1, 0}, mid_e, mid_f);
  shape({0, 1, 0, 1}, mid_e, mid_f);
  shape({1, 0, 0, 1}, far_e, far_f);
  shape({0, 1, 1, 0}, far_e, far_f + turns(1));
  return out;
}

PreBlochElement subsimplex_sum(cplx z, long long p, long long q) {
  return zpq_table(z, p, q).sum();
}

double verify_cancellation(cplx z, long long p, long long q) {
  const PreBlochElement lhs = subsimplex_sum(z, p, q);
  PreBlochElement rhs = zero_element(Flavor::SL);
  rhs.add(2, from_zpq(z, p, q));
  rhs += conjugate_element(rhs);
  return lattice_distance(lhs.rogers().value, rhs.rogers().value, kFourPiSq);
}

std::array<FlattenedShape, 5> conjugate_five_term(cplx z, long long p, long long q) {
  if (band(z.imag()) == 0)
    throw precondition_error("the relation needs a nonreal cross ratio");
  const bool up = z.imag() > 0;
  const int re1 = band(z.real() - 1.0);
  const cplx zb = std::conj(z);
  const cplx h = (z - zb) / (1.0 - zb);
  const cplx v2 = (1.0 - z) / (1.0 - zb);
  const cplx w1 = z * (1.0 - zb) / (z - zb);
  const cplx w2 = zb * (1.0 - z) / (zb - z);

  cplx head_f = plog(v2) + turns(2 * q);
  if (re1 > 0 && !up)
    head_f += turns(1);
  else if (re1 >= 0 && up)
    head_f -= turns(1);

  return {
      make_shape(plog(h) + turns(q - p), head_f),
      from_zpq(z, p, q),
      make_shape(plog(w1) + turns(2 * p - q), plog(w2) + turns(q)),
      make_shape(plog(z / (z - zb)) + turns(2 * p), plog(zb / (zb - z))),
      make_shape(plog(1.0 / (1.0 - zb)) + turns(q), plog(zb / (zb - 1.0)) + turns(q - p)),
  };
}

double five_term_reduction_residual(cplx z, long long p, long long q) {
  if (band(z.imag()) == 0)
    throw precondition_error("the relation needs a nonreal cross ratio");
  const bool up = z.imag() > 0;
  const int re0 = band(z.real());
  const int re1 = band(z.real() - 1.0);
  const cplx zb = std::conj(z);
  const cplx h = (z - zb) / (1.0 - zb);
  const cplx v2 = (1.0 - z) / (1.0 - zb);
  const cplx w1 = z * (1.0 - zb) / (z - zb);
  const cplx w2 = zb * (1.0 - z) / (zb - z);
  const cplx ratio = z / zb;

  PreBlochElement lhs = zero_element(Flavor::SL);
  lhs.add(1, make_shape(plog(h) + turns(q - p), plog(v2) + turns(2 * q) + turns(1)));
  lhs.add(1, make_shape(plog(w1) + turns(2 * p - q), plog(w2) + turns(q)));
  lhs.add(1, make_shape(plog(ratio) + turns(2 * p), plog((zb - z) / zb)));

  PreBlochElement rhs = zero_element(Flavor::SL);
  rhs.add(1, from_zpq(z, p, q));
  rhs.add(-1, make_shape(plog(zb) - turns(p), plog(1.0 - zb) - turns(q)));

  const cplx head_e = plog(h) + turns(q - p);
  const double head_count =
      1.0 + (up && re1 >= 0 ? 1.0 : 0.0) - (!up && re1 > 0 ? 1.0 : 0.0);
  const double im_sign = up ? 1.0 : -1.0;
  const double quad_sign = ((up && re0 >= 0) || (!up && re0 <= 0)) ? -1.0 : 1.0;
  const cplx q_phase(0.0, kPi * static_cast<double>(2 * q * q + q));
  const cplx lb = plog(1.0 - zb);
  const cplx lr = plog(1.0 - zb / z);
  const cplx lu = plog(ratio);
  rhs += chi_periodic(head_count * head_e + im_sign * (0.5 * lb + q_phase) +
                      quad_sign * 0.5 * (lr + lu));

  return lattice_distance(lhs.rogers().value, rhs.rogers().value, kFourPiSq);
}

double grouped_sum_residual(cplx z, long long p, long long q) {
  const PreBlochElement lhs = subsimplex_sum(z, p, q);
  const bool up = z.imag() > 0;
  const int re0 = band(z.real());
  const int re1 = band(z.real() - 1.0);
  const cplx zb = std::conj(z);
  const cplx ratio = z / zb;
  const cplx w1 = z * (1.0 - zb) / (z - zb);
  const cplx w2 = (1.0 - z) * zb / (zb - z);
  const cplx v1 = (zb - z) / (zb - 1.0);
  const cplx v2 = (1.0 - z) / (1.0 - zb);

  PreBlochElement rhs = zero_element(Flavor::SL);
  rhs.add(4, make_shape(plog(zb) - turns(p), plog(1.0 - zb) - turns(q)));
  rhs.add(2, make_shape(plog(ratio) + turns(2 * p), plog(1.0 - ratio)));
  rhs.add(2, make_shape(plog(w1) + turns(2 * p - q), plog(w2) + turns(q)));
  rhs.add(2, make_shape(plog(v1) + turns(q - p), plog(v2) + turns(2 * q) + turns(1)));

  const cplx lzb = plog(zb);
  const cplx lv1 = plog(v1);
  const cplx lu1 = plog(1.0 - ratio);
  const cplx lw2 = plog(w2);
  const cplx lv2 = plog(v2);
  cplx arg;
  if (up && re1 >= 0)
    arg = -lzb - 3.0 * lv1 + turns(q);
  else if (up && re0 >= 0)
    arg = -lzb - lv1 + turns(q);
  else if (up)
    arg = -lzb - 2.0 * lu1 - lv1 + turns(q);
  else if (re1 > 0)
    arg = -lzb + 2.0 * lw2 - 2.0 * lv2 + lv1 + turns(q - 1);
  else if (re0 > 0)
    arg = -lzb + 2.0 * lw2 - 2.0 * lv2 - lv1 + turns(q - 1);
  else
    arg = -lzb + 2.0 * lu1 + 2.0 * lw2 - 2.0 * lv2 - lv1 + turns(q - 1);
  rhs += chi_periodic(arg);

  return lattice_distance(lhs.rogers().value, rhs.rogers().value, kFourPiSq);
}

double toy_bloch_check(cplx z) {
  if (std::abs(z.imag()) <= kCaseDeadband * std::max(1.0, std::abs(z)))
    throw kernel_domain_error("the comparison needs a nonreal argument");
  const cplx zb = std::conj(z);
  const double lhs = 4.0 * bloch_wigner(zb) + 2.0 * bloch_wigner(z / zb) +
                     2.0 * bloch_wigner(z * (1.0 - zb) / (z - zb)) +
                     2.0 * bloch_wigner((z - zb) / (1.0 - zb));
  const double rhs = 2.0 * bloch_wigner(zb) + 2.0 * bloch_wigner(z);
  return std::abs(lhs - rhs);
}

SimplexReduction simplex_reduction(const StandardSimplexCoords& coords,
                                   Flavor flavor) {
  SimplexReduction out;
  out.lambda_sum = lifted_lambda_table(coords).sum();
  out.reference = reference_shape(coords);
  out.z = out.reference.z();
  out.p = std::round(((out.reference.e - plog(out.z)) / turns(1)).real() * 2.0) / 2.0;
  out.q =
      std::round(((out.reference.f - plog(1.0 - out.z)) / turns(1)).real() * 2.0) / 2.0;
  PreBlochElement doubled = zero_element(Flavor::SL);
  doubled.add(2, out.reference);
  doubled += conjugate_element(doubled);
  out.residual = lattice_distance(out.lambda_sum.rogers().value,
                                  doubled.rogers().value, flavor_modulus(flavor));
  return out;
}

PtolemyAssignment tensor_assignment(const Triangulation& tri, const Decoration& dec,
                                    Flavor rank2_flavor) {
  const PtolemyAssignment a2 = build_assignment(tri, dec, rank2_flavor);
  const Decoration completed = complete_obstruction(tri, dec);
  std::vector<std::vector<cplx>> values;
  for (size_t k = 0; k < tri.simplices.size(); ++k) {
    const SigmaBits sigma = simplex_sigma(tri.simplices[k], completed);
    const StandardSimplexCoords coords =
        coords_from_assignment(a2, static_cast<int>(k), sigma);
    values.push_back(tensor_ptolemy(coords).values);
  }
  return assemble_assignment(tri, 4, Flavor::SL, std::move(values));
}

TensorClassReport tensor_class_check(const Triangulation& tri, const Decoration& dec,
                                     Flavor flavor) {
  const PtolemyAssignment a2 = build_assignment(tri, dec, flavor);
  const Decoration completed = complete_obstruction(tri, dec);
  TensorClassReport report;
  report.modulus = flavor_modulus(flavor);

  PreBlochElement lhs = zero_element(Flavor::SL);
  for (size_t k = 0; k < tri.simplices.size(); ++k) {
    const SigmaBits sigma = simplex_sigma(tri.simplices[k], completed);
    SimplexReduction red =
        simplex_reduction(coords_from_assignment(a2, static_cast<int>(k), sigma), flavor);
    PreBlochElement weighted = red.lambda_sum;
    weighted.scale(tri.simplices[k].orientation);
    lhs += weighted;
    report.per_simplex.push_back(std::move(red));
  }
  report.lhs_R = lhs.rogers().value;

  PreBlochElement cls = fundamental_class_from_assignment(tri, a2);
  cls.scale(2);
  PreBlochElement rhs = cls;
  rhs += conjugate_element(cls);
  report.rhs_R = rhs.rogers().value;
  report.residual = lattice_distance(report.lhs_R, report.rhs_R, report.modulus);
  return report;
}

nlohmann::json tensor_report_to_json(const TensorClassReport& report) {
  nlohmann::json per = nlohmann::json::array();
  for (const SimplexReduction& red : report.per_simplex)
    per.push_back({{"z", {{"re", red.z.real()}, {"im", red.z.imag()}}},
                   {"p", red.p},
                   {"q", red.q},
                   {"residual", red.residual}});
  return {{"lhs_R", {{"re", report.lhs_R.real()}, {"im", report.lhs_R.imag()}}},
          {"rhs_R", {{"re", report.rhs_R.real()}, {"im", report.rhs_R.imag()}}},
          {"residual", report.residual},
          {"modulus", report.modulus == kFourPiSq ? "4pi2" : "pi2"},
          {"per_simplex", per}};
}

}  // namespace bloch
