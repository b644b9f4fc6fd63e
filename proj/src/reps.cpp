#include "bloch/reps.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace bloch {

namespace {

constexpr double kDetTol = 1e-6;

std::vector<std::vector<long long>> lie_entries(LieBasis basis, int n) {
  std::vector<std::vector<long long>> m(static_cast<size_t>(n),
                                        std::vector<long long>(static_cast<size_t>(n), 0));
  switch (basis) {
    case LieBasis::X:
      for (int k = 1; k < n; ++k) m[k - 1][k] = k;
      break;
    case LieBasis::Y:
      for (int k = 0; k + 1 < n; ++k) m[k + 1][k] = n - 1 - k;
      break;
    case LieBasis::H:
      for (int k = 0; k < n; ++k) m[k][k] = n - 1 - 2 * k;
      break;
  }
  return m;
}

long long trace_of_square(const std::vector<std::vector<long long>>& m) {
  long long t = 0;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) t += m[i][j] * m[j][i];
  return t;
}

void require_2x2(const Matrix& a, const char* what) {
  if (a.rows() != 2 || a.cols() != 2) throw precondition_error(what);
}

void require_unit_det(const Matrix& a, const char* what) {
  if (std::abs(a.det() - 1.0) > kDetTol) throw precondition_error(what);
}

}  // namespace

Matrix sym_power(const Matrix& a, int n) {
  require_2x2(a, "symmetric power needs a 2x2 matrix");
  if (n < 1) throw precondition_error("symmetric power rank must be positive");
  require_unit_det(a, "symmetric power needs determinant 1");
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    // Image of x^{n-1-k} y^k, expanded by y-degree.
    std::vector<cplx> col{1.0};
    auto times_linear = [&col](cplx u, cplx v) {
      std::vector<cplx> next(col.size() + 1, cplx{});
      for (size_t i = 0; i < col.size(); ++i) {
        next[i] += col[i] * u;
        next[i + 1] += col[i] * v;
      }
      col = std::move(next);
    };
    for (int i = 0; i < n - 1 - k; ++i) times_linear(a.at(0, 0), a.at(1, 0));
    for (int i = 0; i < k; ++i) times_linear(a.at(0, 1), a.at(1, 1));
    for (int j = 0; j < n; ++j) out.at(j, k) = col[j];
  }
  return out;
}

Matrix lie_image(LieBasis basis, int n) {
  if (n < 2) throw precondition_error("lie image rank must be at least 2");
  const auto entries = lie_entries(basis, n);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = static_cast<double>(entries[i][j]);
  return out;
}

long long trace_multiplier(int n) {
  if (n < 2) throw precondition_error("trace multiplier rank must be at least 2");
  const long long diag = trace_of_square(lie_entries(LieBasis::H, n));
  const long long binom = static_cast<long long>(n + 1) * n * (n - 1) / 6;
  if (diag != 2 * binom) throw std::logic_error("diagonal trace mismatch");
  if (trace_of_square(lie_entries(LieBasis::X, n)) != 0 ||
      trace_of_square(lie_entries(LieBasis::Y, n)) != 0)
    throw std::logic_error("nilpotent trace mismatch");
  return diag;
}

std::pair<long long, long long> mixed_trace_multiplier(int n, int m) {
  if (n < 2 || m < 2)
    throw precondition_error("mixed trace multiplier ranks must be at least 2");
  long long total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const long long w = (n - 1 - 2 * i) + (m - 1 - 2 * j);
      total += w * w;
    }
  if (total != m * trace_multiplier(n) + n * trace_multiplier(m))
    throw std::logic_error("mixed trace mismatch");
  return {m, n};
}

Matrix tau(const Matrix& g) {
  require_2x2(g, "four-vector action needs a 2x2 matrix");
  require_unit_det(g, "four-vector action needs determinant 1");
  const cplx a = g.at(0, 0);
  const cplx b = g.at(0, 1);
  const cplx c = g.at(1, 0);
  const cplx d = g.at(1, 1);
  // Coordinates of a Hermitian 2x2 form: x0 the half trace, x1 and -x2 the
  // real and imaginary part of the upper right entry, x3 the half difference
  // of the diagonal. Every entry below is a combination u*conj(v), so the
  // imaginary parts vanish identically.
  auto re = [](cplx u, cplx v) { return (u * std::conj(v)).real(); };
  auto im = [](cplx u, cplx v) { return (u * std::conj(v)).imag(); };
  const double na = std::norm(a);
  const double nb = std::norm(b);
  const double nc = std::norm(c);
  const double nd = std::norm(d);
  Matrix t(4, 4);
  t.at(0, 0) = 0.5 * (na + nb + nc + nd);
  t.at(0, 1) = re(a, b) + re(c, d);
  t.at(0, 2) = im(a, b) + im(c, d);
  t.at(0, 3) = 0.5 * (na - nb + nc - nd);
  t.at(1, 0) = re(a, c) + re(b, d);
  t.at(1, 1) = re(a, d) + re(b, c);
  t.at(1, 2) = im(a, d) - im(b, c);
  t.at(1, 3) = re(a, c) - re(b, d);
  t.at(2, 0) = -im(a, c) - im(b, d);
  t.at(2, 1) = -im(a, d) - im(b, c);
  t.at(2, 2) = re(a, d) - re(b, c);
  t.at(2, 3) = -im(a, c) + im(b, d);
  t.at(3, 0) = 0.5 * (na + nb - nc - nd);
  t.at(3, 1) = re(a, b) - re(c, d);
  t.at(3, 2) = im(a, b) - im(c, d);
  t.at(3, 3) = 0.5 * (na - nb - nc + nd);
  return t;
}

Matrix tau_invariant_form() {
  Matrix j = Matrix::identity(4);
  j.at(0, 0) = -1.0;
  return j;
}

Matrix kappa(const Matrix& a) {
  require_2x2(a, "block embedding needs a 2x2 matrix");
  Matrix out(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const cplx w = a.at(r, c);
      out.at(2 * r, 2 * c) = w.real();
      out.at(2 * r, 2 * c + 1) = w.imag();
      out.at(2 * r + 1, 2 * c) = -w.imag();
      out.at(2 * r + 1, 2 * c + 1) = w.real();
    }
  return out;
}

Matrix kappa_conjugator() {
  const cplx i{0.0, 1.0};
  Matrix m(4, 4);
  m.at(0, 0) = 1.0;
  m.at(0, 2) = 1.0;
  m.at(1, 0) = i;
  m.at(1, 2) = -i;
  m.at(2, 1) = 1.0;
  m.at(2, 3) = 1.0;
  m.at(3, 1) = i;
  m.at(3, 3) = -i;
  return m;
}

std::vector<cplx> characteristic_polynomial(const Matrix& a) {
  if (a.rows() != a.cols())
    throw precondition_error("characteristic polynomial needs a square matrix");
  const int n = a.rows();
  std::vector<cplx> coeff(static_cast<size_t>(n) + 1);
  coeff[0] = 1.0;
  Matrix m(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + Matrix::identity(n).scaled(coeff[k - 1]);
    coeff[k] = (a * m).trace() / static_cast<double>(-k);
  }
  return coeff;
}

int RepDescriptor::dimension() const {
  switch (kind) {
    case Kind::Irreducible:
      return n;
    case Kind::Conjugate:
      return parts[0].dimension();
    case Kind::DirectSum:
      return parts[0].dimension() + parts[1].dimension();
    case Kind::TensorPair:
      return n * m;
    case Kind::Trivial:
      return n;
  }
  return 0;
}

std::string RepDescriptor::name() const {
  switch (kind) {
    case Kind::Irreducible:
      return "rho" + std::to_string(n);
    case Kind::Conjugate: {
      const std::string inner = parts[0].name();
      if (inner.find_first_of("+*") != std::string::npos) return "(" + inner + ")~";
      return inner + "~";
    }
    case Kind::DirectSum:
      return parts[0].name() + "+" + parts[1].name();
    case Kind::TensorPair:
      return "rho" + std::to_string(n) + "*rho" + std::to_string(m) + "~";
    case Kind::Trivial: {
      std::string s = "1";
      for (int i = 1; i < n; ++i) s += "+1";
      return s;
    }
  }
  return {};
}

RepDescriptor rho_n(int n) {
  if (n < 2) throw precondition_error("irreducible rank must be at least 2");
  RepDescriptor rep;
  rep.kind = RepDescriptor::Kind::Irreducible;
  rep.n = n;
  return rep;
}

RepDescriptor conj(RepDescriptor inner) {
  RepDescriptor rep;
  rep.kind = RepDescriptor::Kind::Conjugate;
  rep.parts.push_back(std::move(inner));
  return rep;
}

RepDescriptor dirsum(RepDescriptor lhs, RepDescriptor rhs) {
  RepDescriptor rep;
  rep.kind = RepDescriptor::Kind::DirectSum;
  rep.parts.push_back(std::move(lhs));
  rep.parts.push_back(std::move(rhs));
  return rep;
}

RepDescriptor tensor_conj_pair(int n, int m) {
  if (n < 2 || m < 2) throw precondition_error("tensor pair ranks must be at least 2");
  RepDescriptor rep;
  rep.kind = RepDescriptor::Kind::TensorPair;
  rep.n = n;
  rep.m = m;
  return rep;
}

RepDescriptor trivial(int count) {
  if (count < 1) throw precondition_error("trivial summand count must be positive");
  RepDescriptor rep;
  rep.kind = RepDescriptor::Kind::Trivial;
  rep.n = count;
  return rep;
}

namespace {

struct CCSCoeffs {
  long long id = 0;
  long long cj = 0;
};

// Coefficients of (value, conj value) in the image invariant.
CCSCoeffs ccs_coeffs(const RepDescriptor& rep) {
  switch (rep.kind) {
    case RepDescriptor::Kind::Irreducible:
      return {trace_multiplier(rep.n) / 2, 0};
    case RepDescriptor::Kind::Conjugate: {
      const CCSCoeffs inner = ccs_coeffs(rep.parts[0]);
      return {inner.cj, inner.id};
    }
    case RepDescriptor::Kind::DirectSum: {
      const CCSCoeffs l = ccs_coeffs(rep.parts[0]);
      const CCSCoeffs r = ccs_coeffs(rep.parts[1]);
      return {l.id + r.id, l.cj + r.cj};
    }
    case RepDescriptor::Kind::TensorPair: {
      const auto pair = mixed_trace_multiplier(rep.n, rep.m);
      return {pair.first, pair.second};
    }
    case RepDescriptor::Kind::Trivial:
      return {0, 0};
  }
  return {0, 0};
}

}  // namespace

CCSMultiplier multiplier(const RepDescriptor& rep) {
  const CCSCoeffs c = ccs_coeffs(rep);
  return {c.id - c.cj, c.id + c.cj};
}

cplx ccs_through_degree(cplx value, long long degree) {
  if (degree == 0) throw precondition_error("covering degree must be nonzero");
  return value / static_cast<double>(degree);
}

std::vector<RepTableRow> rep_table() {
  std::vector<RepDescriptor> reps;
  reps.push_back(rho_n(4));
  reps.push_back(conj(rho_n(4)));
  reps.push_back(tensor_conj_pair(2, 2));
  reps.push_back(dirsum(rho_n(3), trivial(1)));
  reps.push_back(dirsum(conj(rho_n(3)), trivial(1)));
  reps.push_back(dirsum(rho_n(2), rho_n(2)));
  reps.push_back(dirsum(rho_n(2), conj(rho_n(2))));
  reps.push_back(dirsum(rho_n(2), trivial(2)));
  reps.push_back(dirsum(conj(rho_n(2)), trivial(2)));
  reps.push_back(trivial(4));

  std::vector<RepTableRow> rows;
  rows.reserve(reps.size());
  for (RepDescriptor& rep : reps) {
    const CCSMultiplier mult = multiplier(rep);
    rows.push_back({std::move(rep), mult});
  }
  return rows;
}

}  // namespace bloch
