#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bloch/matrix.hpp"
#include "bloch/reps.hpp"
#include "oracles.hpp"

using bloch::cplx;
using bloch::LieBasis;
using bloch::Matrix;

namespace {

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// Determinant-one sample with moderate entries; d is solved from the others.
Matrix random_sl2(std::mt19937_64& rng) {
  for (;;) {
    const cplx a = oracle::random_box(rng, 0.8);
    const cplx b = oracle::random_box(rng, 0.8);
    const cplx c = oracle::random_box(rng, 0.8);
    if (std::abs(a) < 0.3) continue;
    const cplx d = (1.0 + b * c) / a;
    if (std::abs(d) > 2.0) continue;
    return mat2(a, b, c, d);
  }
}

// Adjugate inverse; exact for determinant one.
Matrix inv2(const Matrix& m) {
  return mat2(m.at(1, 1), -m.at(0, 1), -m.at(1, 0), m.at(0, 0));
}

Matrix dirsum4(const Matrix& top, const Matrix& bottom) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.at(i, j) = top.at(i, j);
      out.at(i + 2, j + 2) = bottom.at(i, j);
    }
  return out;
}

long long binom3(int top) {
  return static_cast<long long>(top) * (top - 1) * (top - 2) / 6;
}

}  // namespace

TEST_CASE("symmetric powers act on the monomial basis") {
  std::mt19937_64 rng(2024);

  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_sl2(rng);
    CHECK((bloch::sym_power(a, 2) - a).max_abs() == 0.0);
    CHECK(bloch::sym_power(a, 1).at(0, 0) == cplx{1.0});
    for (int n = 2; n <= 6; ++n)
      CHECK(std::abs(bloch::sym_power(a, n).det() - 1.0) < 1e-10);
  }

  const cplx t{0.8, 0.45};
  const Matrix diag = mat2(t, 0.0, 0.0, 1.0 / t);
  const Matrix s4 = bloch::sym_power(diag, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const cplx expected = j == k ? std::pow(t, 3 - 2 * k) : cplx{};
      CHECK(std::abs(s4.at(j, k) - expected) < 1e-14);
    }

  CHECK_THROWS_AS(bloch::sym_power(mat2(2.0, 0.0, 0.0, 1.0), 3),
                  bloch::precondition_error);
  CHECK_THROWS_AS(bloch::sym_power(Matrix::identity(3), 3), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::sym_power(Matrix::identity(2), 0), bloch::precondition_error);
}

TEST_CASE("symmetric powers are homomorphisms") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = random_sl2(rng);
    const Matrix b = random_sl2(rng);
    const int n = 2 + trial % 5;
    const Matrix lhs = bloch::sym_power(a * b, n);
    const Matrix rhs = bloch::sym_power(a, n) * bloch::sym_power(b, n);
    worst = std::max(worst, (lhs - rhs).max_abs());
  }
  CHECK(worst < 1e-10);

  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_sl2(rng);
    const Matrix g = random_sl2(rng);
    const int n = 2 + trial % 5;
    const Matrix lhs = bloch::sym_power(g * a * inv2(g), n);
    const Matrix sg = bloch::sym_power(g, n);
    const Matrix rhs = sg * bloch::sym_power(a, n) * sg.inverse();
    CHECK((lhs - rhs).max_abs() < 1e-9);
  }
}

TEST_CASE("lie algebra images have the stated triangular shapes") {
  const Matrix h3 = bloch::lie_image(LieBasis::H, 3);
  CHECK(h3.at(0, 0) == cplx{2.0});
  CHECK(h3.at(1, 1) == cplx{0.0});
  CHECK(h3.at(2, 2) == cplx{-2.0});

  const Matrix x2 = bloch::lie_image(LieBasis::X, 2);
  CHECK(x2.at(0, 1) == cplx{1.0});
  CHECK(x2.at(0, 0) == cplx{});
  CHECK(x2.at(1, 0) == cplx{});
  CHECK(x2.at(1, 1) == cplx{});
  const Matrix y2 = bloch::lie_image(LieBasis::Y, 2);
  CHECK(y2.at(1, 0) == cplx{1.0});

  for (int n = 2; n <= 8; ++n) {
    const Matrix h = bloch::lie_image(LieBasis::H, n);
    const Matrix x = bloch::lie_image(LieBasis::X, n);
    const Matrix y = bloch::lie_image(LieBasis::Y, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j) CHECK(h.at(i, j) == cplx{});
        if (j != i + 1) CHECK(x.at(i, j) == cplx{});
        if (j != i - 1) CHECK(y.at(i, j) == cplx{});
      }
    for (int k = 0; k < n; ++k) CHECK(h.at(k, k) == cplx{static_cast<double>(n - 1 - 2 * k)});
    for (int k = 1; k < n; ++k) CHECK(x.at(k - 1, k) == cplx{static_cast<double>(k)});
    for (int k = 0; k + 1 < n; ++k)
      CHECK(y.at(k + 1, k) == cplx{static_cast<double>(n - 1 - k)});
  }

  CHECK_THROWS_AS(bloch::lie_image(LieBasis::H, 1), bloch::precondition_error);
}

TEST_CASE("lie algebra images match the derivative of the symmetric power") {
  const double h = 1e-5;
  for (int n = 2; n <= 6; ++n) {
    auto derivative = [&](auto flow) {
      const Matrix plus = bloch::sym_power(flow(h), n);
      const Matrix minus = bloch::sym_power(flow(-h), n);
      return (plus - minus).scaled(1.0 / (2.0 * h));
    };
    const Matrix dx = derivative([](double t) { return mat2(1.0, t, 0.0, 1.0); });
    CHECK((dx - bloch::lie_image(LieBasis::X, n)).max_abs() < 1e-6);
    const Matrix dy = derivative([](double t) { return mat2(1.0, 0.0, t, 1.0); });
    CHECK((dy - bloch::lie_image(LieBasis::Y, n)).max_abs() < 1e-6);
    const Matrix dh = derivative(
        [](double t) { return mat2(std::exp(t), 0.0, 0.0, std::exp(-t)); });
    CHECK((dh - bloch::lie_image(LieBasis::H, n)).max_abs() < 1e-6);
  }
}

TEST_CASE("trace multipliers count in exact integers") {
  CHECK(bloch::trace_multiplier(2) == 2);
  CHECK(bloch::trace_multiplier(3) == 8);
  CHECK(bloch::trace_multiplier(4) == 20);
  for (int n = 2; n <= 10; ++n) CHECK(bloch::trace_multiplier(n) == 2 * binom3(n + 1));

  CHECK(bloch::mixed_trace_multiplier(2, 2) == std::pair<long long, long long>{2, 2});
  CHECK(bloch::mixed_trace_multiplier(3, 2) == std::pair<long long, long long>{2, 3});
  for (int n = 2; n <= 6; ++n)
    for (int m = 2; m <= 6; ++m) {
      const auto pair = bloch::mixed_trace_multiplier(n, m);
      CHECK(pair.first == m);
      CHECK(pair.second == n);
      long long total = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
          const long long w = (n - 1 - 2 * i) + (m - 1 - 2 * j);
          total += w * w;
        }
      CHECK(total == m * bloch::trace_multiplier(n) + n * bloch::trace_multiplier(m));
    }

  CHECK_THROWS_AS(bloch::trace_multiplier(1), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::mixed_trace_multiplier(2, 1), bloch::precondition_error);
}

TEST_CASE("four-vector image is a real determinant-one matrix") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_sl2(rng);
    const Matrix t = bloch::tau(a);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(std::abs(t.at(i, j).imag()) <= 1e-12);
    CHECK(std::abs(t.det() - 1.0) < 1e-9);
    CHECK((bloch::tau(a.scaled(-1.0)) - t).max_abs() == 0.0);
  }

  CHECK((bloch::tau(Matrix::identity(2)) - Matrix::identity(4)).max_abs() == 0.0);
  CHECK((bloch::tau(Matrix::identity(2).scaled(-1.0)) - Matrix::identity(4)).max_abs() ==
        0.0);
  CHECK_THROWS_AS(bloch::tau(mat2(2.0, 0.0, 0.0, 1.0)), bloch::precondition_error);

  // diag(e^s, e^-s) becomes a boost mixing the first and last coordinates.
  const double s = 0.3;
  const Matrix boost = bloch::tau(mat2(std::exp(s), 0.0, 0.0, std::exp(-s)));
  CHECK(std::abs(boost.at(0, 0).real() - std::cosh(2.0 * s)) < 1e-14);
  CHECK(std::abs(boost.at(0, 3).real() - std::sinh(2.0 * s)) < 1e-14);
  CHECK(std::abs(boost.at(3, 0).real() - std::sinh(2.0 * s)) < 1e-14);
  CHECK(std::abs(boost.at(1, 1).real() - 1.0) < 1e-14);

  // diag(e^{i u}, e^{-i u}) becomes a rotation in the middle coordinates.
  const double u = 0.4;
  const cplx phase{std::cos(u), std::sin(u)};
  const Matrix rot = bloch::tau(mat2(phase, 0.0, 0.0, 1.0 / phase));
  CHECK(std::abs(rot.at(1, 1).real() - std::cos(2.0 * u)) < 1e-14);
  CHECK(std::abs(rot.at(1, 2).real() - std::sin(2.0 * u)) < 1e-14);
  CHECK(std::abs(rot.at(2, 1).real() + std::sin(2.0 * u)) < 1e-14);
  CHECK(std::abs(rot.at(0, 0).real() - 1.0) < 1e-14);
}

TEST_CASE("four-vector image preserves the Minkowski form and tensor spectrum") {
  const Matrix j = bloch::tau_invariant_form();
  CHECK(j.at(0, 0) == cplx{-1.0});
  CHECK(j.at(1, 1) == cplx{1.0});
  CHECK(j.at(2, 2) == cplx{1.0});
  CHECK(j.at(3, 3) == cplx{1.0});

  std::mt19937_64 rng(13);
  double worst_hom = 0.0;
  double worst_form = 0.0;
  double worst_poly = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a = random_sl2(rng);
    const Matrix b = random_sl2(rng);
    const Matrix ta = bloch::tau(a);
    worst_hom = std::max(worst_hom, (bloch::tau(a * b) - ta * bloch::tau(b)).max_abs());
    worst_form = std::max(worst_form, (ta.transpose() * j * ta - j).max_abs());
    const auto lhs = bloch::characteristic_polynomial(ta);
    const auto rhs = bloch::characteristic_polynomial(bloch::kron(a, a.conjugate()));
    for (size_t i = 0; i < lhs.size(); ++i)
      worst_poly = std::max(worst_poly, std::abs(lhs[i] - rhs[i]));
  }
  CHECK(worst_hom < 1e-9);
  CHECK(worst_form < 1e-9);
  CHECK(worst_poly < 1e-9);

  // The odd sign sits at the trace coordinate; the other diagonal placement
  // is not preserved.
  const Matrix shear = bloch::tau(mat2(1.0, 1.0, 0.0, 1.0));
  Matrix wrong = Matrix::identity(4);
  wrong.at(3, 3) = -1.0;
  CHECK((shear.transpose() * wrong * shear - wrong).max_abs() > 0.5);
}

TEST_CASE("characteristic polynomial matches closed forms") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_sl2(rng);
    const auto poly = bloch::characteristic_polynomial(a);
    REQUIRE(poly.size() == 3);
    CHECK(std::abs(poly[0] - 1.0) == 0.0);
    CHECK(std::abs(poly[1] + a.trace()) < 1e-13);
    CHECK(std::abs(poly[2] - a.det()) < 1e-13);
  }

  // Companion matrix of x^3 - 2x^2 + 5x - 7.
  Matrix companion(3, 3);
  companion.at(0, 2) = 7.0;
  companion.at(1, 0) = 1.0;
  companion.at(1, 2) = -5.0;
  companion.at(2, 1) = 1.0;
  companion.at(2, 2) = 2.0;
  const auto poly = bloch::characteristic_polynomial(companion);
  REQUIRE(poly.size() == 4);
  CHECK(std::abs(poly[1] + 2.0) < 1e-12);
  CHECK(std::abs(poly[2] - 5.0) < 1e-12);
  CHECK(std::abs(poly[3] + 7.0) < 1e-12);

  CHECK_THROWS_AS(bloch::characteristic_polynomial(Matrix(2, 3)),
                  bloch::precondition_error);
}

TEST_CASE("real block embedding splits into conjugate summands") {
  CHECK((bloch::kappa(Matrix::identity(2)) - Matrix::identity(4)).max_abs() == 0.0);

  const cplx i{0.0, 1.0};
  const Matrix rot = bloch::kappa(mat2(i, 0.0, 0.0, -i));
  CHECK(rot.at(0, 1) == cplx{1.0});
  CHECK(rot.at(1, 0) == cplx{-1.0});
  CHECK(rot.at(2, 3) == cplx{-1.0});
  CHECK(rot.at(3, 2) == cplx{1.0});
  CHECK(rot.at(0, 0) == cplx{});
  CHECK(rot.at(2, 2) == cplx{});

  const Matrix m = bloch::kappa_conjugator();
  const Matrix m_inv = m.inverse();
  const Matrix split = m_inv * rot * m;
  const Matrix expected = dirsum4(mat2(i, 0.0, 0.0, -i), mat2(-i, 0.0, 0.0, i));
  CHECK((split - expected).max_abs() < 1e-12);

  std::mt19937_64 rng(19);
  double worst_hom = 0.0;
  double worst_split = 0.0;
  double worst_real = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = random_sl2(rng);
    const Matrix b = random_sl2(rng);
    const Matrix ka = bloch::kappa(a);
    worst_hom = std::max(worst_hom, (bloch::kappa(a * b) - ka * bloch::kappa(b)).max_abs());
    const Matrix split_a = m_inv * ka * m;
    worst_split =
        std::max(worst_split, (split_a - dirsum4(a, a.conjugate())).max_abs());
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        worst_real = std::max(worst_real, std::abs(ka.at(r, c).imag()));
    CHECK(std::abs(ka.det() - 1.0) < 1e-10);
  }
  CHECK(worst_hom < 1e-10);
  CHECK(worst_split < 1e-10);
  CHECK(worst_real == 0.0);
}

TEST_CASE("multiplier table reproduces the ten rows") {
  const auto rows = bloch::rep_table();
  REQUIRE(rows.size() == 10);

  const std::vector<std::string> names = {
      "rho4",      "rho4~",      "rho2*rho2~", "rho3+1",    "rho3~+1",
      "rho2+rho2", "rho2+rho2~", "rho2+1+1",   "rho2~+1+1", "1+1+1+1"};
  const std::vector<std::pair<long long, long long>> mults = {
      {10, 10}, {-10, 10}, {0, 4}, {4, 4}, {-4, 4},
      {2, 2},   {0, 2},    {1, 1}, {-1, 1}, {0, 0}};
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].rep.name() == names[i]);
    CHECK(rows[i].rep.dimension() == 4);
    CHECK(rows[i].mult.vol_mult == mults[i].first);
    CHECK(rows[i].mult.cs_mult == mults[i].second);
  }

  for (int n = 2; n <= 10; ++n) {
    const auto mult = bloch::multiplier(bloch::rho_n(n));
    CHECK(mult.vol_mult == binom3(n + 1));
    CHECK(mult.cs_mult == binom3(n + 1));
  }

  const auto pair32 = bloch::multiplier(bloch::tensor_conj_pair(3, 2));
  CHECK(pair32.vol_mult == -1);
  CHECK(pair32.cs_mult == 5);

  const auto compound = bloch::multiplier(
      bloch::conj(bloch::dirsum(bloch::rho_n(3), bloch::tensor_conj_pair(2, 2))));
  CHECK(compound.vol_mult == -4);
  CHECK(compound.cs_mult == 8);
  CHECK(bloch::conj(bloch::dirsum(bloch::rho_n(2), bloch::trivial(1))).name() ==
        "(rho2+1)~");

  CHECK_THROWS_AS(bloch::rho_n(1), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::trivial(0), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::tensor_conj_pair(2, 1), bloch::precondition_error);
}

TEST_CASE("covering degree bookkeeping divides packed invariants") {
  const cplx packed = bloch::ccs_value(2.5, -0.75);
  CHECK(bloch::ccs_volume(packed) == 2.5);
  CHECK(bloch::ccs_chern_simons(packed) == -0.75);

  const cplx halved = bloch::ccs_through_degree(packed, 2);
  CHECK(bloch::ccs_volume(halved) == 1.25);
  CHECK(bloch::ccs_chern_simons(halved) == -0.375);
  CHECK_THROWS_AS(bloch::ccs_through_degree(packed, 0), bloch::precondition_error);

  const auto doubled = bloch::multiplier(bloch::tensor_conj_pair(2, 2));
  const cplx scaled = doubled.apply(bloch::ccs_value(1.3, 0.2));
  CHECK(bloch::ccs_volume(scaled) == 0.0);
  CHECK(std::abs(bloch::ccs_chern_simons(scaled) - 0.8) < 1e-15);
}
