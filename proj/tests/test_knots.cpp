#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "bloch/knots.hpp"

using bloch::ContinuedFraction;
using bloch::TwoBridgeFraction;

namespace {

ContinuedFraction cf(std::vector<long long> coeffs) {
  return ContinuedFraction{std::move(coeffs)};
}

}  // namespace

TEST_CASE("continued fractions evaluate to exact reduced fractions") {
  CHECK(bloch::cf_value(cf({2, 2})) == TwoBridgeFraction{2, 5});
  CHECK(bloch::cf_value(cf({2, 2, 2, 2, 2, 2})) == TwoBridgeFraction{70, 169});
  CHECK(bloch::cf_value(cf({2, 3, 3, 2})) == TwoBridgeFraction{23, 53});
  CHECK(bloch::cf_value(cf({2, 3})) == TwoBridgeFraction{3, 7});
  CHECK(bloch::cf_value(cf({3})) == TwoBridgeFraction{1, 3});
  CHECK(bloch::cf_value(cf({})) == TwoBridgeFraction{0, 1});
  CHECK(bloch::cf_value(cf({-2})) == TwoBridgeFraction{-1, 2});

  // Transient infinities pass through the projective evaluation.
  CHECK(bloch::cf_value(cf({2, 0, 2})) == TwoBridgeFraction{1, 4});
  CHECK(bloch::cf_value(cf({1, 1, -1})) == TwoBridgeFraction{0, 1});

  CHECK_THROWS_AS(bloch::cf_value(cf({0})), bloch::degenerate_expansion_error);
  CHECK_THROWS_AS(bloch::cf_value(cf({1, -1})), bloch::degenerate_expansion_error);
  try {
    bloch::cf_value(cf({0, 7, 1, -1}));
    CHECK(false);
  } catch (const bloch::degenerate_expansion_error& e) {
    CHECK(e.suffix() == std::vector<long long>{1, -1});
  }

  CHECK_THROWS_AS(bloch::cf_value(bloch::ln_family(4)), std::overflow_error);
}

TEST_CASE("positive expansions round trip through evaluation") {
  CHECK(bloch::fraction_to_cf({2, 5}) == cf({2, 2}));
  CHECK(bloch::fraction_to_cf({70, 169}) == cf({2, 2, 2, 2, 2, 2}));
  CHECK(bloch::fraction_to_cf({1, 3}) == cf({3}));

  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long long> den_d(2, 1000);
  int done = 0;
  while (done < 1000) {
    const long long q = den_d(rng);
    std::uniform_int_distribution<long long> num_d(1, q - 1);
    const long long p = num_d(rng);
    if (std::gcd(p, q) != 1) continue;
    const ContinuedFraction expansion = bloch::fraction_to_cf({p, q});
    for (const long long c : expansion.coeffs) CHECK(c >= 1);
    CHECK(bloch::cf_value(expansion) == TwoBridgeFraction{p, q});
    ++done;
  }

  CHECK_THROWS_AS(bloch::fraction_to_cf({0, 3}), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::fraction_to_cf({5, 3}), bloch::precondition_error);
}

TEST_CASE("zero collapse merges neighbors and preserves the value") {
  CHECK(bloch::collapse_zeros(cf({2, 0, 2})) == cf({4}));
  CHECK(bloch::collapse_zeros(cf({2, 2, 0, 2, 2, 0, 2, 2})) == cf({2, 4, 4, 2}));
  CHECK(bloch::cf_value(cf({2, 2, 0, 2, 2, 0, 2, 2})) == TwoBridgeFraction{38, 85});
  CHECK(bloch::cf_value(cf({2, 4, 4, 2})) == TwoBridgeFraction{38, 85});
  CHECK(bloch::collapse_zeros(cf({3, 0, 0, 5})) == cf({3, 5}));
  CHECK(bloch::collapse_zeros(cf({7})) == cf({7}));

  CHECK_THROWS_AS(bloch::collapse_zeros(cf({0})), bloch::degenerate_expansion_error);
  CHECK_THROWS_AS(bloch::collapse_zeros(cf({2, 0})), bloch::degenerate_expansion_error);
  CHECK_THROWS_AS(bloch::collapse_zeros(cf({0, 2})), bloch::degenerate_expansion_error);
  CHECK_THROWS_AS(bloch::collapse_zeros(cf({2, 0, -2})), bloch::degenerate_expansion_error);
  CHECK_THROWS_AS(bloch::collapse_zeros(cf({})), bloch::degenerate_expansion_error);

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len_d(1, 8);
  std::uniform_int_distribution<int> coef_d(1, 3);
  std::uniform_int_distribution<int> sign_d(0, 1);
  std::uniform_int_distribution<int> zeros_d(0, 3);
  int done = 0;
  int attempts = 0;
  while (done < 1000 && ++attempts < 20000) {
    std::vector<long long> coeffs(static_cast<size_t>(len_d(rng)));
    for (long long& c : coeffs) c = coef_d(rng) * (sign_d(rng) ? 1 : -1);
    const int zeros = zeros_d(rng);
    for (int z = 0; z < zeros && coeffs.size() >= 2; ++z) {
      std::uniform_int_distribution<size_t> pos_d(1, coeffs.size() - 1);
      coeffs.insert(coeffs.begin() + static_cast<long>(pos_d(rng)), 0);
    }
    try {
      const ContinuedFraction input = cf(coeffs);
      const TwoBridgeFraction before = bloch::cf_value(input);
      const ContinuedFraction collapsed = bloch::collapse_zeros(input);
      const TwoBridgeFraction after = bloch::cf_value(collapsed);
      CHECK(before == after);
      CHECK(std::find(collapsed.coeffs.begin(), collapsed.coeffs.end(), 0LL) ==
            collapsed.coeffs.end());
      ++done;
    } catch (const bloch::degenerate_expansion_error&) {
    }
  }
  CHECK(done == 1000);
}

TEST_CASE("substitution interleaves sign-scaled blocks") {
  const auto all_plus = bloch::ors_substitute(cf({2, 2}), 0, {0, 0}, {1, 1, 1});
  CHECK(all_plus.raw == cf({2, 2, 0, 2, 2, 0, 2, 2}));
  REQUIRE(all_plus.collapsed.has_value());
  CHECK(*all_plus.collapsed == cf({2, 4, 4, 2}));
  REQUIRE(all_plus.bracket_value.has_value());
  CHECK(*all_plus.bracket_value == TwoBridgeFraction{38, 85});
  CHECK(*all_plus.total_value == TwoBridgeFraction{38, 85});
  CHECK(all_plus.degree == 1);
  CHECK(all_plus.condition.empty());
  CHECK(all_plus.equivalent_numerators == std::vector<long long>{38, 47});
  // The substitution parameters advertised for the six-twos fraction land on
  // a different equivalence class; report, never patch.
  CHECK(std::find(all_plus.equivalent_numerators.begin(),
                  all_plus.equivalent_numerators.end(),
                  70LL) == all_plus.equivalent_numerators.end());

  const auto mixed = bloch::ors_substitute(cf({2, 3}), 0, {0}, {1, -1});
  CHECK(mixed.raw == cf({2, 3, 0, -3, -2}));
  CHECK(mixed.degree == 2);
  CHECK_FALSE(mixed.collapsed.has_value());
  CHECK_FALSE(mixed.bracket_value.has_value());
  CHECK_FALSE(mixed.total_value.has_value());
  CHECK(mixed.condition.find("collapse") != std::string::npos);
  CHECK(mixed.condition.find("value") != std::string::npos);

  const auto single = bloch::ors_substitute(cf({2, 2}), 1, {}, {1});
  CHECK(single.raw == cf({2, 2}));
  CHECK(*single.total_value == TwoBridgeFraction{12, 5});
  CHECK(single.degree == 1);

  CHECK_THROWS_AS(bloch::ors_substitute(cf({2, 2}), 0, {0}, {1, 1, 1}),
                  bloch::precondition_error);
  CHECK_THROWS_AS(bloch::ors_substitute(cf({2, 2}), 0, {0}, {1, 2}),
                  bloch::precondition_error);
  CHECK_THROWS_AS(bloch::ors_substitute(cf({2, 2}), -1, {}, {1}),
                  bloch::precondition_error);
  CHECK_THROWS_AS(bloch::ors_substitute(cf({}), 0, {}, {1}),
                  bloch::precondition_error);
}

TEST_CASE("degree is the alternating sum of signs") {
  CHECK(bloch::ors_degree({1, 1, 1}) == 1);
  CHECK(bloch::ors_degree({1, -1}) == 2);
  CHECK(bloch::ors_degree({1}) == 1);
  CHECK(bloch::ors_degree({-1, 1}) == -2);
  for (int l = 1; l <= 8; ++l) {
    const std::vector<int> eps(static_cast<size_t>(l), 1);
    CHECK(bloch::ors_degree(eps) == (l % 2 ? 1 : 0));
  }
  CHECK_THROWS_AS(bloch::ors_degree({}), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::ors_degree({1, 2}), bloch::precondition_error);
}

TEST_CASE("the all-twos family counts twists") {
  CHECK(bloch::ln_family(1) == cf({2, 2}));
  CHECK(bloch::cf_value(bloch::ln_family(1)) == TwoBridgeFraction{2, 5});
  CHECK(bloch::ln_family(2).coeffs.size() == 6);
  CHECK(bloch::cf_value(bloch::ln_family(2)) == TwoBridgeFraction{70, 169});
  CHECK(bloch::ln_family(3).coeffs.size() == 18);
  CHECK(bloch::cf_value(bloch::ln_family(3)) == TwoBridgeFraction{2744210, 6625109});
  for (int n = 1; n <= 6; ++n) {
    const ContinuedFraction family = bloch::ln_family(n);
    long long expected = 2;
    for (int i = 1; i < n; ++i) expected *= 3;
    CHECK(bloch::ln_twist_number(n) == expected);
    CHECK(static_cast<long long>(family.coeffs.size()) == expected);
    CHECK(bloch::twist_number(family) == expected);
    CHECK(std::all_of(family.coeffs.begin(), family.coeffs.end(),
                      [](long long c) { return c == 2; }));
  }
  CHECK(bloch::twist_number(cf({2, 0, 2})) == 2);
  CHECK_THROWS_AS(bloch::ln_family(0), bloch::precondition_error);
  CHECK_THROWS_AS(bloch::ln_twist_number(0), bloch::precondition_error);
}

TEST_CASE("palindromes satisfy the modular symmetry test") {
  const auto fig8 = bloch::symmetry_and_cs(cf({2, 2}));
  CHECK(fig8.symmetric);
  CHECK(fig8.q_squared_check);
  CHECK(fig8.cs_vanishes);

  const auto six = bloch::symmetry_and_cs(cf({2, 2, 2, 2, 2, 2}));
  CHECK(six.symmetric);
  CHECK(six.q_squared_check);
  CHECK((70LL * 70LL + 1) % 169 == 0);

  const auto asym = bloch::symmetry_and_cs(cf({2, 3}));
  CHECK_FALSE(asym.symmetric);
  CHECK_FALSE(asym.q_squared_check);
  CHECK_FALSE(asym.cs_vanishes);

  // The modular identity can hold without the palindrome, so the two flags
  // are independent.
  const auto lens = bloch::symmetry_and_cs(cf({1, 1, 2}));
  CHECK_FALSE(lens.symmetric);
  CHECK(lens.q_squared_check);
  CHECK_FALSE(lens.cs_vanishes);

  CHECK(bloch::symmetry_and_cs(cf({2, 3, 3, 2})).symmetric);
  CHECK(bloch::symmetry_and_cs(cf({2, 3, 3, 2})).q_squared_check);

  // Long members run through the arbitrary-precision evaluation.
  for (int n = 1; n <= 6; ++n) {
    const auto report = bloch::symmetry_and_cs(bloch::ln_family(n));
    CHECK(report.symmetric);
    CHECK(report.q_squared_check);
    CHECK(report.cs_vanishes);
  }

  CHECK_THROWS_AS(bloch::symmetry_and_cs(cf({1, -1})),
                  bloch::degenerate_expansion_error);
}

TEST_CASE("fraction utilities normalize and enumerate equivalences") {
  CHECK(bloch::reduced_fraction(-2, -5) == TwoBridgeFraction{2, 5});
  CHECK(bloch::reduced_fraction(4, 6) == TwoBridgeFraction{2, 3});
  CHECK(bloch::reduced_fraction(3, -6) == TwoBridgeFraction{-1, 2});
  CHECK(bloch::reduced_fraction(0, 7) == TwoBridgeFraction{0, 1});
  CHECK_THROWS_AS(bloch::reduced_fraction(1, 0), bloch::precondition_error);

  CHECK(bloch::equivalent_numerators({2, 5}) == std::vector<long long>{2, 3});
  CHECK(bloch::equivalent_numerators({70, 169}) == std::vector<long long>{70, 99});
  CHECK(bloch::equivalent_numerators({38, 85}) == std::vector<long long>{38, 47});
  CHECK(bloch::equivalent_numerators({0, 1}) == std::vector<long long>{0});

  const auto bounds = bloch::volume_twist_bounds(6, 0.5, -1.0, 2.0, 3.0);
  CHECK(bounds.lower == 2.0);
  CHECK(bounds.upper == 15.0);
}
