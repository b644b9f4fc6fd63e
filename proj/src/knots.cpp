#include "bloch/knots.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bloch {

namespace {

std::string render(const std::vector<long long>& coeffs) {
  std::string out = "[";
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coeffs[i]);
  }
  return out + "]";
}

long long checked_int64(__int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw std::overflow_error(what);
  return static_cast<long long>(v);
}

// Right-to-left projective sweep; (u, v) is the value u/v of the suffix seen
// so far. Returns the pair before sign normalization and reports the shortest
// suffix that passed through infinity.
struct SweepResult {
  long long u = 0;
  long long v = 1;
  size_t infinite_suffix_start = 0;
  bool hit_infinity = false;
};

SweepResult sweep(const std::vector<long long>& coeffs) {
  SweepResult r;
  for (size_t i = coeffs.size(); i-- > 0;) {
    const __int128 nv =
        static_cast<__int128>(coeffs[i]) * r.v + static_cast<__int128>(r.u);
    r.u = r.v;
    r.v = checked_int64(nv, "continued fraction value exceeds 64-bit integers");
    if (r.v == 0 && !r.hit_infinity) {
      r.hit_infinity = true;
      r.infinite_suffix_start = i;
    }
  }
  return r;
}

}  // namespace

degenerate_expansion_error::degenerate_expansion_error(const std::string& what,
                                                       std::vector<long long> suffix)
    : precondition_error(what + " " + render(suffix)), suffix_(std::move(suffix)) {}

TwoBridgeFraction reduced_fraction(long long numerator, long long denominator) {
  if (denominator == 0) throw precondition_error("fraction denominator must be nonzero");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const long long g = std::gcd(numerator, denominator);
  return {numerator / g, denominator / g};
}

TwoBridgeFraction cf_value(const ContinuedFraction& cf) {
  const SweepResult r = sweep(cf.coeffs);
  if (r.v == 0) {
    std::vector<long long> suffix(cf.coeffs.begin() + r.infinite_suffix_start,
                                  cf.coeffs.end());
    throw degenerate_expansion_error("degenerate expansion", std::move(suffix));
  }
  return reduced_fraction(r.u, r.v);
}

ContinuedFraction fraction_to_cf(const TwoBridgeFraction& fr) {
  if (fr.numerator <= 0 || fr.numerator >= fr.denominator)
    throw precondition_error("expansion needs 0 < numerator < denominator");
  ContinuedFraction cf;
  long long p = fr.numerator;
  long long q = fr.denominator;
  while (p != 0) {
    cf.coeffs.push_back(q / p);
    const long long r = q % p;
    q = p;
    p = r;
  }
  return cf;
}

ContinuedFraction collapse_zeros(const ContinuedFraction& cf) {
  std::vector<long long> out;
  out.reserve(cf.coeffs.size());
  for (const long long c : cf.coeffs) {
    out.push_back(c);
    while (out.size() >= 3 && out[out.size() - 2] == 0) {
      const long long merged = checked_int64(
          static_cast<__int128>(out[out.size() - 3]) + out.back(),
          "collapsed coefficient exceeds 64-bit integers");
      out.pop_back();
      out.pop_back();
      out.back() = merged;
    }
  }
  if (out.empty())
    throw degenerate_expansion_error("collapse produced an empty expansion", {});
  const auto zero = std::find(out.begin(), out.end(), 0LL);
  if (zero != out.end())
    throw degenerate_expansion_error("zero coefficient cannot be collapsed",
                                     {zero, out.end()});
  return ContinuedFraction{std::move(out)};
}

long long ors_degree(const std::vector<int>& eps) {
  if (eps.empty()) throw precondition_error("sign list must be nonempty");
  long long sum = 0;
  long long sign = 1;
  for (const int e : eps) {
    if (e != 1 && e != -1) throw precondition_error("sign entries must be +-1");
    sum += sign * e;
    sign = -sign;
  }
  return sum;
}

OrsResult ors_substitute(const ContinuedFraction& b, long long c,
                         const std::vector<long long>& cs,
                         const std::vector<int>& eps) {
  if (b.coeffs.empty()) throw precondition_error("block expansion must be nonempty");
  if (c < 0) throw precondition_error("outer twist count must be nonnegative");
  if (eps.size() != cs.size() + 1)
    throw precondition_error("sign list must be one longer than the twist list");

  OrsResult result;
  result.degree = ors_degree(eps);
  for (size_t j = 0; j < eps.size(); ++j) {
    if (j > 0) {
      const long long twist = checked_int64(
          static_cast<__int128>(2) * cs[j - 1], "twist entry exceeds 64-bit integers");
      result.raw.coeffs.push_back(twist);
    }
    // Odd blocks read the expansion forward, even blocks reversed.
    if (j % 2 == 0) {
      for (const long long v : b.coeffs) result.raw.coeffs.push_back(eps[j] * v);
    } else {
      for (size_t i = b.coeffs.size(); i-- > 0;)
        result.raw.coeffs.push_back(eps[j] * b.coeffs[i]);
    }
  }

  try {
    result.collapsed = collapse_zeros(result.raw);
  } catch (const degenerate_expansion_error& e) {
    result.condition += std::string("collapse: ") + e.what();
  } catch (const std::overflow_error& e) {
    result.condition += std::string("collapse: ") + e.what();
  }

  try {
    const TwoBridgeFraction bracket = cf_value(result.raw);
    result.bracket_value = bracket;
    const long long total_num =
        checked_int64(static_cast<__int128>(2) * c * bracket.denominator +
                          bracket.numerator,
                      "total value exceeds 64-bit integers");
    result.total_value = TwoBridgeFraction{total_num, bracket.denominator};
    result.equivalent_numerators = equivalent_numerators(*result.total_value);
  } catch (const degenerate_expansion_error& e) {
    if (!result.condition.empty()) result.condition += "; ";
    result.condition += std::string("value: ") + e.what();
  } catch (const std::overflow_error& e) {
    if (!result.condition.empty()) result.condition += "; ";
    result.condition += std::string("value: ") + e.what();
  }
  return result;
}

ContinuedFraction ln_family(int n) {
  if (n < 1 || n > 12) throw precondition_error("family index must be in 1..12");
  ContinuedFraction cf;
  cf.coeffs.assign(static_cast<size_t>(ln_twist_number(n)), 2);
  return cf;
}

long long ln_twist_number(int n) {
  if (n < 1 || n > 12) throw precondition_error("family index must be in 1..12");
  long long count = 2;
  for (int i = 1; i < n; ++i) count *= 3;
  return count;
}

long long twist_number(const ContinuedFraction& cf) {
  return std::count_if(cf.coeffs.begin(), cf.coeffs.end(),
                       [](long long c) { return c != 0; });
}

SymmetryReport symmetry_and_cs(const ContinuedFraction& cf) {
  SymmetryReport report;
  report.symmetric = std::equal(cf.coeffs.begin(), cf.coeffs.end(), cf.coeffs.rbegin());

  // Exact evaluation without the 64-bit range limit.
  mpz_class u = 0;
  mpz_class v = 1;
  for (size_t i = cf.coeffs.size(); i-- > 0;) {
    const mpz_class nv = mpz_class(static_cast<long>(cf.coeffs[i])) * v + u;
    u = v;
    v = nv;
  }
  if (v == 0)
    throw degenerate_expansion_error("degenerate expansion", cf.coeffs);
  if (v < 0) {
    u = -u;
    v = -v;
  }
  const mpz_class q = ((u % v) + v) % v;
  report.q_squared_check = mpz_class((q * q + 1) % v) == 0;
  report.cs_vanishes = report.symmetric;
  return report;
}

std::vector<long long> equivalent_numerators(const TwoBridgeFraction& fr) {
  const long long p = fr.denominator;
  if (p <= 1) return {0};
  const long long q = ((fr.numerator % p) + p) % p;

  // Extended Euclid; q and p are coprime for reduced fractions.
  long long r0 = p, r1 = q, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long quot = r0 / r1;
    const long long r2 = r0 - quot * r1;
    const long long t2 = t0 - quot * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  const long long inverse = ((t0 % p) + p) % p;

  std::vector<long long> out = {q, p - q, inverse, p - inverse};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VolumeTwistBounds volume_twist_bounds(long long twist, double c1, double c2,
                                      double c3, double c4) {
  const double t = static_cast<double>(twist);
  return {c1 * t + c2, c3 * t + c4};
}

}  // namespace bloch
