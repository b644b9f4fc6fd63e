#include <bloch/shapes.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <tuple>

namespace bloch {

namespace {

std::string format_residual(const char* what, double r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s, residual %.3e", what, r);
  return std::string(buf);
}

cplx pi_i_times(double k) { return cplx(0.0, k * kPi); }

cplx one_minus_inverse(cplx z) { return 1.0 - 1.0 / z; }

}  // namespace

double flavor_modulus(Flavor flavor) {
  return flavor == Flavor::SL ? kFourPiSq : kPiSq;
}

cplx FlattenedShape::z() const {
  return static_cast<double>(sign_e) * std::exp(e);
}

double shape_residual(const FlattenedShape& s) {
  const cplx we = std::exp(s.e);
  const cplx wf = std::exp(s.f);
  const double scale = 1.0 + std::abs(we) + std::abs(wf);
  return std::abs(static_cast<double>(s.sign_e) * we + static_cast<double>(s.sign_f) * wf - 1.0) /
         scale;
}

FlattenedShape make_shape(cplx e, cplx f, Flavor flavor, double tol) {
  const cplx we = std::exp(e);
  const cplx wf = std::exp(f);
  const double scale = 1.0 + std::abs(we) + std::abs(wf);

  double best = std::numeric_limits<double>::infinity();
  int best_se = 1;
  int best_sf = 1;
  const auto consider = [&](int se, int sf) {
    const double r =
        std::abs(static_cast<double>(se) * we + static_cast<double>(sf) * wf - 1.0);
    if (r < best) {
      best = r;
      best_se = se;
      best_sf = sf;
    }
  };
  consider(1, 1);
  if (flavor == Flavor::PSL) {
    consider(1, -1);
    consider(-1, 1);
    consider(-1, -1);
  }

  const double rel = best / scale;
  if (!(rel < tol)) {
    throw shape_validation_error(format_residual("shape constraint violated", rel), rel);
  }
  const cplx zz = static_cast<double>(best_se) * we;
  const double degeneracy = std::min(std::abs(zz), std::abs(zz - 1.0));
  if (degeneracy < 1e-12) {
    throw shape_validation_error(format_residual("degenerate cross ratio", degeneracy),
                                 degeneracy);
  }
  return FlattenedShape{e, f, flavor, best_se, best_sf};
}

ZPQForm to_zpq(const FlattenedShape& s, double tol) {
  if (s.flavor != Flavor::SL) {
    throw precondition_error("to_zpq requires an SL shape");
  }
  const cplx z = std::exp(s.e);
  const cplx de = s.e - plog(z);
  const cplx df = s.f - plog(1.0 - z);
  const double two_pi = 2.0 * kPi;
  const long long p = std::llround(de.imag() / two_pi);
  const long long q = std::llround(df.imag() / two_pi);
  const double rp = std::abs(de - cplx(0.0, two_pi * static_cast<double>(p)));
  const double rq = std::abs(df - cplx(0.0, two_pi * static_cast<double>(q)));
  const double scale = 1.0 + std::abs(s.e) + std::abs(s.f);
  if (rp > tol * scale || rq > tol * scale) {
    throw precondition_error(
        format_residual("logarithm lift is not an integral multiple of 2*pi*i",
                        std::max(rp, rq)));
  }
  return ZPQForm{z, p, q};
}

FlattenedShape from_zpq(cplx z, long long p, long long q) {
  const cplx e = plog(z) + pi_i_times(2.0 * static_cast<double>(p));
  const cplx f = plog(1.0 - z) + pi_i_times(2.0 * static_cast<double>(q));
  return make_shape(e, f, Flavor::SL);
}

ModLatticeValue rogers_extended(const FlattenedShape& s) {
  cplx z = s.z();
  // exp(e) puts a cross ratio meant to be real a few ulps off the axis, with
  // a winding-dependent sign. One ulp decides the cut side of li2(z) and of
  // plog(1-z) INDEPENDENTLY; an inconsistent pair shifts the value by
  // pi*i*log|z|, which survives the lattice. Snapping to the axis makes both
  // take the same side; consistent sides differ by a multiple of 4 pi^2 and
  // agree in the imaginary part, so the snap is invisible downstream.
  if (std::abs(z.imag()) <= 1e-13 * std::abs(z)) z = cplx(z.real(), 0.0);
  const cplx value = li2(z) + 0.5 * s.e * (2.0 * plog(1.0 - z) - s.f) - kPiSq / 6.0;
  return ModLatticeValue{value, flavor_modulus(s.flavor)};
}

void PreBlochElement::add(long long coeff, const FlattenedShape& s) {
  if (s.flavor != flavor) {
    throw precondition_error("term flavor differs from element flavor");
  }
  if (coeff == 0) {
    return;
  }
  terms.push_back(WeightedShape{coeff, s});
}

PreBlochElement& PreBlochElement::operator+=(const PreBlochElement& rhs) {
  if (rhs.flavor != flavor) {
    throw precondition_error("element flavors differ");
  }
  terms.reserve(terms.size() + rhs.terms.size());
  for (const auto& t : rhs.terms) {
    terms.push_back(t);
  }
  return *this;
}

PreBlochElement& PreBlochElement::operator-=(const PreBlochElement& rhs) {
  if (rhs.flavor != flavor) {
    throw precondition_error("element flavors differ");
  }
  terms.reserve(terms.size() + rhs.terms.size());
  for (const auto& t : rhs.terms) {
    terms.push_back(WeightedShape{-t.coeff, t.shape});
  }
  return *this;
}

PreBlochElement PreBlochElement::negated() const {
  PreBlochElement out = zero_element(flavor);
  out.terms.reserve(terms.size());
  for (const auto& t : terms) {
    out.terms.push_back(WeightedShape{-t.coeff, t.shape});
  }
  return out;
}

void PreBlochElement::scale(long long k) {
  if (k == 0) {
    terms.clear();
    return;
  }
  for (auto& t : terms) {
    t.coeff *= k;
  }
}

void PreBlochElement::canonicalize(double merge_tol) {
  const auto key = [](const WeightedShape& t) {
    return std::make_tuple(t.shape.e.real(), t.shape.e.imag(), t.shape.f.real(),
                           t.shape.f.imag(), t.shape.sign_e, t.shape.sign_f);
  };
  std::sort(terms.begin(), terms.end(),
            [&key](const WeightedShape& a, const WeightedShape& b) { return key(a) < key(b); });

  const auto same = [merge_tol](const FlattenedShape& a, const FlattenedShape& b) {
    return a.sign_e == b.sign_e && a.sign_f == b.sign_f &&
           std::abs(a.e - b.e) <= merge_tol && std::abs(a.f - b.f) <= merge_tol;
  };
  std::vector<WeightedShape> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && same(merged.back().shape, t.shape)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const WeightedShape& t) { return t.coeff == 0; }),
               merged.end());
  terms = std::move(merged);
}

ModLatticeValue PreBlochElement::rogers() const {
  cplx sum{0.0, 0.0};
  for (const auto& t : terms) {
    sum += static_cast<double>(t.coeff) * rogers_extended(t.shape).value;
  }
  return ModLatticeValue{sum, flavor_modulus(flavor)};
}

PreBlochElement zero_element(Flavor flavor) {
  return PreBlochElement{flavor, {}};
}

PreBlochElement chi(cplx e) {
  const cplx w = std::exp(e);
  if (std::abs(w) < 1e-300) {
    throw kernel_domain_error("chi requires exp(e) != 0");
  }
  if (std::abs(w - 1.0) < 1e-12 * (1.0 + std::abs(e))) {
    throw kernel_domain_error("chi requires exp(e) != 1");
  }
  return chi_periodic(e);
}

PreBlochElement chi_periodic(cplx e, Flavor flavor) {
  PreBlochElement out = zero_element(flavor);
  const double scale = 1.0 + std::abs(e);
  const double k = std::round(e.imag() / (4.0 * kPi));
  if (std::abs(e.real()) <= 1e-12 * scale &&
      std::abs(e.imag() - 4.0 * kPi * k) <= 1e-12 * scale) {
    return out;
  }

  const auto append = [&out, flavor](cplx ee) {
    const cplx f0 = plog(1.0 - std::exp(ee));
    out.add(1, make_shape(ee, f0 + kTwoPiI, flavor));
    out.add(-1, make_shape(ee, f0, flavor));
  };

  const cplx w = std::exp(e);
  if (std::abs(w - 1.0) < 1e-12 * scale) {
    // exp(e) = 1 with e outside 4*pi*i*Z: split through log(1/2), where
    // exp(e - log(1/2)) = 2 stays clear of 1.
    const cplx c = plog(cplx(0.5, 0.0));
    append(e - c);
    append(c);
  } else {
    append(e);
  }
  return out;
}

ModLatticeValue five_term_defect(const std::array<FlattenedShape, 5>& t, double tol) {
  const Flavor flavor = t[0].flavor;
  for (const auto& s : t) {
    if (s.flavor != flavor) {
      throw precondition_error("five-term tuple mixes flavors");
    }
  }

  double scale = 1.0;
  for (const auto& s : t) {
    scale = std::max(scale, std::max(std::abs(s.e), std::abs(s.f)));
  }

  struct Condition {
    const char* name;
    cplx lhs;
    cplx rhs;
  };
  const Condition conditions[] = {
      {"e2 = e1 - e0", t[2].e, t[1].e - t[0].e},
      {"e3 = e1 - e0 - f1 + f0", t[3].e, t[1].e - t[0].e - t[1].f + t[0].f},
      {"f3 = f2 - f1", t[3].f, t[2].f - t[1].f},
      {"e4 = f0 - f1", t[4].e, t[0].f - t[1].f},
      {"f4 = f2 - f1 + e0", t[4].f, t[2].f - t[1].f + t[0].e},
  };
  for (const auto& c : conditions) {
    const double r = std::abs(c.lhs - c.rhs);
    if (r > tol * scale) {
      throw precondition_error(
          format_residual((std::string("five-term side condition violated: ") + c.name).c_str(),
                          r));
    }
  }

  cplx sum{0.0, 0.0};
  double sign = 1.0;
  for (const auto& s : t) {
    sum += sign * rogers_extended(s).value;
    sign = -sign;
  }
  return ModLatticeValue{sum, flavor_modulus(flavor)};
}

std::array<FlattenedShape, 5> five_term_instance(cplx z, long long p_, long long q_) {
  if (z.imag() == 0.0) {
    throw kernel_domain_error("five_term_instance requires Im(z) != 0");
  }
  const double p = static_cast<double>(p_);
  const double q = static_cast<double>(q_);
  const cplx zb = std::conj(z);
  const cplx one{1.0, 0.0};

  // Offset of f0, as a multiple of pi*i; keeps exp(f0) = (1-z)/(1-conj z)
  // while the side conditions hold exactly.
  double head;
  const bool re_is_one = std::abs(z.real() - 1.0) <= kCaseDeadband;
  if (z.imag() > 0.0) {
    head = (re_is_one || z.real() > 1.0) ? 4.0 * q - 2.0 : 4.0 * q;
  } else {
    head = (!re_is_one && z.real() > 1.0) ? 4.0 * q + 2.0 : 4.0 * q;
  }

  const FlattenedShape t0 =
      make_shape(plog((z - zb) / (one - zb)) + pi_i_times(2.0 * (q - p)),
                 plog((one - z) / (one - zb)) + pi_i_times(head));
  const FlattenedShape t1 =
      make_shape(plog(z) + pi_i_times(2.0 * p), plog(one - z) + pi_i_times(2.0 * q));
  const FlattenedShape t2 =
      make_shape(plog(z * (one - zb) / (z - zb)) + pi_i_times(2.0 * (2.0 * p - q)),
                 plog(zb * (one - z) / (zb - z)) + pi_i_times(2.0 * q));
  const FlattenedShape t3 =
      make_shape(plog(z / (z - zb)) + pi_i_times(4.0 * p), plog(zb / (zb - z)));
  const FlattenedShape t4 =
      make_shape(plog(one / (one - zb)) + pi_i_times(2.0 * q),
                 plog(zb / (zb - one)) + pi_i_times(2.0 * (q - p)));
  return {t0, t1, t2, t3, t4};
}

ShiftResult shift_pq(const FlattenedShape& s, long long dp, long long dq) {
  const double dpd = static_cast<double>(dp);
  const double dqd = static_cast<double>(dq);
  FlattenedShape shifted = s;
  shifted.e += pi_i_times(2.0 * dpd);
  shifted.f += pi_i_times(2.0 * dqd);
  const cplx arg = pi_i_times(2.0 * dpd * dqd) + dqd * s.e - dpd * s.f;
  return ShiftResult{shifted, chi_periodic(arg, s.flavor)};
}

SymmetryResult apply_symmetry(const FlattenedShape& s, Symmetry which) {
  if (s.flavor != Flavor::SL) {
    throw precondition_error("apply_symmetry requires an SL shape");
  }
  const ZPQForm form = to_zpq(s);
  const cplx z = form.z;
  if (z.imag() == 0.0) {
    throw kernel_domain_error("apply_symmetry requires Im(z) != 0");
  }
  const bool upper = z.imag() > 0.0;
  const double p = static_cast<double>(form.p);
  const double q = static_cast<double>(form.q);
  const cplx lz = plog(z);
  const cplx l1z = plog(1.0 - z);

  switch (which) {
    case Symmetry::INV: {
      FlattenedShape img = make_shape(-lz - pi_i_times(2.0 * p),
                                      plog(one_minus_inverse(z)) + pi_i_times(2.0 * (q - p)));
      const cplx arg = upper ? -0.5 * lz + pi_i_times(2.0 * p * p + p)
                             : 0.5 * lz - pi_i_times(2.0 * p * p + p);
      return SymmetryResult{img, chi_periodic(arg), -1};
    }
    case Symmetry::SWAP: {
      FlattenedShape img = make_shape(s.f, s.e);
      return SymmetryResult{img, chi_periodic(pi_i_times(-1.0 / 6.0)), -1};
    }
    case Symmetry::ONE_MINUS_INV: {
      FlattenedShape img = make_shape(-l1z - pi_i_times(2.0 * q),
                                      plog(-z / (1.0 - z)) + pi_i_times(2.0 * (p - q)));
      const cplx arg = upper ? 0.5 * l1z + pi_i_times(2.0 * q * q - q + 1.0 / 6.0)
                             : -0.5 * l1z - pi_i_times(2.0 * q * q - q - 1.0 / 6.0);
      return SymmetryResult{img, chi_periodic(arg), 1};
    }
    case Symmetry::SWAP_INV: {
      FlattenedShape img = make_shape(plog(one_minus_inverse(z)) + pi_i_times(2.0 * (q - p)),
                                      -lz - pi_i_times(2.0 * p));
      const cplx arg = upper ? 0.5 * lz + pi_i_times(2.0 * p * p - p - 1.0 / 6.0)
                             : -0.5 * lz + pi_i_times(2.0 * p * p + p - 1.0 / 6.0);
      return SymmetryResult{img, chi_periodic(arg), 1};
    }
    case Symmetry::CONJ_VARIANT: {
      if (upper) {
        throw kernel_domain_error("CONJ_VARIANT requires Im(z) < 0");
      }
      FlattenedShape img = make_shape(plog(-z / (1.0 - z)) + pi_i_times(2.0 * (p - q)),
                                      -l1z - pi_i_times(2.0 * q));
      const cplx arg = 0.5 * l1z + pi_i_times(2.0 * q * q - q - 1.0 / 3.0);
      return SymmetryResult{img, chi_periodic(arg), -1};
    }
  }
  throw std::logic_error("unhandled symmetry");
}

PreBlochElement conjugate_element(const PreBlochElement& x) {
  PreBlochElement out = zero_element(x.flavor);
  out.terms.reserve(x.terms.size());
  for (const auto& t : x.terms) {
    FlattenedShape s = t.shape;
    s.e = std::conj(s.e);
    s.f = std::conj(s.f);
    out.terms.push_back(WeightedShape{t.coeff, s});
  }
  return out;
}

cplx psl_log_lift(cplx v) {
  // Near-real values snap onto the axis so roundoff cannot flip the branch
  // between 0 and pi.
  if (std::abs(v.imag()) <= 1e-13 * std::abs(v)) {
    return plog(cplx(std::abs(v.real()), 0.0));
  }
  return plog(v.imag() > 0.0 ? v : -v);
}

std::vector<std::pair<std::string, double>> log_identity_residuals(cplx z) {
  if (z.imag() == 0.0) {
    throw kernel_domain_error("log identities require Im(z) != 0");
  }
  const cplx zb = std::conj(z);
  const cplx one{1.0, 0.0};
  const double re = z.real();
  const double im = z.imag();
  const bool re_is_zero = std::abs(re) <= kCaseDeadband;
  const bool re_is_one = std::abs(re - 1.0) <= kCaseDeadband;

  std::vector<std::pair<std::string, double>> out;
  const auto push = [&out](const char* label, cplx lhs, cplx rhs) {
    out.emplace_back(label, std::abs(lhs - rhs));
  };

  // Wraparound of the principal argument decides the 2*pi*i offsets below.
  double wrap = 0.0;
  if (re_is_zero ? im > 0.0 : re > 0.0) {
    wrap = 0.0;
  } else if (im > 0.0) {
    wrap = 1.0;
  } else {
    wrap = -1.0;
  }
  push("z-over-conj", plog(z) - plog(zb), plog(z / zb) + pi_i_times(2.0 * wrap));

  push("z-over-diff", plog(z) - plog(z - zb), plog(z / (z - zb)));
  push("conj-over-diff", plog(zb) - plog(zb - z), plog(zb / (zb - z)));

  push("one-minus-conj-over-z", plog(one - zb) - plog(z), plog((one - zb) / z));
  push("one-minus-z-over-conj", plog(one - z) - plog(zb), plog((one - z) / zb));

  push("diff-over-conj-minus-one", plog(zb - z) - plog(zb - one),
       plog((z - zb) / (one - zb)));

  push("z-over-one-minus-z", plog(z) - plog(one - z), plog(z / (one - z)));
  push("conj-over-one-minus-conj", plog(zb) - plog(one - zb), plog(zb / (one - zb)));

  push("z-times-one-minus-conj", plog(z) + plog(one - zb), plog(z * (one - zb)));
  push("conj-times-one-minus-z", plog(zb) + plog(one - z), plog(zb * (one - z)));

  push("z-times-one-minus-conj-over-diff", plog(z * (one - zb)) - plog(z - zb),
       plog(z * (one - zb) / (z - zb)));
  push("conj-times-one-minus-z-over-diff", plog(zb * (one - z)) - plog(zb - z),
       plog(zb * (one - z) / (zb - z)));

  double wrap8 = 0.0;
  if (re_is_one ? im < 0.0 : re < 1.0) {
    wrap8 = 0.0;
  } else if (im < 0.0) {
    wrap8 = 1.0;
  } else {
    wrap8 = -1.0;
  }
  push("one-minus-z-over-one-minus-conj", plog(one - z) - plog(one - zb),
       plog((one - z) / (one - zb)) + pi_i_times(2.0 * wrap8));

  // No wrap strictly inside the circle |w - 1/2| = 1/2, where arg(z) + arg(1 - z)
  // stays below pi/2 in absolute value.
  const double wrap9 =
      z.real() > std::norm(z) ? 0.0 : (im < 0.0 ? 1.0 : -1.0);
  push("conj-mix-ratio", plog(zb * (one - z)) - plog(z * (one - zb)),
       plog(zb * (one - z) / (z * (one - zb))) + pi_i_times(2.0 * wrap9));

  return out;
}

nlohmann::json element_to_json(const PreBlochElement& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : x.terms) {
    rows.push_back({t.coeff, t.shape.e.real(), t.shape.e.imag(), t.shape.f.real(),
                    t.shape.f.imag()});
  }
  return rows;
}

PreBlochElement element_from_json(const nlohmann::json& rows, Flavor flavor) {
  if (!rows.is_array()) {
    throw precondition_error("element serialization must be an array of rows");
  }
  PreBlochElement out = zero_element(flavor);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 5) {
      throw precondition_error("element row must be [coeff, Re e, Im e, Re f, Im f]");
    }
    const long long coeff = row[0].get<long long>();
    const cplx e{row[1].get<double>(), row[2].get<double>()};
    const cplx f{row[3].get<double>(), row[4].get<double>()};
    out.add(coeff, make_shape(e, f, flavor));
  }
  return out;
}

}  // namespace bloch
