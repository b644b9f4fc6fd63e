#include <bloch/verify.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <bloch/matrix.hpp>
#include <bloch/reps.hpp>
#include <bloch/tensor.hpp>
#include <bloch/triangulation.hpp>

namespace bloch {

namespace {

std::string fmt(const char* pattern, ...) {
  char buf[192];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

std::string fmt_z(cplx z) { return fmt("%.6g%+.6gi", z.real(), z.imag()); }

cplx sample_box(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

// Rejection sampler staying off the real axis and away from 0, 1, infinity.
cplx sample_off_axis(std::mt19937_64& rng) {
  for (;;) {
    const cplx z = sample_box(rng, 3.0);
    if (std::abs(z.imag()) <= 0.1) continue;
    if (std::abs(z) <= 0.1 || std::abs(z - 1.0) <= 0.1) continue;
    if (std::abs(z) >= 3.0) continue;
    return z;
  }
}

cplx sample_half(std::mt19937_64& rng, int half_sign) {
  for (;;) {
    const cplx z = sample_off_axis(rng);
    if (z.imag() * half_sign > 0.0) return z;
  }
}

// The six open case regions: band = region % 3 selects Re z in (-inf,0),
// (0,1), (1,inf); region < 3 puts z in the upper half plane.
cplx sample_band(std::mt19937_64& rng, int region) {
  std::uniform_real_distribution<double> height(0.1, 1.8);
  std::uniform_real_distribution<double> inner(0.05, 0.95);
  std::uniform_real_distribution<double> outer(0.05, 1.5);
  const int band = region % 3;
  const double re = band == 0   ? -outer(rng)
                    : band == 1 ? inner(rng)
                                : 1.0 + outer(rng);
  const double im = height(rng) * (region < 3 ? 1.0 : -1.0);
  return cplx(re, im);
}

cplx nonzero_box(std::mt19937_64& rng) {
  for (;;) {
    const cplx z = sample_box(rng, 2.0);
    if (std::abs(z) > 0.3) return z;
  }
}

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// Determinant-one sample with moderate entries; d is solved from the others.
Matrix sample_sl2(std::mt19937_64& rng) {
  for (;;) {
    const cplx a = sample_box(rng, 0.8);
    const cplx b = sample_box(rng, 0.8);
    const cplx c = sample_box(rng, 0.8);
    if (std::abs(a) < 0.3) continue;
    const cplx d = (1.0 + b * c) / a;
    if (std::abs(d) > 2.0) continue;
    return mat2(a, b, c, d);
  }
}

class Recorder {
 public:
  Recorder(std::string suite, const RunConfig& cfg, double tolerance) {
    report_.suite = std::move(suite);
    report_.seed = cfg.seed;
    report_.samples = cfg.samples;
    report_.tolerance = tolerance;
  }

  void record(double residual, const std::string& input) {
    if (residual > report_.max_residual) report_.max_residual = residual;
    if (residual > report_.tolerance) {
      report_.failures.push_back({report_.cases, input, residual});
    }
    ++report_.cases;
  }

  VerificationReport take() { return std::move(report_); }

 private:
  VerificationReport report_;
};

// Alternating R-sum over the parametrized five-term family.
VerificationReport five_term_suite(const RunConfig& cfg) {
  Recorder rec("five-term", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long long> offs(-2, 2);
  for (int i = 0; i < cfg.samples; ++i) {
    const cplx z = sample_off_axis(rng);
    const long long p = offs(rng);
    const long long q = offs(rng);
    const ModLatticeValue defect = five_term_defect(five_term_instance(z, p, q));
    rec.record(lattice_residual(defect.value, defect.modulus),
               fmt("z=%s p=%lld q=%lld", fmt_z(z).c_str(), p, q));
  }
  return rec.take();
}

// The residue identity R(chi(e)) = -pi*i*e and the lift-shift correction.
VerificationReport hom_suite(const RunConfig& cfg) {
  Recorder rec("hom", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long long> offs(-3, 3);
  for (int i = 0; i < cfg.samples; ++i) {
    cplx e;
    for (;;) {
      e = sample_box(rng, 5.0);
      const cplx w = std::exp(e);
      if (std::abs(w - 1.0) > 1e-3 && std::abs(w) > 1e-6) break;
    }
    const double chi_res =
        lattice_distance(chi(e).rogers().value, -kImagUnit * kPi * e, kFourPiSq);
    rec.record(chi_res, fmt("chi e=%s", fmt_z(e).c_str()));

    const cplx z = sample_off_axis(rng);
    const long long p = offs(rng);
    const long long q = offs(rng);
    const long long dp = offs(rng);
    const long long dq = offs(rng);
    const FlattenedShape s = from_zpq(z, p, q);
    const ShiftResult moved = shift_pq(s, dp, dq);
    const double shift_res = lattice_distance(
        rogers_extended(moved.shape).value,
        rogers_extended(s).value + moved.correction.rogers().value, kFourPiSq);
    rec.record(shift_res, fmt("shift z=%s p=%lld q=%lld dp=%lld dq=%lld",
                              fmt_z(z).c_str(), p, q, dp, dq));
  }
  return rec.take();
}

// Cross-ratio symmetry corrections, one region per (symmetry, half plane).
VerificationReport gz_suite(const RunConfig& cfg) {
  Recorder rec("gz", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long long> offs(-3, 3);
  struct Region {
    Symmetry which;
    int half;
    const char* label;
  };
  const Region regions[] = {
      {Symmetry::INV, 1, "inv/upper"},
      {Symmetry::INV, -1, "inv/lower"},
      {Symmetry::SWAP, 1, "swap/upper"},
      {Symmetry::SWAP, -1, "swap/lower"},
      {Symmetry::ONE_MINUS_INV, 1, "one-minus-inv/upper"},
      {Symmetry::ONE_MINUS_INV, -1, "one-minus-inv/lower"},
      {Symmetry::SWAP_INV, 1, "swap-inv/upper"},
      {Symmetry::SWAP_INV, -1, "swap-inv/lower"},
      {Symmetry::CONJ_VARIANT, -1, "conj-variant/lower"},
  };
  for (const Region& region : regions) {
    for (int i = 0; i < cfg.samples; ++i) {
      const cplx z = sample_half(rng, region.half);
      const long long p = offs(rng);
      const long long q = offs(rng);
      const FlattenedShape s = from_zpq(z, p, q);
      const SymmetryResult res = apply_symmetry(s, region.which);
      const cplx lhs = rogers_extended(res.shape).value;
      const cplx rhs = static_cast<double>(res.sign) * rogers_extended(s).value +
                       res.correction.rogers().value;
      rec.record(lattice_distance(lhs, rhs, kFourPiSq),
                 fmt("%s z=%s p=%lld q=%lld", region.label, fmt_z(z).c_str(), p, q));
    }
  }
  return rec.take();
}

// Signed logarithm branch identities across quadrants, the far right half
// plane, and the boundary verticals Re z = 0 and Re z = 1.
VerificationReport log_suite(const RunConfig& cfg) {
  Recorder rec("log", cfg, cfg.tol_log);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> mag(0.1, 2.5);
  const auto sample_region = [&](int region) -> cplx {
    switch (region) {
      case 0: return {mag(rng), mag(rng)};
      case 1: return {mag(rng), -mag(rng)};
      case 2: return {-mag(rng), mag(rng)};
      case 3: return {-mag(rng), -mag(rng)};
      case 4: return {1.0 + mag(rng), mag(rng)};
      case 5: return {1.0 + mag(rng), -mag(rng)};
      case 6: return {0.0, mag(rng)};
      case 7: return {0.0, -mag(rng)};
      case 8: return {1.0, mag(rng)};
      default: return {1.0, -mag(rng)};
    }
  };
  for (int region = 0; region < 10; ++region) {
    for (int i = 0; i < cfg.samples; ++i) {
      const cplx z = sample_region(region);
      double worst = 0.0;
      std::string worst_label = "all";
      for (const auto& [label, residual] : log_identity_residuals(z)) {
        if (residual > worst) {
          worst = residual;
          worst_label = label;
        }
      }
      rec.record(worst, fmt("region=%d z=%s id=%s", region, fmt_z(z).c_str(),
                            worst_label.c_str()));
    }
  }
  return rec.take();
}

VerificationReport band_suite(const char* name, const RunConfig& cfg, int max_offset,
                              double (*residual_fn)(cplx, long long, long long)) {
  Recorder rec(name, cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long long> offs(-max_offset, max_offset);
  for (int region = 0; region < 6; ++region) {
    for (int i = 0; i < cfg.samples; ++i) {
      const cplx z = sample_band(rng, region);
      const long long p = offs(rng);
      const long long q = offs(rng);
      rec.record(residual_fn(z, p, q),
                 fmt("region=%d z=%s p=%lld q=%lld", region, fmt_z(z).c_str(), p, q));
    }
  }
  return rec.take();
}

// Weight-4 coordinate table against determinants of a doubled decoration in
// standard form. Cases with an ill-conditioned determinant floor are
// resampled so the relative error is meaningful.
VerificationReport tensor_table_suite(const RunConfig& cfg) {
  Recorder rec("tensor-table", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  Triangulation tri;
  tri.simplices.push_back({{0, 1, 2, 3}, 1});
  int used = 0;
  while (used < cfg.samples) {
    const cplx a = nonzero_box(rng);
    const cplx b = nonzero_box(rng);
    const cplx c = nonzero_box(rng);
    const cplx d = nonzero_box(rng);
    const cplx e = nonzero_box(rng);
    Decoration dec;
    dec.n = 2;
    dec.cosets[0] = Matrix::identity(2);
    dec.cosets[1] = mat2(0.0, -1.0 / a, a, 0.0);
    dec.cosets[2] = mat2(-d / a, -1.0 / b, b, 0.0);
    dec.cosets[3] = mat2(-e / a, -1.0 / c, c, 0.0);
    PtolemyAssignment a2;
    try {
      a2 = build_assignment(tri, dec, Flavor::SL);
    } catch (const precondition_error&) {
      continue;
    }
    const StandardSimplexCoords coords = coords_from_assignment(a2, 0, {0, 0, 0, 0});
    const std::vector<cplx> dets = ptolemy_coords(tri.simplices[0], tensor_decoration(dec));
    double floor = 1e300;
    for (const cplx& v : dets) floor = std::min(floor, std::abs(v));
    if (floor < 1e-2) continue;
    const TensorPtolemyTable table = tensor_ptolemy(coords);
    double rel = 0.0;
    for (size_t i = 0; i < dets.size(); ++i) {
      rel = std::max(rel, std::abs(dets[i] - table.values[i]) / std::abs(dets[i]));
    }
    rec.record(rel, fmt("a=%s b=%s c=%s", fmt_z(a).c_str(), fmt_z(b).c_str(),
                        fmt_z(c).c_str()));
    ++used;
  }
  return rec.take();
}

VerificationReport toy_bloch_suite(const RunConfig& cfg) {
  Recorder rec("toy-bloch", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    const cplx z = sample_off_axis(rng);
    rec.record(toy_bloch_check(z), fmt("z=%s", fmt_z(z).c_str()));
  }
  return rec.take();
}

long long choose3(long long top) { return top * (top - 1) * (top - 2) / 6; }

// Integer layer of the representation battery; returns 0 on agreement and
// the count of mismatches otherwise.
double reps_exact_residual() {
  long long bad = 0;
  for (int n = 2; n <= 10; ++n) {
    if (trace_multiplier(n) != 2 * choose3(n + 1)) ++bad;
  }
  for (int n = 2; n <= 6; ++n) {
    for (int m = 2; m <= 6; ++m) {
      const auto pair = mixed_trace_multiplier(n, m);
      if (pair.first != m || pair.second != n) ++bad;
    }
  }
  const auto table = rep_table();
  if (table.size() != 10) ++bad;
  for (const RepTableRow& row : table) {
    if (row.rep.dimension() != 4) ++bad;
    const CCSMultiplier direct = multiplier(row.rep);
    if (direct.vol_mult != row.mult.vol_mult || direct.cs_mult != row.mult.cs_mult) ++bad;
  }
  return static_cast<double>(bad);
}

}  // namespace

VerificationReport run_reps_range(const RunConfig& cfg, int n_lo, int n_hi) {
  validate_config(cfg);
  if (n_lo < 2 || n_hi < n_lo) {
    throw precondition_error("symmetric power range must satisfy 2 <= lo <= hi");
  }
  Recorder rec("reps", cfg, cfg.tol_r);
  std::mt19937_64 rng(cfg.seed);
  rec.record(reps_exact_residual(), "integer trace multipliers and table");

  const Matrix form = tau_invariant_form();
  const Matrix conjugator = kappa_conjugator();
  const Matrix conj_inv = conjugator.inverse();
  const int span = n_hi - n_lo + 1;
  for (int i = 0; i < cfg.samples; ++i) {
    const Matrix a = sample_sl2(rng);
    const Matrix b = sample_sl2(rng);
    const int n = n_lo + (i % span);
    double r = (sym_power(a * b, n) - sym_power(a, n) * sym_power(b, n)).max_abs();

    const Matrix ta = tau(a);
    r = std::max(r, (tau(a * b) - ta * tau(b)).max_abs());
    r = std::max(r, (ta.transpose() * form * ta - form).max_abs());
    r = std::max(r, std::abs(ta.det() - 1.0));
    double imag_part = 0.0;
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) {
        imag_part = std::max(imag_part, std::abs(ta.at(row, col).imag()));
      }
    }
    r = std::max(r, imag_part);
    const auto poly_tau = characteristic_polynomial(ta);
    const auto poly_kron = characteristic_polynomial(kron(a, a.conjugate()));
    for (size_t k = 0; k < poly_tau.size(); ++k) {
      r = std::max(r, std::abs(poly_tau[k] - poly_kron[k]));
    }

    const Matrix ka = kappa(a);
    r = std::max(r, (kappa(a * b) - ka * kappa(b)).max_abs());
    Matrix split(4, 4);
    for (int row = 0; row < 2; ++row) {
      for (int col = 0; col < 2; ++col) {
        split.at(row, col) = a.at(row, col);
        split.at(row + 2, col + 2) = std::conj(a.at(row, col));
      }
    }
    r = std::max(r, (conj_inv * ka * conjugator - split).max_abs());

    rec.record(r, fmt("n=%d a11=%s a12=%s a21=%s", n, fmt_z(a.at(0, 0)).c_str(),
                      fmt_z(a.at(0, 1)).c_str(), fmt_z(a.at(1, 0)).c_str()));
  }
  return rec.take();
}

void validate_config(const RunConfig& cfg) {
  if (cfg.samples < 1) throw precondition_error("samples must be at least 1");
  if (!(cfg.tol_r > 0.0)) throw precondition_error("tol_r must be positive");
  if (!(cfg.tol_log > 0.0)) throw precondition_error("tol_log must be positive");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "five-term", "hom",          "gz",        "log",  "corsum", "corfive",
      "cancel",    "tensor-table", "toy-bloch", "reps",
  };
  return names;
}

VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
  validate_config(cfg);
  const auto started = std::chrono::steady_clock::now();
  VerificationReport report;
  if (name == "five-term") {
    report = five_term_suite(cfg);
  } else if (name == "hom") {
    report = hom_suite(cfg);
  } else if (name == "gz") {
    report = gz_suite(cfg);
  } else if (name == "log") {
    report = log_suite(cfg);
  } else if (name == "corsum") {
    report = band_suite("corsum", cfg, 2, &grouped_sum_residual);
  } else if (name == "corfive") {
    report = band_suite("corfive", cfg, 3, &five_term_reduction_residual);
  } else if (name == "cancel") {
    report = band_suite("cancel", cfg, 2, &verify_cancellation);
  } else if (name == "tensor-table") {
    report = tensor_table_suite(cfg);
  } else if (name == "toy-bloch") {
    report = toy_bloch_suite(cfg);
  } else if (name == "reps") {
    report = run_reps_range(cfg, 2, 6);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  const auto finished = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(finished - started).count();
  return report;
}

std::vector<VerificationReport> run_all(const RunConfig& cfg) {
  std::vector<VerificationReport> reports;
  reports.reserve(suite_names().size());
  for (const std::string& name : suite_names()) {
    reports.push_back(run_suite(name, cfg));
  }
  return reports;
}

nlohmann::json report_to_json(const VerificationReport& report, bool include_timing) {
  nlohmann::json failures = nlohmann::json::array();
  for (const CaseFailure& f : report.failures) {
    failures.push_back({{"index", f.index}, {"input", f.input}, {"residual", f.residual}});
  }
  nlohmann::json doc = {
      {"suite", report.suite},       {"seed", report.seed},
      {"samples", report.samples},   {"cases", report.cases},
      {"max_residual", report.max_residual},
      {"tolerance", report.tolerance},
      {"passed", report.passed()},   {"failures", failures},
  };
  if (include_timing) doc["wall_seconds"] = report.wall_seconds;
  return doc;
}

namespace {

void append_number(std::string& out, double value, bool exact) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  if (exact) {
    out += nlohmann::json(value).dump();
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  out += buf;
}

bool is_scalar_array(const nlohmann::json& arr) {
  for (const auto& v : arr) {
    if (v.is_structured()) return false;
  }
  return true;
}

void append_json(std::string& out, const nlohmann::json& doc, int depth, bool exact) {
  const std::string pad(2 * depth, ' ');
  const std::string pad_in(2 * (depth + 1), ' ');
  switch (doc.type()) {
    case nlohmann::json::value_t::object: {
      if (doc.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : doc.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += nlohmann::json(key).dump();
        out += ": ";
        append_json(out, value, depth + 1, exact || key == "class");
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (doc.empty()) {
        out += "[]";
        return;
      }
      const bool inline_row = is_scalar_array(doc);
      out += "[";
      bool first = true;
      for (const auto& v : doc) {
        if (!first) out += inline_row ? ", " : ",";
        if (!inline_row) out += "\n" + pad_in;
        first = false;
        append_json(out, v, depth + 1, exact);
      }
      if (!inline_row) out += "\n" + pad;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      append_number(out, doc.get<double>(), exact);
      return;
    default:
      out += doc.dump();
      return;
  }
}

}  // namespace

std::string render_json(const nlohmann::json& doc) {
  std::string out;
  append_json(out, doc, 0, false);
  out += "\n";
  return out;
}

}  // namespace bloch
