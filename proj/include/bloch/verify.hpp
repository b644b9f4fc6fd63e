#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include <bloch/shapes.hpp>

namespace bloch {

/// Shared knobs for the verification suites. samples counts cases for flat
/// suites and cases per region for region-structured ones; tol_r gates
/// R-level residuals, tol_log the exact logarithm branch identities.
struct RunConfig {
  unsigned long long seed = 1;
  int samples = 200;
  double tol_r = 1e-8;
  double tol_log = 1e-12;
  Flavor flavor = Flavor::SL;
};

/// Throws precondition_error unless samples >= 1 and both tolerances are
/// positive.
void validate_config(const RunConfig& cfg);

struct CaseFailure {
  long long index = 0;
  std::string input;
  double residual = 0.0;
};

/// Outcome of one suite run. failures lists exactly the cases whose residual
/// exceeded tolerance, so failures.empty() iff max_residual <= tolerance.
struct VerificationReport {
  std::string suite;
  unsigned long long seed = 0;
  int samples = 0;
  long long cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  double wall_seconds = 0.0;
  std::vector<CaseFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Runnable suite names in canonical order; excludes the "all" alias.
const std::vector<std::string>& suite_names();

/// Runs one named suite with a fresh generator seeded from cfg.seed. Cases
/// are evaluated and numbered sequentially, so equal configurations yield
/// identical reports. Throws std::invalid_argument on an unknown name.
VerificationReport run_suite(const std::string& name, const RunConfig& cfg);

/// Every suite from suite_names(), in order.
std::vector<VerificationReport> run_all(const RunConfig& cfg);

/// The representation battery restricted to symmetric powers n_lo..n_hi.
VerificationReport run_reps_range(const RunConfig& cfg, int n_lo, int n_hi);

/// Report as a JSON document. Timing is opt-in so equal configurations
/// serialize byte-identically.
nlohmann::json report_to_json(const VerificationReport& report, bool include_timing);

/// Serializes with 15 significant digits on floating numbers, except inside
/// "class" subtrees which keep full round-trip precision.
std::string render_json(const nlohmann::json& doc);

}  // namespace bloch
