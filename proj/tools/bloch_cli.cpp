// Command line front end: verification suites, fundamental classes from
// triangulation and decoration documents, representation tables, and
// two-bridge fraction utilities. Every command prints one JSON document.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <bloch/knots.hpp>
#include <bloch/reps.hpp>
#include <bloch/tensor.hpp>
#include <bloch/triangulation.hpp>
#include <bloch/verify.hpp>

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_usage(std::ostream& out) {
  out << "usage: bloch <command> [options]\n"
         "\n"
         "commands:\n"
         "  verify <suite>      run a verification suite and report residuals\n"
         "                      suites: five-term hom gz log corsum corfive cancel\n"
         "                              tensor-table toy-bloch reps all\n"
         "                      options: --samples N --seed S --tol X --tol-log X\n"
         "                               --timing --output PATH\n"
         "  class               fundamental class of a decorated triangulation\n"
         "                      options: --tri PATH --dec PATH | --fixture fig8\n"
         "                               --mode sl2|tensor|theorem1 --flavor sl|psl\n"
         "                               --tol X --output PATH\n"
         "  knot value A,B,...  evaluate a continued fraction expansion\n"
         "  knot family --n N   the n-th member of the doubled-twist family\n"
         "  knot ors --b A,B --eps E1,E2 --c C --ci C1,C2\n"
         "                      blockwise substitution with collapse and\n"
         "                      equivalence report\n"
         "  knot symmetry A,B   palindrome and modular self-duality report\n"
         "  reps table          the ten four-dimensional combinations with their\n"
         "                      volume and Chern-Simons multipliers\n"
         "  reps check          representation identity battery\n"
         "                      options: --n LO..HI --samples N --seed S --tol X\n"
         "\n"
         "environment: BLOCH_TOL_R overrides the default residual tolerance\n"
         "exit codes: 0 pass, 1 input/output error, 2 usage, 3 precondition,\n"
         "            4 verification failure\n";
}

struct ParsedArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> values;
  std::set<std::string> flags;
};

ParsedArgs parse_args(int argc, char** argv, int start,
                      const std::set<std::string>& value_keys,
                      const std::set<std::string>& flag_keys) {
  ParsedArgs out;
  for (int i = start; i < argc; ++i) {
    const std::string token = argv[i];
    if (token.rfind("--", 0) != 0) {
      out.positional.push_back(token);
      continue;
    }
    const std::string key = token.substr(2);
    if (flag_keys.count(key) != 0) {
      out.flags.insert(key);
      continue;
    }
    if (value_keys.count(key) == 0) throw usage_error("unknown option " + token);
    if (i + 1 >= argc) throw usage_error(token + " requires a value");
    out.values[key] = argv[++i];
  }
  return out;
}

long long to_ll(const std::string& text) {
  size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw usage_error("not an integer: " + text);
  }
  if (pos != text.size()) throw usage_error("not an integer: " + text);
  return value;
}

double to_double(const std::string& text) {
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw usage_error("not a number: " + text);
  }
  if (pos != text.size()) throw usage_error("not a number: " + text);
  return value;
}

std::vector<long long> parse_csv(const std::string& text) {
  std::vector<long long> out;
  if (text.empty()) return out;
  size_t begin = 0;
  for (;;) {
    const size_t comma = text.find(',', begin);
    out.push_back(to_ll(text.substr(begin, comma - begin)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

bloch::RunConfig config_from(const ParsedArgs& args) {
  bloch::RunConfig cfg;
  if (const char* env = std::getenv("BLOCH_TOL_R")) {
    cfg.tol_r = to_double(env);
  }
  if (auto it = args.values.find("seed"); it != args.values.end()) {
    cfg.seed = static_cast<unsigned long long>(to_ll(it->second));
  }
  if (auto it = args.values.find("samples"); it != args.values.end()) {
    const long long n = to_ll(it->second);
    if (n < 1) throw usage_error("--samples must be at least 1");
    cfg.samples = static_cast<int>(n);
  }
  if (auto it = args.values.find("tol"); it != args.values.end()) {
    cfg.tol_r = to_double(it->second);
  }
  if (auto it = args.values.find("tol-log"); it != args.values.end()) {
    cfg.tol_log = to_double(it->second);
  }
  if (auto it = args.values.find("flavor"); it != args.values.end()) {
    if (it->second == "sl") {
      cfg.flavor = bloch::Flavor::SL;
    } else if (it->second == "psl") {
      cfg.flavor = bloch::Flavor::PSL;
    } else {
      throw usage_error("--flavor must be sl or psl");
    }
  }
  bloch::validate_config(cfg);
  return cfg;
}

void emit(const nlohmann::json& doc, const ParsedArgs& args) {
  const std::string text = bloch::render_json(doc);
  if (auto it = args.values.find("output"); it != args.values.end()) {
    std::ofstream file(it->second);
    if (!file) throw io_error("cannot open " + it->second + " for writing");
    file << text;
    if (!file) throw io_error("cannot write " + it->second);
    return;
  }
  std::cout << text;
}

nlohmann::json fraction_json(const bloch::TwoBridgeFraction& fr) {
  return {{"numerator", fr.numerator}, {"denominator", fr.denominator}};
}

int cmd_verify(int argc, char** argv) {
  const ParsedArgs args = parse_args(
      argc, argv, 2, {"samples", "seed", "tol", "tol-log", "flavor", "output"},
      {"timing"});
  if (args.positional.size() != 1) throw usage_error("verify expects one suite name");
  const std::string suite = args.positional[0];
  const bloch::RunConfig cfg = config_from(args);
  const bool timing = args.flags.count("timing") != 0;

  if (suite == "all") {
    nlohmann::json suites = nlohmann::json::array();
    long long cases = 0;
    double max_residual = 0.0;
    bool passed = true;
    for (const bloch::VerificationReport& report : bloch::run_all(cfg)) {
      suites.push_back(bloch::report_to_json(report, timing));
      cases += report.cases;
      max_residual = std::max(max_residual, report.max_residual);
      passed = passed && report.passed();
    }
    emit({{"suite", "all"},
          {"cases", cases},
          {"max_residual", max_residual},
          {"passed", passed},
          {"suites", suites}},
         args);
    return passed ? 0 : 4;
  }

  const bloch::VerificationReport report = bloch::run_suite(suite, cfg);
  emit(bloch::report_to_json(report, timing), args);
  return report.passed() ? 0 : 4;
}

// Reduces -Re(R) into [0, modulus), the Chern-Simons representative of R.
double chern_simons_of(const bloch::ModLatticeValue& r) {
  const bloch::ModLatticeValue cs{bloch::cplx(-r.value.real(), 0.0), r.modulus};
  return cs.reduced_re();
}

nlohmann::json class_core_json(const bloch::PreBlochElement& cls,
                               const bloch::ModLatticeValue& r) {
  return {{"class", bloch::element_to_json(cls)},
          {"R", {{"re", r.value.real()}, {"im", r.value.imag()}}},
          {"modulus", r.modulus == bloch::kFourPiSq ? "4pi2" : "pi2"},
          {"volume", r.value.imag()},
          {"cs", chern_simons_of(r)}};
}

int cmd_class(int argc, char** argv) {
  const ParsedArgs args = parse_args(
      argc, argv, 2, {"tri", "dec", "fixture", "mode", "flavor", "tol", "output"}, {});
  if (!args.positional.empty()) {
    throw usage_error("class takes options only; unexpected " + args.positional[0]);
  }
  const std::string mode =
      args.values.count("mode") != 0 ? args.values.at("mode") : "sl2";
  if (mode != "sl2" && mode != "tensor" && mode != "theorem1") {
    throw usage_error("--mode must be sl2, tensor, or theorem1");
  }

  // The rank-2 flavor; sign-marked decorations need psl.
  bloch::Flavor flavor = bloch::Flavor::PSL;
  double tol = 1e-8;
  if (const char* env = std::getenv("BLOCH_TOL_R")) tol = to_double(env);
  if (auto it = args.values.find("tol"); it != args.values.end()) {
    tol = to_double(it->second);
  }
  if (!(tol > 0.0)) throw usage_error("--tol must be positive");
  if (auto it = args.values.find("flavor"); it != args.values.end()) {
    if (it->second == "sl") {
      flavor = bloch::Flavor::SL;
    } else if (it->second == "psl") {
      flavor = bloch::Flavor::PSL;
    } else {
      throw usage_error("--flavor must be sl or psl");
    }
  }

  bloch::Triangulation tri;
  bloch::Decoration dec;
  if (auto it = args.values.find("fixture"); it != args.values.end()) {
    if (it->second != "fig8") throw usage_error("unknown fixture " + it->second);
    tri = bloch::fig8_triangulation();
    dec = bloch::fig8_decoration();
  } else {
    if (args.values.count("tri") == 0 || args.values.count("dec") == 0) {
      throw usage_error("class needs --tri and --dec paths or --fixture fig8");
    }
    const auto read_doc = [](const std::string& path) {
      std::ifstream file(path);
      if (!file) throw io_error("cannot open " + path);
      return nlohmann::json::parse(file);
    };
    tri = bloch::load_triangulation(read_doc(args.values.at("tri")));
    dec = bloch::load_decoration(read_doc(args.values.at("dec")));
  }

  const std::string flavor_name = flavor == bloch::Flavor::SL ? "sl" : "psl";
  if (mode == "sl2") {
    const bloch::PtolemyAssignment a = bloch::build_assignment(tri, dec, flavor);
    const bloch::PreBlochElement cls = bloch::fundamental_class_from_assignment(tri, a);
    const bloch::ModLatticeValue r = cls.rogers();
    nlohmann::json doc = class_core_json(cls, r);
    doc["mode"] = "sl2";
    doc["flavor"] = flavor_name;
    emit(doc, args);
    return 0;
  }

  if (mode == "tensor") {
    const bloch::TensorClassReport report = bloch::tensor_class_check(tri, dec, flavor);
    nlohmann::json doc = bloch::tensor_report_to_json(report);
    doc["mode"] = "tensor";
    doc["flavor"] = flavor_name;
    emit(doc, args);
    return report.residual <= tol ? 0 : 4;
  }

  const bloch::PtolemyAssignment a4 = bloch::tensor_assignment(tri, dec, flavor);
  const bloch::PreBlochElement cls = bloch::fundamental_class_from_assignment(tri, a4);
  const bloch::ModLatticeValue r = cls.rogers();
  const double lattice_res = bloch::lattice_residual(r.value, r.modulus);
  const bloch::TensorClassReport cancel = bloch::tensor_class_check(tri, dec, flavor);
  nlohmann::json doc = class_core_json(cls, r);
  doc["mode"] = "theorem1";
  doc["flavor"] = flavor_name;
  doc["lattice_residual"] = lattice_res;
  doc["cancellation"] = bloch::tensor_report_to_json(cancel);
  emit(doc, args);
  return lattice_res <= tol && cancel.residual <= tol ? 0 : 4;
}

int cmd_knot(int argc, char** argv) {
  const ParsedArgs args =
      parse_args(argc, argv, 2, {"b", "eps", "c", "ci", "n", "output"}, {});
  if (args.positional.empty()) {
    throw usage_error("knot expects a subcommand: value, family, ors, symmetry");
  }
  const std::string sub = args.positional[0];

  if (sub == "value") {
    if (args.positional.size() != 2) throw usage_error("knot value expects A,B,...");
    bloch::ContinuedFraction cf{parse_csv(args.positional[1])};
    const bloch::TwoBridgeFraction fr = bloch::cf_value(cf);
    emit({{"coeffs", cf.coeffs},
          {"numerator", fr.numerator},
          {"denominator", fr.denominator}},
         args);
    return 0;
  }

  if (sub == "family") {
    if (args.values.count("n") == 0) throw usage_error("knot family needs --n");
    const long long n = to_ll(args.values.at("n"));
    const bloch::ContinuedFraction cf = bloch::ln_family(static_cast<int>(n));
    nlohmann::json doc = {{"n", n},
                          {"coeffs", cf.coeffs},
                          {"twist_number", bloch::ln_twist_number(static_cast<int>(n))}};
    // Members past n = 3 outgrow 64-bit evaluation.
    try {
      const bloch::TwoBridgeFraction fr = bloch::cf_value(cf);
      doc["numerator"] = fr.numerator;
      doc["denominator"] = fr.denominator;
    } catch (const std::overflow_error&) {
      doc["numerator"] = nullptr;
      doc["denominator"] = nullptr;
    }
    emit(doc, args);
    return 0;
  }

  if (sub == "ors") {
    if (args.values.count("b") == 0 || args.values.count("eps") == 0) {
      throw usage_error("knot ors needs --b and --eps");
    }
    bloch::ContinuedFraction b{parse_csv(args.values.at("b"))};
    std::vector<int> eps;
    for (long long v : parse_csv(args.values.at("eps"))) {
      eps.push_back(static_cast<int>(v));
    }
    const long long c =
        args.values.count("c") != 0 ? to_ll(args.values.at("c")) : 0;
    const std::vector<long long> cs =
        args.values.count("ci") != 0 ? parse_csv(args.values.at("ci"))
                                     : std::vector<long long>{};
    const bloch::OrsResult result = bloch::ors_substitute(b, c, cs, eps);
    nlohmann::json doc = {
        {"raw", result.raw.coeffs},
        {"degree", result.degree},
        {"condition", result.condition},
        {"equivalent_numerators", result.equivalent_numerators},
        {"note",
         "matching against a target fraction must use the equivalence class "
         "in equivalent_numerators, not the raw numerator alone"},
    };
    doc["collapsed"] =
        result.collapsed ? nlohmann::json(result.collapsed->coeffs) : nullptr;
    doc["bracket_value"] =
        result.bracket_value ? fraction_json(*result.bracket_value) : nullptr;
    doc["total_value"] =
        result.total_value ? fraction_json(*result.total_value) : nullptr;
    emit(doc, args);
    return 0;
  }

  if (sub == "symmetry") {
    if (args.positional.size() != 2) throw usage_error("knot symmetry expects A,B,...");
    bloch::ContinuedFraction cf{parse_csv(args.positional[1])};
    const bloch::SymmetryReport report = bloch::symmetry_and_cs(cf);
    nlohmann::json doc = {{"coeffs", cf.coeffs},
                          {"symmetric", report.symmetric},
                          {"q_squared_check", report.q_squared_check},
                          {"cs_vanishes", report.cs_vanishes}};
    // 64-bit evaluation can overflow where the exact check does not.
    try {
      const bloch::TwoBridgeFraction fr = bloch::cf_value(cf);
      doc["numerator"] = fr.numerator;
      doc["denominator"] = fr.denominator;
    } catch (const std::overflow_error&) {
      doc["numerator"] = nullptr;
      doc["denominator"] = nullptr;
    }
    emit(doc, args);
    return 0;
  }

  throw usage_error("unknown knot subcommand " + sub);
}

int cmd_reps(int argc, char** argv) {
  const ParsedArgs args =
      parse_args(argc, argv, 2, {"n", "samples", "seed", "tol", "output"}, {"timing"});
  if (args.positional.empty()) {
    throw usage_error("reps expects a subcommand: table or check");
  }
  const std::string sub = args.positional[0];

  if (sub == "table") {
    nlohmann::json rows = nlohmann::json::array();
    for (const bloch::RepTableRow& row : bloch::rep_table()) {
      rows.push_back({{"name", row.rep.name()},
                      {"dimension", row.rep.dimension()},
                      {"volume_multiplier", row.mult.vol_mult},
                      {"cs_multiplier", row.mult.cs_mult}});
    }
    emit({{"rows", rows}}, args);
    return 0;
  }

  if (sub == "check") {
    int lo = 2;
    int hi = 6;
    if (auto it = args.values.find("n"); it != args.values.end()) {
      const std::string& range = it->second;
      const size_t dots = range.find("..");
      if (dots == std::string::npos) {
        lo = hi = static_cast<int>(to_ll(range));
      } else {
        lo = static_cast<int>(to_ll(range.substr(0, dots)));
        hi = static_cast<int>(to_ll(range.substr(dots + 2)));
      }
    }
    const bloch::RunConfig cfg = config_from(args);
    const bloch::VerificationReport report = bloch::run_reps_range(cfg, lo, hi);
    emit(bloch::report_to_json(report, args.flags.count("timing") != 0), args);
    return report.passed() ? 0 : 4;
  }

  throw usage_error("unknown reps subcommand " + sub);
}

int dispatch(int argc, char** argv) {
  if (argc < 2) {
    print_usage(std::cerr);
    return 2;
  }
  const std::string command = argv[1];
  if (command == "help" || command == "--help") {
    print_usage(std::cout);
    return 0;
  }
  if (command == "verify") return cmd_verify(argc, argv);
  if (command == "class") return cmd_class(argc, argv);
  if (command == "knot") return cmd_knot(argc, argv);
  if (command == "reps") return cmd_reps(argc, argv);
  throw usage_error("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const usage_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    print_usage(std::cerr);
    return 2;
  } catch (const io_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const bloch::load_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const nlohmann::json::parse_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const bloch::precondition_error& ex) {
    std::cerr << "precondition failed: " << ex.what() << "\n";
    return 3;
  } catch (const bloch::kernel_domain_error& ex) {
    std::cerr << "precondition failed: " << ex.what() << "\n";
    return 3;
  } catch (const std::overflow_error& ex) {
    std::cerr << "precondition failed: " << ex.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
