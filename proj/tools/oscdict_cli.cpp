// oscdict: build, audit and exercise the dictionaries from the command line.
//
// Exit codes: 0 ok, 1 bound or invariant violation, 2 bad input, 3 I/O,
// 4 corrupt data, 5 recovery failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscdict/analysis.hpp"
#include "oscdict/dictionary.hpp"
#include "oscdict/error.hpp"
#include "oscdict/ff.hpp"
#include "oscdict/io.hpp"
#include "oscdict/selftest.hpp"
#include "oscdict/sparse.hpp"

using namespace oscdict;

namespace {

enum Exit { kOk = 0, kViolation = 1, kBadInput = 2, kIo = 3, kCorrupt = 4, kRecovery = 5 };

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_file_atomic(out, text);
}

std::uint32_t checked_prime(std::int64_t p) {
  if (p < 0 || p > (std::int64_t{1} << 20))
    throw InvalidInput("prime out of range: " + std::to_string(p));
  return static_cast<std::uint32_t>(FpField(p).modulus());
}

struct BuildArgs {
  std::int64_t prime = 0;
  std::string kind = "heisenberg";
  std::string out;
};

int cmd_build(const BuildArgs& a) {
  const FpField field(checked_prime(a.prime));
  const DictionaryKind kind = parse_kind(a.kind);
  BuildStats stats;
  const auto start = std::chrono::steady_clock::now();
  const Dictionary dict = build_dictionary(kind, field, &stats);
  const std::chrono::duration<double> build_time =
      std::chrono::steady_clock::now() - start;
  const Manifest m = write_dictionary(a.out, dict);

  std::cout << "kind                " << kind_name(kind) << '\n'
            << "prime               " << dict.prime << '\n'
            << "atoms               " << dict.size() << '\n'
            << "groups              " << dict.group_count() << '\n'
            << "eigendecompositions " << stats.eigendecompositions << '\n'
            << "fourier products    " << stats.fourier_products << '\n'
            << "diagonal passes     " << stats.diagonal_passes << '\n'
            << "build seconds       " << std::fixed << std::setprecision(3)
            << build_time.count() << '\n'
            << "blob sha256         " << m.blob_sha256 << '\n'
            << "written to          " << a.out << '\n';
  return kOk;
}

struct CoherenceArgs {
  std::string dict;
  std::string mode = "auto";
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  bool shifts = false;
  std::string out;
  std::string format = "json";
};

int cmd_coherence(const CoherenceArgs& a) {
  const Dictionary dict = load_dictionary(a.dict);
  const auto n = static_cast<std::uint64_t>(dict.size());
  std::uint64_t pairs = n * (n - 1) / 2;
  if (a.shifts) pairs = n * n * (std::uint64_t{dict.prime} * dict.prime - 1);

  CoherenceMode mode;
  if (a.mode == "exhaustive")
    mode = CoherenceMode::exhaustive();
  else if (a.mode == "sampled")
    mode = CoherenceMode::sampled(a.samples, a.seed);
  else
    mode = CoherenceMode::automatic(pairs, a.seed);
  if (mode.kind == CoherenceMode::Kind::sampled) mode.samples = a.samples;

  const CoherenceReport r =
      a.shifts ? shift_coherence(dict, mode) : coherence(dict, mode);
  if (a.format == "text")
    emit(report_text(r), a.out);
  else if (a.format == "csv")
    emit(histogram_csv(r), a.out);
  else
    emit(report_json(r) + "\n", a.out);
  return r.bound_holds || r.bound_vacuous ? kOk : kViolation;
}

struct RecoverArgs {
  std::string dict;
  std::string signal;
  bool experiment = false;
  Index sparsity = 0;
  Index trials = 100;
  std::uint64_t seed = 0;
  std::string algorithm = "omp";
  std::optional<double> residual_tol;
  std::string out;
  std::string format = "text";
};

RecoveryAlgorithm parse_algorithm(const std::string& s) {
  if (s == "omp") return RecoveryAlgorithm::omp;
  if (s == "thresholding") return RecoveryAlgorithm::thresholding;
  throw InvalidInput("unknown algorithm: " + s);
}

std::string representation_text(const SparseRepresentation& rep) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t k = 0; k < rep.support.size(); ++k)
    os << rep.support[k] << ' ' << rep.coefficients[k].real() << ' '
       << rep.coefficients[k].imag() << '\n';
  return os.str();
}

std::string representation_json(const SparseRepresentation& rep) {
  nlohmann::ordered_json j;
  j["support"] = rep.support;
  auto& coeffs = j["coefficients"] = nlohmann::ordered_json::array();
  for (const Complex& c : rep.coefficients) coeffs.push_back({c.real(), c.imag()});
  j["residual_norm"] = rep.residual_norm;
  j["residual_history"] = rep.residual_history;
  return j.dump(2) + "\n";
}

int cmd_recover(const RecoverArgs& a) {
  const Dictionary dict = load_dictionary(a.dict);
  const RecoveryAlgorithm algorithm = parse_algorithm(a.algorithm);

  if (a.experiment) {
    if (a.sparsity < 1) throw InvalidInput("--sparsity must be positive");
    if (a.trials < 1) throw InvalidInput("--trials must be positive");
    const RecoveryReport r =
        recovery_experiment(dict, a.sparsity, a.trials, a.seed, algorithm);
    if (a.format == "csv")
      emit(recovery_csv(r), a.out);
    else
      emit(recovery_json(r) + "\n", a.out);
    return kOk;
  }

  if (a.signal.empty()) throw InvalidInput("need --signal or --experiment");
  std::uint32_t prime = 0;
  const Signal f = read_signal(a.signal, &prime);
  if (prime != dict.prime)
    throw InvalidInput("signal prime " + std::to_string(prime) +
                       " does not match dictionary prime " +
                       std::to_string(dict.prime));
  const Index k = a.sparsity > 0 ? a.sparsity : static_cast<Index>(dict.prime);
  const SparseRepresentation rep =
      algorithm == RecoveryAlgorithm::omp
          ? omp(dict.atoms, f, k, a.residual_tol.value_or(default_residual_tol(f)))
          : thresholding(dict.atoms, f, k);
  emit(a.format == "json" ? representation_json(rep) : representation_text(rep),
       a.out);
  return kOk;
}

struct SynthesizeArgs {
  std::string dict;
  std::vector<std::string> atoms;
  std::string out;
};

// "index[:re[:im]]"
std::pair<Index, Complex> parse_term(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty() || parts.size() > 3) throw InvalidInput("bad atom term: " + s);
  try {
    const Index idx = std::stoll(parts[0]);
    const double re = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
    const double im = parts.size() > 2 ? std::stod(parts[2]) : 0.0;
    return {idx, {re, im}};
  } catch (const std::logic_error&) {
    throw InvalidInput("bad atom term: " + s);
  }
}

int cmd_synthesize(const SynthesizeArgs& a) {
  const Dictionary dict = load_dictionary(a.dict);
  SparseRepresentation rep;
  for (const auto& term : a.atoms) {
    const auto [idx, c] = parse_term(term);
    rep.support.push_back(idx);
    rep.coefficients.push_back(c);
  }
  write_signal(a.out, synthesize(dict, rep), dict.prime);
  return kOk;
}

int cmd_selftest(std::int64_t prime, std::uint64_t seed) {
  const FpField field(checked_prime(prime));
  const auto checks = run_selftest(field, seed);
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  bool ok = true;
  for (const auto& c : checks) {
    ok &= c.passed;
    std::cout << (c.passed ? "PASS  " : "FAIL  ") << std::left
              << std::setw(static_cast<int>(width) + 2) << c.name << std::right
              << std::fixed << std::setprecision(3) << std::setw(8) << c.seconds
              << "s  " << c.detail << '\n';
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << " (p = "
            << field.modulus() << ")\n";
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic incoherent dictionaries over prime fields"};
  app.require_subcommand(1);

  const std::vector<std::string> kinds = {"heisenberg", "oscillator-split",
                                          "oscillator-nonsplit", "oscillator",
                                          "extended"};

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Construct a dictionary and write it to disk");
  build_cmd->add_option("--prime,-p", build.prime, "Field size p (prime, >= 5)")->required();
  build_cmd->add_option("--kind,-k", build.kind, "Dictionary kind")
      ->check(CLI::IsMember(kinds));
  build_cmd->add_option("--out,-o", build.out, "Output directory")->required();

  CoherenceArgs coh;
  auto* coh_cmd = app.add_subcommand("coherence", "Measure coherence against the applicable bound");
  coh_cmd->add_option("dict", coh.dict, "Dictionary directory")->required();
  coh_cmd->add_option("--mode", coh.mode)
      ->check(CLI::IsMember({"exhaustive", "sampled", "auto"}));
  coh_cmd->add_option("--samples", coh.samples, "Pairs to draw in sampled mode");
  coh_cmd->add_option("--seed", coh.seed);
  coh_cmd->add_flag("--shifts", coh.shifts,
                    "Scan |<phi, pi(v) phi'>| over nonzero shifts v instead");
  coh_cmd->add_option("--out,-o", coh.out, "Report file (default stdout)");
  coh_cmd->add_option("--format", coh.format)
      ->check(CLI::IsMember({"json", "csv", "text"}));

  RecoverArgs rec;
  auto* rec_cmd = app.add_subcommand("recover", "Sparse recovery of a signal, or a seeded experiment");
  rec_cmd->add_option("--dict,-d", rec.dict, "Dictionary directory")->required();
  rec_cmd->add_option("--signal,-s", rec.signal, "Signal file");
  rec_cmd->add_flag("--experiment", rec.experiment);
  rec_cmd->add_option("--sparsity", rec.sparsity,
                      "Support size (experiment) or support cap (signal)");
  rec_cmd->add_option("--trials", rec.trials);
  rec_cmd->add_option("--seed", rec.seed);
  rec_cmd->add_option("--algorithm", rec.algorithm)
      ->check(CLI::IsMember({"omp", "thresholding"}));
  rec_cmd->add_option("--residual-tol", rec.residual_tol);
  rec_cmd->add_option("--out,-o", rec.out);
  rec_cmd->add_option("--format", rec.format)
      ->check(CLI::IsMember({"json", "csv", "text"}));

  SynthesizeArgs syn;
  auto* syn_cmd = app.add_subcommand("synthesize", "Write a signal built from dictionary atoms");
  syn_cmd->add_option("--dict,-d", syn.dict)->required();
  syn_cmd->add_option("--atom,-a", syn.atoms, "index[:re[:im]] (repeatable)")->required();
  syn_cmd->add_option("--out,-o", syn.out)->required();

  std::int64_t st_prime = 0;
  std::uint64_t st_seed = 0;
  auto* st_cmd = app.add_subcommand("selftest", "Run the invariant checks at one prime");
  st_cmd->add_option("--prime,-p", st_prime)->required();
  st_cmd->add_option("--seed", st_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*build_cmd) return cmd_build(build);
    if (*coh_cmd) return cmd_coherence(coh);
    if (*rec_cmd) return cmd_recover(rec);
    if (*syn_cmd) return cmd_synthesize(syn);
    if (*st_cmd) return cmd_selftest(st_prime, st_seed);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const CorruptData& e) {
    std::cerr << "corrupt data: " << e.what() << '\n';
    return kCorrupt;
  } catch (const RecoveryError& e) {
    std::cerr << "recovery failed: " << e.what() << '\n';
    return kRecovery;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kViolation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kBadInput;
}
