#include "oscdict/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oscdict/error.hpp"
#include "oscdict/heisenberg.hpp"

namespace oscdict {

namespace {

constexpr Index kGramBlock = 512;

// Running max + histogram over |inner products|.
class CoherenceAccumulator {
 public:
  explicit CoherenceAccumulator(CoherenceReport& report) : report_(report) {
    report_.histogram.assign(kHistogramBins, 0);
  }

  void add(double value, Index i, Index j) {
    ++report_.pairs_evaluated;
    const int bin = std::min(kHistogramBins - 1,
                             static_cast<int>(value * kHistogramBins));
    ++report_.histogram[static_cast<std::size_t>(std::max(bin, 0))];
    if (value > report_.max_coherence || report_.argmax_first < 0) {
      report_.max_coherence = value;
      report_.argmax_first = i;
      report_.argmax_second = j;
    }
  }

 private:
  CoherenceReport& report_;
};

CoherenceReport start_report(const Dictionary& dict, const CoherenceMode& mode) {
  if (dict.size() < 2)
    throw InvalidInput("coherence: dictionary needs at least two atoms");
  CoherenceReport r;
  r.prime = dict.prime;
  r.kind = dict.kind;
  r.mode = mode;
  r.bound = coherence_bound(dict.kind, dict.prime);
  r.bound_name =
      dict.kind == DictionaryKind::heisenberg ? "1/sqrt(p)" : "4/sqrt(p)";
  r.bound_vacuous = r.bound >= 1.0;
  double defect = 0;
  for (Index g = 0; g < dict.group_count(); ++g)
    defect = std::max(defect, verify_orthonormal(dict.group(g)));
  r.orthonormality_defect = defect;
  return r;
}

void finish_report(CoherenceReport& r) {
  r.bound_holds = r.max_coherence <= r.bound + kBoundSlack;
}

// Uniform index in [0, n); modulo reduction keeps the stream portable.
Index draw(std::mt19937_64& rng, Index n) {
  return static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
}

std::string mode_name(const CoherenceMode& m) {
  return m.kind == CoherenceMode::Kind::exhaustive ? "exhaustive" : "sampled";
}

}  // namespace

CoherenceMode CoherenceMode::automatic(std::uint64_t pair_count,
                                       std::uint64_t seed) {
  if (pair_count <= kExhaustivePairLimit) return exhaustive();
  return sampled(kDefaultSamples, seed);
}

double coherence_bound(DictionaryKind kind, std::uint32_t p) {
  const double root = std::sqrt(static_cast<double>(p));
  return kind == DictionaryKind::heisenberg ? 1.0 / root : 4.0 / root;
}

double verify_orthonormal(const Eigen::MatrixXcd& group) {
  if (group.cols() == 0) return 0;
  const Eigen::MatrixXcd gram = group.adjoint() * group;
  return max_norm(gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()));
}

CoherenceReport coherence(const Dictionary& dict, const CoherenceMode& mode) {
  CoherenceReport report = start_report(dict, mode);
  CoherenceAccumulator acc(report);
  const Index n = dict.size();
  const auto groups = dict.atom_groups();

  if (mode.kind == CoherenceMode::Kind::sampled) {
    // A single group has no cross-group pairs to draw.
    if (dict.group_count() < 2) {
      finish_report(report);
      return report;
    }
    std::mt19937_64 rng(mode.seed);
    for (std::uint64_t s = 0; s < mode.samples;) {
      const Index i = draw(rng, n);
      const Index j = draw(rng, n);
      if (groups[static_cast<std::size_t>(i)] ==
          groups[static_cast<std::size_t>(j)])
        continue;
      acc.add(std::abs(inner(dict.atoms.col(i), dict.atoms.col(j))),
              std::min(i, j), std::max(i, j));
      ++s;
    }
    finish_report(report);
    return report;
  }

  Eigen::MatrixXcd gram;
  for (Index i0 = 0; i0 < n; i0 += kGramBlock) {
    const Index rows = std::min(kGramBlock, n - i0);
    // gram(r, c) = <atom_{i0+c}, atom_{i0+r}>, magnitude is symmetric.
    gram.noalias() =
        dict.atoms.middleCols(i0, rows).adjoint() * dict.atoms.rightCols(n - i0);
    for (Index c = 0; c < gram.cols(); ++c) {
      const Index j = i0 + c;
      const Index gj = groups[static_cast<std::size_t>(j)];
      for (Index r = 0; r < rows && i0 + r < j; ++r) {
        const Index i = i0 + r;
        if (groups[static_cast<std::size_t>(i)] == gj) continue;
        acc.add(std::abs(gram(r, c)), i, j);
      }
    }
  }
  finish_report(report);
  return report;
}

CoherenceReport coherence_over_pairs(
    const Dictionary& dict, std::span<const std::pair<Index, Index>> pairs) {
  CoherenceReport report = start_report(
      dict, CoherenceMode::sampled(static_cast<std::uint64_t>(pairs.size()), 0));
  CoherenceAccumulator acc(report);
  const auto groups = dict.atom_groups();
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= dict.size() || j >= dict.size())
      throw InvalidInput("coherence_over_pairs: index out of range");
    if (groups[static_cast<std::size_t>(i)] ==
        groups[static_cast<std::size_t>(j)])
      continue;
    acc.add(std::abs(inner(dict.atoms.col(i), dict.atoms.col(j))),
            std::min(i, j), std::max(i, j));
  }
  finish_report(report);
  return report;
}

CoherenceReport shift_coherence(const Dictionary& dict,
                                const CoherenceMode& mode) {
  if (dict.kind == DictionaryKind::heisenberg ||
      dict.kind == DictionaryKind::extended)
    throw InvalidInput("shift_coherence: needs an oscillator dictionary");
  CoherenceReport report = start_report(dict, mode);
  report.shifted = true;
  CoherenceAccumulator acc(report);
  const std::uint32_t p = dict.prime;
  const auto lut = psi_table(p);
  const Index n = dict.size();
  double best = -1;

  auto record = [&](double value, Index i, Index j, std::uint32_t tau,
                    std::uint32_t w) {
    acc.add(value, i, j);
    if (value > best) {
      best = value;
      report.argmax_shift_tau = tau;
      report.argmax_shift_w = w;
    }
  };

  if (mode.kind == CoherenceMode::Kind::sampled) {
    std::mt19937_64 rng(mode.seed);
    const Index shifts = static_cast<Index>(p) * p;
    for (std::uint64_t s = 0; s < mode.samples;) {
      const Index i = draw(rng, n);
      const Index j = draw(rng, n);
      const Index v = draw(rng, shifts);
      if (v == 0) continue;
      const auto tau = static_cast<std::uint32_t>(v / p);
      const auto w = static_cast<std::uint32_t>(v % p);
      const Signal moved = apply_shift(
          PlanePoint{FpElement(tau, p), FpElement(w, p)}, dict.atoms.col(j), lut);
      record(std::abs(inner(dict.atoms.col(i), moved)), i, j, tau, w);
      ++s;
    }
    finish_report(report);
    return report;
  }

  Eigen::MatrixXcd moved(p, n);
  Eigen::MatrixXcd gram;
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      if (tau == 0 && w == 0) continue;
      const PlanePoint v{FpElement(tau, p), FpElement(w, p)};
      for (Index j = 0; j < n; ++j)
        moved.col(j) = apply_shift(v, dict.atoms.col(j), lut);
      for (Index i0 = 0; i0 < n; i0 += kGramBlock) {
        const Index rows = std::min(kGramBlock, n - i0);
        // gram(r, j) = <pi(v) atom_j, atom_{i0+r}>
        gram.noalias() = dict.atoms.middleCols(i0, rows).adjoint() * moved;
        for (Index j = 0; j < n; ++j)
          for (Index r = 0; r < rows; ++r)
            record(std::abs(gram(r, j)), i0 + r, j, tau, w);
      }
    }
  }
  finish_report(report);
  return report;
}

double babel_profile(const Dictionary& dict, Index k) {
  const Index n = dict.size();
  if (k < 1 || k >= n) throw InvalidInput("babel_profile: k out of range");
  double best = 0;
  Eigen::MatrixXd mags;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Index i0 = 0; i0 < n; i0 += kGramBlock) {
    const Index rows = std::min(kGramBlock, n - i0);
    mags = (dict.atoms.middleCols(i0, rows).adjoint() * dict.atoms).cwiseAbs();
    for (Index r = 0; r < rows; ++r) {
      for (Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = mags(r, j);
      row[static_cast<std::size_t>(i0 + r)] = -1;  // exclude self
      std::partial_sort(row.begin(), row.begin() + k, row.end(),
                        std::greater<>());
      double sum = 0;
      for (Index t = 0; t < k; ++t) sum += row[static_cast<std::size_t>(t)];
      best = std::max(best, sum);
    }
  }
  return best;
}

std::string report_json(const CoherenceReport& r) {
  nlohmann::ordered_json j;
  j["prime"] = r.prime;
  j["kind"] = std::string(kind_name(r.kind));
  j["mode"] = mode_name(r.mode);
  if (r.mode.kind == CoherenceMode::Kind::sampled) {
    j["seed"] = r.mode.seed;
    j["samples"] = r.mode.samples;
  }
  j["shifted"] = r.shifted;
  if (r.pairs_evaluated > 0) {
    j["max_coherence"] = r.max_coherence;
    j["argmax"] = {r.argmax_first, r.argmax_second};
  } else {
    j["max_coherence"] = nullptr;
    j["argmax"] = nullptr;
  }
  if (r.shifted) j["argmax_shift"] = {r.argmax_shift_tau, r.argmax_shift_w};
  j["bound"] = r.bound;
  j["bound_name"] = r.bound_name;
  j["bound_holds"] = r.bound_holds;
  j["bound_vacuous"] = r.bound_vacuous;
  j["orthonormality_defect"] = r.orthonormality_defect;
  j["pairs_evaluated"] = r.pairs_evaluated;
  j["histogram"] = r.histogram;
  return j.dump(2);
}

std::string report_text(const CoherenceReport& r) {
  std::ostringstream os;
  os << std::left << std::setprecision(12);
  auto line = [&](const char* key, const auto& value) {
    os << std::setw(24) << key << value << '\n';
  };
  line("prime", r.prime);
  line("kind", kind_name(r.kind));
  line("mode", mode_name(r.mode));
  if (r.mode.kind == CoherenceMode::Kind::sampled) {
    line("seed", r.mode.seed);
    line("samples", r.mode.samples);
  }
  line("shifted", r.shifted ? "yes" : "no");
  line("max_coherence", r.max_coherence);
  line("argmax",
       std::to_string(r.argmax_first) + " " + std::to_string(r.argmax_second));
  if (r.shifted)
    line("argmax_shift", std::to_string(r.argmax_shift_tau) + " " +
                             std::to_string(r.argmax_shift_w));
  line("bound", r.bound_name + " = " + std::to_string(r.bound));
  line("bound_holds", r.bound_holds ? "yes" : "no");
  line("bound_vacuous", r.bound_vacuous ? "yes" : "no");
  line("orthonormality_defect", r.orthonormality_defect);
  line("pairs_evaluated", r.pairs_evaluated);
  return os.str();
}

std::string histogram_csv(const CoherenceReport& r) {
  std::ostringstream os;
  os << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < r.histogram.size(); ++b) {
    os << static_cast<double>(b) / kHistogramBins << ','
       << static_cast<double>(b + 1) / kHistogramBins << ',' << r.histogram[b]
       << '\n';
  }
  return os.str();
}

}  // namespace oscdict
