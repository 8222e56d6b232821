#pragma once

// Gram-matrix analytics over dictionaries: coherence, orthonormality audits
// and the babel function.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oscdict/dictionary.hpp"

namespace oscdict {

inline constexpr std::uint64_t kExhaustivePairLimit = 50'000'000;
inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr int kHistogramBins = 20;
/// Slack applied when comparing a measured coherence against its bound.
inline constexpr double kBoundSlack = 1e-9;

struct CoherenceMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;

  static CoherenceMode exhaustive() { return {}; }
  static CoherenceMode sampled(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::sampled, samples, seed};
  }
  /// Exhaustive when the pair count is at most kExhaustivePairLimit.
  static CoherenceMode automatic(std::uint64_t pair_count, std::uint64_t seed);
};

struct CoherenceReport {
  std::uint32_t prime = 0;
  DictionaryKind kind = DictionaryKind::heisenberg;
  CoherenceMode mode;
  /// Largest |<phi, phi'>| over evaluated cross-group pairs.
  double max_coherence = 0;
  Index argmax_first = -1;
  Index argmax_second = -1;
  /// Set for translate scans: the shift applied to the second atom.
  bool shifted = false;
  std::uint32_t argmax_shift_tau = 0;
  std::uint32_t argmax_shift_w = 0;
  /// 1/sqrt(p) for the Heisenberg dictionary, 4/sqrt(p) otherwise.
  double bound = 0;
  std::string bound_name;
  bool bound_holds = false;
  /// A bound >= 1 says nothing about unit vectors.
  bool bound_vacuous = false;
  /// Max |<phi_i, phi_j> - delta_ij| within groups.
  double orthonormality_defect = 0;
  std::uint64_t pairs_evaluated = 0;
  /// Counts of |<phi, phi'>| in kHistogramBins equal buckets over [0, 1].
  std::vector<std::uint64_t> histogram;
};

double coherence_bound(DictionaryKind kind, std::uint32_t p);

/// Cross-group coherence. Within-group pairs only feed the orthonormality
/// defect. Throws InvalidInput for fewer than two atoms.
CoherenceReport coherence(const Dictionary& dict, const CoherenceMode& mode);

/// Cross-group coherence restricted to the given (i, j) pairs; same-group
/// pairs are skipped.
CoherenceReport coherence_over_pairs(
    const Dictionary& dict, std::span<const std::pair<Index, Index>> pairs);

/// Translate stability: max |<phi, pi(v) phi'>| over atoms phi, phi' of an
/// oscillator dictionary (equal atoms included) and shifts v != 0.
CoherenceReport shift_coherence(const Dictionary& dict,
                                const CoherenceMode& mode);

/// max |<phi_i, phi_j> - delta_ij| over the columns of `group`.
double verify_orthonormal(const Eigen::MatrixXcd& group);

/// Max over atoms of the sum of the k largest |<phi, phi'>| to other atoms.
double babel_profile(const Dictionary& dict, Index k);

std::string report_json(const CoherenceReport& report);
std::string report_text(const CoherenceReport& report);
std::string histogram_csv(const CoherenceReport& report);

}  // namespace oscdict
