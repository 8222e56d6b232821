#pragma once

// Builders for the Heisenberg, oscillator (split / non-split) and extended
// oscillator dictionaries. A dictionary stores its atoms as the columns of a
// p x N matrix, partitioned into contiguous orthonormal groups (one per line
// or torus, or per (torus, shift) in the extended case).

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "oscdict/ff.hpp"
#include "oscdict/linalg.hpp"
#include "oscdict/symplectic.hpp"

namespace oscdict {

enum class DictionaryKind {
  heisenberg,
  oscillator_split,
  oscillator_nonsplit,
  oscillator,  // split followed by non-split
  extended,    // Heisenberg translates of a full oscillator dictionary
};

/// CLI spelling: heisenberg, oscillator-split, oscillator-nonsplit, ...
std::string_view kind_name(DictionaryKind kind);
/// Inverse of kind_name; throws InvalidInput on unknown names.
DictionaryKind parse_kind(std::string_view name);

struct AtomProvenance {
  /// Orthonormal group (line, torus, or torus x shift) of the atom.
  Index group = 0;
  /// Character index: the multiplicative-character exponent for split tori,
  /// the eigenvalue rank (by angle) for eigenvector-built groups.
  Index character = 0;
  std::uint32_t shift_tau = 0;
  std::uint32_t shift_w = 0;
  /// Index in the base dictionary; -1 unless extended.
  Index base_atom = -1;

  friend bool operator==(const AtomProvenance&,
                         const AtomProvenance&) = default;
};

struct Dictionary {
  DictionaryKind kind = DictionaryKind::heisenberg;
  std::uint32_t prime = 0;
  /// The field generator used for the standard torus.
  std::uint32_t generator = 0;
  /// p x N; column j is atom j.
  Eigen::MatrixXcd atoms;
  std::vector<AtomProvenance> provenance;
  /// Group g spans atoms [group_offsets[g], group_offsets[g+1]).
  std::vector<Index> group_offsets{0};

  Index size() const { return atoms.cols(); }
  Index group_count() const {
    return static_cast<Index>(group_offsets.size()) - 1;
  }
  auto group(Index g) const {
    return atoms.middleCols(group_offsets[g],
                            group_offsets[g + 1] - group_offsets[g]);
  }
  /// Group id of every atom.
  std::vector<Index> atom_groups() const;
};

/// Work counters reported by the builders.
struct BuildStats {
  std::uint64_t eigendecompositions = 0;
  /// Dense Fourier products (each p x p times p x k).
  std::uint64_t fourier_products = 0;
  /// O(p)-per-vector chirp, scaling or shift passes over a block.
  std::uint64_t diagonal_passes = 0;
  std::uint64_t groups = 0;
};

/// Cardinality formulas: p(p+1), p(p+1)(p-2)/2, p^2(p-1)/2, their split+non-split
/// sum, and p^2 times that sum for the extended dictionary.
std::uint64_t expected_size(DictionaryKind kind, std::uint64_t p);
/// Number of orthonormal groups for each kind.
std::uint64_t expected_groups(DictionaryKind kind, std::uint64_t p);

/// Direction of the g-th line in the Heisenberg enumeration order:
/// (1, 0) first, then (s, 1) for s = 0..p-1.
PlanePoint line_direction(const FpField& field, Index g);

Dictionary heisenberg_dictionary(const FpField& field,
                                 BuildStats* stats = nullptr);

/// Explicit basis of the standard torus: for each nontrivial character
/// chi_k(r^j) = exp(2 pi i jk / (p-1)), k = 1..p-2, the vector
/// chi_k(t)/sqrt(p-1) off zero and 0 at t = 0. Columns ordered by k.
Eigen::MatrixXcd standard_torus_basis(const FpField& field);

/// Eigendecomposition of rho(g_A) with its sigma-cluster (the unique
/// two-dimensional eigenspace) identified; throws NumericalError if the
/// spectrum does not have exactly one such cluster and p-2 simple ones.
struct StandardTorusSpectrum {
  EigenDecomposition decomposition;
  std::size_t sigma_cluster;
};
StandardTorusSpectrum standard_torus_spectrum(const FpField& field);

/// Streams the split oscillator systems rho(g) B_A, one per representative
/// g, in split_representatives order. Atoms are phase-normalized.
void for_each_split_system(
    const FpField& field,
    const std::function<void(Index group, const SL2Element& g,
                             const Eigen::MatrixXcd& atoms)>& fn,
    BuildStats* stats = nullptr);

Dictionary split_oscillator(const FpField& field, BuildStats* stats = nullptr);
Dictionary nonsplit_oscillator(const FpField& field,
                               BuildStats* stats = nullptr);
/// Split systems followed by non-split bases.
Dictionary oscillator_dictionary(const FpField& field,
                                 BuildStats* stats = nullptr);

/// All translates pi(tau, w, 0) phi of the base atoms. Atoms are ordered by
/// shift (tau outer, w inner) and then by base atom, so the zero-shift slice
/// reproduces the base. Requires an oscillator-kind base.
Dictionary extended_dictionary(const Dictionary& base,
                               BuildStats* stats = nullptr);

Dictionary build_dictionary(DictionaryKind kind, const FpField& field,
                            BuildStats* stats = nullptr);

}  // namespace oscdict
