#pragma once

// Sparse synthesis and greedy recovery over a dictionary.

#include <cstdint>
#include <string>
#include <vector>

#include "oscdict/dictionary.hpp"
#include "oscdict/linalg.hpp"

namespace oscdict {

struct SparseRepresentation {
  std::vector<Index> support;
  std::vector<Complex> coefficients;
  double residual_norm = 0;
  /// Residual norm after each greedy step (entry 0 is ||f||).
  std::vector<double> residual_history;
};

/// sum_k coefficients[k] * atoms.col(support[k]).
Signal synthesize(const Eigen::MatrixXcd& atoms, const SparseRepresentation& rep);
Signal synthesize(const Dictionary& dict, const SparseRepresentation& rep);

/// Default stopping tolerance: 1e-9 ||f||.
double default_residual_tol(const Signal& f);

/// Orthogonal matching pursuit. Each step picks the atom with the largest
/// |<residual, phi>| (lowest index on ties), refits all coefficients by least
/// squares and stops once the residual is at most `residual_tol` or the
/// support holds `max_support` atoms. Throws RecoveryError("ill-conditioned
/// support") when the selected atoms are numerically dependent.
SparseRepresentation omp(const Eigen::MatrixXcd& atoms, const Signal& f,
                         Index max_support, double residual_tol);

/// One-pass baseline: keep the `max_support` atoms most correlated with f
/// and fit them by least squares.
SparseRepresentation thresholding(const Eigen::MatrixXcd& atoms,
                                  const Signal& f, Index max_support);

enum class RecoveryAlgorithm { omp, thresholding };

struct RecoveryReport {
  std::uint32_t prime = 0;
  DictionaryKind kind = DictionaryKind::heisenberg;
  RecoveryAlgorithm algorithm = RecoveryAlgorithm::omp;
  Index sparsity = 0;
  Index trials = 0;
  std::uint64_t seed = 0;
  Index successes = 0;
  double success_rate = 0;
  /// Coefficient max-error over successful trials.
  double error_median = 0;
  double error_p90 = 0;
  double error_max = 0;
  /// Trials that raised RecoveryError.
  Index failures = 0;
};

/// Draws `trials` random supports of the given size with unit-modulus
/// random-phase coefficients, synthesizes, recovers, and tallies exact
/// support matches. Trial t uses an RNG seeded from (seed, t).
RecoveryReport recovery_experiment(
    const Dictionary& dict, Index sparsity, Index trials, std::uint64_t seed,
    RecoveryAlgorithm algorithm = RecoveryAlgorithm::omp);

std::string recovery_json(const RecoveryReport& report);
std::string recovery_csv(const RecoveryReport& report);

}  // namespace oscdict
