#include "oscdict/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oscdict/error.hpp"

namespace oscdict {

namespace {

// Below this ratio of smallest to largest |R_kk| the support is treated as
// linearly dependent.
constexpr double kConditionFloor = 1e-10;

Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& a, const Signal& f) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  const auto diag = qr.matrixR().diagonal().cwiseAbs();
  if (diag.size() > 0 && diag.minCoeff() <= kConditionFloor * diag.maxCoeff())
    throw RecoveryError("ill-conditioned support");
  return qr.solve(f);
}

Eigen::MatrixXcd gather(const Eigen::MatrixXcd& atoms,
                        const std::vector<Index>& support) {
  Eigen::MatrixXcd out(atoms.rows(), static_cast<Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k)
    out.col(static_cast<Index>(k)) = atoms.col(support[k]);
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())) - 1);
  return values[std::min(k, values.size() - 1)];
}

std::string_view algorithm_name(RecoveryAlgorithm a) {
  return a == RecoveryAlgorithm::omp ? "omp" : "thresholding";
}

}  // namespace

Signal synthesize(const Eigen::MatrixXcd& atoms,
                  const SparseRepresentation& rep) {
  if (rep.support.size() != rep.coefficients.size())
    throw InvalidInput("synthesize: support and coefficients differ in size");
  Signal out = Signal::Zero(atoms.rows());
  for (std::size_t k = 0; k < rep.support.size(); ++k) {
    const Index i = rep.support[k];
    if (i < 0 || i >= atoms.cols())
      throw InvalidInput("synthesize: atom index out of range");
    out += rep.coefficients[k] * atoms.col(i);
  }
  return out;
}

Signal synthesize(const Dictionary& dict, const SparseRepresentation& rep) {
  return synthesize(dict.atoms, rep);
}

double default_residual_tol(const Signal& f) { return 1e-9 * f.norm(); }

SparseRepresentation omp(const Eigen::MatrixXcd& atoms, const Signal& f,
                         Index max_support, double residual_tol) {
  if (max_support < 1) throw InvalidInput("omp: max_support must be >= 1");
  if (atoms.cols() == 0) throw InvalidInput("omp: empty dictionary");
  if (atoms.rows() != f.size()) throw InvalidInput("omp: length mismatch");

  SparseRepresentation rep;
  Signal residual = f;
  rep.residual_norm = residual.norm();
  rep.residual_history.push_back(rep.residual_norm);
  std::vector<char> selected(static_cast<std::size_t>(atoms.cols()), 0);
  Eigen::VectorXcd coeffs;

  while (rep.residual_norm > residual_tol &&
         static_cast<Index>(rep.support.size()) < max_support &&
         static_cast<Index>(rep.support.size()) < atoms.cols()) {
    const Eigen::VectorXd corr = (atoms.adjoint() * residual).cwiseAbs();
    Index best = -1;
    for (Index i = 0; i < corr.size(); ++i) {
      if (selected[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || corr(i) > corr(best)) best = i;
    }
    selected[static_cast<std::size_t>(best)] = 1;
    rep.support.push_back(best);

    const Eigen::MatrixXcd sub = gather(atoms, rep.support);
    coeffs = least_squares(sub, f);
    residual = f - sub * coeffs;
    rep.residual_norm = residual.norm();
    rep.residual_history.push_back(rep.residual_norm);
  }
  rep.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  return rep;
}

SparseRepresentation thresholding(const Eigen::MatrixXcd& atoms,
                                  const Signal& f, Index max_support) {
  if (max_support < 1) throw InvalidInput("thresholding: max_support >= 1");
  if (atoms.rows() != f.size())
    throw InvalidInput("thresholding: length mismatch");
  SparseRepresentation rep;
  rep.residual_history.push_back(f.norm());
  if (f.norm() == 0) return rep;
  const Eigen::VectorXd corr = (atoms.adjoint() * f).cwiseAbs();
  std::vector<Index> order(static_cast<std::size_t>(corr.size()));
  for (Index i = 0; i < corr.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  const auto k = static_cast<std::size_t>(std::min(max_support, corr.size()));
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), [&](Index a, Index b) {
                      return corr(a) > corr(b) || (corr(a) == corr(b) && a < b);
                    });
  rep.support.assign(order.begin(), order.begin() + static_cast<long>(k));
  const Eigen::MatrixXcd sub = gather(atoms, rep.support);
  const Eigen::VectorXcd coeffs = least_squares(sub, f);
  rep.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  rep.residual_norm = (f - sub * coeffs).norm();
  rep.residual_history.push_back(rep.residual_norm);
  return rep;
}

RecoveryReport recovery_experiment(const Dictionary& dict, Index sparsity,
                                   Index trials, std::uint64_t seed,
                                   RecoveryAlgorithm algorithm) {
  if (sparsity < 1 || sparsity > dict.size())
    throw InvalidInput("recovery_experiment: sparsity out of range");
  if (trials < 0) throw InvalidInput("recovery_experiment: negative trials");
  RecoveryReport report;
  report.prime = dict.prime;
  report.kind = dict.kind;
  report.algorithm = algorithm;
  report.sparsity = sparsity;
  report.trials = trials;
  report.seed = seed;

  std::vector<double> errors;
  const auto n = static_cast<std::uint64_t>(dict.size());
  for (Index t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::set<Index> chosen;
    while (static_cast<Index>(chosen.size()) < sparsity)
      chosen.insert(static_cast<Index>(rng() % n));

    SparseRepresentation truth;
    truth.support.assign(chosen.begin(), chosen.end());
    for (std::size_t k = 0; k < truth.support.size(); ++k)
      truth.coefficients.push_back(
          std::polar(1.0, 2 * std::numbers::pi * uniform01(rng)));
    const Signal f = synthesize(dict, truth);

    SparseRepresentation got;
    try {
      got = algorithm == RecoveryAlgorithm::omp
                ? omp(dict.atoms, f, sparsity, default_residual_tol(f))
                : thresholding(dict.atoms, f, sparsity);
    } catch (const RecoveryError&) {
      ++report.failures;
      continue;
    }

    std::vector<std::pair<Index, Complex>> found;
    for (std::size_t k = 0; k < got.support.size(); ++k)
      found.emplace_back(got.support[k], got.coefficients[k]);
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    bool match = found.size() == truth.support.size();
    double err = 0;
    for (std::size_t k = 0; match && k < found.size(); ++k) {
      match = found[k].first == truth.support[k];
      err = std::max(err, std::abs(found[k].second - truth.coefficients[k]));
    }
    if (match) {
      ++report.successes;
      errors.push_back(err);
    }
  }
  report.success_rate =
      trials == 0 ? 0 : static_cast<double>(report.successes) /
                            static_cast<double>(trials);
  report.error_median = quantile(errors, 0.5);
  report.error_p90 = quantile(errors, 0.9);
  report.error_max = errors.empty() ? 0 : *std::max_element(errors.begin(),
                                                            errors.end());
  return report;
}

std::string recovery_json(const RecoveryReport& r) {
  nlohmann::ordered_json j;
  j["prime"] = r.prime;
  j["kind"] = std::string(kind_name(r.kind));
  j["algorithm"] = std::string(algorithm_name(r.algorithm));
  j["sparsity"] = r.sparsity;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["successes"] = r.successes;
  j["success_rate"] = r.success_rate;
  j["failures"] = r.failures;
  j["coefficient_error"] = {{"median", r.error_median},
                            {"p90", r.error_p90},
                            {"max", r.error_max}};
  return j.dump(2);
}

std::string recovery_csv(const RecoveryReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "prime,kind,algorithm,sparsity,trials,seed,successes,success_rate,"
        "failures,error_median,error_p90,error_max\n"
     << r.prime << ',' << kind_name(r.kind) << ',' << algorithm_name(r.algorithm)
     << ',' << r.sparsity << ',' << r.trials << ',' << r.seed << ','
     << r.successes << ',' << r.success_rate << ',' << r.failures << ','
     << r.error_median << ',' << r.error_p90 << ',' << r.error_max << '\n';
  return os.str();
}

}  // namespace oscdict
