#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "oscdict/analysis.hpp"
#include "oscdict/error.hpp"
#include "oscdict/sparse.hpp"

using namespace oscdict;

TEST_SUITE("sparse") {

TEST_CASE("synthesis") {
  const Dictionary d = heisenberg_dictionary(FpField(7));
  CHECK(synthesize(d, {}).isZero());
  SparseRepresentation one{{3}, {Complex(1)}, 0, {}};
  CHECK(max_norm(synthesize(d, one) - d.atoms.col(3)) == 0);
  SparseRepresentation two{{0, 1}, {Complex(1), Complex(1)}, 0, {}};
  CHECK(synthesize(d, two).norm() == doctest::Approx(std::sqrt(2.0)));
  SparseRepresentation bad{{56}, {Complex(1)}, 0, {}};
  CHECK_THROWS_AS(synthesize(d, bad), InvalidInput);
}

TEST_CASE("omp on trivial signals") {
  const Dictionary d = heisenberg_dictionary(FpField(11));
  for (Index j : {0, 17, 131}) {
    const Signal f = Complex(0.3, -2.0) * d.atoms.col(j);
    const auto rep = omp(d.atoms, f, 5, default_residual_tol(f));
    REQUIRE(rep.support.size() == 1);
    CHECK(rep.support[0] == j);
    CHECK(std::abs(rep.coefficients[0] - Complex(0.3, -2.0)) < 1e-12);
    CHECK(rep.residual_norm <= 1e-10);
  }
  const auto zero = omp(d.atoms, Signal::Zero(11), 5, 0.0);
  CHECK(zero.support.empty());
  CHECK(zero.residual_norm == 0);
  CHECK_THROWS_AS(omp(d.atoms, Signal::Zero(7), 5, 0.0), InvalidInput);
}

TEST_CASE("omp invariants") {
  const Dictionary d = oscillator_dictionary(FpField(13));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Signal f = Signal::Random(13);
    const auto rep = omp(d.atoms, f, 13, default_residual_tol(f));
    // residual orthogonal to every selected atom
    SparseRepresentation fit = rep;
    const Signal residual = f - synthesize(d, fit);
    for (Index j : rep.support) CHECK(std::abs(inner(residual, Signal(d.atoms.col(j)))) <= 1e-8);
    for (std::size_t k = 1; k < rep.residual_history.size(); ++k)
      CHECK(rep.residual_history[k] <= rep.residual_history[k - 1] + 1e-12);
    CHECK(rep.residual_history.front() == doctest::Approx(f.norm()));
  }
}

TEST_CASE("omp reports dependent supports") {
  Eigen::MatrixXcd atoms(3, 3);
  atoms << 1, 0, 1, 0, 1, 1, 0, 0, 0;
  atoms.col(2) /= std::sqrt(2.0);
  Signal f(3);
  f << 1, 1.0000001, 0.5;
  // the third pick lies in the span of the first two
  CHECK_THROWS_AS(omp(atoms, f, 3, 0.0), RecoveryError);
}

TEST_CASE("thresholding") {
  const Dictionary d = heisenberg_dictionary(FpField(11));
  const Signal f = d.atoms.col(40) * 2.0;
  const auto rep = thresholding(d.atoms, f, 1);
  REQUIRE(rep.support.size() == 1);
  CHECK(rep.support[0] == 40);
  CHECK(rep.residual_norm < 1e-12);
}

TEST_CASE("experiment with one atom always succeeds") {
  for (auto kind : {DictionaryKind::heisenberg, DictionaryKind::oscillator}) {
    const Dictionary d = build_dictionary(kind, FpField(11));
    const auto r = recovery_experiment(d, 1, 50, 7);
    CHECK(r.success_rate == 1.0);
    CHECK(r.error_max <= 1e-8);
  }
}

TEST_CASE("experiment is reproducible and within the coherence regime") {
  const std::uint32_t p = 31;
  const Dictionary d = heisenberg_dictionary(FpField(p));
  const double mu = coherence(d, CoherenceMode::exhaustive()).max_coherence;
  // largest k with k < (1 + 1/mu) / 2
  const auto k = static_cast<Index>(std::ceil((1 + 1 / mu) / 2) - 1);
  CHECK(k == 3);
  const auto a = recovery_experiment(d, k, 100, 2024);
  const auto b = recovery_experiment(d, k, 100, 2024);
  CHECK(a.successes == b.successes);
  CHECK(a.error_max == b.error_max);
  CHECK(a.success_rate == 1.0);
  CHECK(a.error_max <= 1e-8);
  CHECK(a.failures == 0);
}

TEST_CASE("overcomplete sparsity only records a rate") {
  const Dictionary d = heisenberg_dictionary(FpField(7));
  const auto r = recovery_experiment(d, 7, 20, 1);
  CHECK(r.trials == 20);
  CHECK(r.successes + r.failures <= 20);
  CHECK(r.success_rate >= 0);
  CHECK(r.success_rate <= 1);
}

TEST_CASE("report formats") {
  const Dictionary d = heisenberg_dictionary(FpField(7));
  const auto r = recovery_experiment(d, 2, 10, 99);
  const auto j = nlohmann::json::parse(recovery_json(r));
  CHECK(j["seed"] == 99);
  CHECK(j["trials"] == 10);
  CHECK(j["algorithm"] == "omp");
  const std::string csv = recovery_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

}
