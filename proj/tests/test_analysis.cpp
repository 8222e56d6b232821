#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "oscdict/analysis.hpp"
#include "oscdict/error.hpp"

using namespace oscdict;

namespace {

Dictionary single_basis(Index p) {
  Dictionary d;
  d.kind = DictionaryKind::oscillator_nonsplit;
  d.prime = static_cast<std::uint32_t>(p);
  d.atoms = Eigen::MatrixXcd::Identity(p, p);
  d.provenance.resize(static_cast<std::size_t>(p));
  d.group_offsets = {0, p};
  return d;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("bounds") {
  CHECK(coherence_bound(DictionaryKind::heisenberg, 7) == doctest::Approx(1 / std::sqrt(7.0)));
  CHECK(coherence_bound(DictionaryKind::oscillator, 17) == doctest::Approx(0.9701425));
}

TEST_CASE("heisenberg coherence is exactly 1/sqrt(p)") {
  for (std::uint32_t p : {7u, 11u}) {
    const auto r = coherence(heisenberg_dictionary(FpField(p)), CoherenceMode::exhaustive());
    CHECK(std::abs(r.max_coherence - 1 / std::sqrt(double(p))) <= 1e-10);
    CHECK(r.bound_holds);
    CHECK_FALSE(r.bound_vacuous);
    CHECK(r.orthonormality_defect <= 1e-10);
    const std::uint64_t n = std::uint64_t(p) * (p + 1);
    CHECK(r.pairs_evaluated == n * (n - 1) / 2 - (p + 1) * std::uint64_t(p) * (p - 1) / 2);
    std::uint64_t total = 0;
    for (auto c : r.histogram) total += c;
    CHECK(total == r.pairs_evaluated);
  }
}

TEST_CASE("oscillator coherence stays below 4/sqrt(p)") {
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const auto r = coherence(oscillator_dictionary(FpField(p)), CoherenceMode::exhaustive());
    CHECK(r.max_coherence <= 4 / std::sqrt(double(p)));
    CHECK(r.bound_holds);
    CHECK(r.bound_vacuous == (p < 17));
    CHECK(r.orthonormality_defect <= 1e-10);
  }
}

TEST_CASE("single basis has no cross pairs") {
  const Dictionary d = single_basis(5);
  const auto r = coherence(d, CoherenceMode::exhaustive());
  CHECK(r.pairs_evaluated == 0);
  CHECK(r.argmax_first == -1);
  CHECK(r.orthonormality_defect == 0);
  const auto s = coherence(d, CoherenceMode::sampled(100, 1));
  CHECK(s.pairs_evaluated == 0);
  CHECK(nlohmann::json::parse(report_json(r))["max_coherence"].is_null());
}

TEST_CASE("orthonormality audit") {
  CHECK(verify_orthonormal(Eigen::MatrixXcd::Identity(6, 6)) == 0);
  const Dictionary d = oscillator_dictionary(FpField(7));
  for (Index g = 0; g < d.group_count(); ++g) CHECK(verify_orthonormal(d.group(g)) <= 1e-10);
  Eigen::MatrixXcd dup = Eigen::MatrixXcd::Identity(4, 4);
  dup.col(3) = dup.col(0);
  CHECK(verify_orthonormal(dup) == doctest::Approx(1.0));
}

TEST_CASE("coherence ignores atom phases") {
  Dictionary d = oscillator_dictionary(FpField(7));
  const auto before = coherence(d, CoherenceMode::exhaustive());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
  for (Index j = 0; j < d.size(); ++j) d.atoms.col(j) *= std::polar(1.0, u(rng));
  const auto after = coherence(d, CoherenceMode::exhaustive());
  CHECK(std::abs(before.max_coherence - after.max_coherence) < 1e-12);
}

TEST_CASE("sampled mode reproduces the exhaustive argmax when it is drawn") {
  const Dictionary d = oscillator_dictionary(FpField(11));
  const auto ex = coherence(d, CoherenceMode::exhaustive());
  std::vector<std::pair<Index, Index>> pairs;
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5000; ++k)
    pairs.emplace_back(Index(rng() % std::uint64_t(d.size())), Index(rng() % std::uint64_t(d.size())));
  pairs.emplace_back(ex.argmax_second, ex.argmax_first);
  const auto s = coherence_over_pairs(d, pairs);
  CHECK(s.max_coherence == doctest::Approx(ex.max_coherence).epsilon(1e-12));

  const auto a = coherence(d, CoherenceMode::sampled(20000, 9));
  const auto b = coherence(d, CoherenceMode::sampled(20000, 9));
  CHECK(a.max_coherence == b.max_coherence);
  CHECK(a.argmax_first == b.argmax_first);
  CHECK(a.pairs_evaluated == 20000);
  CHECK(a.max_coherence <= ex.max_coherence + 1e-12);
}

TEST_CASE("inner product magnitudes are symmetric") {
  const Dictionary d = oscillator_dictionary(FpField(7));
  const Eigen::MatrixXcd g = d.atoms.adjoint() * d.atoms;
  CHECK(max_norm(Eigen::MatrixXd(g.cwiseAbs() - g.transpose().cwiseAbs())) < 1e-14);
}

TEST_CASE("translate stability") {
  for (std::uint32_t p : {5u, 7u}) {
    const auto r = shift_coherence(oscillator_dictionary(FpField(p)), CoherenceMode::exhaustive());
    CHECK(r.shifted);
    CHECK(r.max_coherence <= 4 / std::sqrt(double(p)));
    CHECK(r.bound_vacuous);
    const std::uint64_t n = expected_size(DictionaryKind::oscillator, p);
    CHECK(r.pairs_evaluated == n * n * (std::uint64_t(p) * p - 1));
    CHECK_FALSE((r.argmax_shift_tau == 0 && r.argmax_shift_w == 0));
  }
  CHECK_THROWS_AS(shift_coherence(heisenberg_dictionary(FpField(5)), CoherenceMode::exhaustive()),
                  InvalidInput);
}

TEST_CASE("babel function") {
  const Dictionary d = oscillator_dictionary(FpField(7));
  const auto r = coherence(d, CoherenceMode::exhaustive());
  // atoms of the same group are orthogonal, so k = 1 sees the cross max
  CHECK(babel_profile(d, 1) == doctest::Approx(r.max_coherence).epsilon(1e-12));
  double prev = 0;
  for (Index k = 1; k < 40; ++k) {
    const double b = babel_profile(d, k);
    CHECK(b >= prev - 1e-12);
    CHECK(b <= double(k) * r.max_coherence + 1e-9);
    prev = b;
  }
  const Dictionary basis = single_basis(6);
  for (Index k = 1; k < 6; ++k) CHECK(babel_profile(basis, k) == 0);
  CHECK_THROWS_AS(babel_profile(d, 0), InvalidInput);
  CHECK_THROWS_AS(babel_profile(d, d.size()), InvalidInput);
}

TEST_CASE("report formats") {
  const auto r = coherence(heisenberg_dictionary(FpField(5)), CoherenceMode::sampled(1000, 42));
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["seed"] == 42);
  CHECK(j["mode"] == "sampled");
  CHECK(j["kind"] == "heisenberg");
  CHECK(j["histogram"].size() == std::size_t(kHistogramBins));
  CHECK(report_text(r).find("bound_holds") != std::string::npos);
  const std::string csv = histogram_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == kHistogramBins + 1);
}

}
