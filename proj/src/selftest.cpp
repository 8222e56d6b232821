#include "oscdict/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "oscdict/analysis.hpp"
#include "oscdict/dictionary.hpp"
#include "oscdict/heisenberg.hpp"
#include "oscdict/symplectic.hpp"
#include "oscdict/weil.hpp"

namespace oscdict {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

HeisenbergElement random_h(const FpField& field, std::mt19937_64& rng) {
  const auto p = field.modulus();
  return {field(static_cast<std::int64_t>(rng() % p)),
          field(static_cast<std::int64_t>(rng() % p)),
          field(static_cast<std::int64_t>(rng() % p))};
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(const FpField& field,
                                        std::uint64_t seed) {
  const std::uint32_t p = field.modulus();
  std::vector<SelfTestCheck> out;
  auto run = [&](const std::string& name, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - start;
    out.push_back({name, o.passed, o.detail, dt.count()});
  };

  run("legendre multiplicative", [&]() -> Outcome {
    for (std::uint32_t a = 1; a < p; ++a)
      for (std::uint32_t b = 1; b < p; ++b)
        if (legendre(field(a) * field(b)) != legendre(field(a)) * legendre(field(b)))
          return {false, "fails at " + std::to_string(a) + "," + std::to_string(b)};
    return {true, "all nonzero pairs"};
  });

  run("generator order p-1", [&]() -> Outcome {
    const FpElement r = mult_generator(field);
    return {element_order(r) == p - 1, "r = " + std::to_string(r.value())};
  });

  run("heisenberg homomorphism", [&]() -> Outcome {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
      const auto h1 = random_h(field, rng), h2 = random_h(field, rng);
      worst = std::max(worst, max_norm(pi(h1) * pi(h2) - pi(h_mul(h1, h2))));
    }
    return {worst <= 1e-10, "max defect " + fmt(worst)};
  });

  run("heisenberg unitary + central character", [&]() -> Outcome {
    double worst = 0;
    for (std::uint32_t z = 0; z < p; ++z) {
      const Operator c = pi(HeisenbergElement::central(field(z)));
      worst = std::max(worst, max_norm(c - psi(field(z)) * Operator::Identity(p, p)));
    }
    std::mt19937_64 rng(seed + 1);
    for (int k = 0; k < 50; ++k)
      worst = std::max(worst, unitarity_defect(pi(random_h(field, rng))));
    return {worst <= 1e-10, "max defect " + fmt(worst)};
  });

  run("bruhat round-trip (all of SL2)", [&]() -> Outcome {
    std::uint64_t count = 0, bad = 0;
    for_each_sl2(field, [&](const SL2Element& g) {
      ++count;
      if (!(bruhat(g).reconstruct() == g)) ++bad;
    });
    const std::uint64_t expected = std::uint64_t{p} * p * p - p;
    return {bad == 0 && count == expected,
            std::to_string(count) + " elements, " + std::to_string(bad) + " bad"};
  });

  run("torus counts + distinctness", [&]() -> Outcome {
    const auto split = split_tori(field);
    const auto nonsplit = nonsplit_tori(field);
    std::set<std::vector<std::uint64_t>> all;
    for (const auto& t : split) all.insert(cyclic_subgroup_keys(t.generator));
    for (const auto& t : nonsplit) all.insert(cyclic_subgroup_keys(t.generator));
    const std::size_t want_split = std::size_t{p} * (p + 1) / 2;
    const std::size_t want_nonsplit = std::size_t{p} * (p - 1) / 2;
    bool orders = true;
    for (const auto& t : split) orders &= sl2_order(t.generator) == p - 1;
    for (const auto& t : nonsplit) orders &= sl2_order(t.generator) == p + 1;
    return {split.size() == want_split && nonsplit.size() == want_nonsplit &&
                all.size() == want_split + want_nonsplit && orders,
            std::to_string(split.size()) + " split, " +
                std::to_string(nonsplit.size()) + " non-split, " +
                std::to_string(all.size()) + " distinct"};
  });

  run("egorov relation", [&]() -> Outcome {
    const std::vector<HeisenbergElement> gens = {
        {field.one(), field.zero(), field.zero()},
        {field.zero(), field.one(), field.zero()},
        {field.zero(), field.zero(), field.one()},
        {field.one(), field.one(), field.zero()}};
    std::vector<SL2Element> gs = split_representatives(field);
    gs.push_back(standard_torus_generator(field));
    gs.push_back(SL2Element::weyl(field));
    for (const auto& t : nonsplit_tori(field)) gs.push_back(t.generator);
    double worst = 0;
    for (const auto& g : gs)
      for (const auto& h : gens) worst = std::max(worst, egorov_defect(g, h));
    return {worst <= 1e-9, std::to_string(gs.size()) + " elements, max defect " +
                               fmt(worst)};
  });

  run("dictionary cardinalities + orthonormality", [&]() -> Outcome {
    const Dictionary h = heisenberg_dictionary(field);
    const Dictionary o = oscillator_dictionary(field);
    double defect = 0;
    for (const Dictionary* d : {&h, &o})
      for (Index g = 0; g < d->group_count(); ++g)
        defect = std::max(defect, verify_orthonormal(d->group(g)));
    const bool sizes =
        static_cast<std::uint64_t>(h.size()) ==
            expected_size(DictionaryKind::heisenberg, p) &&
        static_cast<std::uint64_t>(o.size()) ==
            expected_size(DictionaryKind::oscillator, p);
    return {sizes && defect <= 1e-10,
            std::to_string(h.size()) + " + " + std::to_string(o.size()) +
                " atoms, defect " + fmt(defect)};
  });

  run("heisenberg cross-line equality", [&]() -> Outcome {
    const Dictionary h = heisenberg_dictionary(field);
    const Eigen::MatrixXd mags = (h.atoms.adjoint() * h.atoms).cwiseAbs();
    const auto groups = h.atom_groups();
    double worst = 0;
    for (Index i = 0; i < h.size(); ++i)
      for (Index j = 0; j < h.size(); ++j)
        if (groups[static_cast<std::size_t>(i)] != groups[static_cast<std::size_t>(j)])
          worst = std::max(worst, std::abs(mags(i, j) - 1 / std::sqrt(double(p))));
    return {worst <= 1e-9,
            "max |mu - 1/sqrt(p)| = " + fmt(worst)};
  });

  return out;
}

}  // namespace oscdict
