#include <doctest.h>

#include <random>
#include <set>

#include "oscdict/error.hpp"
#include "oscdict/symplectic.hpp"

using namespace oscdict;

namespace {

using Mat = std::array<std::uint64_t, 4>;

// Independent brute force over raw integer matrices.
std::set<std::set<Mat>> cyclic_subgroups_of_order(std::uint64_t p, std::uint64_t n) {
  auto mul = [p](const Mat& x, const Mat& y) {
    return Mat{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
               (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
  };
  const Mat id{1, 0, 0, 1};
  std::set<std::set<Mat>> out;
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t d = 0; d < p; ++d) {
          if ((a * d + p * p - b * c) % p != 1) continue;
          const Mat g{a, b, c, d};
          std::set<Mat> s{g};
          Mat x = g;
          while (x != id) s.insert(x = mul(x, g));
          if (s.size() == n) out.insert(s);
        }
  return out;
}

std::set<Mat> as_set(const SL2Element& g) {
  std::set<Mat> s;
  const std::uint64_t p = g.modulus();
  for (std::uint64_t k : cyclic_subgroup_keys(g))
    s.insert({k / (p * p * p), k / (p * p) % p, k / p % p, k % p});
  return s;
}

SL2Element random_sl2(const FpField& f, std::mt19937_64& rng) {
  const auto p = f.modulus();
  for (;;) {
    const auto a = f(std::int64_t(rng() % p)), b = f(std::int64_t(rng() % p)),
               c = f(std::int64_t(rng() % p));
    if (a.is_zero()) continue;
    return SL2Element(a, b, c, (f.one() + b * c) / a);
  }
}

}  // namespace

TEST_SUITE("symplectic") {

TEST_CASE("group basics") {
  const FpField f(7);
  const SL2Element w = SL2Element::weyl(f);
  CHECK(w * w == SL2Element::from_ints(f, -1, 0, 0, -1));
  CHECK_THROWS_AS(SL2Element::from_ints(f, 1, 1, 1, 1), InvalidInput);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_sl2(f, rng), h = random_sl2(f, rng);
    CHECK(g * g.inverse() == SL2Element::identity(f));
    CHECK(SL2Element::identity(f) * g == g);
    CHECK(sl2_mul(g, h) == g * h);
    CHECK(sl2_inv(g) == g.inverse());
    CHECK(sl2_pow(g, sl2_order(g)) == SL2Element::identity(f));
  }
}

TEST_CASE("for_each_sl2 visits every element once") {
  const FpField f(5);
  std::set<std::uint64_t> keys;
  std::size_t n = 0;
  for_each_sl2(f, [&](const SL2Element& g) { keys.insert(g.key()); ++n; });
  CHECK(n == 120);
  CHECK(keys.size() == 120);
}

TEST_CASE("symplectic action") {
  const FpField f(11);
  const HeisenbergElement h{f(3), f(7), f(5)};
  CHECK(sp_action(SL2Element::identity(f), h) == h);
  CHECK(sp_action(SL2Element::weyl(f), h) == HeisenbergElement{f(7), f(-3), f(5)});
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_sl2(f, rng), g2 = random_sl2(f, rng);
    const HeisenbergElement a{f(std::int64_t(rng() % 11)), f(std::int64_t(rng() % 11)), f(std::int64_t(rng() % 11))};
    const HeisenbergElement b{f(std::int64_t(rng() % 11)), f(std::int64_t(rng() % 11)), f(std::int64_t(rng() % 11))};
    CHECK(sp_action(g, HeisenbergElement::central(a.z)) == HeisenbergElement::central(a.z));
    CHECK(sp_action(g, h_mul(a, b)) == h_mul(sp_action(g, a), sp_action(g, b)));
    CHECK(sp_action(g * g2, a) == sp_action(g, sp_action(g2, a)));
  }
}

TEST_CASE("bruhat examples") {
  const FpField f(7);
  const auto id = bruhat(SL2Element::identity(f));
  CHECK(id.cell == BruhatCell::small);
  CHECK(id.a.value() == 1);
  CHECK(id.u2.is_zero());

  const auto w = bruhat(SL2Element::weyl(f));
  CHECK(w.cell == BruhatCell::big);
  CHECK(w.a.value() == 1);
  CHECK(w.u1.is_zero());
  CHECK(w.u2.is_zero());

  for (std::int64_t b = 1; b < 7; ++b)
    for (std::int64_t c = 0; c < 7; ++c) {
      const auto g = SL2Element::from_ints(f, 1, b, c, 1 + b * c);
      const auto fac = bruhat(g);
      CHECK(fac.cell == BruhatCell::big);
      CHECK(fac.a == f(b));
      CHECK(fac.u1 == inv(f(b)));
      CHECK(fac.u2 == f(1 + b * c) / f(b));
    }
}

TEST_CASE("bruhat round-trip over all of SL2") {
  for (std::uint32_t p : {5u, 7u, 11u}) {
    std::size_t n = 0, bad = 0;
    for_each_sl2(FpField(p), [&](const SL2Element& g) {
      ++n;
      if (!(bruhat(g).reconstruct() == g)) ++bad;
    });
    CHECK(n == std::size_t(p) * p * p - p);
    CHECK(bad == 0);
  }
}

TEST_CASE("standard torus generator") {
  const FpField f(7);
  CHECK(standard_torus_generator(f) == SL2Element::from_ints(f, 3, 0, 0, 5));
  CHECK(sl2_order(standard_torus_generator(f)) == 6);
}

TEST_CASE("split representatives") {
  CHECK(split_representatives(FpField(5)).size() == 15);
  CHECK(split_representatives(FpField(7)).size() == 28);
  for (std::uint32_t p : {11u, 13u})
    CHECK(split_representatives(FpField(p)).size() == std::size_t(p) * (p + 1) / 2);
}

TEST_CASE("split tori are all the diagonalizable maximal tori") {
  for (std::uint32_t p : {5u, 7u}) {
    const FpField f(p);
    const auto tori = split_tori(f);
    std::set<std::set<Mat>> got;
    for (const auto& t : tori) {
      CHECK(torus_generator(t) == t.generator);
      CHECK(t.generator == t.conjugator * standard_torus_generator(f) * t.conjugator.inverse());
      got.insert(as_set(t.generator));
    }
    CHECK(got.size() == tori.size());
    // every cyclic subgroup of order p-1 is a split torus
    CHECK(got == cyclic_subgroups_of_order(p, p - 1));
  }
}

TEST_CASE("non-split tori") {
  // The normalizer of a non-split torus has order 2(p+1), so there are
  // p(p-1)/2 of them; the brute-force count is the oracle here.
  for (std::uint32_t p : {5u, 7u}) {
    const FpField f(p);
    const auto tori = nonsplit_tori(f);
    std::set<std::set<Mat>> got;
    for (const auto& t : tori) {
      CHECK(sl2_order(t.generator) == p + 1);
      CHECK(legendre(t.generator.trace() * t.generator.trace() - f(4)) == -1);
      got.insert(as_set(t.generator));
    }
    CHECK(got.size() == tori.size());
    CHECK(got == cyclic_subgroups_of_order(p, p + 1));
    CHECK(tori.size() == std::size_t(p) * (p - 1) / 2);
  }
  for (std::uint32_t p : {11u, 13u})
    CHECK(nonsplit_tori(FpField(p)).size() == std::size_t(p) * (p - 1) / 2);
}

TEST_CASE("split and non-split tori are pairwise distinct") {
  for (std::uint32_t p : {5u, 7u}) {
    const FpField f(p);
    std::set<std::vector<std::uint64_t>> all;
    std::size_t n = 0;
    for (const auto& t : split_tori(f)) all.insert(cyclic_subgroup_keys(t.generator)), ++n;
    for (const auto& t : nonsplit_tori(f)) all.insert(cyclic_subgroup_keys(t.generator)), ++n;
    CHECK(all.size() == n);
    CHECK(n == std::size_t(p) * (p + 1) / 2 + std::size_t(p) * (p - 1) / 2);
  }
}

TEST_CASE("SO is a non-split torus when -1 is a non-square") {
  for (std::uint32_t p : {7u, 11u, 19u}) {
    const FpField f(p);
    REQUIRE(legendre(f(-1)) == -1);
    std::set<Mat> so;
    for_each_sl2(f, [&](const SL2Element& g) {
      // A A^t = I
      if ((g.a() * g.a() + g.b() * g.b()).value() == 1 && (g.a() * g.c() + g.b() * g.d()).is_zero() &&
          (g.c() * g.c() + g.d() * g.d()).value() == 1)
        so.insert({g.a().value(), g.b().value(), g.c().value(), g.d().value()});
    });
    CHECK(so.size() == p + 1);
    bool found = false;
    for (const auto& t : nonsplit_tori(f)) found |= as_set(t.generator) == so;
    CHECK(found);
  }
}

TEST_CASE("torus_generator checks the order") {
  const FpField f(7);
  TorusDescriptor bad{TorusKind::nonsplit, SL2Element::identity(f), standard_torus_generator(f)};
  CHECK_THROWS_AS(torus_generator(bad), InvalidInput);
  const SL2Element t0 = reference_nonsplit_generator(f);
  const std::uint64_t n = sl2_order(t0);
  CHECK(n == 8);
  for (std::uint64_t q : prime_divisors(n)) CHECK_FALSE(sl2_pow(t0, n / q) == SL2Element::identity(f));
}

}
