#include <doctest.h>

#include <set>

#include "oscdict/error.hpp"
#include "oscdict/ff.hpp"

using namespace oscdict;

TEST_SUITE("ff") {

TEST_CASE("field construction rejects non-primes and tiny primes") {
  for (std::uint32_t bad : {0u, 1u, 2u, 3u, 4u, 9u, 15u, 91u})
    CHECK_THROWS_AS(FpField{bad}, InvalidInput);
  CHECK_THROWS_AS(FpField{(1u << 20) + 7}, InvalidInput);
  CHECK(FpField(5).modulus() == 5);
  CHECK(FpField(1048573).modulus() == 1048573);
}

TEST_CASE("basic arithmetic") {
  const FpField f5(5), f7(7);
  CHECK((f5(3) + f5(4)).value() == 2);
  CHECK((f5(2) * f5(3)).value() == 1);
  CHECK((-f7(1)).value() == 6);
  CHECK(f7(-15).value() == 6);
  CHECK((f7(2) - f7(5)).value() == 4);
  CHECK((f7(3) / f7(5)).value() == 2);
  CHECK(f5.half().value() == 3);
}

TEST_CASE("mixed moduli are rejected") {
  CHECK_THROWS_AS(FpField(5)(1) + FpField(7)(1), InvalidInput);
  CHECK_FALSE(FpField(5)(1) == FpField(7)(1));
}

TEST_CASE("inverse") {
  CHECK(inv(FpField(5)(2)).value() == 3);
  CHECK(inv(FpField(7)(3)).value() == 5);
  CHECK_THROWS_AS(inv(FpField(5)(0)), InvalidInput);
  CHECK_THROWS_AS(FpField(5)(1) / FpField(5)(0), InvalidInput);
}

TEST_CASE("inverse is an involution") {
  for (std::uint32_t p : {5u, 7u, 11u, 101u}) {
    const FpField f(p);
    for (std::uint32_t a = 1; a < p; ++a) {
      CHECK(inv(inv(f(a))) == f(a));
      CHECK((inv(f(a)) * f(a)).value() == 1);
    }
  }
}

TEST_CASE("legendre examples") {
  const FpField f(5);
  CHECK(legendre(f(1)) == 1);
  CHECK(legendre(f(0)) == 0);
  CHECK(legendre(f(2)) == -1);
  CHECK(legendre(f(4)) == 1);
}

TEST_CASE("legendre matches square enumeration and is multiplicative") {
  for (std::uint32_t p = 5; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const FpField f(p);
    std::set<std::uint32_t> squares;
    for (std::uint64_t x = 1; x < p; ++x) squares.insert(static_cast<std::uint32_t>(x * x % p));
    for (std::uint32_t a = 1; a < p; ++a) {
      const int want = squares.count(a) ? 1 : -1;
      REQUIRE(legendre(f(a)) == want);
      for (std::uint32_t b = 1; b < p; ++b)
        REQUIRE(legendre(f(a) * f(b)) == legendre(f(a)) * legendre(f(b)));
    }
  }
}

TEST_CASE("element order") {
  CHECK(element_order(FpField(5)(4)) == 2);
  CHECK(element_order(FpField(7)(2)) == 3);
  for (std::uint32_t p : {5u, 7u, 13u}) CHECK(element_order(FpField(p)(1)) == 1);
  CHECK_THROWS_AS(element_order(FpField(7)(0)), InvalidInput);
}

TEST_CASE("generator examples") {
  CHECK(mult_generator(FpField(5)).value() == 2);
  CHECK(mult_generator(FpField(7)).value() == 3);
  CHECK(mult_generator(FpField(11)).value() == 2);
}

TEST_CASE("generator is the smallest element of full order") {
  for (std::uint32_t p = 5; p <= 211; ++p) {
    if (!is_prime(p)) continue;
    const FpField f(p);
    // brute force: walk powers until 1
    std::uint32_t smallest = 0;
    for (std::uint32_t r = 2; r < p && !smallest; ++r) {
      std::uint64_t x = r, n = 1;
      while (x != 1) x = x * r % p, ++n;
      if (n == p - 1) smallest = r;
    }
    const FpElement g = mult_generator(f);
    CHECK(g.value() == smallest);
    CHECK(element_order(g) == p - 1);
  }
}

TEST_CASE("pow and primality helpers") {
  const FpField f(13);
  CHECK(pow(f(2), 0).value() == 1);
  CHECK(pow(f(2), 12).value() == 1);
  CHECK(pow(f(2), 6).value() == 12);
  CHECK(is_prime(1048573));
  CHECK_FALSE(is_prime(1048575));
  CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(prime_divisors(97) == std::vector<std::uint64_t>{97});
}

}
