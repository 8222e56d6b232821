#pragma once

// Arithmetic in the prime field F_p.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace oscdict {

/// Deterministic primality test for n < 2^32 (trial division).
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

class FpElement;

/// The prime field F_p for a prime p >= 5.
///
/// p = 2 is excluded because the Heisenberg group law needs 1/2, and p = 3
/// because the Weil representation does not linearize uniquely there.
class FpField {
 public:
  static constexpr std::uint32_t kMaxModulus = 1u << 20;

  /// Throws InvalidInput unless p is a prime in [5, 2^20].
  explicit FpField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  /// Canonical residue of an arbitrary signed integer.
  FpElement operator()(std::int64_t value) const;
  FpElement zero() const;
  FpElement one() const;
  /// Inverse of 2, used by the Heisenberg law and the chirps.
  FpElement half() const;

  /// All elements 0, 1, ..., p-1.
  std::vector<FpElement> elements() const;

  friend bool operator==(const FpField&, const FpField&) = default;

 private:
  std::uint32_t p_;
};

/// An element of F_p held as its canonical residue in [0, p).
class FpElement {
 public:
  FpElement(std::uint32_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }
  FpField field() const { return FpField(p_); }
  bool is_zero() const { return value_ == 0; }

  FpElement operator-() const;
  FpElement& operator+=(const FpElement& rhs);
  FpElement& operator-=(const FpElement& rhs);
  FpElement& operator*=(const FpElement& rhs);

  friend FpElement operator+(FpElement a, const FpElement& b) { return a += b; }
  friend FpElement operator-(FpElement a, const FpElement& b) { return a -= b; }
  friend FpElement operator*(FpElement a, const FpElement& b) { return a *= b; }
  /// a / b; throws on b = 0.
  friend FpElement operator/(const FpElement& a, const FpElement& b);

  /// Equality also requires matching moduli.
  friend bool operator==(const FpElement&, const FpElement&) = default;
  friend auto operator<=>(const FpElement& a, const FpElement& b) {
    return a.value_ <=> b.value_;
  }

 private:
  std::uint32_t value_;
  std::uint32_t p_;
};

std::ostream& operator<<(std::ostream& os, const FpElement& a);

/// a^e by square-and-multiply.
FpElement pow(FpElement a, std::uint64_t e);

/// Multiplicative inverse; throws InvalidInput("non-invertible") for 0.
FpElement inv(const FpElement& a);

/// Legendre character: 0 at zero, +1 on nonzero squares, -1 otherwise.
int legendre(const FpElement& a);

/// Multiplicative order of a nonzero element.
std::uint64_t element_order(const FpElement& a);

/// Smallest positive generator of the cyclic group F_p^x.
FpElement mult_generator(const FpField& field);

}  // namespace oscdict
