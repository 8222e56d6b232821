#include "oscdict/ff.hpp"

#include <ostream>
#include <string>

#include "oscdict/error.hpp"

namespace oscdict {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

FpField::FpField(std::uint32_t p) : p_(p) {
  if (p < 5 || p > kMaxModulus || !is_prime(p))
    throw InvalidInput("modulus " + std::to_string(p) +
                       " is not a prime in [5, 2^20]");
}

FpElement FpField::operator()(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FpElement(static_cast<std::uint32_t>(r), p_);
}

FpElement FpField::zero() const { return FpElement(0, p_); }
FpElement FpField::one() const { return FpElement(1, p_); }
FpElement FpField::half() const { return FpElement((p_ + 1) / 2, p_); }

std::vector<FpElement> FpField::elements() const {
  std::vector<FpElement> out;
  out.reserve(p_);
  for (std::uint32_t v = 0; v < p_; ++v) out.emplace_back(v, p_);
  return out;
}

FpElement::FpElement(std::uint32_t value, std::uint32_t modulus)
    : value_(value), p_(modulus) {
  if (modulus == 0 || value >= modulus)
    throw InvalidInput("field element out of range");
}

namespace {
void require_same_field(const FpElement& a, const FpElement& b) {
  if (a.modulus() != b.modulus())
    throw InvalidInput("mismatched moduli " + std::to_string(a.modulus()) +
                       " and " + std::to_string(b.modulus()));
}
}  // namespace

FpElement FpElement::operator-() const {
  return FpElement(value_ == 0 ? 0 : p_ - value_, p_);
}

FpElement& FpElement::operator+=(const FpElement& rhs) {
  require_same_field(*this, rhs);
  std::uint64_t s = std::uint64_t{value_} + rhs.value_;
  value_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  return *this;
}

FpElement& FpElement::operator-=(const FpElement& rhs) { return *this += -rhs; }

FpElement& FpElement::operator*=(const FpElement& rhs) {
  require_same_field(*this, rhs);
  value_ = static_cast<std::uint32_t>(std::uint64_t{value_} * rhs.value_ % p_);
  return *this;
}

FpElement operator/(const FpElement& a, const FpElement& b) { return a * inv(b); }

std::ostream& operator<<(std::ostream& os, const FpElement& a) {
  return os << a.value();
}

FpElement pow(FpElement a, std::uint64_t e) {
  FpElement result(1, a.modulus());
  while (e > 0) {
    if (e & 1) result *= a;
    a *= a;
    e >>= 1;
  }
  return result;
}

FpElement inv(const FpElement& a) {
  if (a.is_zero()) throw InvalidInput("non-invertible: zero has no inverse");
  return pow(a, a.modulus() - 2);
}

int legendre(const FpElement& a) {
  if (a.is_zero()) return 0;
  return pow(a, (a.modulus() - 1) / 2).value() == 1 ? 1 : -1;
}

std::uint64_t element_order(const FpElement& a) {
  if (a.is_zero()) throw InvalidInput("zero has no multiplicative order");
  // Strip prime factors from p-1 while the power stays trivial.
  std::uint64_t order = a.modulus() - 1;
  for (std::uint64_t q : prime_divisors(order)) {
    while (order % q == 0 && pow(a, order / q).value() == 1) order /= q;
  }
  return order;
}

FpElement mult_generator(const FpField& field) {
  const std::uint32_t p = field.modulus();
  const auto divisors = prime_divisors(p - 1);
  for (std::uint32_t r = 2; r < p; ++r) {
    FpElement g(r, p);
    bool generates = true;
    for (std::uint64_t q : divisors) {
      if (pow(g, (p - 1) / q).value() == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw NumericalError("no generator found");  // unreachable for prime p
}

}  // namespace oscdict
