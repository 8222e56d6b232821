#include "oscdict/symplectic.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "oscdict/error.hpp"

namespace oscdict {

SL2Element::SL2Element(FpElement a, FpElement b, FpElement c, FpElement d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a_ * d_ - b_ * c_ != a_.field().one())
    throw InvalidInput("SL2Element: determinant is not 1");
}

SL2Element::SL2Element(FpElement a, FpElement b, FpElement c, FpElement d,
                       bool)
    : a_(a), b_(b), c_(c), d_(d) {}

SL2Element SL2Element::from_ints(const FpField& field, std::int64_t a,
                                 std::int64_t b, std::int64_t c,
                                 std::int64_t d) {
  return SL2Element(field(a), field(b), field(c), field(d));
}

SL2Element SL2Element::identity(const FpField& field) {
  return SL2Element(field.one(), field.zero(), field.zero(), field.one(), true);
}

SL2Element SL2Element::weyl(const FpField& field) {
  return SL2Element(field.zero(), field.one(), -field.one(), field.zero(),
                    true);
}

SL2Element SL2Element::diagonal(const FpElement& a) {
  const FpField field = a.field();
  return SL2Element(a, field.zero(), field.zero(), inv(a), true);
}

SL2Element SL2Element::lower_unipotent(const FpElement& u) {
  const FpField field = u.field();
  return SL2Element(field.one(), field.zero(), u, field.one(), true);
}

SL2Element SL2Element::inverse() const {
  return SL2Element(d_, -b_, -c_, a_, true);
}

std::uint64_t SL2Element::key() const {
  const std::uint64_t p = modulus();
  return ((std::uint64_t{a_.value()} * p + b_.value()) * p + c_.value()) * p +
         d_.value();
}

SL2Element operator*(const SL2Element& x, const SL2Element& y) {
  return SL2Element(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                    x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_,
                    true);
}

SL2Element sl2_mul(const SL2Element& g, const SL2Element& h) { return g * h; }
SL2Element sl2_inv(const SL2Element& g) { return g.inverse(); }

SL2Element sl2_pow(SL2Element g, std::uint64_t e) {
  SL2Element result = SL2Element::identity(g.field());
  while (e > 0) {
    if (e & 1) result = result * g;
    g = g * g;
    e >>= 1;
  }
  return result;
}

std::uint64_t sl2_order(const SL2Element& g) {
  const SL2Element id = SL2Element::identity(g.field());
  SL2Element x = g;
  std::uint64_t n = 1;
  while (!(x == id)) {
    x = x * g;
    ++n;
  }
  return n;
}

void for_each_sl2(const FpField& field,
                  const std::function<void(const SL2Element&)>& fn) {
  const std::uint32_t p = field.modulus();
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      for (std::uint32_t c = 0; c < p; ++c) {
        const FpElement fa(a, p), fb(b, p), fc(c, p);
        if (a != 0) {
          fn(SL2Element(fa, fb, fc, (field.one() + fb * fc) / fa));
        } else if (fb * fc == -field.one()) {
          for (std::uint32_t d = 0; d < p; ++d)
            fn(SL2Element(fa, fb, fc, FpElement(d, p)));
        }
      }
    }
  }
}

HeisenbergElement sp_action(const SL2Element& g, const HeisenbergElement& h) {
  return {g.a() * h.tau + g.b() * h.w, g.c() * h.tau + g.d() * h.w, h.z};
}

SL2Element BruhatFactorization::reconstruct() const {
  const SL2Element head =
      SL2Element::lower_unipotent(u2) * SL2Element::diagonal(a);
  if (cell == BruhatCell::small) return head;
  return head * SL2Element::weyl(a.field()) * SL2Element::lower_unipotent(u1);
}

BruhatFactorization bruhat(const SL2Element& g) {
  const FpField field = g.field();
  if (g.b().is_zero()) {
    // U(u2) A(a) = [[a, 0], [u2 a, 1/a]]
    return {BruhatCell::small, field.zero(), g.a(), g.c() / g.a()};
  }
  // U(u2) A(a) w U(u1) = [[a u1, a], [a u1 u2 - 1/a, a u2]]
  return {BruhatCell::big, g.a() / g.b(), g.b(), g.d() / g.b()};
}

SL2Element standard_torus_generator(const FpField& field) {
  return SL2Element::diagonal(mult_generator(field));
}

std::vector<SL2Element> split_representatives(const FpField& field) {
  // For b != 0 the forms (b, c) and (-b, (1 + bc)/b) give the same torus;
  // keeping the lexicographically smaller one means keeping b < p/2.
  const std::uint32_t p = field.modulus();
  std::vector<SL2Element> out;
  out.reserve(std::size_t{p} * (p + 1) / 2);
  for (std::uint32_t b = 0; b <= (p - 1) / 2; ++b) {
    for (std::uint32_t c = 0; c < p; ++c) {
      const FpElement fb(b, p), fc(c, p);
      out.emplace_back(field.one(), fb, fc, field.one() + fb * fc);
    }
  }
  return out;
}

std::vector<TorusDescriptor> split_tori(const FpField& field) {
  const SL2Element ga = standard_torus_generator(field);
  std::vector<TorusDescriptor> out;
  for (const auto& g : split_representatives(field))
    out.push_back({TorusKind::split, g, g * ga * g.inverse()});
  return out;
}

SL2Element reference_nonsplit_generator(const FpField& field) {
  const std::uint64_t target = field.modulus() + 1;
  const auto divisors = prime_divisors(target);
  const SL2Element id = SL2Element::identity(field);
  const FpElement four = field(4);
  std::optional<SL2Element> found;
  for_each_sl2(field, [&](const SL2Element& g) {
    if (found) return;
    const FpElement tr = g.trace();
    if (legendre(tr * tr - four) != -1) return;
    if (!(sl2_pow(g, target) == id)) return;
    for (std::uint64_t q : divisors)
      if (sl2_pow(g, target / q) == id) return;
    found = g;
  });
  if (!found) throw NumericalError("no element of order p+1 in SL2");
  return *found;
}

std::vector<std::uint64_t> cyclic_subgroup_keys(const SL2Element& g) {
  std::vector<std::uint64_t> keys;
  const SL2Element id = SL2Element::identity(g.field());
  SL2Element x = g;
  keys.push_back(x.key());
  while (!(x == id)) {
    x = x * g;
    keys.push_back(x.key());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<TorusDescriptor> nonsplit_tori(const FpField& field) {
  const std::uint64_t p = field.modulus();
  const std::size_t expected = p * (p - 1) / 2;
  const SL2Element t0 = reference_nonsplit_generator(field);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<TorusDescriptor> out;
  out.reserve(expected);
  for_each_sl2(field, [&](const SL2Element& g) {
    if (out.size() == expected) return;
    const SL2Element conj = g * t0 * g.inverse();
    if (seen.insert(cyclic_subgroup_keys(conj)).second)
      out.push_back({TorusKind::nonsplit, g, conj});
  });
  if (out.size() != expected)
    throw NumericalError("non-split torus enumeration incomplete");
  return out;
}

SL2Element torus_generator(const TorusDescriptor& torus) {
  const std::uint64_t p = torus.generator.modulus();
  const std::uint64_t expected = torus.kind == TorusKind::split ? p - 1 : p + 1;
  if (sl2_order(torus.generator) != expected)
    throw InvalidInput("torus descriptor generator has the wrong order");
  return torus.generator;
}

}  // namespace oscdict
