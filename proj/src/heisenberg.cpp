#include "oscdict/heisenberg.hpp"

#include <cmath>
#include <numbers>

namespace oscdict {

HeisenbergElement HeisenbergElement::identity(const FpField& field) {
  return {field.zero(), field.zero(), field.zero()};
}

HeisenbergElement HeisenbergElement::central(const FpElement& z) {
  const FpField field = z.field();
  return {field.zero(), field.zero(), z};
}

HeisenbergElement HeisenbergElement::from_plane(const PlanePoint& v) {
  return {v.tau, v.w, v.tau.field().zero()};
}

FpElement omega(const PlanePoint& v, const PlanePoint& v2) {
  return v.tau * v2.w - v.w * v2.tau;
}

HeisenbergElement h_mul(const HeisenbergElement& h1,
                        const HeisenbergElement& h2) {
  const FpElement half = h1.z.field().half();
  return {h1.tau + h2.tau, h1.w + h2.w,
          h1.z + h2.z + half * omega(h1.plane(), h2.plane())};
}

HeisenbergElement h_inv(const HeisenbergElement& h) {
  return {-h.tau, -h.w, -h.z};
}

std::vector<Complex> psi_table(std::uint32_t p) {
  std::vector<Complex> out(p);
  for (std::uint32_t k = 0; k < p; ++k)
    out[k] = std::polar(1.0, 2 * std::numbers::pi * k / p);
  return out;
}

Complex psi(const FpElement& z) {
  return std::polar(1.0, 2 * std::numbers::pi * z.value() / z.modulus());
}

Operator pi(const HeisenbergElement& h) {
  const std::uint32_t p = h.z.modulus();
  const auto lut = psi_table(p);
  const FpElement scalar = h.z - h.z.field().half() * h.tau * h.w;
  Operator out = Operator::Zero(p, p);
  // (T_tau M_w f)(t) = psi(w (t + tau)) f(t + tau)
  for (std::uint64_t t = 0; t < p; ++t) {
    const std::uint64_t s = (t + h.tau.value()) % p;
    out(static_cast<Index>(t), static_cast<Index>(s)) =
        lut[(scalar.value() + std::uint64_t{h.w.value()} * s) % p];
  }
  return out;
}

}  // namespace oscdict
