#pragma once

// The finite Heisenberg group H = V x F_p and its standard realization
// pi : H -> U(C(F_p)).

#include <vector>

#include "oscdict/ff.hpp"
#include "oscdict/linalg.hpp"

namespace oscdict {

/// A point (tau, w) of the symplectic plane V = F_p x F_p.
struct PlanePoint {
  FpElement tau;
  FpElement w;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  friend PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) {
    return {a.tau + b.tau, a.w + b.w};
  }
  friend PlanePoint operator-(const PlanePoint& a) { return {-a.tau, -a.w}; }
};

struct HeisenbergElement {
  FpElement tau;
  FpElement w;
  FpElement z;

  PlanePoint plane() const { return {tau, w}; }
  static HeisenbergElement identity(const FpField& field);
  static HeisenbergElement central(const FpElement& z);
  static HeisenbergElement from_plane(const PlanePoint& v);

  friend bool operator==(const HeisenbergElement&,
                         const HeisenbergElement&) = default;
};

/// omega((tau,w),(tau',w')) = tau w' - w tau'.
FpElement omega(const PlanePoint& v, const PlanePoint& v2);

/// (v,z)(v',z') = (v+v', z+z'+omega(v,v')/2).
HeisenbergElement h_mul(const HeisenbergElement& h1,
                        const HeisenbergElement& h2);
HeisenbergElement h_inv(const HeisenbergElement& h);

/// Table of psi(k) = exp(2 pi i k / p) for k in [0, p).
std::vector<Complex> psi_table(std::uint32_t p);

/// psi(z) = exp(2 pi i z / p).
Complex psi(const FpElement& z);

/// The Heisenberg operator
///   pi(tau, w, z) = psi(z) psi(-tau w / 2) T_tau M_w
/// where (T_tau f)(t) = f(t + tau) and (M_w f)(t) = psi(w t) f(t).
Operator pi(const HeisenbergElement& h);

/// pi(v, 0) f without materializing the operator; O(p).
template <typename Derived>
Signal apply_shift(const PlanePoint& v, const Eigen::MatrixBase<Derived>& f,
                   const std::vector<Complex>& psi_lut) {
  const std::uint64_t p = v.tau.modulus();
  if (static_cast<std::uint64_t>(f.size()) != p)
    throw InvalidInput("apply_shift: length mismatch");
  const std::uint64_t tau = v.tau.value();
  const std::uint64_t w = v.w.value();
  const std::uint64_t cocycle = (p - (tau * w % p) * ((p + 1) / 2) % p) % p;
  Signal out(static_cast<Index>(p));
  for (std::uint64_t t = 0; t < p; ++t) {
    const std::uint64_t s = (t + tau) % p;
    out(static_cast<Index>(t)) =
        psi_lut[(cocycle + w * s) % p] * f(static_cast<Index>(s));
  }
  return out;
}

}  // namespace oscdict
