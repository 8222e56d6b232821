#pragma once

// SL_2(F_p): elements, the Bruhat factorization, and enumeration of the
// maximal tori (split and non-split).

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "oscdict/ff.hpp"
#include "oscdict/heisenberg.hpp"

namespace oscdict {

/// A 2x2 matrix [[a, b], [c, d]] over F_p with ad - bc = 1.
class SL2Element {
 public:
  /// Throws InvalidInput if the determinant is not 1.
  SL2Element(FpElement a, FpElement b, FpElement c, FpElement d);
  static SL2Element from_ints(const FpField& field, std::int64_t a,
                              std::int64_t b, std::int64_t c, std::int64_t d);

  static SL2Element identity(const FpField& field);
  /// The Weyl element w = [[0, 1], [-1, 0]].
  static SL2Element weyl(const FpField& field);
  /// diag(a, 1/a).
  static SL2Element diagonal(const FpElement& a);
  /// Lower unipotent [[1, 0], [u, 1]].
  static SL2Element lower_unipotent(const FpElement& u);

  const FpElement& a() const { return a_; }
  const FpElement& b() const { return b_; }
  const FpElement& c() const { return c_; }
  const FpElement& d() const { return d_; }
  FpField field() const { return a_.field(); }
  std::uint32_t modulus() const { return a_.modulus(); }

  FpElement trace() const { return a_ + d_; }
  SL2Element inverse() const;
  /// Integer key a p^3 + b p^2 + c p + d; a total order on the group.
  std::uint64_t key() const;

  friend SL2Element operator*(const SL2Element& x, const SL2Element& y);
  friend bool operator==(const SL2Element&, const SL2Element&) = default;

 private:
  SL2Element(FpElement a, FpElement b, FpElement c, FpElement d, bool);
  FpElement a_, b_, c_, d_;
};

SL2Element sl2_mul(const SL2Element& g, const SL2Element& h);
SL2Element sl2_inv(const SL2Element& g);
SL2Element sl2_pow(SL2Element g, std::uint64_t e);

/// Order of g in SL_2(F_p).
std::uint64_t sl2_order(const SL2Element& g);

/// Calls fn on every element of SL_2(F_p) in a fixed order.
void for_each_sl2(const FpField& field,
                  const std::function<void(const SL2Element&)>& fn);

/// g acts on (v, z) through v; gv = (a tau + b w, c tau + d w).
HeisenbergElement sp_action(const SL2Element& g, const HeisenbergElement& h);

enum class BruhatCell { small, big };

/// g = U(u2) A(a)            (small cell, g.b == 0), or
/// g = U(u2) A(a) w U(u1)    (big cell),
/// with U(u) lower unipotent and A(a) = diag(a, 1/a).
struct BruhatFactorization {
  BruhatCell cell;
  FpElement u1;
  FpElement a;
  FpElement u2;

  SL2Element reconstruct() const;
};

BruhatFactorization bruhat(const SL2Element& g);

enum class TorusKind { split, nonsplit };

struct TorusDescriptor {
  TorusKind kind;
  /// T = conjugator * T_ref * conjugator^-1 for the reference torus T_ref.
  SL2Element conjugator;
  /// An element of order p-1 (split) or p+1 (non-split) generating T.
  SL2Element generator;
};

/// diag(r, 1/r) for r the smallest generator of F_p^x.
SL2Element standard_torus_generator(const FpField& field);

/// Representatives g = [[1, b], [c, 1 + bc]] with one g per split torus
/// g A g^-1; p(p+1)/2 of them, ordered by (b, c).
std::vector<SL2Element> split_representatives(const FpField& field);

/// One descriptor per split torus, in split_representatives order.
std::vector<TorusDescriptor> split_tori(const FpField& field);

/// The first element in for_each_sl2 order with an irreducible
/// characteristic polynomial and order p+1.
SL2Element reference_nonsplit_generator(const FpField& field);

/// All p(p-1)/2 non-split tori, as conjugates of the reference torus. The
/// normalizer of a non-split torus has order 2(p+1).
std::vector<TorusDescriptor> nonsplit_tori(const FpField& field);

/// The descriptor's generator, checked against the expected order.
SL2Element torus_generator(const TorusDescriptor& torus);

/// The cyclic group generated by g, as sorted keys.
std::vector<std::uint64_t> cyclic_subgroup_keys(const SL2Element& g);

}  // namespace oscdict
