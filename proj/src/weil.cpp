#include "oscdict/weil.hpp"

#include <cmath>

namespace oscdict {

namespace {
Index idx(std::uint64_t v) { return static_cast<Index>(v); }
}  // namespace

Operator scaling_op(const FpElement& a) {
  const std::uint64_t p = a.modulus();
  if (a.is_zero()) throw InvalidInput("scaling_op: a must be nonzero");
  const double sign = legendre(a);
  const std::uint64_t a_inv = inv(a).value();
  Operator out = Operator::Zero(idx(p), idx(p));
  for (std::uint64_t t = 0; t < p; ++t) out(idx(t), idx(a_inv * t % p)) = sign;
  return out;
}

Eigen::MatrixXcd apply_scaling(const FpElement& a,
                               const Eigen::MatrixXcd& columns) {
  const std::uint64_t p = a.modulus();
  if (columns.rows() != idx(p)) throw InvalidInput("apply_scaling: size");
  if (a.is_zero()) throw InvalidInput("apply_scaling: a must be nonzero");
  const double sign = legendre(a);
  const std::uint64_t a_inv = inv(a).value();
  Eigen::MatrixXcd out(columns.rows(), columns.cols());
  for (std::uint64_t t = 0; t < p; ++t)
    out.row(idx(t)) = sign * columns.row(idx(a_inv * t % p));
  return out;
}

Signal chirp_diagonal(const FpElement& u) {
  const std::uint64_t p = u.modulus();
  const auto lut = psi_table(static_cast<std::uint32_t>(p));
  // -(u/2) t^2
  const std::uint64_t coeff = (-(u * u.field().half())).value();
  Signal out(idx(p));
  for (std::uint64_t t = 0; t < p; ++t) out(idx(t)) = lut[coeff * (t * t % p) % p];
  return out;
}

Operator chirp_op(const FpElement& u) {
  return chirp_diagonal(u).asDiagonal();
}

Operator fourier_op(const FpField& field) {
  const std::uint64_t p = field.modulus();
  const auto lut = psi_table(static_cast<std::uint32_t>(p));
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  Operator out(idx(p), idx(p));
  for (std::uint64_t w = 0; w < p; ++w)
    for (std::uint64_t t = 0; t < p; ++t)
      out(idx(w), idx(t)) = scale * lut[w * t % p];
  return out;
}

Eigen::MatrixXcd apply_rho(const BruhatFactorization& f,
                           const Eigen::MatrixXcd& columns) {
  const FpField field = f.a.field();
  if (columns.rows() != idx(field.modulus()))
    throw InvalidInput("apply_rho: size mismatch");
  Eigen::MatrixXcd x = columns;
  if (f.cell == BruhatCell::big) {
    x = chirp_diagonal(f.u1).asDiagonal() * x;
    x = fourier_op(field) * x;
  }
  x = apply_scaling(f.a, x);
  return chirp_diagonal(f.u2).asDiagonal() * x;
}

WeilOperator rho(const SL2Element& g) {
  const BruhatFactorization f = bruhat(g);
  const std::uint32_t p = g.modulus();
  Operator m = apply_rho(f, Operator::Identity(p, p));
  return {std::move(m), g, f};
}

double scalar_defect(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("scalar_defect: size mismatch");
  Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) == 0) return max_norm(a);
  Complex lambda = a(r, c) / b(r, c);
  const double mag = std::abs(lambda);
  lambda = mag == 0 ? Complex(1) : lambda / mag;
  return max_norm(a - lambda * b);
}

double egorov_defect(const SL2Element& g, const HeisenbergElement& h) {
  const Operator r = rho(g).matrix;
  // rho(g) is unitary, so its inverse is the adjoint.
  const Operator lhs = r * pi(h) * r.adjoint();
  return scalar_defect(lhs, pi(sp_action(g, h)));
}

}  // namespace oscdict
