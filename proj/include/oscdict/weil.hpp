#pragma once

// The Weil representation rho of SL_2(F_p), realized projectively (each
// operator is fixed only up to a unimodular scalar) from three building
// blocks: scalings S_a, chirps M_u and the Fourier transform F.

#include "oscdict/heisenberg.hpp"
#include "oscdict/linalg.hpp"
#include "oscdict/symplectic.hpp"

namespace oscdict {

/// S_a f(t) = sigma(a) f(t / a), sigma the Legendre character.
Operator scaling_op(const FpElement& a);

/// Diagonal of M_u: entry t is psi(-(u/2) t^2).
Signal chirp_diagonal(const FpElement& u);
/// M_u f(t) = psi(-(u/2) t^2) f(t).
Operator chirp_op(const FpElement& u);

/// F f(w) = p^{-1/2} sum_t psi(w t) f(t).
Operator fourier_op(const FpField& field);

struct WeilOperator {
  Operator matrix;
  SL2Element source;
  BruhatFactorization factorization;
};

/// rho(g) = M_u2 S_a F M_u1 (big cell) or M_u2 S_a (small cell).
WeilOperator rho(const SL2Element& g);

/// Applies rho to each column of `columns` using the factorization
/// directly: O(p) for chirps and scalings, a dense product for F.
Eigen::MatrixXcd apply_rho(const BruhatFactorization& f,
                           const Eigen::MatrixXcd& columns);

/// Applies S_a to each column (a row permutation with a sign).
Eigen::MatrixXcd apply_scaling(const FpElement& a,
                               const Eigen::MatrixXcd& columns);

/// min over unimodular lambda of ||a - lambda b||_max, with lambda taken from
/// the ratio at the largest-magnitude entry of b.
double scalar_defect(const Operator& a, const Operator& b);

/// Distance of rho(g) pi(h) rho(g)^-1 from the line through pi(g h).
double egorov_defect(const SL2Element& g, const HeisenbergElement& h);

}  // namespace oscdict
