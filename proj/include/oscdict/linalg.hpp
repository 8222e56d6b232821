#pragma once

// Dense complex vectors and operators on C(F_p), plus the eigendecomposition
// of unitary operators used to extract character bases.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "oscdict/error.hpp"

namespace oscdict {

using Complex = std::complex<double>;
/// A function F_p -> C, entry t holds f(t).
using Signal = Eigen::VectorXcd;
/// A p x p complex matrix; rows and columns indexed by F_p.
using Operator = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// <f, g> = sum_t f(t) conj(g(t)); linear in f, conjugate-linear in g.
template <typename DerivedF, typename DerivedG>
typename DerivedF::Scalar inner(const Eigen::MatrixBase<DerivedF>& f,
                                const Eigen::MatrixBase<DerivedG>& g) {
  if (f.size() != g.size()) throw InvalidInput("inner: length mismatch");
  // Eigen's dot conjugates its left operand.
  return g.dot(f);
}

template <typename DerivedA, typename DerivedF>
Signal apply(const Eigen::MatrixBase<DerivedA>& a,
             const Eigen::MatrixBase<DerivedF>& f) {
  if (a.cols() != f.size()) throw InvalidInput("apply: size mismatch");
  return a * f;
}

template <typename DerivedA, typename DerivedB>
Operator compose(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) throw InvalidInput("compose: size mismatch");
  return a * b;
}

/// Largest entry magnitude.
template <typename Derived>
typename Derived::RealScalar max_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0 : a.cwiseAbs().maxCoeff();
}

/// ||A A* - I||_max.
template <typename Derived>
typename Derived::RealScalar unitarity_defect(
    const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  if (a.rows() != a.cols()) throw InvalidInput("unitarity_defect: not square");
  return max_norm(a * a.adjoint() - Plain::Identity(a.rows(), a.cols()));
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& a, double tol = 1e-10) {
  return a.rows() == a.cols() && unitarity_defect(a) <= tol;
}

/// Index of the entry of largest magnitude. Entries within `tie_tol` of the
/// maximum count as ties and the smallest index wins.
template <typename Derived>
Index dominant_index(const Eigen::MatrixBase<Derived>& v,
                     double tie_tol = 1e-9) {
  const auto mags = v.cwiseAbs().eval();
  const double top = mags.maxCoeff();
  for (Index i = 0; i < mags.size(); ++i)
    if (mags(i) >= top - tie_tol) return i;
  return 0;
}

/// Rotates v so that its dominant entry is real and positive. Vectors that
/// already satisfy this are left bit-for-bit unchanged.
template <typename Derived>
void normalize_phase(Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) return;
  const auto x = v(dominant_index(v));
  if (x.imag() == 0 && x.real() > 0) return;
  const double r = std::abs(x);
  if (r == 0) return;
  v *= std::conj(x) / r;
}

template <typename Derived>
void normalize_phase(Eigen::MatrixBase<Derived>&& v) {
  normalize_phase(v);
}

/// Phase-normalizes every column of a matrix.
template <typename Derived>
void normalize_column_phases(Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) normalize_phase(m.col(j));
}

/// Spectral decomposition of a unitary operator into eigenvalue clusters.
struct EigenDecomposition {
  /// Cluster eigenvalues on the unit circle, ordered by angle in [0, 2pi).
  std::vector<Complex> eigenvalues;
  /// Orthonormal basis of each eigenspace, one column per vector.
  std::vector<Eigen::MatrixXcd> eigenspaces;
  std::vector<int> multiplicities;

  std::size_t size() const { return eigenvalues.size(); }
  /// sum_k lambda_k P_k.
  Operator reconstruct() const;
};

inline constexpr double kEigenClusterTol = 1e-8;

/// Diagonalizes a unitary operator.
///
/// Eigenvalues within `cluster_tol` of each other (chord distance on the unit
/// circle) are merged into one eigenspace. Each eigenvector is
/// phase-normalized. Throws InvalidInput for non-unitary input and
/// NumericalError("spectral gap too small") when two distinct clusters lie
/// closer than 10 * cluster_tol.
EigenDecomposition eig_unitary(const Operator& a,
                               double cluster_tol = kEigenClusterTol);

/// Angle of z mapped to [0, 2pi).
double angle_0_2pi(Complex z);

/// Max over columns of the distance from the column to span(basis), where
/// both are assumed to have orthonormal columns.
double subspace_distance(const Eigen::MatrixXcd& vectors,
                         const Eigen::MatrixXcd& basis);

}  // namespace oscdict
