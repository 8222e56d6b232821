#include "oscdict/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace oscdict {

double angle_0_2pi(Complex z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  if (a >= 2 * std::numbers::pi) a = 0;
  return a;
}

Operator EigenDecomposition::reconstruct() const {
  if (eigenspaces.empty()) return {};
  const Index n = eigenspaces.front().rows();
  Operator out = Operator::Zero(n, n);
  for (std::size_t k = 0; k < eigenspaces.size(); ++k)
    out += eigenvalues[k] * eigenspaces[k] * eigenspaces[k].adjoint();
  return out;
}

EigenDecomposition eig_unitary(const Operator& a, double cluster_tol) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInput("eig_unitary: expected a nonempty square matrix");
  if (!is_unitary(a, 1e-10))
    throw InvalidInput("eig_unitary: operator is not unitary");

  // A normal matrix has a diagonal Schur form, so the unitary Schur factor
  // already holds an orthonormal eigenbasis, degenerate clusters included.
  Eigen::ComplexSchur<Operator> schur(a);
  if (schur.info() != Eigen::Success)
    throw NumericalError("eig_unitary: Schur decomposition failed");
  const Operator& t = schur.matrixT();
  const Operator& u = schur.matrixU();
  const Index n = a.rows();

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> angles(n);
  for (Index i = 0; i < n; ++i) angles[i] = angle_0_2pi(t(i, i));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return angles[x] < angles[y]; });

  std::vector<std::vector<Index>> clusters;
  for (Index i : order) {
    if (!clusters.empty() &&
        std::abs(t(i, i) - t(clusters.back().back(), clusters.back().back())) <=
            cluster_tol) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  // Clusters straddling angle 0 appear at both ends of the sorted order.
  if (clusters.size() > 1 &&
      std::abs(t(clusters.front().front(), clusters.front().front()) -
               t(clusters.back().back(), clusters.back().back())) <=
          cluster_tol) {
    auto tail = std::move(clusters.back());
    clusters.pop_back();
    clusters.front().insert(clusters.front().begin(), tail.begin(), tail.end());
  }

  struct Cluster {
    Complex value;
    std::vector<Index> members;
  };
  std::vector<Cluster> merged;
  for (auto& c : clusters) {
    Complex sum = 0;
    for (Index i : c) sum += t(i, i);
    std::sort(c.begin(), c.end());
    merged.push_back({sum / std::abs(sum), std::move(c)});
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Cluster& x, const Cluster& y) {
                     return angle_0_2pi(x.value) < angle_0_2pi(y.value);
                   });

  if (merged.size() > 1) {
    for (std::size_t k = 0; k < merged.size(); ++k) {
      const auto& next = merged[(k + 1) % merged.size()];
      if (std::abs(merged[k].value - next.value) < 10 * cluster_tol)
        throw NumericalError("eig_unitary: spectral gap too small");
    }
  }

  EigenDecomposition out;
  for (const auto& c : merged) {
    Eigen::MatrixXcd basis(n, static_cast<Index>(c.members.size()));
    for (std::size_t j = 0; j < c.members.size(); ++j)
      basis.col(static_cast<Index>(j)) = u.col(c.members[j]);
    normalize_column_phases(basis);
    out.eigenvalues.push_back(c.value);
    out.eigenspaces.push_back(std::move(basis));
    out.multiplicities.push_back(static_cast<int>(c.members.size()));
  }
  return out;
}

double subspace_distance(const Eigen::MatrixXcd& vectors,
                         const Eigen::MatrixXcd& basis) {
  if (vectors.rows() != basis.rows())
    throw InvalidInput("subspace_distance: dimension mismatch");
  if (vectors.cols() == 0) return 0;
  const Eigen::MatrixXcd residual =
      vectors - basis * (basis.adjoint() * vectors);
  return residual.colwise().norm().maxCoeff();
}

}  // namespace oscdict
