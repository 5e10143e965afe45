#include "dhsp/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dhsp {

DenseOperator outer(const StateVector& v) { return v * v.adjoint(); }

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const DenseOperator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

Eigen::SelfAdjointEigenSolver<DenseOperator> solve(const DenseOperator& m, bool vectors) {
  const DenseOperator hermitian = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<DenseOperator>(
      hermitian, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

Eigen::VectorXd hermitian_eigenvalues(const DenseOperator& m) {
  return solve(m, false).eigenvalues();
}

DenseOperator pinv_sqrt(const DenseOperator& m, double rel_cutoff) {
  const auto es = solve(m, true);
  const Eigen::VectorXd& values = es.eigenvalues();
  const double cutoff = rel_cutoff * std::max(values.maxCoeff(), 0.0);
  Eigen::VectorXd scaled(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    scaled[i] = values[i] > cutoff && values[i] > 0 ? 1.0 / std::sqrt(values[i]) : 0.0;
  }
  return es.eigenvectors() * scaled.asDiagonal() * es.eigenvectors().adjoint();
}

DenseOperator support_projector(const DenseOperator& m, double rel_cutoff) {
  const auto es = solve(m, true);
  const Eigen::VectorXd& values = es.eigenvalues();
  const double cutoff = rel_cutoff * std::max(values.maxCoeff(), 0.0);
  Eigen::VectorXd mask(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    mask[i] = values[i] > cutoff && values[i] > 0 ? 1.0 : 0.0;
  }
  return es.eigenvectors() * mask.asDiagonal() * es.eigenvectors().adjoint();
}

std::size_t numerical_rank(const DenseOperator& m, double rel_cutoff) {
  const Eigen::VectorXd values = hermitian_eigenvalues(m);
  const double cutoff = rel_cutoff * std::max(values.maxCoeff(), 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > cutoff && values[i] > 0) ++rank;
  }
  return rank;
}

double entropy_bits(const Eigen::VectorXd& spectrum) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum[i];
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double trace_distance(const DenseOperator& a, const DenseOperator& b) {
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

}  // namespace dhsp
