#pragma once

#include <Eigen/Dense>

#include "dhsp/phase.hpp"

namespace dhsp {

/// Small dense complex matrix; only used at oracle scale.
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest dimension any dense path will allocate.
inline constexpr std::size_t kOracleDim = 4096;

DenseOperator outer(const StateVector& v);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

double max_abs(const DenseOperator& m);

/// Ascending eigenvalues of the Hermitian part of m.
Eigen::VectorXd hermitian_eigenvalues(const DenseOperator& m);

/// Pseudo-inverse square root on the support: eigenvalues below
/// rel_cutoff * max eigenvalue are treated as zero.
DenseOperator pinv_sqrt(const DenseOperator& m, double rel_cutoff);

/// Orthogonal projector onto the support (same cutoff rule).
DenseOperator support_projector(const DenseOperator& m, double rel_cutoff);

/// Number of eigenvalues above rel_cutoff * max eigenvalue.
std::size_t numerical_rank(const DenseOperator& m, double rel_cutoff);

/// Von Neumann entropy in bits of a spectrum; 0 log 0 = 0, tiny negative
/// eigenvalues from rounding are clamped.
double entropy_bits(const Eigen::VectorXd& spectrum);

/// (1/2) ||a - b||_1 for Hermitian a, b.
double trace_distance(const DenseOperator& a, const DenseOperator& b);

}  // namespace dhsp
