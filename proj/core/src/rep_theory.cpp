#include "dhsp/rep_theory.hpp"

#include <cmath>
#include <stdexcept>

#include "dhsp/errors.hpp"
#include "dhsp/phase.hpp"

namespace dhsp {

namespace {

void check_label(const IrrepLabel& label, std::uint64_t n) {
  switch (label.kind) {
    case IrrepKind::kTwoDim:
      if (label.x < 1 || 2 * label.x >= n) throw std::invalid_argument("two-dimensional irrep needs 1 <= x < N/2");
      break;
    case IrrepKind::kEven:
    case IrrepKind::kOdd:
      if (n % 2 != 0) throw std::invalid_argument("even/odd irreps need N even");
      break;
    default:
      break;
  }
}

double sign(std::uint64_t exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

std::vector<IrrepLabel> irrep_labels(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  std::vector<IrrepLabel> labels;
  for (std::uint64_t x = 1; 2 * x < n; ++x) labels.push_back({IrrepKind::kTwoDim, x});
  labels.push_back({IrrepKind::kTrivial, 0});
  labels.push_back({IrrepKind::kAlternating, 0});
  if (n % 2 == 0) {
    labels.push_back({IrrepKind::kEven, 0});
    labels.push_back({IrrepKind::kOdd, 0});
  }
  return labels;
}

DenseOperator irrep(const IrrepLabel& label, const DihedralElement& g) {
  check_label(label, g.n);
  switch (label.kind) {
    case IrrepKind::kTwoDim: {
      const PhaseTable omega(g.n);
      const auto xk = static_cast<std::int64_t>((label.x * g.k) % g.n);
      DenseOperator m = DenseOperator::Zero(2, 2);
      if (g.t == 0) {
        m(0, 0) = omega(xk);
        m(1, 1) = omega(-xk);
      } else {
        m(0, 1) = omega(-xk);
        m(1, 0) = omega(xk);
      }
      return m;
    }
    case IrrepKind::kTrivial:
      return DenseOperator::Constant(1, 1, 1.0);
    case IrrepKind::kAlternating:
      return DenseOperator::Constant(1, 1, sign(g.t));
    case IrrepKind::kEven:
      return DenseOperator::Constant(1, 1, sign(g.k));
    case IrrepKind::kOdd:
      return DenseOperator::Constant(1, 1, sign(g.t + g.k));
  }
  throw std::logic_error("unknown irrep kind");
}

Complex character(const IrrepLabel& label, const DihedralElement& g) {
  return irrep(label, g).trace();
}

DenseOperator left_regular(const DihedralElement& g) {
  const auto dim = idx(2 * g.n);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& h : group_elements(g.n)) m(idx(multiply(g, h).index()), idx(h.index())) = 1.0;
  return m;
}

DenseOperator right_regular(const DihedralElement& g) {
  const auto dim = idx(2 * g.n);
  const auto g_inv = inverse(g);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& h : group_elements(g.n)) m(idx(multiply(h, g_inv).index()), idx(h.index())) = 1.0;
  return m;
}

std::vector<std::size_t> irrep_offsets(std::uint64_t n) {
  std::vector<std::size_t> offsets;
  std::size_t row = 0;
  for (const auto& label : irrep_labels(n)) {
    offsets.push_back(row);
    row += static_cast<std::size_t>(label.dim() * label.dim());
  }
  return offsets;
}

DenseOperator qft_dihedral(std::uint64_t n) {
  if (2 * n > 1024) throw GuardError("QFT over D_N needs 2N <= 1024");
  const auto labels = irrep_labels(n);
  const auto offsets = irrep_offsets(n);
  const auto elements = group_elements(n);
  const double order = static_cast<double>(2 * n);
  DenseOperator q = DenseOperator::Zero(idx(2 * n), idx(2 * n));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int dx = labels[i].dim();
    const double norm = std::sqrt(dx / order);
    for (const auto& g : elements) {
      const DenseOperator gamma = irrep(labels[i], g);
      for (int l = 0; l < dx; ++l) {
        for (int m = 0; m < dx; ++m) {
          q(idx(offsets[i] + static_cast<std::size_t>(l * dx + m)), idx(g.index())) = norm * gamma(l, m);
        }
      }
    }
  }
  return q;
}

IrrepDecomposition hidden_state_in_irrep_basis(const Subgroup& h, std::uint64_t n) {
  const DenseOperator q = qft_dihedral(n);
  const DenseOperator rho = hidden_subgroup_state(h, n);
  const DenseOperator sigma = q * rho * q.adjoint();
  const auto labels = irrep_labels(n);
  const auto offsets = irrep_offsets(n);
  const auto members = subgroup_elements(h, n);
  const double order = static_cast<double>(2 * n);

  IrrepDecomposition out;
  DenseOperator block_diagonal = DenseOperator::Zero(sigma.rows(), sigma.cols());
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int dx = labels[i].dim();
    DenseOperator gamma_sum = DenseOperator::Zero(dx, dx);
    for (const auto& g : members) gamma_sum += irrep(labels[i], g);
    const double chi_sum = gamma_sum.trace().real();
    const double p = dx * chi_sum / order;
    if (p < -1e-12 || p > 1.0 + 1e-12) throw std::logic_error("internal consistency: p(x) out of range");
    total += p;

    IrrepComponent component{labels[i], p, DenseOperator()};
    if (p > 1e-12) component.column_state = gamma_sum / chi_sum;
    // Expected block: I_d (x) (1/|G|) sum_h Gamma(h)^T.
    const DenseOperator expected =
        kron(DenseOperator::Identity(dx, dx), DenseOperator(gamma_sum.transpose() / order));
    const auto size = idx(static_cast<std::size_t>(dx * dx));
    const auto at = idx(offsets[i]);
    block_diagonal.block(at, at, size, size) = sigma.block(at, at, size, size);
    out.block_form_error =
        std::max(out.block_form_error, max_abs(sigma.block(at, at, size, size) - expected));
    out.components.push_back(std::move(component));
  }
  out.off_block_error = max_abs(sigma - block_diagonal);
  if (std::abs(total - 1.0) > 1e-10) throw std::logic_error("internal consistency: p(x) does not sum to 1");
  return out;
}

EquivalenceReport equivalence_check(std::uint64_t n, std::uint64_t d, double tol) {
  if (d >= n) throw std::invalid_argument("d must be < N");
  const DenseOperator q = qft_dihedral(n);
  const DenseOperator rho = hidden_subgroup_state(Subgroup::order2(d), n);
  const DenseOperator sigma = q * rho * q.adjoint();
  const auto labels = irrep_labels(n);
  const auto offsets = irrep_offsets(n);

  EquivalenceReport report;
  report.label_probs.assign(n, 0.0);
  report.column_states.assign(n, DenseOperator::Zero(2, 2));
  DenseOperator x_gate(2, 2);
  x_gate << 0.0, 1.0, 1.0, 0.0;
  DenseOperator plus(2, 2), minus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto at = idx(offsets[i]);
    const auto& label = labels[i];
    if (label.kind == IrrepKind::kTwoDim) {
      for (int row = 0; row < 2; ++row) {
        const DenseOperator column = sigma.block(at + 2 * row, at + 2 * row, 2, 2);
        // Identification m -> |1 - m> is conjugation by X.
        if (row == 0) {
          report.column_states[label.x] += x_gate * column * x_gate;
          report.label_probs[label.x] += column.trace().real();
        } else {
          report.column_states[n - label.x] += column;
          report.label_probs[n - label.x] += column.trace().real();
        }
      }
      continue;
    }
    const double weight = sigma(at, at).real();
    const bool first = label.kind == IrrepKind::kTrivial || label.kind == IrrepKind::kEven;
    const std::uint64_t target = (label.kind == IrrepKind::kEven || label.kind == IrrepKind::kOdd) ? n / 2 : 0;
    report.column_states[target] += weight * (first ? plus : minus);
    report.label_probs[target] += weight;
  }

  const DenseOperator u = tilde_basis_change(n);
  const DenseOperator tilde = u * rho * u.adjoint();
  const auto sn = static_cast<Eigen::Index>(n);
  for (std::uint64_t y = 0; y < n; ++y) {
    const auto iy = static_cast<Eigen::Index>(y);
    DenseOperator block(2, 2);
    block << tilde(iy, iy), tilde(iy, sn + iy), tilde(sn + iy, iy), tilde(sn + iy, sn + iy);
    const double p = block.trace().real();
    report.total_variation += 0.5 * std::abs(p - report.label_probs[y]);
    if (p > tol && report.label_probs[y] > tol) {
      report.column_states[y] /= report.label_probs[y];
      report.max_trace_distance =
          std::max(report.max_trace_distance, trace_distance(report.column_states[y], block / p));
    }
  }
  report.distance = report.total_variation + report.max_trace_distance;
  report.passed = report.distance <= tol;
  return report;
}

}  // namespace dhsp
