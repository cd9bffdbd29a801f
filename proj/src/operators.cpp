#include "qecmet/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace qecmet {

bool is_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Validated domain types
// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double herm_tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  if (!is_finite(m))
    throw std::invalid_argument("HermitianOperator: entries must be finite");
  const double scale = std::max(max_abs(m), 1.0);
  const double dev = max_abs(m - m.adjoint());
  if (dev > herm_tol * scale)
    throw std::invalid_argument("HermitianOperator: matrix deviates from Hermiticity by " +
                                std::to_string(dev) + " (tol " +
                                std::to_string(herm_tol * scale) + ")");
  mat_ = 0.5 * (m + m.adjoint().eval());
}

HermitianOperator HermitianOperator::zero(Eigen::Index d) {
  return HermitianOperator(ComplexMatrix::Zero(d, d));
}

HermitianOperator HermitianOperator::identity(Eigen::Index d) {
  return HermitianOperator(ComplexMatrix::Identity(d, d));
}

DensityOperator::DensityOperator(const ComplexMatrix& m, double herm_tol,
                                 double trace_tol, double eigen_floor) {
  HermitianOperator h(m, herm_tol);
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > trace_tol)
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr) +
                                " deviates from 1 beyond tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < eigen_floor)
    throw std::invalid_argument("DensityOperator: min eigenvalue " +
                                std::to_string(min_eig) + " below floor");
  mat_ = h.matrix();
}

PureState::PureState(const ComplexVector& amplitudes, double norm_tol) {
  if (amplitudes.size() == 0)
    throw std::invalid_argument("PureState: empty amplitude vector");
  if (!amplitudes.allFinite())
    throw std::invalid_argument("PureState: amplitudes must be finite");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > norm_tol)
    throw std::invalid_argument("PureState: norm " + std::to_string(n) + " deviates from 1");
  amps_ = amplitudes;
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus_ops,
                               bool trace_non_increasing, double trace_tol)
    : kraus_(std::move(kraus_ops)), trace_non_increasing_(trace_non_increasing) {
  if (kraus_.empty())
    throw std::invalid_argument("QuantumChannel: needs at least one Kraus operator");
  const Eigen::Index rows = kraus_.front().rows();
  const Eigen::Index cols = kraus_.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols)
      throw std::invalid_argument("QuantumChannel: Kraus operators must share one shape");
    if (!is_finite(k))
      throw std::invalid_argument("QuantumChannel: Kraus entries must be finite");
    sum += k.adjoint() * k;
  }
  if (trace_non_increasing_) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        ComplexMatrix::Identity(cols, cols) - sum, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -trace_tol)
      throw std::invalid_argument("QuantumChannel: sum K†K exceeds identity");
  } else {
    const double dev = max_abs(sum - ComplexMatrix::Identity(cols, cols));
    if (dev > trace_tol)
      throw std::invalid_argument("QuantumChannel: sum K†K deviates from identity by " +
                                  std::to_string(dev));
  }
}

ComplexMatrix QuantumChannel::superoperator() const {
  const Eigen::Index d_in = dim_in(), d_out = dim_out();
  ComplexMatrix s = ComplexMatrix::Zero(d_out * d_out, d_in * d_in);
  for (const auto& k : kraus_) s += tensor(k.conjugate(), k);
  return s;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("hs_inner: dimension mismatch");
  // tr(ab) is real for Hermitian a, b.
  return (a.matrix() * b.matrix()).trace().real();
}

double hs_norm(const HermitianOperator& a) {
  return a.matrix().norm();  // Frobenius = sqrt(tr(a·a)) for Hermitian a
}

EigResult eig_hermitian(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge (info=" +
                             std::to_string(static_cast<int>(es.info())) + ")");
  return EigResult{es.eigenvalues(), es.eigenvectors()};
}

double operator_norm(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("operator_norm: eigensolver failed to converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double trace_abs(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("trace_abs: eigensolver failed to converge");
  return es.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index d_first,
                            Eigen::Index d_second, Subsystem keep) {
  if (m.rows() != m.cols() || m.rows() != d_first * d_second)
    throw std::invalid_argument("partial_trace: dimension factorization mismatch");
  if (keep == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(d_first, d_first);
    for (Eigen::Index i = 0; i < d_first; ++i)
      for (Eigen::Index j = 0; j < d_first; ++j)
        for (Eigen::Index k = 0; k < d_second; ++k)
          out(i, j) += m(i * d_second + k, j * d_second + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_second, d_second);
  for (Eigen::Index i = 0; i < d_second; ++i)
    for (Eigen::Index j = 0; j < d_second; ++j)
      for (Eigen::Index k = 0; k < d_first; ++k)
        out(i, j) += m(k * d_second + i, k * d_second + j);
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, Complex scale) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("matrix_exp: matrix must be square");
  if (!is_finite(a))
    throw std::invalid_argument("matrix_exp: entries must be finite");
  ComplexMatrix scaled = scale * a;
  if (max_abs(scaled) > 1e6)
    throw std::runtime_error("matrix_exp: norm too large, refusing to exponentiate");
  ComplexMatrix result = scaled.exp();
  if (!is_finite(result))
    throw std::runtime_error("matrix_exp: overflow in exponential");
  return result;
}

ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in())
    throw std::invalid_argument("apply_channel: state shape mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out += k * rho * k.adjoint();
  return out;
}

DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho) {
  return DensityOperator(apply_channel(ch, rho.matrix()));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix annihilation_op(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("annihilation_op: dim must be positive");
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

ComplexMatrix number_op(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("number_op: dim must be positive");
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

}  // namespace qecmet
