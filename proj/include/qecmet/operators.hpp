// operators.hpp — Dense complex-matrix algebra with Hermitian-operator semantics:
// validated operator/state/channel types plus the spectral toolbox (inner products,
// norms, eigendecomposition, tensor/partial-trace, matrix exponential, channels).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace qecmet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances. All validation tolerances are explicit parameters on the
// constructors below; these are only the defaults.
namespace tol {
inline constexpr double hermiticity = 1e-12;   // relative to max entry magnitude
inline constexpr double state_norm = 1e-12;
inline constexpr double density_trace = 1e-10;
inline constexpr double density_eigen_floor = -1e-10;
inline constexpr double channel_trace = 1e-9;
inline constexpr double rank = 1e-9;           // relative rank cutoff
}  // namespace tol

bool is_finite(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Validated domain types
// ---------------------------------------------------------------------------

// Square matrix equal to its conjugate transpose within `herm_tol` relative to
// its own max entry magnitude. The stored matrix is exactly Hermitized
// ((M + M†)/2) so downstream spectral calls agree bit-for-bit.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m, double herm_tol = tol::hermiticity);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

  static HermitianOperator zero(Eigen::Index d);
  static HermitianOperator identity(Eigen::Index d);

 private:
  ComplexMatrix mat_;
};

// Hermitian, unit trace, eigenvalues above a small negative floor.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m,
                           double herm_tol = tol::hermiticity,
                           double trace_tol = tol::density_trace,
                           double eigen_floor = tol::density_eigen_floor);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

// Unit-norm complex amplitude vector.
class PureState {
 public:
  explicit PureState(const ComplexVector& amplitudes, double norm_tol = tol::state_norm);

  Eigen::Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }
  DensityOperator density() const { return DensityOperator(projector()); }

 private:
  ComplexVector amps_;
};

// Kraus-operator channel. Trace preserving (sum K†K = I) within `trace_tol`,
// or trace non-increasing (sum K†K <= I) when the flag is set.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus_ops,
                          bool trace_non_increasing = false,
                          double trace_tol = tol::channel_trace);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  bool trace_non_increasing() const { return trace_non_increasing_; }
  Eigen::Index dim_in() const { return kraus_.front().cols(); }
  Eigen::Index dim_out() const { return kraus_.front().rows(); }

  // Superoperator acting on column-stacked density matrices: sum_k conj(K)⊗K.
  ComplexMatrix superoperator() const;

 private:
  std::vector<ComplexMatrix> kraus_;
  bool trace_non_increasing_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Real inner product tr(a·b) on the Hilbert space of Hermitian matrices.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);
double hs_norm(const HermitianOperator& a);

struct EigResult {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, matching order
};

// Spectral decomposition; the single backend behind operator_norm, trace_abs
// and every spectral split in the toolkit. Eigenvectors inside a degenerate
// cluster are an arbitrary orthonormal basis of that cluster.
EigResult eig_hermitian(const HermitianOperator& a);

// Max absolute eigenvalue.
double operator_norm(const HermitianOperator& a);

// Sum of absolute eigenvalues.
double trace_abs(const HermitianOperator& a);

// Kronecker product.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

enum class Subsystem { First, Second };

// Partial trace of a (d_first*d_second)-dim square matrix over the factor NOT kept.
ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index d_first,
                            Eigen::Index d_second, Subsystem keep);

// exp(scale·a), accurate to ~1e-10 relative Frobenius error on norm-<=10 inputs.
ComplexMatrix matrix_exp(const ComplexMatrix& a, Complex scale = Complex(1.0, 0.0));

// sum_k K rho K†. Output trace equals input trace for trace-preserving channels;
// for trace-non-increasing channels the caller reads the output trace as weight.
ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& rho);
DensityOperator apply_channel(const QuantumChannel& ch, const DensityOperator& rho);

// Convenience constructors used across the toolkit.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix annihilation_op(Eigen::Index dim);  // a|n> = sqrt(n)|n-1>
ComplexMatrix number_op(Eigen::Index dim);

}  // namespace qecmet
