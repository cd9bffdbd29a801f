// lindblad_span.hpp — Hermitian span of a Markovian noise model, projection of
// the signal generator onto/against it, and the HNLS achievability verdict.

#pragma once

#include "qecmet/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qecmet {

// Probe model: signal generator G, jump operators L_k, optional perturbing
// jumps J_m, and the true parameter value used by simulation. All operators
// are d x d; the jump lists are taken as given (the span, and hence every
// verdict, is invariant under re-presentations of the same channel).
struct LindbladModel {
  Eigen::Index dim;
  HermitianOperator generator;             // G (frequency per unit of the parameter)
  std::vector<ComplexMatrix> lindblad_ops; // L_k
  std::vector<ComplexMatrix> perturbing_ops; // J_m, may be empty
  double omega = 0.0;                      // true parameter value

  LindbladModel(HermitianOperator g, std::vector<ComplexMatrix> ls,
                std::vector<ComplexMatrix> js = {}, double omega_value = 0.0);
};

// Orthonormal Hermitian basis of the span, under the trace inner product.
struct SpanBasis {
  std::vector<HermitianOperator> basis;  // hs_inner(E_i, E_j) = delta_ij
  int generator_count = 0;               // before orthonormalization
  double rank_tol = tol::rank;
};

struct HnlsVerdict {
  bool holds = false;
  bool marginal = false;       // perp norm within a decade of the threshold
  HermitianOperator g_perp;    // component of G orthogonal to the span
  HermitianOperator g_par;     // component inside the span; g_par + g_perp = G
  double perp_hs_norm = 0.0;
  double tol_used = 0.0;
};

// Hermitian generating set {I, L+L†, i(L-L†), L_k†L_j+L_j†L_k, i(L_k†L_j-L_j†L_k)}.
// Duplicates and zero matrices are retained; count = 1 + 2r + r².
std::vector<HermitianOperator> hermitian_generators(const LindbladModel& model);

// Stabilized Gram-Schmidt over hs_inner with one re-orthogonalization pass.
// Residuals of norm <= rank_tol * (largest generator norm) are dropped.
SpanBasis orthonormal_basis(const std::vector<HermitianOperator>& generators,
                            double rank_tol = tol::rank);

// Orthogonal decomposition g = g_par + g_perp with g_par in the span.
std::pair<HermitianOperator, HermitianOperator> decompose(const HermitianOperator& g,
                                                          const SpanBasis& basis);

// HNLS: true iff the generator has a component outside the Lindblad span.
// A non-positive tol selects the default 1e-8 * max(1, ||G||_HS).
HnlsVerdict hnls_check(const LindbladModel& model, double tolerance = -1.0);

}  // namespace qecmet
