// code_optimization.hpp — Optimal code search as operator-norm minimization over
// the Lindblad span (dual), recovery of the extremal density-operator pair
// (primal), purification into the optimal code, and duality verification.

#pragma once

#include "qecmet/code_synthesis.hpp"
#include "qecmet/lindblad_span.hpp"
#include "qecmet/operators.hpp"

#include <optional>

namespace qecmet {

struct DualOptions {
  double gtol = 1e-9;      // surrogate gradient-norm exit
  double obj_tol = 1e-7;   // target accuracy of the returned norm
  int max_iters = 100000;  // total iteration budget across annealing stages
};

struct DualSolution {
  RealVector coeffs;                  // nu over the span basis
  HermitianOperator optimal_operator; // g_perp + sum_k nu_k E_k at the optimum
  double optimal_norm = 0.0;          // its operator norm (the minimized value)
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

struct GridSpec {
  int points_per_dim = 21;
  int refine_rounds = 2;  // zoom-ins around the best cell after the initial pass
};

struct PrimalOptions {
  double cluster_tol_factor = 1e-6;  // extremal eigenspace detection, relative to the norm
  double feasibility_tol = 1e-8;
  int max_rounds = 1000;             // alternating-projection cap
};

struct PrimalSolution {
  DensityOperator rho_max;        // supported on the top eigenspace of the dual optimum
  DensityOperator rho_min;        // supported on the bottom eigenspace
  HermitianOperator difference_op;  // rho_max - rho_min
  double objective = 0.0;           // tr(difference_op · g_perp)
  double constraint_residual = 0.0;
  bool feasible = false;
  // Rank-1 representatives satisfying the same constraints, when they exist;
  // these admit an ancilla-free code.
  std::optional<PureState> pure_max;
  std::optional<PureState> pure_min;
};

struct DualityReport {
  double objective = 0.0;       // primal value tr(difference_op · g_perp)
  double dual_value = 0.0;      // 2 · optimal_norm
  double gap = 0.0;             // |objective - dual_value|
  double code_eigengap = 0.0;   // logical gap of the purified optimal code
  double eigengap_deviation = 0.0;
  bool ok = false;
};

// Minimize ||g_perp + sum_k nu_k E_k|| (operator norm) over real coefficients.
// Smoothed spectral log-sum-exp descent with annealing, plus a small-smoothing
// subgradient polish. Non-convergence returns the best iterate, converged=false.
DualSolution dual_minimize(const HermitianOperator& g_perp, const SpanBasis& basis,
                           const DualOptions& opts = {});

// Independent oracle: dense grid over the coefficients, zoomed around the best
// cell. Exponential in the span dimension; refuses more than 4 dimensions.
double brute_force_dual(const HermitianOperator& g_perp, const SpanBasis& basis,
                        const GridSpec& grid = {});

// Extremal-eigenspace primal recovery: least-squares solve of the span
// constraints over density operators on the top/bottom eigenspaces, with
// positivity restored by alternating projections. Also searches for rank-1
// representatives (real-sphere stage first, then complex restarts).
PrimalSolution primal_recover(const DualSolution& dual, const SpanBasis& basis,
                              const PrimalOptions& opts = {});

// Purify the primal pair with orthogonal ancilla blocks (same layout as
// canonical_code); the top-eigenspace state becomes c0.
CodePair optimal_code(const PrimalSolution& primal);

// Ancilla-free optimal code from the rank-1 representatives, when they exist
// and the bare pair still satisfies the correctability conditions.
std::optional<CodePair> optimal_code_reduced(const PrimalSolution& primal,
                                             const LindbladModel& model,
                                             double tolerance = 1e-7);

// Best achievable information growth 4 t² s*² for the optimally encoded probe.
double optimal_qfi(const DualSolution& dual, double t);

// Zero-duality-gap and logical-gap consistency checks.
DualityReport verify_duality(const DualSolution& dual, const PrimalSolution& primal,
                             const SpanBasis& basis, double tolerance = 1e-6);

}  // namespace qecmet
