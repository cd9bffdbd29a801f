// code_synthesis.hpp — Two-dimensional error-correcting codes on probe⊗ancilla:
// canonical construction from the perpendicular signal component, correctability
// condition checks, recovery-channel synthesis, and effective logical dynamics.

#pragma once

#include "qecmet/lindblad_span.hpp"
#include "qecmet/operators.hpp"

#include <optional>
#include <vector>

namespace qecmet {

// Two orthonormal code vectors on H_P ⊗ H_A plus the rank-2 code projector.
// d_ancilla = 1 denotes an ancilla-free code.
struct CodePair {
  PureState c0;
  PureState c1;
  Eigen::Index d_probe;
  Eigen::Index d_ancilla;
  ComplexMatrix projector;  // |c0><c0| + |c1><c1|

  CodePair(PureState a, PureState b, Eigen::Index dp, Eigen::Index da,
           double ortho_tol = 1e-10);
};

// Condition report: [1] projected jumps proportional to the code projector,
// [2] same for jump pair products, [3] the signal acts non-trivially.
struct QecReport {
  std::vector<Complex> jump_expectations;  // lambda_k = <c0|L_k|c0>
  ComplexMatrix pair_expectations;         // mu_kj = <c0|L_k†L_j|c0>
  double residual_1 = 0.0;  // max deviation from condition [1], code-basis entries
  double residual_2 = 0.0;  // max deviation from condition [2]
  double gap_3 = 0.0;       // |diagonal gap| + off-diagonal weight of the projected signal
  bool passes_1 = false;
  bool passes_2 = false;
  bool passes_3 = false;
  double tol_used = 0.0;

  bool passes_all() const { return passes_1 && passes_2 && passes_3; }
};

// Trace-preserving recovery. Every Kraus operator maps into the code space.
// Kraus elements supporting states unreachable under the modeled noise are
// counted separately; they route to c0 and never fire under correct dynamics.
struct RecoveryChannel {
  QuantumChannel channel;
  int n_error_syndromes = 0;  // Kraus elements correcting modeled jumps
  int n_off_support = 0;      // completion elements on the unreachable complement
};

// 2x2 logical signal generator in the {c0, c1} basis.
struct EffectiveGenerator {
  HermitianOperator matrix;  // entries <c_i|G⊗I|c_j>
  double eigengap = 0.0;     // lambda_max - lambda_min
};

// Canonical code from the perpendicular signal component: spectral split of
// g_perp into normalized positive/negative parts, purified with disjoint
// ancilla blocks (d_ancilla = 2 * d_probe). c0 carries the positive part.
CodePair canonical_code(const HermitianOperator& g_perp, double trace_tol = 1e-10);

// Evaluate conditions [1]-[3] for a code against a model. Probe operators act
// as O ⊗ I on the ancilla factor.
QecReport check_conditions(const CodePair& code, const LindbladModel& model,
                           double tolerance = 1e-9);

// Generalized condition residual for independently noisy probe and ancilla:
// max deviation of the projected products E_k ⊗ E'_l from proportionality,
// over span bases of both models, plus the signal gap on the code.
QecReport check_conditions_generalized(const CodePair& code,
                                       const LindbladModel& probe_model,
                                       const LindbladModel& ancilla_model,
                                       double tolerance = 1e-9);

EffectiveGenerator effective_generator(const CodePair& code, const HermitianOperator& g);

// Equal superposition of the extreme eigenvectors of the logical generator,
// expressed in the {c0, c1} basis. Throws on zero eigengap.
PureState optimal_input_state(const EffectiveGenerator& g_eff, double gap_tol = 1e-12);

// Logical-rotation information growth t² · eigengap².
double noiseless_qfi(const EffectiveGenerator& g_eff, double t);

// Standard recovery for the deviation operators {L_k - lambda_k}: the
// orthonormalized error subspace is mapped isometrically back onto the code,
// the code space is preserved, and the unreachable complement routes to c0.
// Refuses (throws) when check_conditions fails at `tolerance`.
RecoveryChannel build_recovery(const CodePair& code, const LindbladModel& model,
                               double tolerance = 1e-6);

// Substitute ancilla basis states |k>_A -> inner_basis[k] in the code expansion.
CodePair concatenate_codes(const CodePair& outer, const std::vector<PureState>& inner_basis,
                           double ortho_tol = 1e-10);

// Drop ancilla directions outside the joint support of the two code words.
// All code properties are invariant under this isometry.
CodePair compress_code(const CodePair& code, double rank_tol = tol::rank);

// Ancilla-free reduction: when both reduced probe states are pure and the
// bare probe pair still satisfies conditions [1]-[2], return that pair.
std::optional<CodePair> ancilla_free_reduction(const CodePair& code,
                                               const LindbladModel& model,
                                               double tolerance = 1e-9);

// Embed a logical state (amplitudes in the {c0, c1} basis) into the full space.
PureState embed_logical(const CodePair& code, const PureState& logical);

// Purification of a normalized mixed probe state into the ancilla index block
// {offset .. offset+d-1} of H_P ⊗ H_A. Spectral weights below the noise floor
// are dropped.
ComplexVector purify_block(const ComplexMatrix& rho, Eigen::Index d_probe,
                           Eigen::Index d_ancilla, Eigen::Index offset);

}  // namespace qecmet
