// dynamics.hpp — Markovian evolution with and without error correction,
// Fisher-information estimation of evolved states, the linear-scaling bound
// from the Kraus expansion, and robustness/crossover experiments.

#pragma once

#include "qecmet/code_synthesis.hpp"
#include "qecmet/lindblad_span.hpp"
#include "qecmet/operators.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace qecmet {

enum class Integrator { FirstOrderChannel, ExactLiouvillian };

struct SimulationConfig {
  double dt = 1e-3;
  double t_max = 10.0;
  double omega = std::nan("");       // NaN: use the model's value
  double omega_step = -1.0;          // <=0: auto 1e-4 * max(1, |omega|)
  Integrator integrator = Integrator::ExactLiouvillian;
  bool qec_enabled = true;
  bool richardson_check = true;      // re-estimate at omega_step/2, flag >5% drift
  int n_samples = 60;
  std::uint64_t seed = 0;            // reserved; the dynamics are deterministic
};

struct Trajectory {
  RealVector times;
  std::vector<DensityOperator> states;  // full-space states at the true parameter
  RealVector qfi;
  RealVector fidelity_to_ideal;
  RealVector offcode_weight;        // population outside the code space (zero when bare)
  double fitted_exponent = 0.0;     // log-log slope of qfi vs t over the final decade
  double qfi_richardson_maxdev = 0.0;  // relative drift under step halving
};

struct SqlBoundReport {
  ComplexMatrix h0;            // Hermitian couplings over jump pair products
  ComplexVector h1;            // couplings to the jumps themselves
  double h2_scalar = 0.0;      // identity coupling
  HermitianOperator alpha2 = HermitianOperator::zero(1);  // asymptotic information rate
  double bound_coeff = 0.0;    // 4 ||alpha2||; information <= bound_coeff * t
  double residual_beta2 = 0.0; // operator norm of the unresolved generator remainder
  bool solvable = false;
  double condition_number = 0.0;
  double dt = 0.0;
  RealVector t_grid;
  RealVector bound_curve;      // asymptotic bound on the grid
  RealVector finite_dt_bound;  // same bound evaluated at the finite step size
};

struct RobustnessReport {
  double epsilon = 0.0;                       // operator norm of sum J†J after scaling
  std::vector<ComplexMatrix> effective_jumps; // projected residual jumps on the code
  double effective_strength = 0.0;            // norm of their quadratic sum (<= epsilon)
  RealVector times;
  RealVector distance_to_ideal;               // trace distance to the ideal rotation
  RealVector qfi;
  double crossover_time = std::nan("");       // qfi falls to half the ideal growth
  bool distance_bound_ok = false;             // distance <= 1.1*eps*t for t <= 1/(10 eps)
};

// One noisy step. First-order mode applies the Kraus set
// {I + (-i omega G - 1/2 sum L†L) dt, L_k sqrt(dt)}; exact mode applies the
// Liouvillian exponential. Perturbing jumps are included when present.
// Aborts if the result develops eigenvalues below -1e-8.
DensityOperator evolve_step(const LindbladModel& model, const DensityOperator& rho,
                            double dt, Integrator mode = Integrator::ExactLiouvillian);

// Error-corrected trajectory: alternate noisy steps and recovery from the
// optimal logical input state. With qec_enabled=false the same initial state
// evolves bare. Information is read from the projected logical state when
// correcting, from the full state otherwise.
Trajectory qec_evolve(const LindbladModel& model, const CodePair& code,
                      const RecoveryChannel& recovery, const SimulationConfig& config);

// Unprotected trajectory from an arbitrary initial state; `code`, when given,
// is used only for the off-code-weight diagnostic.
Trajectory evolve_unprotected(const LindbladModel& model, const PureState& initial,
                              const SimulationConfig& config,
                              const CodePair* code = nullptr);

// Symmetric-logarithmic-derivative information of a central-difference family:
// F = sum 2|<i|d rho|j>|^2/(p_i+p_j) in the eigenbasis of the midpoint state.
double mixed_state_qfi(const DensityOperator& rho_minus, const DensityOperator& rho_plus,
                       double omega_step, double cutoff = 1e-12);

// Solve the generator-cancellation system for the Kraus-expansion couplings.
// Solvable exactly when the generator lies inside the Lindblad span; then the
// information of any uncorrected strategy is bounded by 4||alpha2|| t.
SqlBoundReport sql_bound(const LindbladModel& model, double dt, const RealVector& t_grid);

// Sweep the perturbation strength: for each epsilon the perturbing jumps are
// rescaled to that exact strength, corrected dynamics are simulated including
// the residual noise, and the information crossover time is estimated.
// config.t_max <= 0 selects an automatic horizon of 6/epsilon; the step size
// is capped at epsilon/10 so the residual noise stays resolved.
std::vector<RobustnessReport> robustness_experiment(const LindbladModel& model,
                                                    const CodePair& code,
                                                    const RecoveryChannel& recovery,
                                                    const SimulationConfig& config,
                                                    const std::vector<double>& epsilon_grid);

// Model with every operator acting as O ⊗ I on a d_ancilla-dimensional ancilla.
LindbladModel extend_model(const LindbladModel& model, Eigen::Index d_ancilla);

}  // namespace qecmet
