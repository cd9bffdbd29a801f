#include "qecmet/dynamics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace qecmet {

namespace {

ComplexVector vec_of(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

std::vector<ComplexMatrix> all_jumps(const LindbladModel& m) {
  std::vector<ComplexMatrix> ops = m.lindblad_ops;
  ops.insert(ops.end(), m.perturbing_ops.begin(), m.perturbing_ops.end());
  return ops;
}

// Generator of the master equation on column-stacked density matrices.
ComplexMatrix liouvillian(const LindbladModel& m, double omega) {
  const Eigen::Index d = m.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& g = m.generator.matrix();
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix out =
      -i_unit * omega * (tensor(id, g) - tensor(g.transpose().eval(), id));
  for (const auto& a : all_jumps(m)) {
    const ComplexMatrix aa = a.adjoint() * a;
    out += tensor(a.conjugate().eval(), a);
    out -= 0.5 * tensor(id, aa);
    out -= 0.5 * tensor(aa.transpose().eval(), id);
  }
  return out;
}

std::vector<ComplexMatrix> first_order_kraus(const LindbladModel& m, double omega,
                                             double dt) {
  const Eigen::Index d = m.dim;
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix drift = -i_unit * omega * m.generator.matrix();
  const auto jumps = all_jumps(m);
  for (const auto& a : jumps) drift -= 0.5 * (a.adjoint() * a);
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(ComplexMatrix::Identity(d, d) + drift * dt);
  for (const auto& a : jumps) kraus.push_back(std::sqrt(dt) * a);
  return kraus;
}

ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& kraus) {
  const Eigen::Index d = kraus.front().rows();
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) s += tensor(k.conjugate().eval(), k);
  return s;
}

ComplexMatrix step_superoperator(const LindbladModel& m, double omega, double dt,
                                 Integrator mode) {
  if (mode == Integrator::ExactLiouvillian)
    return matrix_exp(liouvillian(m, omega), Complex(dt, 0.0));
  return kraus_superoperator(first_order_kraus(m, omega, dt));
}

// Applies powers of a fixed step map through cached repeated squarings, so a
// trajectory with millions of steps costs only the bits of the step counts.
class LadderWalk {
 public:
  explicit LadderWalk(ComplexMatrix step) : pow2_{std::move(step)} {}

  void advance(ComplexVector& v, long long k) {
    int bit = 0;
    while (k > 0) {
      if (k & 1) v = power(bit) * v;
      k >>= 1;
      ++bit;
    }
  }

 private:
  const ComplexMatrix& power(int bit) {
    while (static_cast<int>(pow2_.size()) <= bit) {
      const ComplexMatrix& last = pow2_.back();
      pow2_.push_back(last * last);
    }
    return pow2_[static_cast<std::size_t>(bit)];
  }

  std::vector<ComplexMatrix> pow2_;
};

std::vector<long long> sample_steps(double dt, double t_max, int n_samples) {
  const long long total = std::max<long long>(1, std::llround(t_max / dt));
  const long long first = std::max<long long>(1, total / 1000);
  std::set<long long> ks;
  const int n = std::max(n_samples, 2);
  for (int i = 0; i < n; ++i) {
    const double f = double(i) / double(n - 1);
    const double k = double(first) * std::pow(double(total) / double(first), f);
    ks.insert(std::min<long long>(total, std::max<long long>(first, std::llround(k))));
  }
  return {ks.begin(), ks.end()};
}

struct VariantStates {
  std::vector<ComplexVector> at_samples;
};

VariantStates propagate(const LindbladModel& model, double omega,
                        const SimulationConfig& cfg, const ComplexVector& psi0,
                        const ComplexMatrix* recovery_superop,
                        const std::vector<long long>& samples) {
  ComplexMatrix step = step_superoperator(model, omega, cfg.dt, cfg.integrator);
  if (recovery_superop) step = (*recovery_superop) * step;
  LadderWalk walk(std::move(step));
  ComplexMatrix rho0 = psi0 * psi0.adjoint();
  ComplexVector v = vec_of(rho0);
  VariantStates out;
  long long done = 0;
  for (long long k : samples) {
    walk.advance(v, k - done);
    done = k;
    out.at_samples.push_back(v);
  }
  return out;
}

DensityOperator logical_block(const CodePair& code, const ComplexMatrix& rho) {
  Eigen::Matrix2cd l;
  const ComplexVector r0 = rho * code.c0.amplitudes();
  const ComplexVector r1 = rho * code.c1.amplitudes();
  l(0, 0) = code.c0.amplitudes().dot(r0);
  l(0, 1) = code.c0.amplitudes().dot(r1);
  l(1, 0) = code.c1.amplitudes().dot(r0);
  l(1, 1) = code.c1.amplitudes().dot(r1);
  const double w = l.trace().real();
  if (w < 1e-6)
    throw std::runtime_error("logical_block: state has left the code space");
  return DensityOperator(ComplexMatrix(l / w), 1e-9);
}

DensityOperator full_state(const ComplexMatrix& rho_raw, Integrator mode, double dt) {
  HermitianOperator h(rho_raw, 1e-8);
  ComplexMatrix rho = h.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::runtime_error(
        "evolution produced negativity beyond -1e-8; use a smaller dt");
  if (mode == Integrator::FirstOrderChannel) {
    rho /= rho.trace().real();  // the first-order channel drifts trace by O(dt^2)/step
    return DensityOperator(rho, 1e-8, 1e-9, -1e-8);
  }
  (void)dt;
  return DensityOperator(rho, 1e-9, 1e-8, -1e-8);
}

double fit_loglog_slope(const RealVector& ts, const RealVector& ys, double t_from) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (Eigen::Index i = 0; i < ts.size(); ++i) {
    if (ts(i) < t_from * (1.0 - 1e-9) || ys(i) <= 0.0) continue;
    const double x = std::log(ts(i)), y = std::log(ys(i));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return std::nan("");
  return (n * sxy - sx * sy) / denom;
}

struct TrajectorySetup {
  LindbladModel model;                 // full-space model
  ComplexVector initial;               // full-space pure initial state
  const CodePair* code = nullptr;      // diagnostics/projection (already extended space)
  const RecoveryChannel* recovery = nullptr;  // applied after every step when set
  bool project_logical = false;        // read information from the logical block
  std::function<ComplexVector(double, double)> ideal;  // (omega, t) -> pure state
};

Trajectory run_trajectory(const TrajectorySetup& setup, const SimulationConfig& cfg) {
  if (cfg.dt <= 0.0) throw std::invalid_argument("simulation: dt must be positive");
  if (cfg.dt > cfg.t_max)
    throw std::invalid_argument("simulation: dt must not exceed t_max");
  const double omega = std::isnan(cfg.omega) ? setup.model.omega : cfg.omega;
  const double d_omega =
      cfg.omega_step > 0 ? cfg.omega_step : 1e-4 * std::max(1.0, std::abs(omega));

  const auto samples = sample_steps(cfg.dt, cfg.t_max, cfg.n_samples);
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());

  ComplexMatrix recovery_superop;
  const ComplexMatrix* rec_ptr = nullptr;
  if (setup.recovery) {
    recovery_superop = setup.recovery->channel.superoperator();
    rec_ptr = &recovery_superop;
  }

  std::vector<double> offsets = {0.0, -0.5 * d_omega, 0.5 * d_omega};
  if (cfg.richardson_check) {
    offsets.push_back(-0.25 * d_omega);
    offsets.push_back(0.25 * d_omega);
  }
  std::vector<VariantStates> runs;
  for (double off : offsets)
    runs.push_back(propagate(setup.model, omega + off, cfg, setup.initial, rec_ptr, samples));

  Trajectory traj;
  traj.times.resize(n);
  traj.qfi.resize(n);
  traj.fidelity_to_ideal.resize(n);
  traj.offcode_weight = RealVector::Zero(n);
  traj.states.reserve(samples.size());

  auto state_for_qfi = [&](const ComplexVector& v) {
    const ComplexMatrix rho = unvec(v, setup.model.dim);
    if (setup.project_logical) return logical_block(*setup.code, rho);
    ComplexMatrix h = 0.5 * (rho + rho.adjoint().eval());
    return DensityOperator(ComplexMatrix(h / h.trace().real()), 1e-8, 1e-8, -1e-8);
  };

  double max_richardson = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = double(samples[static_cast<std::size_t>(i)]) * cfg.dt;
    traj.times(i) = t;

    const ComplexMatrix rho_c = unvec(runs[0].at_samples[static_cast<std::size_t>(i)],
                                      setup.model.dim);
    DensityOperator state = full_state(rho_c, cfg.integrator, cfg.dt);
    const ComplexMatrix& rho = state.matrix();

    traj.qfi(i) = mixed_state_qfi(state_for_qfi(runs[1].at_samples[i]),
                                  state_for_qfi(runs[2].at_samples[i]), d_omega);
    if (cfg.richardson_check) {
      const double qfi_half = mixed_state_qfi(state_for_qfi(runs[3].at_samples[i]),
                                              state_for_qfi(runs[4].at_samples[i]),
                                              0.5 * d_omega);
      const double denom = std::max({traj.qfi(i), qfi_half, 1e-12});
      max_richardson = std::max(max_richardson, std::abs(traj.qfi(i) - qfi_half) / denom);
    }

    const ComplexVector psi_ideal = setup.ideal(omega, t);
    traj.fidelity_to_ideal(i) = std::real(psi_ideal.dot(rho * psi_ideal));
    if (setup.code) {
      const double in_code = (setup.code->projector * rho).trace().real();
      traj.offcode_weight(i) = std::max(0.0, 1.0 - in_code);
    }
    traj.states.push_back(std::move(state));
  }

  traj.qfi_richardson_maxdev = max_richardson;
  traj.fitted_exponent = fit_loglog_slope(traj.times, traj.qfi, cfg.t_max / 10.0);
  return traj;
}

}  // namespace

LindbladModel extend_model(const LindbladModel& model, Eigen::Index d_ancilla) {
  if (d_ancilla <= 1) return model;
  const ComplexMatrix id = ComplexMatrix::Identity(d_ancilla, d_ancilla);
  std::vector<ComplexMatrix> ls, js;
  for (const auto& l : model.lindblad_ops) ls.push_back(tensor(l, id));
  for (const auto& j : model.perturbing_ops) js.push_back(tensor(j, id));
  return LindbladModel(HermitianOperator(tensor(model.generator.matrix(), id)),
                       std::move(ls), std::move(js), model.omega);
}

DensityOperator evolve_step(const LindbladModel& model, const DensityOperator& rho,
                            double dt, Integrator mode) {
  if (dt < 0.0) throw std::invalid_argument("evolve_step: negative dt");
  if (rho.dim() != model.dim)
    throw std::invalid_argument("evolve_step: state/model dimension mismatch");
  ComplexMatrix out;
  if (mode == Integrator::ExactLiouvillian) {
    const ComplexMatrix step = step_superoperator(model, model.omega, dt, mode);
    out = unvec(step * vec_of(rho.matrix()), model.dim);
  } else {
    out = ComplexMatrix::Zero(model.dim, model.dim);
    for (const auto& k : first_order_kraus(model, model.omega, dt))
      out += k * rho.matrix() * k.adjoint();
  }
  out = 0.5 * (out + out.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::runtime_error("evolve_step: negativity beyond -1e-8; use a smaller dt");
  const double drift_scale = mode == Integrator::FirstOrderChannel
                                 ? std::max(1e-10, 10.0 * std::pow(dt * max_abs(out), 2.0) +
                                                       100.0 * dt * dt)
                                 : 1e-9;
  return DensityOperator(out, 1e-9, drift_scale, -1e-8);
}

Trajectory qec_evolve(const LindbladModel& model, const CodePair& code,
                      const RecoveryChannel& recovery, const SimulationConfig& config) {
  if (model.dim != code.d_probe)
    throw std::invalid_argument("qec_evolve: model/code dimension mismatch");

  EffectiveGenerator g_eff = effective_generator(code, model.generator);
  PureState logical = optimal_input_state(g_eff);
  PureState psi0 = embed_logical(code, logical);
  LindbladModel ext = extend_model(model, code.d_ancilla);

  TrajectorySetup setup{ext, psi0.amplitudes(), &code,
                        config.qec_enabled ? &recovery : nullptr,
                        config.qec_enabled, nullptr};

  if (config.qec_enabled) {
    // ideal: logical rotation generated by the projected signal
    EigResult le = eig_hermitian(g_eff.matrix);
    const ComplexVector l0 = le.vectors.adjoint() * logical.amplitudes();
    setup.ideal = [le, l0, &code](double w, double t) {
      ComplexVector rotated(2);
      for (Eigen::Index i = 0; i < 2; ++i)
        rotated(i) = std::exp(Complex(0.0, -w * le.values(i) * t)) * l0(i);
      ComplexVector logical_t = le.vectors * rotated;
      return (logical_t(0) * code.c0.amplitudes() + logical_t(1) * code.c1.amplitudes())
          .eval();
    };
  } else {
    EigResult ge = eig_hermitian(ext.generator);
    const ComplexVector p0 = ge.vectors.adjoint() * psi0.amplitudes();
    setup.ideal = [ge, p0](double w, double t) {
      ComplexVector rotated(p0.size());
      for (Eigen::Index i = 0; i < p0.size(); ++i)
        rotated(i) = std::exp(Complex(0.0, -w * ge.values(i) * t)) * p0(i);
      return (ge.vectors * rotated).eval();
    };
  }
  return run_trajectory(setup, config);
}

Trajectory evolve_unprotected(const LindbladModel& model, const PureState& initial,
                              const SimulationConfig& config, const CodePair* code) {
  if (initial.dim() != model.dim)
    throw std::invalid_argument("evolve_unprotected: state/model dimension mismatch");
  TrajectorySetup setup{model, initial.amplitudes(), code, nullptr, false, nullptr};
  EigResult ge = eig_hermitian(model.generator);
  const ComplexVector p0 = ge.vectors.adjoint() * initial.amplitudes();
  setup.ideal = [ge, p0](double w, double t) {
    ComplexVector rotated(p0.size());
    for (Eigen::Index i = 0; i < p0.size(); ++i)
      rotated(i) = std::exp(Complex(0.0, -w * ge.values(i) * t)) * p0(i);
    return (ge.vectors * rotated).eval();
  };
  return run_trajectory(setup, config);
}

double mixed_state_qfi(const DensityOperator& rho_minus, const DensityOperator& rho_plus,
                       double omega_step, double cutoff) {
  if (rho_minus.dim() != rho_plus.dim())
    throw std::invalid_argument("mixed_state_qfi: dimension mismatch");
  if (omega_step <= 0.0)
    throw std::invalid_argument("mixed_state_qfi: omega_step must be positive");
  const ComplexMatrix mid = 0.5 * (rho_minus.matrix() + rho_plus.matrix());
  const ComplexMatrix drho = (rho_plus.matrix() - rho_minus.matrix()) / omega_step;
  EigResult es = eig_hermitian(HermitianOperator(mid, 1e-8));
  const ComplexMatrix b = es.vectors.adjoint() * drho * es.vectors;
  double f = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const double denom = es.values(i) + es.values(j);
      if (denom > cutoff) f += 2.0 * std::norm(b(i, j)) / denom;
    }
  return f;
}

SqlBoundReport sql_bound(const LindbladModel& model, double dt, const RealVector& t_grid) {
  if (dt <= 0.0) throw std::invalid_argument("sql_bound: dt must be positive");
  const Eigen::Index d = model.dim;
  const auto r = static_cast<Eigen::Index>(model.lindblad_ops.size());
  const auto& ls = model.lindblad_ops;
  const Complex i_unit(0.0, 1.0);

  // Real least-squares for G = sum h0_ab L_a†L_b + sum (h1_k L_k + h.c.) + h2 I,
  // over Hermitian h0; the parameter-to-operator map spans exactly the
  // Hermitian span of the noise.
  std::vector<ComplexMatrix> columns;
  {
    // h0 parameters: diagonal first, then sqrt2-scaled real/imag off-diagonals,
    // mirroring the Hermitian parameterization used for extraction below.
    for (Eigen::Index a = 0; a < r; ++a) columns.push_back(ls[a].adjoint() * ls[a]);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index a = 0; a < r; ++a)
      for (Eigen::Index b = a + 1; b < r; ++b) {
        ComplexMatrix re_part =
            inv_sqrt2 * (ls[a].adjoint() * ls[b] + ls[b].adjoint() * ls[a]);
        ComplexMatrix im_part =
            inv_sqrt2 * i_unit * (ls[a].adjoint() * ls[b] - ls[b].adjoint() * ls[a]);
        columns.push_back(re_part);
        columns.push_back(im_part);
      }
    for (Eigen::Index k = 0; k < r; ++k) {
      columns.push_back(ls[k] + ls[k].adjoint());
      columns.push_back(i_unit * (ls[k] - ls[k].adjoint()));
    }
    columns.push_back(ComplexMatrix::Identity(d, d));
  }

  // isometric real embedding of Hermitian matrices, so the least-squares
  // residual is the genuine trace-inner-product projection remainder
  auto herm_components = [d](const ComplexMatrix& m) {
    RealVector v(d * d);
    Eigen::Index idx = 0;
    const double sqrt2 = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) v(idx++) = m(i, i).real();
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j) {
        v(idx++) = sqrt2 * m(i, j).real();
        v(idx++) = sqrt2 * m(i, j).imag();
      }
    return v;
  };

  Eigen::MatrixXd design(d * d, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    ComplexMatrix herm = 0.5 * (columns[c] + columns[c].adjoint().eval());
    design.col(static_cast<Eigen::Index>(c)) = herm_components(herm);
  }
  const RealVector target = herm_components(model.generator.matrix());

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector params = svd.solve(target);
  const double sv_max = svd.singularValues()(0);
  const double sv_min = svd.singularValues()(svd.singularValues().size() - 1);

  ComplexMatrix fitted = ComplexMatrix::Zero(d, d);
  for (std::size_t c = 0; c < columns.size(); ++c)
    fitted += params(static_cast<Eigen::Index>(c)) *
              (0.5 * (columns[c] + columns[c].adjoint().eval()));

  SqlBoundReport rep;
  rep.dt = dt;
  rep.t_grid = t_grid;
  rep.condition_number = sv_min > 0 ? sv_max / sv_min : std::numeric_limits<double>::infinity();
  rep.residual_beta2 =
      operator_norm(HermitianOperator((model.generator.matrix() - fitted).eval(), 1e-8));
  rep.solvable =
      rep.residual_beta2 < 1e-9 * std::max(1.0, operator_norm(model.generator));
  rep.alpha2 = HermitianOperator::zero(d);
  if (!rep.solvable) return rep;

  // unpack parameters
  rep.h0 = ComplexMatrix::Zero(r, r);
  Eigen::Index idx = 0;
  for (Eigen::Index a = 0; a < r; ++a) rep.h0(a, a) = params(idx++);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = a + 1; b < r; ++b) {
      rep.h0(a, b) = Complex(params(idx) * inv_sqrt2, params(idx + 1) * inv_sqrt2);
      rep.h0(b, a) = std::conj(rep.h0(a, b));
      idx += 2;
    }
  rep.h1 = ComplexVector::Zero(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    rep.h1(k) = Complex(params(idx), params(idx + 1));
    idx += 2;
  }
  rep.h2_scalar = params(idx);

  // asymptotic information-rate operator
  ComplexMatrix alpha2 = ComplexMatrix::Zero(d, d);
  for (Eigen::Index m = 0; m < r; ++m) {
    ComplexMatrix v = std::conj(rep.h1(m)) * ComplexMatrix::Identity(d, d);
    for (Eigen::Index k = 0; k < r; ++k) v += rep.h0(m, k) * ls[k];
    alpha2 += v.adjoint() * v;
  }
  rep.alpha2 = HermitianOperator(alpha2, 1e-8);
  rep.bound_coeff = 4.0 * operator_norm(rep.alpha2);
  rep.bound_curve = rep.bound_coeff * t_grid;

  // finite-step evaluation of the same bound
  {
    std::vector<ComplexMatrix> kvec;  // Kraus slots of the approximating channel
    kvec = first_order_kraus(model, model.omega, dt);
    std::vector<ComplexMatrix> kdot(static_cast<std::size_t>(r) + 1,
                                    ComplexMatrix::Zero(d, d));
    kdot[0] = -i_unit * dt * model.generator.matrix();

    ComplexMatrix h_full = ComplexMatrix::Zero(r + 1, r + 1);
    const double sq = std::sqrt(dt);
    for (Eigen::Index m = 0; m < r; ++m)
      for (Eigen::Index k = 0; k < r; ++k) h_full(m + 1, k + 1) = -rep.h0(m, k);
    for (Eigen::Index k = 0; k < r; ++k) {
      h_full(0, k + 1) += -rep.h1(k) * sq;
      h_full(k + 1, 0) += -std::conj(rep.h1(k)) * sq;
    }
    h_full(0, 0) += -rep.h2_scalar * dt;

    ComplexMatrix alpha_dt = ComplexMatrix::Zero(d, d);
    ComplexMatrix beta_dt = ComplexMatrix::Zero(d, d);
    for (Eigen::Index m = 0; m <= r; ++m) {
      ComplexMatrix dm = kdot[static_cast<std::size_t>(m)];
      for (Eigen::Index l = 0; l <= r; ++l)
        dm -= i_unit * h_full(m, l) * kvec[static_cast<std::size_t>(l)];
      alpha_dt += dm.adjoint() * dm;
      beta_dt += i_unit * dm.adjoint() * kvec[static_cast<std::size_t>(m)];
    }
    const double a_norm = operator_norm(HermitianOperator(alpha_dt, 1e-8));
    Eigen::JacobiSVD<ComplexMatrix> bsvd(beta_dt);
    const double b_norm = bsvd.singularValues()(0);
    rep.finite_dt_bound.resize(t_grid.size());
    for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
      const double steps = t_grid(i) / dt;
      rep.finite_dt_bound(i) =
          4.0 * steps * a_norm + 4.0 * steps * steps * b_norm * (b_norm + 2.0 * std::sqrt(a_norm));
    }
  }
  return rep;
}

std::vector<RobustnessReport> robustness_experiment(const LindbladModel& model,
                                                    const CodePair& code,
                                                    const RecoveryChannel& recovery,
                                                    const SimulationConfig& config,
                                                    const std::vector<double>& epsilon_grid) {
  if (model.perturbing_ops.empty())
    throw std::invalid_argument("robustness_experiment: model has no perturbing operators");
  ComplexMatrix jj = ComplexMatrix::Zero(model.dim, model.dim);
  for (const auto& j : model.perturbing_ops) jj += j.adjoint() * j;
  const double eps0 = operator_norm(HermitianOperator(jj, 1e-9));
  if (eps0 <= 0.0)
    throw std::invalid_argument("robustness_experiment: perturbing operators vanish");

  EffectiveGenerator g_eff = effective_generator(code, model.generator);
  const double ideal_coeff = g_eff.eigengap * g_eff.eigengap;
  PureState logical = optimal_input_state(g_eff);
  EigResult le = eig_hermitian(g_eff.matrix);
  const ComplexVector l0 = le.vectors.adjoint() * logical.amplitudes();

  const ComplexMatrix id_anc =
      ComplexMatrix::Identity(code.d_ancilla, code.d_ancilla);

  std::vector<RobustnessReport> reports;
  for (double eps : epsilon_grid) {
    if (eps < 0.0)
      throw std::invalid_argument("robustness_experiment: negative noise strength");
    const double factor = std::sqrt(eps / eps0);
    std::vector<ComplexMatrix> scaled;
    for (const auto& j : model.perturbing_ops) scaled.push_back(factor * j);
    ComplexMatrix jj_scaled = ComplexMatrix::Zero(model.dim, model.dim);
    for (const auto& j : scaled) jj_scaled += j.adjoint() * j;

    RobustnessReport rep;
    rep.epsilon = operator_norm(HermitianOperator(jj_scaled, 1e-9));

    // effective jumps on the code space
    ComplexMatrix quad = ComplexMatrix::Zero(code.c0.dim(), code.c0.dim());
    for (const auto& j : scaled) {
      const ComplexMatrix j_full =
          code.d_ancilla == 1 ? j : tensor(j, id_anc);
      for (const auto& rkraus : recovery.channel.kraus()) {
        ComplexMatrix eff = code.projector * rkraus * j_full * code.projector;
        quad += eff.adjoint() * eff;
        rep.effective_jumps.push_back(std::move(eff));
      }
    }
    rep.effective_strength = operator_norm(HermitianOperator(quad, 1e-9));

    LindbladModel noisy(model.generator, model.lindblad_ops, scaled, model.omega);
    SimulationConfig cfg = config;
    cfg.qec_enabled = true;
    if (eps > 0.0) cfg.dt = std::min(config.dt, eps / 20.0);
    cfg.t_max = config.t_max > 0.0 ? config.t_max : (eps > 0.0 ? 6.0 / eps : 10.0);

    Trajectory traj = qec_evolve(noisy, code, recovery, cfg);
    rep.times = traj.times;
    rep.qfi = traj.qfi;
    rep.distance_to_ideal.resize(traj.times.size());

    const double omega = std::isnan(cfg.omega) ? model.omega : cfg.omega;
    for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
      ComplexVector rotated(2);
      for (Eigen::Index k = 0; k < 2; ++k)
        rotated(k) = std::exp(Complex(0.0, -omega * le.values(k) * traj.times(i))) * l0(k);
      const ComplexVector logical_t = le.vectors * rotated;
      const ComplexVector psi =
          logical_t(0) * code.c0.amplitudes() + logical_t(1) * code.c1.amplitudes();
      const ComplexMatrix diff =
          traj.states[static_cast<std::size_t>(i)].matrix() - psi * psi.adjoint();
      rep.distance_to_ideal(i) = 0.5 * trace_abs(HermitianOperator(diff, 1e-8));
    }

    // crossover: information falls below half the ideal growth
    rep.crossover_time = std::nan("");
    for (Eigen::Index i = 1; i < traj.times.size(); ++i) {
      const double ratio = traj.qfi(i) / (ideal_coeff * traj.times(i) * traj.times(i));
      if (ratio < 0.5) {
        const double prev_ratio =
            traj.qfi(i - 1) / (ideal_coeff * traj.times(i - 1) * traj.times(i - 1));
        if (prev_ratio <= 0.5) { rep.crossover_time = traj.times(i - 1); break; }
        const double x0 = std::log(traj.times(i - 1)), x1 = std::log(traj.times(i));
        const double f =
            (prev_ratio - 0.5) / std::max(prev_ratio - ratio, 1e-300);
        rep.crossover_time = std::exp(x0 + f * (x1 - x0));
        break;
      }
    }

    rep.distance_bound_ok = true;
    if (eps > 0.0) {
      for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
        if (traj.times(i) > 1.0 / (10.0 * eps)) continue;
        if (rep.distance_to_ideal(i) > 1.1 * eps * traj.times(i))
          rep.distance_bound_ok = false;
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace qecmet
