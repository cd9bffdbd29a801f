#include "qecmet/code_optimization.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace qecmet {

namespace {

ComplexMatrix assemble(const ComplexMatrix& g0, const std::vector<HermitianOperator>& es,
                       const RealVector& nu) {
  ComplexMatrix a = g0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) a += nu(k) * es[k].matrix();
  return a;
}

double op_norm_of(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct SmoothedEval {
  double f_true = 0.0;
  double f_mu = 0.0;
  RealVector grad;
};

// f_mu(nu) = mu log sum_i [exp(lam_i/mu) + exp(-lam_i/mu)], evaluated with the
// max-shift trick; the gradient weights tend to the hard-max subgradient as
// mu -> 0.
SmoothedEval eval_smoothed(const ComplexMatrix& a, const std::vector<HermitianOperator>& es,
                           double mu, bool want_grad) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  const RealVector& lam = solver.eigenvalues();
  const Eigen::Index d = lam.size();
  const double shift = lam.cwiseAbs().maxCoeff();

  RealVector zp(d), zm(d);
  double z = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    zp(i) = std::exp((lam(i) - shift) / mu);
    zm(i) = std::exp((-lam(i) - shift) / mu);
    z += zp(i) + zm(i);
  }

  SmoothedEval out;
  out.f_true = shift;
  out.f_mu = shift + mu * std::log(z);
  if (!want_grad) return out;

  ComplexMatrix weighted = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double w = (zp(i) - zm(i)) / z;
    if (std::abs(w) < 1e-300) continue;
    weighted += w * (solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint());
  }
  out.grad.resize(static_cast<Eigen::Index>(es.size()));
  for (std::size_t k = 0; k < es.size(); ++k)
    out.grad(static_cast<Eigen::Index>(k)) = (weighted * es[k].matrix()).trace().real();
  return out;
}

// Golden-section minimization of a convex 1-D function on [0, hi].
double golden_min(const std::function<double(double)>& f, double hi, int iters = 48) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

// Isometric real parameterization of Hermitian matrices: diagonal entries, then
// (sqrt2 * Re, sqrt2 * Im) of the strict upper triangle. |u|_2 = |X|_F.
Eigen::Index herm_param_count(Eigen::Index n) { return n * n; }

ComplexMatrix herm_from_params(const RealVector& u, Eigen::Index n) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) x(i, i) = u(idx++);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v(u(idx) * inv_sqrt2, u(idx + 1) * inv_sqrt2);
      idx += 2;
      x(i, j) = v;
      x(j, i) = std::conj(v);
    }
  return x;
}

RealVector herm_to_params(const ComplexMatrix& x) {
  const Eigen::Index n = x.rows();
  RealVector u(herm_param_count(n));
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) u(idx++) = x(i, i).real();
  const double sqrt2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      u(idx++) = x(i, j).real() * sqrt2;
      u(idx++) = x(i, j).imag() * sqrt2;
    }
  return u;
}

// Row of the real-linear functional u -> tr(herm_from_params(u) * m), m Hermitian.
RealVector trace_functional_row(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  RealVector row(herm_param_count(n));
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) row(idx++) = m(i, i).real();
  const double sqrt2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      row(idx++) = sqrt2 * m(j, i).real();
      row(idx++) = -sqrt2 * m(j, i).imag();
    }
  return row;
}

ComplexMatrix clip_negative_eigenvalues(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.0)
      out += es.eigenvalues()(i) *
             (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
  return out;
}

// Deterministic cluster basis: columns phase-fixed (largest entry real
// positive) and ordered by the position of their largest entry.
ComplexMatrix canonical_cluster_basis(const ComplexMatrix& cols) {
  ComplexMatrix out = cols;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> order;  // (anchor row, col)
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    Eigen::Index imax = 0;
    for (Eigen::Index r = 1; r < out.rows(); ++r)
      if (std::abs(out(r, c)) > std::abs(out(imax, c))) imax = r;
    const Complex pivot = out(imax, c);
    if (std::abs(pivot) > 0) out.col(c) *= std::abs(pivot) / pivot;
    order.emplace_back(imax, c);
  }
  std::sort(order.begin(), order.end());
  ComplexMatrix sorted(out.rows(), out.cols());
  for (Eigen::Index c = 0; c < out.cols(); ++c) sorted.col(c) = out.col(order[c].second);
  return sorted;
}

struct PureRepSearch {
  bool found = false;
  ComplexVector a;  // coefficients in the top-cluster basis
  ComplexVector b;  // coefficients in the bottom-cluster basis
};

// Search for unit vectors a, b with matching expectation values of every
// projected span element. Real-coefficient stage first (it lands on the
// conventional equal-phase representative when one exists), then complex
// random restarts.
PureRepSearch find_pure_representatives(const std::vector<ComplexMatrix>& mp,
                                        const std::vector<ComplexMatrix>& mq) {
  const Eigen::Index p = mp.empty() ? 1 : mp.front().rows();
  const Eigen::Index q = mq.empty() ? 1 : mq.front().rows();
  std::mt19937_64 rng(20240517);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto objective = [&](const ComplexVector& a, const ComplexVector& b) {
    double obj = 0.0;
    for (std::size_t k = 0; k < mp.size(); ++k) {
      const double diff = (a.dot(mp[k] * a)).real() - (b.dot(mq[k] * b)).real();
      obj += diff * diff;
    }
    return obj;
  };

  auto optimize_from = [&](ComplexVector a, ComplexVector b, bool keep_real) {
    double obj = objective(a, b);
    double step = 0.5;
    for (int it = 0; it < 600 && obj > 1e-18; ++it) {
      ComplexVector ga = ComplexVector::Zero(p), gb = ComplexVector::Zero(q);
      for (std::size_t k = 0; k < mp.size(); ++k) {
        const double diff = (a.dot(mp[k] * a)).real() - (b.dot(mq[k] * b)).real();
        ga += 4.0 * diff * (mp[k] * a);
        gb -= 4.0 * diff * (mq[k] * b);
      }
      // tangent projection on the product of unit spheres
      ga -= a.dot(ga) * a;
      gb -= b.dot(gb) * b;
      if (keep_real) {
        ga = ga.real().cast<Complex>();
        gb = gb.real().cast<Complex>();
      }
      const double gnorm2 = ga.squaredNorm() + gb.squaredNorm();
      if (gnorm2 < 1e-28) break;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        ComplexVector na = (a - step * ga).normalized();
        ComplexVector nb = (b - step * gb).normalized();
        const double nobj = objective(na, nb);
        if (nobj < obj - 1e-4 * step * gnorm2) {
          a = na; b = nb; obj = nobj;
          step *= 1.8;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    return std::make_tuple(a, b, obj);
  };

  PureRepSearch best;
  double best_obj = std::numeric_limits<double>::infinity();
  auto consider = [&](const ComplexVector& a0, const ComplexVector& b0, bool keep_real) {
    auto [a, b, obj] = optimize_from(a0, b0, keep_real);
    if (obj < best_obj) {
      best_obj = obj;
      best.a = a;
      best.b = b;
    }
  };

  consider(ComplexVector::Constant(p, 1.0 / std::sqrt(double(p))),
           ComplexVector::Constant(q, 1.0 / std::sqrt(double(q))), true);
  for (int r = 0; r < 8 && best_obj > 1e-18; ++r) {
    ComplexVector a(p), b(q);
    for (Eigen::Index i = 0; i < p; ++i) a(i) = gauss(rng);
    for (Eigen::Index i = 0; i < q; ++i) b(i) = gauss(rng);
    consider(a.normalized(), b.normalized(), true);
  }
  for (int r = 0; r < 8 && best_obj > 1e-18; ++r) {
    ComplexVector a(p), b(q);
    for (Eigen::Index i = 0; i < p; ++i) a(i) = Complex(gauss(rng), gauss(rng));
    for (Eigen::Index i = 0; i < q; ++i) b(i) = Complex(gauss(rng), gauss(rng));
    consider(a.normalized(), b.normalized(), false);
  }

  best.found = best_obj < 1e-14;
  return best;
}

void fix_global_phase(ComplexVector& v) {
  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  if (std::abs(v(imax)) > 0) v *= std::abs(v(imax)) / v(imax);
}

}  // namespace

DualSolution dual_minimize(const HermitianOperator& g_perp, const SpanBasis& basis,
                           const DualOptions& opts) {
  const auto& es = basis.basis;
  const Eigen::Index m = static_cast<Eigen::Index>(es.size());
  const ComplexMatrix& g0 = g_perp.matrix();
  const double scale = operator_norm(g_perp);

  DualSolution sol{RealVector::Zero(m), g_perp, scale, 0, true, 0.0};
  if (m == 0 || scale < 1e-14) return sol;

  // Annealing schedule per the design: 1e-1..1e-6 of the input norm, then a
  // small-smoothing polish where the surrogate gradient becomes a subgradient.
  std::vector<double> mu_stages;
  for (double f = 1e-1; f >= 0.9e-6; f *= 0.1) mu_stages.push_back(f * scale);
  const double polish_floor = std::max(1e-11, 1e-4 * opts.obj_tol) * scale;
  for (double f = 1e-7; f * scale >= polish_floor * 0.99; f *= 0.1)
    mu_stages.push_back(f * scale);

  RealVector x = RealVector::Zero(m);
  RealVector best_x = x;
  double best_f = scale;
  int iters = 0;
  double last_grad_norm = 0.0;
  bool grad_converged = false;
  const int stage_cap = std::max(200, opts.max_iters / static_cast<int>(mu_stages.size()));

  auto f_true_at = [&](const RealVector& nu) { return op_norm_of(assemble(g0, es, nu)); };

  for (std::size_t stage = 0; stage < mu_stages.size() && iters < opts.max_iters; ++stage) {
    const double mu = mu_stages[stage];
    const double stage_gtol = std::max(opts.gtol, 1e-3 * mu / scale);
    SmoothedEval cur = eval_smoothed(assemble(g0, es, x), es, mu, true);
    RealVector prev_x = x, prev_g = cur.grad;
    RealVector drift_anchor = x;
    double step = mu / (cur.grad.norm() + 1e-30);

    for (int it = 0; it < stage_cap && iters < opts.max_iters; ++it, ++iters) {
      last_grad_norm = cur.grad.norm();
      if (cur.f_true < best_f) { best_f = cur.f_true; best_x = x; }
      if (last_grad_norm < stage_gtol) {
        if (stage + 1 == mu_stages.size()) grad_converged = true;
        break;
      }

      // Barzilai-Borwein step with Armijo backtracking on the surrogate.
      if (it > 0) {
        const RealVector s = x - prev_x;
        const RealVector y = cur.grad - prev_g;
        const double sy = s.dot(y);
        if (sy > 1e-300) step = std::min(std::max(s.squaredNorm() / sy, 1e-14), 1e10);
      }
      prev_x = x;
      prev_g = cur.grad;
      bool accepted = false;
      double t = step;
      for (int bt = 0; bt < 60; ++bt) {
        RealVector cand = x - t * cur.grad;
        SmoothedEval ce = eval_smoothed(assemble(g0, es, cand), es, mu, true);
        if (ce.f_mu <= cur.f_mu - 1e-4 * t * last_grad_norm * last_grad_norm) {
          x = cand;
          cur = ce;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;

      // Periodic exact line search along the accumulated displacement; kills
      // the zigzag across nonsmooth valleys.
      if ((it + 1) % 25 == 0) {
        RealVector dir = x - drift_anchor;
        const double dn = dir.norm();
        if (dn > 1e-15) {
          auto line = [&](double tt) { return f_true_at(x + tt * dir); };
          const double t_best = golden_min(line, 8.0);
          if (t_best > 0.0 && line(t_best) < cur.f_true) {
            x += t_best * dir;
            cur = eval_smoothed(assemble(g0, es, x), es, mu, true);
          }
        }
        drift_anchor = x;
      }
    }
  }

  const double f_final = f_true_at(x);
  if (f_final < best_f) { best_f = f_final; best_x = x; }

  sol.coeffs = best_x;
  sol.optimal_operator = HermitianOperator(assemble(g0, es, best_x));
  sol.optimal_norm = operator_norm(sol.optimal_operator);
  sol.iterations = iters;
  sol.gradient_norm = last_grad_norm;
  sol.converged = grad_converged || last_grad_norm < opts.gtol * 10.0;
  return sol;
}

double brute_force_dual(const HermitianOperator& g_perp, const SpanBasis& basis,
                        const GridSpec& grid) {
  const Eigen::Index m = static_cast<Eigen::Index>(basis.basis.size());
  if (m == 0) return operator_norm(g_perp);
  if (m > 4)
    throw std::invalid_argument("brute_force_dual: refusing span dimension > 4");
  const int n_pts = std::max(grid.points_per_dim, 3);
  const double base_norm = operator_norm(g_perp);
  double half = 2.0 * std::sqrt(double(g_perp.dim())) * std::max(base_norm, 1e-12);

  RealVector center = RealVector::Zero(m);
  RealVector best_pt = center;
  double best = std::numeric_limits<double>::infinity();

  for (int round = 0; round <= grid.refine_rounds; ++round) {
    const double spacing = 2.0 * half / (n_pts - 1);
    RealVector nu(m);
    // nested grid walk, accumulating the operator level by level
    std::function<void(Eigen::Index, const ComplexMatrix&)> walk =
        [&](Eigen::Index level, const ComplexMatrix& acc) {
          if (level == m) {
            const double f = op_norm_of(acc);
            if (f < best) { best = f; best_pt = nu; }
            return;
          }
          for (int i = 0; i < n_pts; ++i) {
            nu(level) = center(level) - half + i * spacing;
            walk(level + 1, acc + nu(level) * basis.basis[level].matrix());
          }
        };
    walk(0, g_perp.matrix());
    center = best_pt;
    half = 2.0 * spacing;
  }
  return best;
}

PrimalSolution primal_recover(const DualSolution& dual, const SpanBasis& basis,
                              const PrimalOptions& opts) {
  const double s = dual.optimal_norm;
  if (s <= 0.0)
    throw std::invalid_argument("primal_recover: dual optimum is zero");
  const Eigen::Index d = dual.optimal_operator.dim();

  EigResult spec = eig_hermitian(dual.optimal_operator);
  const double ctol = opts.cluster_tol_factor * s;
  std::vector<Eigen::Index> top, bottom;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (spec.values(i) >= s - ctol) top.push_back(i);
    if (spec.values(i) <= -s + ctol) bottom.push_back(i);
  }
  if (top.empty() || bottom.empty())
    throw std::runtime_error(
        "primal_recover: extremal eigenspace empty; dual solution not at an "
        "equioscillation point (check cluster_tol)");

  const Eigen::Index p = static_cast<Eigen::Index>(top.size());
  const Eigen::Index q = static_cast<Eigen::Index>(bottom.size());
  ComplexMatrix vp(d, p), vq(d, q);
  for (Eigen::Index i = 0; i < p; ++i) vp.col(i) = spec.vectors.col(top[i]);
  for (Eigen::Index i = 0; i < q; ++i) vq.col(i) = spec.vectors.col(bottom[i]);
  vp = canonical_cluster_basis(vp);
  vq = canonical_cluster_basis(vq);

  // Projected span elements on the clusters.
  std::vector<ComplexMatrix> mp, mq;
  for (const auto& e : basis.basis) {
    mp.push_back((vp.adjoint() * e.matrix() * vp).eval());
    mq.push_back((vq.adjoint() * e.matrix() * vq).eval());
  }

  // Real least-squares system: span constraints plus the two unit traces.
  const Eigen::Index nu_p = herm_param_count(p), nu_q = herm_param_count(q);
  const Eigen::Index n_rows = static_cast<Eigen::Index>(basis.basis.size()) + 2;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_rows, nu_p + nu_q);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_rows);
  for (std::size_t k = 0; k < basis.basis.size(); ++k) {
    c.row(static_cast<Eigen::Index>(k)).head(nu_p) = trace_functional_row(mp[k]);
    c.row(static_cast<Eigen::Index>(k)).tail(nu_q) = -trace_functional_row(mq[k]);
  }
  c.row(n_rows - 2).head(nu_p) =
      trace_functional_row(ComplexMatrix::Identity(p, p));
  rhs(n_rows - 2) = 1.0;
  c.row(n_rows - 1).tail(nu_q) =
      trace_functional_row(ComplexMatrix::Identity(q, q));
  rhs(n_rows - 1) = 1.0;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd u = svd.solve(rhs);  // minimum-norm least-squares

  auto affine_project = [&](const Eigen::VectorXd& v) {
    return (v + svd.solve(rhs - c * v)).eval();
  };

  double psd_violation = 0.0;
  for (int round = 0; round < opts.max_rounds; ++round) {
    ComplexMatrix x = herm_from_params(u.head(nu_p), p);
    ComplexMatrix y = herm_from_params(u.tail(nu_q), q);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ex(x, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ey(y, Eigen::EigenvaluesOnly);
    psd_violation = std::max(-ex.eigenvalues().minCoeff(), -ey.eigenvalues().minCoeff());
    if (psd_violation < 1e-12) break;
    Eigen::VectorXd clipped(nu_p + nu_q);
    clipped.head(nu_p) = herm_to_params(clip_negative_eigenvalues(x));
    clipped.tail(nu_q) = herm_to_params(clip_negative_eigenvalues(y));
    u = affine_project(clipped);
  }

  ComplexMatrix x = herm_from_params(u.head(nu_p), p);
  ComplexMatrix y = herm_from_params(u.tail(nu_q), q);
  ComplexMatrix rho0 = vp * x * vp.adjoint();
  ComplexMatrix rho1 = vq * y * vq.adjoint();
  // tame residual negative dust so the validated type accepts the state
  rho0 = clip_negative_eigenvalues(rho0);
  rho1 = clip_negative_eigenvalues(rho1);
  rho0 /= rho0.trace().real();
  rho1 /= rho1.trace().real();

  HermitianOperator diff((rho0 - rho1).eval());
  ComplexMatrix g_perp_mat = dual.optimal_operator.matrix();
  for (Eigen::Index k = 0; k < dual.coeffs.size(); ++k)
    g_perp_mat -= dual.coeffs(k) * basis.basis[k].matrix();

  PrimalSolution out{DensityOperator(rho0), DensityOperator(rho1), diff,
                     hs_inner(diff, HermitianOperator(g_perp_mat)), 0.0, false,
                     std::nullopt, std::nullopt};
  for (const auto& e : basis.basis)
    out.constraint_residual = std::max(out.constraint_residual, std::abs(hs_inner(diff, e)));
  out.feasible =
      out.constraint_residual <= opts.feasibility_tol && psd_violation < 1e-9;

  PureRepSearch reps = find_pure_representatives(mp, mq);
  if (reps.found) {
    ComplexVector psi_max = vp * reps.a;
    ComplexVector psi_min = vq * reps.b;
    fix_global_phase(psi_max);
    fix_global_phase(psi_min);
    out.pure_max = PureState(psi_max.normalized());
    out.pure_min = PureState(psi_min.normalized());
  }
  return out;
}

CodePair optimal_code(const PrimalSolution& primal) {
  const Eigen::Index d = primal.rho_max.dim();
  const Eigen::Index d_anc = 2 * d;
  ComplexVector v0 = purify_block(primal.rho_max.matrix(), d, d_anc, 0);
  ComplexVector v1 = purify_block(primal.rho_min.matrix(), d, d_anc, d);
  return CodePair(PureState(v0.normalized()), PureState(v1.normalized()), d, d_anc);
}

std::optional<CodePair> optimal_code_reduced(const PrimalSolution& primal,
                                             const LindbladModel& model,
                                             double tolerance) {
  if (!primal.pure_max || !primal.pure_min) return std::nullopt;
  CodePair bare(*primal.pure_max, *primal.pure_min, primal.rho_max.dim(), 1);
  QecReport rep = check_conditions(bare, model, tolerance);
  if (rep.passes_1 && rep.passes_2) return bare;
  return std::nullopt;
}

double optimal_qfi(const DualSolution& dual, double t) {
  if (t < 0.0) throw std::invalid_argument("optimal_qfi: negative time");
  return 4.0 * t * t * dual.optimal_norm * dual.optimal_norm;
}

DualityReport verify_duality(const DualSolution& dual, const PrimalSolution& primal,
                             const SpanBasis& basis, double tolerance) {
  DualityReport rep;
  rep.objective = primal.objective;
  rep.dual_value = 2.0 * dual.optimal_norm;
  rep.gap = std::abs(rep.objective - rep.dual_value);

  ComplexMatrix g_perp_mat = dual.optimal_operator.matrix();
  for (Eigen::Index k = 0; k < dual.coeffs.size(); ++k)
    g_perp_mat -= dual.coeffs(k) * basis.basis[k].matrix();
  CodePair code = optimal_code(primal);
  EffectiveGenerator eff = effective_generator(code, HermitianOperator(g_perp_mat));
  rep.code_eigengap = eff.eigengap;
  rep.eigengap_deviation = std::abs(rep.code_eigengap - rep.dual_value);
  rep.ok = rep.gap < tolerance && rep.eigengap_deviation < tolerance;
  return rep;
}

}  // namespace qecmet
