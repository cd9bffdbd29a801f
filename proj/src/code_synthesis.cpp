#include "qecmet/code_synthesis.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace qecmet {

namespace {

// O acting on the probe factor of H_P ⊗ H_A.
ComplexMatrix on_probe(const ComplexMatrix& op, Eigen::Index d_ancilla) {
  if (d_ancilla == 1) return op;
  return tensor(op, ComplexMatrix::Identity(d_ancilla, d_ancilla));
}

// 2x2 code-basis block <c_i|op_full|c_j>.
Eigen::Matrix2cd code_block(const CodePair& code, const ComplexMatrix& op_full) {
  const ComplexVector a0 = op_full * code.c0.amplitudes();
  const ComplexVector a1 = op_full * code.c1.amplitudes();
  Eigen::Matrix2cd b;
  b(0, 0) = code.c0.amplitudes().dot(a0);
  b(0, 1) = code.c0.amplitudes().dot(a1);
  b(1, 0) = code.c1.amplitudes().dot(a0);
  b(1, 1) = code.c1.amplitudes().dot(a1);
  return b;
}

double proportionality_residual(const Eigen::Matrix2cd& b) {
  Eigen::Matrix2cd dev = b - b(0, 0) * Eigen::Matrix2cd::Identity();
  return dev.cwiseAbs().maxCoeff();
}

void fix_column_phase(ComplexMatrix& q, Eigen::Index col, const ComplexVector& target) {
  const Complex overlap = target.dot(q.col(col));
  if (std::abs(overlap) > 1e-12) q.col(col) *= std::abs(overlap) / overlap;
}

}  // namespace

// Weights below the noise floor are dropped: sqrt() would otherwise lift
// 1e-16 rounding junk into 1e-8 amplitudes.
ComplexVector purify_block(const ComplexMatrix& rho, Eigen::Index d_probe,
                           Eigen::Index d_ancilla, Eigen::Index offset) {
  EigResult es = eig_hermitian(HermitianOperator(rho));
  const double cut = 1e-13 * es.values.maxCoeff();
  ComplexVector out = ComplexVector::Zero(d_probe * d_ancilla);
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double p = es.values(i);
    if (p <= cut) continue;
    const double w = std::sqrt(p);
    for (Eigen::Index row = 0; row < d_probe; ++row)
      out(row * d_ancilla + offset + i) += w * es.vectors(row, i);
  }
  return out;
}

CodePair::CodePair(PureState a, PureState b, Eigen::Index dp, Eigen::Index da,
                   double ortho_tol)
    : c0(std::move(a)), c1(std::move(b)), d_probe(dp), d_ancilla(da) {
  if (d_probe <= 0 || d_ancilla <= 0)
    throw std::invalid_argument("CodePair: dimensions must be positive");
  if (c0.dim() != d_probe * d_ancilla || c1.dim() != d_probe * d_ancilla)
    throw std::invalid_argument("CodePair: state dimension does not factor as probe*ancilla");
  const double overlap = std::abs(c0.amplitudes().dot(c1.amplitudes()));
  if (overlap > ortho_tol)
    throw std::invalid_argument("CodePair: code words not orthogonal, overlap " +
                                std::to_string(overlap));
  projector = c0.projector() + c1.projector();
}

CodePair canonical_code(const HermitianOperator& g_perp, double trace_tol) {
  const double weight = trace_abs(g_perp);
  if (weight <= 0.0)
    throw std::invalid_argument("canonical_code: perpendicular component is zero");
  const double tr = g_perp.matrix().trace().real();
  if (std::abs(tr) > trace_tol * std::max(1.0, weight))
    throw std::invalid_argument("canonical_code: input not traceless (trace " +
                                std::to_string(tr) + ")");

  const Eigen::Index d = g_perp.dim();
  EigResult es = eig_hermitian(g_perp);
  const double eig_cut = 1e-12 * es.values.cwiseAbs().maxCoeff();
  ComplexMatrix pos = ComplexMatrix::Zero(d, d);
  ComplexMatrix neg = ComplexMatrix::Zero(d, d);
  double w_pos = 0.0, w_neg = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam = es.values(i);
    if (lam > eig_cut) {
      pos += lam * (es.vectors.col(i) * es.vectors.col(i).adjoint());
      w_pos += lam;
    } else if (lam < -eig_cut) {
      neg += (-lam) * (es.vectors.col(i) * es.vectors.col(i).adjoint());
      w_neg += -lam;
    }
  }
  if (w_pos <= 0.0 || w_neg <= 0.0)
    throw std::invalid_argument("canonical_code: spectral split degenerate");

  // rho0 purifies into ancilla indices {0..d-1}, rho1 into {d..2d-1}; the
  // disjoint blocks guarantee orthogonal ancilla support.
  const Eigen::Index d_anc = 2 * d;
  ComplexVector v0 = purify_block(pos / w_pos, d, d_anc, 0);
  ComplexVector v1 = purify_block(neg / w_neg, d, d_anc, d);
  return CodePair(PureState(v0.normalized()), PureState(v1.normalized()), d, d_anc);
}

QecReport check_conditions(const CodePair& code, const LindbladModel& model,
                           double tolerance) {
  if (model.dim != code.d_probe)
    throw std::invalid_argument("check_conditions: model/code dimension mismatch");
  QecReport rep;
  rep.tol_used = tolerance;
  const auto r = model.lindblad_ops.size();
  rep.pair_expectations = ComplexMatrix::Zero(r, r);

  for (const auto& l : model.lindblad_ops) {
    Eigen::Matrix2cd b = code_block(code, on_probe(l, code.d_ancilla));
    rep.jump_expectations.push_back(b(0, 0));
    rep.residual_1 = std::max(rep.residual_1, proportionality_residual(b));
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < r; ++j) {
      ComplexMatrix prod = model.lindblad_ops[k].adjoint() * model.lindblad_ops[j];
      Eigen::Matrix2cd b = code_block(code, on_probe(prod, code.d_ancilla));
      rep.pair_expectations(k, j) = b(0, 0);
      rep.residual_2 = std::max(rep.residual_2, proportionality_residual(b));
    }
  }

  Eigen::Matrix2cd bg = code_block(code, on_probe(model.generator.matrix(), code.d_ancilla));
  rep.gap_3 = std::abs(bg(0, 0) - bg(1, 1)) + 2.0 * std::abs(bg(0, 1));
  rep.passes_1 = rep.residual_1 < tolerance;
  rep.passes_2 = rep.residual_2 < tolerance;
  rep.passes_3 = rep.gap_3 > tolerance;
  return rep;
}

QecReport check_conditions_generalized(const CodePair& code,
                                       const LindbladModel& probe_model,
                                       const LindbladModel& ancilla_model,
                                       double tolerance) {
  if (probe_model.dim != code.d_probe || ancilla_model.dim != code.d_ancilla)
    throw std::invalid_argument("check_conditions_generalized: dimension mismatch");
  SpanBasis sp = orthonormal_basis(hermitian_generators(probe_model));
  SpanBasis sa = orthonormal_basis(hermitian_generators(ancilla_model));

  QecReport rep;
  rep.tol_used = tolerance;
  rep.pair_expectations = ComplexMatrix::Zero(sp.basis.size(), sa.basis.size());
  for (std::size_t k = 0; k < sp.basis.size(); ++k) {
    for (std::size_t l = 0; l < sa.basis.size(); ++l) {
      Eigen::Matrix2cd b =
          code_block(code, tensor(sp.basis[k].matrix(), sa.basis[l].matrix()));
      rep.pair_expectations(k, l) = b(0, 0);
      const double res = proportionality_residual(b);
      rep.residual_1 = std::max(rep.residual_1, res);
      rep.residual_2 = rep.residual_1;
    }
  }

  Eigen::Matrix2cd bg =
      code_block(code, on_probe(probe_model.generator.matrix(), code.d_ancilla));
  rep.gap_3 = std::abs(bg(0, 0) - bg(1, 1)) + 2.0 * std::abs(bg(0, 1));
  rep.passes_1 = rep.residual_1 < tolerance;
  rep.passes_2 = rep.passes_1;
  rep.passes_3 = rep.gap_3 > tolerance;
  return rep;
}

EffectiveGenerator effective_generator(const CodePair& code, const HermitianOperator& g) {
  if (g.dim() != code.d_probe)
    throw std::invalid_argument("effective_generator: dimension mismatch");
  Eigen::Matrix2cd b = code_block(code, on_probe(g.matrix(), code.d_ancilla));
  HermitianOperator h(ComplexMatrix(b), 1e-9);
  EigResult es = eig_hermitian(h);
  return EffectiveGenerator{h, es.values(1) - es.values(0)};
}

PureState optimal_input_state(const EffectiveGenerator& g_eff, double gap_tol) {
  if (g_eff.eigengap <= gap_tol)
    throw std::invalid_argument("optimal_input_state: logical generator is degenerate");
  EigResult es = eig_hermitian(g_eff.matrix);
  ComplexVector v = (es.vectors.col(0) + es.vectors.col(1)) / std::sqrt(2.0);
  return PureState(v.normalized());
}

double noiseless_qfi(const EffectiveGenerator& g_eff, double t) {
  if (t < 0.0) throw std::invalid_argument("noiseless_qfi: negative time");
  return t * t * g_eff.eigengap * g_eff.eigengap;
}

RecoveryChannel build_recovery(const CodePair& code, const LindbladModel& model,
                               double tolerance) {
  QecReport rep = check_conditions(code, model, tolerance);
  if (!rep.passes_1 || !rep.passes_2)
    throw std::runtime_error(
        "build_recovery: code fails correctability conditions (residual_1 " +
        std::to_string(rep.residual_1) + ", residual_2 " + std::to_string(rep.residual_2) +
        ", tol " + std::to_string(tolerance) + ")");

  const Eigen::Index n = code.c0.dim();
  const auto r = model.lindblad_ops.size();

  // Gram matrix of the deviation operators on the code: mu_kj - conj(lambda_k) lambda_j.
  ComplexMatrix gram = ComplexMatrix::Zero(r, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < r; ++j)
      gram(k, j) = rep.pair_expectations(k, j) -
                   std::conj(rep.jump_expectations[k]) * rep.jump_expectations[j];

  std::vector<ComplexVector> error_vecs;  // ordered pairs (syndrome m, logical i)
  if (r > 0) {
    EigResult ge = eig_hermitian(HermitianOperator(gram, 1e-8));
    const double cut = tol::rank * std::max(ge.values.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index m = ge.values.size() - 1; m >= 0; --m) {
      if (ge.values(m) <= cut) continue;
      ComplexMatrix f = ComplexMatrix::Zero(model.dim, model.dim);
      for (std::size_t k = 0; k < r; ++k)
        f += ge.vectors(k, m) *
             (model.lindblad_ops[k] -
              rep.jump_expectations[k] * ComplexMatrix::Identity(model.dim, model.dim));
      const ComplexMatrix f_full = on_probe(f, code.d_ancilla);
      const double w = std::sqrt(ge.values(m));
      error_vecs.push_back(f_full * code.c0.amplitudes() / w);
      error_vecs.push_back(f_full * code.c1.amplitudes() / w);
    }
  }

  // One full QR pins down an exactly orthonormal frame: code words first, then
  // syndrome vectors, then the unreachable complement.
  ComplexMatrix v(n, 2 + static_cast<Eigen::Index>(error_vecs.size()));
  v.col(0) = code.c0.amplitudes();
  v.col(1) = code.c1.amplitudes();
  for (std::size_t i = 0; i < error_vecs.size(); ++i)
    v.col(2 + static_cast<Eigen::Index>(i)) = error_vecs[i];
  Eigen::HouseholderQR<ComplexMatrix> qr(v);
  ComplexMatrix q = qr.householderQ();
  for (Eigen::Index c = 0; c < v.cols(); ++c) fix_column_phase(q, c, v.col(c));

  std::vector<ComplexMatrix> kraus;
  kraus.push_back(code.c0.amplitudes() * q.col(0).adjoint() +
                  code.c1.amplitudes() * q.col(1).adjoint());
  const int n_syndromes = static_cast<int>(error_vecs.size() / 2);
  for (int m = 0; m < n_syndromes; ++m)
    kraus.push_back(code.c0.amplitudes() * q.col(2 + 2 * m).adjoint() +
                    code.c1.amplitudes() * q.col(3 + 2 * m).adjoint());
  const Eigen::Index used = 2 + static_cast<Eigen::Index>(error_vecs.size());
  for (Eigen::Index c = used; c < n; ++c)
    kraus.push_back(code.c0.amplitudes() * q.col(c).adjoint());

  return RecoveryChannel{QuantumChannel(std::move(kraus)), n_syndromes,
                         static_cast<int>(n - used)};
}

CodePair concatenate_codes(const CodePair& outer, const std::vector<PureState>& inner_basis,
                           double ortho_tol) {
  if (static_cast<Eigen::Index>(inner_basis.size()) != outer.d_ancilla)
    throw std::invalid_argument("concatenate_codes: need one inner state per ancilla index");
  const Eigen::Index d_inner = inner_basis.front().dim();
  for (std::size_t i = 0; i < inner_basis.size(); ++i) {
    if (inner_basis[i].dim() != d_inner)
      throw std::invalid_argument("concatenate_codes: inner states of unequal dimension");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(inner_basis[j].amplitudes().dot(inner_basis[i].amplitudes())) > ortho_tol)
        throw std::invalid_argument("concatenate_codes: inner basis not orthonormal");
  }

  auto substitute = [&](const PureState& word) {
    ComplexVector out = ComplexVector::Zero(outer.d_probe * d_inner);
    for (Eigen::Index p = 0; p < outer.d_probe; ++p)
      for (Eigen::Index a = 0; a < outer.d_ancilla; ++a)
        out.segment(p * d_inner, d_inner) +=
            word.amplitudes()(p * outer.d_ancilla + a) * inner_basis[a].amplitudes();
    return PureState(out.normalized());
  };
  return CodePair(substitute(outer.c0), substitute(outer.c1), outer.d_probe, d_inner);
}

CodePair compress_code(const CodePair& code, double rank_tol) {
  if (code.d_ancilla == 1) return code;
  ComplexMatrix anc_support =
      partial_trace(code.projector, code.d_probe, code.d_ancilla, Subsystem::Second);
  EigResult es = eig_hermitian(HermitianOperator(anc_support, 1e-9));
  const double cut = rank_tol * es.values.maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = es.values.size() - 1; i >= 0; --i)
    if (es.values(i) > cut) kept.push_back(i);
  const Eigen::Index d_new = static_cast<Eigen::Index>(kept.size());
  if (d_new == code.d_ancilla) return code;

  ComplexMatrix w(code.d_ancilla, d_new);
  for (Eigen::Index i = 0; i < d_new; ++i) w.col(i) = es.vectors.col(kept[i]);

  auto shrink = [&](const PureState& word) {
    ComplexVector out(code.d_probe * d_new);
    for (Eigen::Index p = 0; p < code.d_probe; ++p)
      out.segment(p * d_new, d_new) =
          w.adjoint() * word.amplitudes().segment(p * code.d_ancilla, code.d_ancilla);
    return PureState(out.normalized());
  };
  return CodePair(shrink(code.c0), shrink(code.c1), code.d_probe, d_new);
}

std::optional<CodePair> ancilla_free_reduction(const CodePair& code,
                                               const LindbladModel& model,
                                               double tolerance) {
  if (code.d_ancilla == 1) return code;
  auto pure_part = [&](const PureState& word) -> std::optional<ComplexVector> {
    ComplexMatrix red =
        partial_trace(word.projector(), code.d_probe, code.d_ancilla, Subsystem::First);
    EigResult es = eig_hermitian(HermitianOperator(red, 1e-9));
    const Eigen::Index top = es.values.size() - 1;
    if (es.values(top) < 1.0 - 1e-9) return std::nullopt;  // genuinely mixed
    ComplexVector psi = es.vectors.col(top);
    // canonical phase: largest amplitude real positive
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < psi.size(); ++i)
      if (std::abs(psi(i)) > std::abs(psi(imax))) imax = i;
    psi *= std::abs(psi(imax)) / psi(imax);
    return psi;
  };
  auto p0 = pure_part(code.c0);
  auto p1 = pure_part(code.c1);
  if (!p0 || !p1) return std::nullopt;
  CodePair bare(PureState(p0->normalized()), PureState(p1->normalized()), code.d_probe, 1);
  QecReport rep = check_conditions(bare, model, tolerance);
  if (rep.passes_1 && rep.passes_2) return bare;
  return std::nullopt;
}

PureState embed_logical(const CodePair& code, const PureState& logical) {
  if (logical.dim() != 2)
    throw std::invalid_argument("embed_logical: logical state must be two-dimensional");
  ComplexVector v = logical.amplitudes()(0) * code.c0.amplitudes() +
                    logical.amplitudes()(1) * code.c1.amplitudes();
  return PureState(v.normalized());
}

}  // namespace qecmet
