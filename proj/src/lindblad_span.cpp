#include "qecmet/lindblad_span.hpp"

#include <iostream>
#include <stdexcept>

namespace qecmet {

LindbladModel::LindbladModel(HermitianOperator g, std::vector<ComplexMatrix> ls,
                             std::vector<ComplexMatrix> js, double omega_value)
    : dim(g.dim()),
      generator(std::move(g)),
      lindblad_ops(std::move(ls)),
      perturbing_ops(std::move(js)),
      omega(omega_value) {
  for (const auto& l : lindblad_ops) {
    if (l.rows() != dim || l.cols() != dim)
      throw std::invalid_argument("LindbladModel: jump operator dimension mismatch");
    if (!is_finite(l))
      throw std::invalid_argument("LindbladModel: jump operator has non-finite entries");
  }
  for (const auto& j : perturbing_ops) {
    if (j.rows() != dim || j.cols() != dim)
      throw std::invalid_argument("LindbladModel: perturbing operator dimension mismatch");
    if (!is_finite(j))
      throw std::invalid_argument("LindbladModel: perturbing operator has non-finite entries");
  }
}

std::vector<HermitianOperator> hermitian_generators(const LindbladModel& model) {
  const Complex i_unit(0.0, 1.0);
  std::vector<HermitianOperator> gens;
  const auto r = model.lindblad_ops.size();
  gens.reserve(1 + 2 * r + r * r);
  gens.push_back(HermitianOperator::identity(model.dim));
  for (const auto& l : model.lindblad_ops) {
    gens.emplace_back((l + l.adjoint()).eval());
    gens.emplace_back((i_unit * (l - l.adjoint())).eval());
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = k; j < r; ++j) {
      const ComplexMatrix& lk = model.lindblad_ops[k];
      const ComplexMatrix& lj = model.lindblad_ops[j];
      ComplexMatrix prod = lk.adjoint() * lj;
      gens.emplace_back((prod + prod.adjoint()).eval());
      if (j > k) gens.emplace_back((i_unit * (prod - prod.adjoint())).eval());
    }
  }
  return gens;
}

SpanBasis orthonormal_basis(const std::vector<HermitianOperator>& generators,
                            double rank_tol) {
  if (generators.empty())
    throw std::invalid_argument("orthonormal_basis: empty generator list");

  double max_norm = 0.0;
  for (const auto& g : generators) max_norm = std::max(max_norm, hs_norm(g));
  SpanBasis out;
  out.generator_count = static_cast<int>(generators.size());
  out.rank_tol = rank_tol;
  if (max_norm == 0.0) {
    std::cerr << "orthonormal_basis: all generators are zero, returning empty basis\n";
    return out;
  }
  const double cutoff = rank_tol * max_norm;

  // Modified Gram-Schmidt with a second orthogonalization pass per vector.
  for (const auto& g : generators) {
    ComplexMatrix v = g.matrix();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out.basis)
        v -= hs_inner(HermitianOperator(v), e) * e.matrix();
    const double n = v.norm();
    if (n > cutoff) out.basis.emplace_back((v / n).eval());
  }
  return out;
}

std::pair<HermitianOperator, HermitianOperator> decompose(const HermitianOperator& g,
                                                          const SpanBasis& basis) {
  ComplexMatrix par = ComplexMatrix::Zero(g.dim(), g.dim());
  for (const auto& e : basis.basis) {
    if (e.dim() != g.dim())
      throw std::invalid_argument("decompose: dimension mismatch with basis");
    par += hs_inner(g, e) * e.matrix();
  }
  HermitianOperator g_par(par);
  HermitianOperator g_perp((g.matrix() - par).eval());
  return {g_par, g_perp};
}

HnlsVerdict hnls_check(const LindbladModel& model, double tolerance) {
  const double tol_used =
      tolerance > 0.0 ? tolerance : 1e-8 * std::max(1.0, hs_norm(model.generator));
  SpanBasis basis = orthonormal_basis(hermitian_generators(model));
  auto [g_par, g_perp] = decompose(model.generator, basis);
  const double perp_norm = hs_norm(g_perp);
  HnlsVerdict v{
      .holds = perp_norm > tol_used,
      .marginal = perp_norm > tol_used / 10.0 && perp_norm < tol_used * 10.0,
      .g_perp = g_perp,
      .g_par = g_par,
      .perp_hs_norm = perp_norm,
      .tol_used = tol_used,
  };
  return v;
}

}  // namespace qecmet
