#include "qecmet/lindblad_span.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace qecmet;
using qecmet::testing::Rng;

namespace {

LindbladModel single_jump(const ComplexMatrix& g, const ComplexMatrix& l) {
  return LindbladModel(HermitianOperator(g), {l}, {}, 1.0);
}

bool in_span(const HermitianOperator& op, const SpanBasis& basis, double tol) {
  auto [par, perp] = decompose(op, basis);
  return hs_norm(perp) <= tol * std::max(1.0, hs_norm(op));
}

}  // namespace

TEST_CASE("hermitian_generators counts and qubit expansion") {
  LindbladModel no_noise(HermitianOperator(ComplexMatrix(0.5 * pauli_z())), {}, {}, 1.0);
  auto gens0 = hermitian_generators(no_noise);
  REQUIRE(gens0.size() == 1);
  CHECK(max_abs(gens0[0].matrix() - ComplexMatrix::Identity(2, 2)) < 1e-15);

  LindbladModel flip = single_jump(0.5 * pauli_z(), pauli_x());
  auto gens = hermitian_generators(flip);
  REQUIRE(gens.size() == 4);  // 1 + 2r + r^2
  CHECK(max_abs(gens[1].matrix() - 2.0 * pauli_x()) < 1e-15);        // L + L†
  CHECK(max_abs(gens[2].matrix()) < 1e-15);                          // i(L - L†)
  CHECK(max_abs(gens[3].matrix() - 2.0 * ComplexMatrix::Identity(2, 2)) < 1e-15);

  Rng rng(21);
  for (int r = 1; r <= 3; ++r) {
    std::vector<ComplexMatrix> ls;
    for (int k = 0; k < r; ++k) ls.push_back(qecmet::testing::random_complex(rng, 3, 3));
    LindbladModel m(qecmet::testing::random_hermitian(rng, 3), ls, {}, 1.0);
    CHECK(hermitian_generators(m).size() == std::size_t(1 + 2 * r + r * r));
  }
}

TEST_CASE("hermitian_generators includes the quartic-probe ladder structure") {
  const Eigen::Index dim = 5;
  ComplexMatrix a = annihilation_op(dim);
  LindbladModel m(HermitianOperator(number_op(dim) * number_op(dim)), {a}, {}, 1.0);
  auto gens = hermitian_generators(m);
  REQUIRE(gens.size() == 4);
  CHECK(max_abs(gens[1].matrix() - (a + a.adjoint()).eval()) < 1e-14);
  CHECK(max_abs(gens[3].matrix() - 2.0 * number_op(dim)) < 1e-14);
}

TEST_CASE("orthonormal_basis normalizes, dedupes, and ranks") {
  SpanBasis one = orthonormal_basis({HermitianOperator::identity(2)});
  REQUIRE(one.basis.size() == 1);
  CHECK(max_abs(one.basis[0].matrix() -
                ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-14);

  LindbladModel flip = single_jump(0.5 * pauli_z(), pauli_x());
  SpanBasis basis = orthonormal_basis(hermitian_generators(flip));
  CHECK(basis.basis.size() == 2);  // span{I, sigma_x}
  CHECK(in_span(HermitianOperator(pauli_x()), basis, 1e-12));
  CHECK(in_span(HermitianOperator::identity(2), basis, 1e-12));
  CHECK_FALSE(in_span(HermitianOperator(pauli_z()), basis, 1e-6));

  // quartic probe at cutoff 4: span is {I, n, quadrature pair}
  LindbladModel kerr(HermitianOperator(number_op(5) * number_op(5)), {annihilation_op(5)},
                     {}, 1.0);
  CHECK(orthonormal_basis(hermitian_generators(kerr)).basis.size() == 4);

  for (std::size_t i = 0; i < basis.basis.size(); ++i)
    for (std::size_t j = 0; j < basis.basis.size(); ++j)
      CHECK(std::abs(hs_inner(basis.basis[i], basis.basis[j]) - (i == j ? 1.0 : 0.0)) <
            1e-10);

  CHECK(orthonormal_basis({HermitianOperator::zero(3)}).basis.empty());
  CHECK_THROWS_AS(orthonormal_basis({}), std::invalid_argument);
}

TEST_CASE("span completeness on random models") {
  Rng rng(22);
  const Complex i_unit(0, 1);
  for (int trial = 0; trial < 15; ++trial) {
    const Eigen::Index dim = 2 + (trial % 4);
    const int r = 1 + (trial % 2);
    std::vector<ComplexMatrix> ls;
    for (int k = 0; k < r; ++k) ls.push_back(qecmet::testing::random_complex(rng, dim, dim));
    LindbladModel m(qecmet::testing::random_hermitian(rng, dim), ls, {}, 1.0);
    SpanBasis basis = orthonormal_basis(hermitian_generators(m));
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) {
        ComplexMatrix prod = ls[k].adjoint() * ls[j];
        CHECK(in_span(HermitianOperator(0.5 * (prod + prod.adjoint().eval())), basis, 1e-9));
        CHECK(in_span(HermitianOperator(0.5 * i_unit * (prod - prod.adjoint().eval())),
                      basis, 1e-9));
      }
  }
}

TEST_CASE("decompose splits orthogonally and is idempotent") {
  LindbladModel flip = single_jump(0.5 * pauli_z(), pauli_x());
  SpanBasis basis = orthonormal_basis(hermitian_generators(flip));

  auto [par_e, perp_e] = decompose(basis.basis[0], basis);
  CHECK(max_abs(perp_e.matrix()) < 1e-14);

  auto [par, perp] = decompose(HermitianOperator(ComplexMatrix(0.5 * pauli_z())), basis);
  CHECK(max_abs(par.matrix()) < 1e-14);
  CHECK(max_abs(perp.matrix() - 0.5 * pauli_z()) < 1e-14);

  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const Eigen::Index dim = 2 + (trial % 4);
    LindbladModel m = qecmet::testing::random_hnls_true_model(rng, dim, 1 + (trial % 2));
    SpanBasis b = orthonormal_basis(hermitian_generators(m));
    auto [p1, q1] = decompose(m.generator, b);
    auto [p2, q2] = decompose(p1, b);
    CHECK(max_abs(p2.matrix() - p1.matrix()) < 1e-12);
    CHECK(max_abs(q2.matrix()) < 1e-12);
    for (const auto& e : b.basis) CHECK(std::abs(hs_inner(q1, e)) < 1e-10);
  }
}

TEST_CASE("decompose projects the quartic generator to the tilted parabola") {
  const Eigen::Index dim = 5;
  LindbladModel kerr(HermitianOperator(number_op(dim) * number_op(dim)),
                     {annihilation_op(dim)}, {}, 1.0);
  SpanBasis basis = orthonormal_basis(hermitian_generators(kerr));
  auto [par, perp] = decompose(kerr.generator, basis);
  // least-squares fit of n^2 over {I, n} at cutoff 4 gives 4n - 2
  ComplexMatrix expected = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < 5; ++n) expected(n, n) = n * n - (4.0 * n - 2.0);
  CHECK(max_abs(perp.matrix() - expected) < 1e-12);
}

TEST_CASE("hnls verdicts on the qubit dichotomy") {
  HnlsVerdict perp_case = hnls_check(single_jump(0.5 * pauli_z(), pauli_x()));
  CHECK(perp_case.holds);
  CHECK(perp_case.perp_hs_norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(max_abs(perp_case.g_par.matrix() + perp_case.g_perp.matrix() -
                0.5 * pauli_z()) < 1e-14);

  CHECK_FALSE(hnls_check(single_jump(0.5 * pauli_z(), pauli_z())).holds);

  // complex direction with non-parallel real and imaginary parts spans
  // everything; no qubit generator survives
  ComplexMatrix l = pauli_x() + Complex(0, 1) * pauli_y();
  Rng rng(24);
  for (int trial = 0; trial < 8; ++trial) {
    HermitianOperator g = qecmet::testing::random_hermitian(rng, 2);
    CHECK_FALSE(hnls_check(single_jump(g.matrix(), l)).holds);
  }
}

TEST_CASE("hnls is invariant under jump-operator gauge mixing") {
  Rng rng(25);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Index dim = 2 + (trial % 3);
    const int r = 2;
    LindbladModel m = (trial % 2 == 0)
                          ? qecmet::testing::random_hnls_true_model(rng, dim, r)
                          : qecmet::testing::random_hnls_false_model(rng, dim, r);
    std::vector<ComplexMatrix> ls = m.lindblad_ops;
    while (ls.size() < std::size_t(r)) ls.push_back(ComplexMatrix::Zero(dim, dim));

    ComplexMatrix u = qecmet::testing::random_unitary(rng, r);
    std::vector<ComplexMatrix> mixed(ls.size(), ComplexMatrix::Zero(dim, dim));
    for (std::size_t a = 0; a < ls.size(); ++a)
      for (std::size_t b = 0; b < ls.size(); ++b) mixed[a] += u(a, b) * ls[b];
    for (auto& op : mixed)
      op += Complex(gauss(rng), gauss(rng)) * ComplexMatrix::Identity(dim, dim);

    LindbladModel remixed(m.generator, mixed, {}, m.omega);
    CHECK(hnls_check(remixed).holds == hnls_check(m).holds);
  }
}

TEST_CASE("single Hermitian jump with noncommuting generator always holds") {
  Rng rng(26);
  for (int trial = 0; trial < 12; ++trial) {
    HermitianOperator l = qecmet::testing::random_hermitian(rng, 2);
    HermitianOperator g = qecmet::testing::random_hermitian(rng, 2);
    ComplexMatrix comm = g.matrix() * l.matrix() - l.matrix() * g.matrix();
    if (max_abs(comm) < 1e-6) continue;
    CHECK(hnls_check(single_jump(g.matrix(), l.matrix())).holds);
  }
}
