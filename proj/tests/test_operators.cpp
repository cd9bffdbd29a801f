#include "qecmet/operators.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace qecmet;
using qecmet::testing::Rng;

namespace {

ComplexMatrix diag5(double a, double b, double c, double d, double e) {
  ComplexMatrix m = ComplexMatrix::Zero(5, 5);
  m(0, 0) = a; m(1, 1) = b; m(2, 2) = c; m(3, 3) = d; m(4, 4) = e;
  return m;
}

}  // namespace

TEST_CASE("validated types enforce their invariants") {
  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator{ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))},
                  std::invalid_argument);
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{v}, std::invalid_argument);
  CHECK_THROWS_AS(QuantumChannel{{ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))}},
                  std::invalid_argument);
  // sub-normalized Kraus sets pass only with the explicit flag
  std::vector<ComplexMatrix> half{0.5 * ComplexMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(QuantumChannel{half}, std::invalid_argument);
  CHECK_NOTHROW(QuantumChannel(half, true));
}

TEST_CASE("hs_inner on known pairs") {
  HermitianOperator id2 = HermitianOperator::identity(2);
  CHECK(hs_inner(id2, id2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hs_inner(HermitianOperator(pauli_z()), HermitianOperator(pauli_x())) ==
        doctest::Approx(0.0).epsilon(1e-14));
  HermitianOperator half_z(ComplexMatrix(0.5 * pauli_z()));
  CHECK(hs_inner(half_z, half_z) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(hs_inner(id2, HermitianOperator::identity(3)), std::invalid_argument);
}

TEST_CASE("operator_norm and trace_abs on known spectra") {
  HermitianOperator kerr_opt(diag5(2, -1, -2, -1, 2));
  CHECK(operator_norm(kerr_opt) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(trace_abs(kerr_opt) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(operator_norm(HermitianOperator::zero(3)) == doctest::Approx(0.0));
  CHECK(operator_norm(HermitianOperator(pauli_z())) == doctest::Approx(1.0));
  CHECK(trace_abs(HermitianOperator(ComplexMatrix(0.5 * pauli_z()))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_abs(HermitianOperator::identity(7)) == doctest::Approx(7.0));
}

TEST_CASE("eig_hermitian sorts ascending and reconstructs") {
  EigResult ex = eig_hermitian(HermitianOperator(pauli_x()));
  CHECK(ex.values(0) == doctest::Approx(-1.0));
  CHECK(ex.values(1) == doctest::Approx(1.0));
  // Hadamard-basis eigenvectors up to phase
  CHECK(std::abs(ex.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(ex.vectors(1, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));

  ComplexMatrix d3 = ComplexMatrix::Zero(3, 3);
  d3(0, 0) = 3; d3(1, 1) = 1; d3(2, 2) = 2;
  EigResult es = eig_hermitian(HermitianOperator(d3));
  CHECK(es.values(0) == doctest::Approx(1.0));
  CHECK(es.values(1) == doctest::Approx(2.0));
  CHECK(es.values(2) == doctest::Approx(3.0));

  // the shifted-and-centered quartic spectrum at cutoff 4: (n-2)^2 - 2
  ComplexMatrix tilted = ComplexMatrix::Zero(5, 5);
  for (int n = 0; n < 5; ++n) tilted(n, n) = (n - 2.0) * (n - 2.0) - 2.0;
  EigResult ek = eig_hermitian(HermitianOperator(tilted));
  RealVector expected(5);
  expected << -2, -1, -1, 2, 2;
  for (int i = 0; i < 5; ++i) CHECK(ek.values(i) == doctest::Approx(expected(i)));
}

TEST_CASE("eig_hermitian reconstruction property, dims 2-16") {
  Rng rng(11);
  for (Eigen::Index dim = 2; dim <= 16; ++dim) {
    HermitianOperator a = qecmet::testing::random_hermitian(rng, dim);
    EigResult es = eig_hermitian(a);
    ComplexMatrix rebuilt =
        es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
    const double scale = 1e-10 * double(dim) * std::max(1.0, max_abs(a.matrix()));
    CHECK(max_abs(rebuilt - a.matrix()) < scale);
    CHECK(max_abs(es.vectors.adjoint() * es.vectors -
                  ComplexMatrix::Identity(dim, dim)) < 1e-10);
    for (Eigen::Index i = 1; i < dim; ++i) CHECK(es.values(i) >= es.values(i - 1));
  }
}

TEST_CASE("hs_inner positivity and norm chain") {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 2 + (trial % 7);
    HermitianOperator a = qecmet::testing::random_hermitian(rng, dim);
    CHECK(hs_inner(a, a) >= 0.0);
    const double op = operator_norm(a), tr = trace_abs(a);
    CHECK(op <= tr + 1e-12);
    CHECK(tr <= double(dim) * op + 1e-12);
  }
  CHECK(hs_inner(HermitianOperator::zero(4), HermitianOperator::zero(4)) ==
        doctest::Approx(0.0));
}

TEST_CASE("tensor and partial_trace") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(tensor(id2, id2) - ComplexMatrix::Identity(4, 4)) == doctest::Approx(0.0));

  ComplexVector zero2(2), one2(2);
  zero2 << 1, 0;
  one2 << 0, 1;
  ComplexVector prod = tensor(zero2, zero2);
  ComplexMatrix reduced = partial_trace(prod * prod.adjoint(), 2, 2, Subsystem::First);
  CHECK(max_abs(reduced - zero2 * zero2.adjoint()) < 1e-14);

  ComplexVector bell = (tensor(zero2, zero2) + tensor(one2, one2)) / std::sqrt(2.0);
  ComplexMatrix bell_red = partial_trace(bell * bell.adjoint(), 2, 2, Subsystem::First);
  CHECK(max_abs(bell_red - 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-14);

  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(6, 6), 2, 2, Subsystem::First),
                  std::invalid_argument);
}

TEST_CASE("partial_trace of tensor factors, property") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index dp = 2 + (trial % 3), da = 2 + (trial % 4);
    ComplexMatrix a = qecmet::testing::random_complex(rng, dp, dp);
    ComplexMatrix b = qecmet::testing::random_complex(rng, da, da);
    ComplexMatrix full = tensor(a, b);
    CHECK(max_abs(partial_trace(full, dp, da, Subsystem::First) - a * b.trace()) < 1e-12);
    CHECK(max_abs(partial_trace(full, dp, da, Subsystem::Second) - b * a.trace()) < 1e-12);
  }
}

TEST_CASE("matrix_exp basics") {
  Rng rng(14);
  ComplexMatrix a = qecmet::testing::random_complex(rng, 4, 4);
  CHECK(max_abs(matrix_exp(a, Complex(0, 0)) - ComplexMatrix::Identity(4, 4)) < 1e-14);

  ComplexMatrix rot = matrix_exp(pauli_x(), Complex(0.0, -M_PI / 2.0));
  CHECK(max_abs(rot - Complex(0.0, -1.0) * pauli_x()) < 1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 0.3; d(1, 1) = -1.2; d(2, 2) = 2.0;
  ComplexMatrix ed = matrix_exp(d);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(ed(i, i) - std::exp(d(i, i))) < 1e-12);
}

TEST_CASE("apply_channel basics and dephasing") {
  QuantumChannel identity({ComplexMatrix::Identity(2, 2)});
  DensityOperator plus(ComplexMatrix(0.5 * (ComplexMatrix::Identity(2, 2) + pauli_x())));
  CHECK(max_abs(apply_channel(identity, plus).matrix() - plus.matrix()) < 1e-14);

  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1; p1(1, 1) = 1;
  QuantumChannel dephase({p0, p1});
  CHECK(max_abs(apply_channel(dephase, plus).matrix() -
                0.5 * ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("apply_channel is linear and positivity-preserving") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 2 + (trial % 4);
    QuantumChannel ch = qecmet::testing::random_channel(rng, dim, 2 + (trial % 3));
    DensityOperator r1 = qecmet::testing::random_density(rng, dim, dim);
    DensityOperator r2 = qecmet::testing::random_density(rng, dim, 1 + (trial % dim));

    ComplexMatrix mixed = 0.3 * r1.matrix() + 0.7 * r2.matrix();
    ComplexMatrix lhs = apply_channel(ch, mixed);
    ComplexMatrix rhs = 0.3 * apply_channel(ch, r1.matrix()) +
                        0.7 * apply_channel(ch, r2.matrix());
    CHECK(max_abs(lhs - rhs) < 1e-12);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(apply_channel(ch, r1).matrix(),
                                                    Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}
