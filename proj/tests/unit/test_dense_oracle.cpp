#include <gtest/gtest.h>

#include "flosim/circuit.hpp"
#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "random_flo.hpp"

using namespace flosim;

namespace {

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST(DenseOracle, MajoranaAlgebra) {
  const int m = 3;
  const int dim = 8;
  for (int j = 0; j < 2 * m; ++j)
    for (int k = 0; k < 2 * m; ++k) {
      CMat cj(dim, dim), ck(dim, dim);
      for (int x = 0; x < dim; ++x) {
        CVec e = CVec::Zero(dim);
        e(x) = 1.0;
        cj.col(x) = dense_majorana(m, j, e);
        ck.col(x) = dense_majorana(m, k, e);
      }
      CMat anti = cj * ck + ck * cj;
      CMat want = (j == k ? 2.0 : 0.0) * CMat::Identity(dim, dim);
      EXPECT_LT(max_abs(CMat(anti - want)), 1e-15);
      EXPECT_LT(max_abs(CMat(cj.adjoint() - cj)), 1e-15);
    }
}

TEST(DenseOracle, VacuumCovarianceIsOmega) {
  EXPECT_LT(max_abs(Mat(dense_covariance(3, dense_basis_state({0, 0, 0})) - symplectic_form(6))), 1e-15);
}

TEST(DenseOracle, HadamardMatchgatePreparesBellPair) {
  CVec psi = dense_apply_two_qubit(2, 0, matchgate_matrix(hadamard(), hadamard()), dense_basis_state({0, 0}));
  EXPECT_NEAR(psi(0).real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(psi(3).real(), std::sqrt(0.5), 1e-15);
  GeneratorWithPhase g = matchgate_to_generator(hadamard(), hadamard());
  CVec viaflo = g.phase * dense_apply_flo(2, g.alpha, dense_basis_state({0, 0}));
  EXPECT_LT((viaflo - psi).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseOracle, FswapIsSwapTimesCz) {
  Eigen::Matrix2cd z, x;
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  Eigen::Matrix4cd fswap = matchgate_matrix(z, x);
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero(), cz = Eigen::Matrix4cd::Identity();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  cz(3, 3) = -1;
  EXPECT_LT((fswap - swap * cz).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseOracle, FswapActsAsSwapOnEvenParityCarriedStates) {
  // Moving an even-parity two-qubit block past a neighbour with fSWAPs is a plain swap.
  Eigen::Matrix2cd z, x;
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  Eigen::Matrix4cd fswap = matchgate_matrix(z, x);
  for (int carried : {0b00, 0b11})
    for (int other = 0; other < 2; ++other) {
      // qubits: (other, c0, c1) -> (c0, c1, other)
      std::vector<int> in{other, carried >> 1 & 1, carried & 1};
      CVec psi = dense_basis_state(in);
      psi = dense_apply_two_qubit(3, 0, fswap, psi);
      psi = dense_apply_two_qubit(3, 1, fswap, psi);
      CVec want = dense_basis_state({in[1], in[2], other});
      EXPECT_LT((psi - want).cwiseAbs().maxCoeff(), 1e-15) << carried << other;
    }
}

TEST(DenseOracle, ControlledPhase) {
  CVec psi = CVec::Constant(4, 0.5);
  psi = dense_apply_cphase(2, 0.7, 0, psi);
  EXPECT_LT(std::abs(psi(3) - 0.5 * std::polar(1.0, 0.7)), 1e-15);
  EXPECT_EQ(psi(2), cplx(0.5));
}

TEST(DenseOracle, CapacityGuard) {
  EXPECT_THROW(check_dense_cap(13), CapacityError);
  EXPECT_NO_THROW(check_dense_cap(13, 14));
}

TEST(DenseOracle, TaylorPathAgreesWithEigen) {
  // On 9 qubits the Taylor path is used; a generator on the first 8 qubits
  // must agree with the 8-qubit eigendecomposition tensored with |0>.
  Rng rng(51);
  Mat a8 = flosim::testing::random_antisym(16, rng, 0.6);
  Mat a9 = Mat::Zero(18, 18);
  a9.topLeftCorner(16, 16) = a8;
  std::vector<int> bits{1, 1, 0, 0, 1, 0, 1, 0};
  CVec v8 = dense_flo_unitary(8, a8) * dense_basis_state(bits);
  bits.push_back(0);
  CVec v9 = dense_apply_flo(9, a9, dense_basis_state(bits));
  for (Eigen::Index x = 0; x < 256; ++x) {
    EXPECT_LT(std::abs(v9(2 * x) - v8(x)), 1e-10);
    EXPECT_EQ(v9(2 * x + 1), cplx(0.0));
  }
}

TEST(DenseOracle, BornMasking) {
  Circuit c;
  c.n = 2;
  c.input = {0, 0};
  c.gates.emplace_back(Matchgate{0, hadamard(), hadamard()});
  c.output = {1, 1};
  EXPECT_NEAR(dense_born(c), 0.5, 1e-14);
  c.output = {kUnmeasured, kUnmeasured};
  EXPECT_NEAR(dense_born(c), 1.0, 1e-14);
  c.output = {0, kUnmeasured};
  EXPECT_NEAR(dense_born(c), 0.5, 1e-14);
}
