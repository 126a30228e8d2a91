#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace flosim {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// Max-norm tolerances, scaled by matrix dimension.
inline double tol_sym(Eigen::Index dim) { return 1e-10 * static_cast<double>(dim); }
inline double tol_orth(Eigen::Index dim) { return 1e-10 * static_cast<double>(dim); }
inline double tol_block(Eigen::Index dim) { return 1e-9 * static_cast<double>(dim); }

double max_abs(const Mat& a);
double max_abs(const CMat& a);

// Omega = I (x) [[0,1],[-1,0]]; the vacuum covariance.
Mat symplectic_form(Eigen::Index dim);

// 2x2 rotation [[c, s], [-s, c]], i.e. exp([[0, t], [-t, 0]]).
Eigen::Matrix2d rot2(double t);

// Validates antisymmetry within tol_sym and returns (A - A^T)/2.
// Throws ShapeError (non-square, asymmetric) or DimensionError (odd, when require_even).
Mat checked_antisym(const Mat& a, bool require_even = true);
CMat checked_antisym(const CMat& a, bool require_even = true);

// Validates R R^T = I and det R = +1 within tol_orth. Throws ShapeError.
void check_special_orthogonal(const Mat& r);

bool commutes_with_omega(const Mat& a, double tol);

double pfaffian(const Mat& a);
cplx pfaffian(const CMat& a);
// Skips validation; odd dimension gives 0. For internally assembled matrices.
cplx pfaffian_unchecked(const CMat& a);

// rotation * A * rotation^T = (+)_j [[0, l_j], [-l_j, 0]] (+) 0.
// angles: one per 2x2 block (floor(d/2) of them), descending |l|; zero blocks
// carry angle 0. trailing_zero_count: rows of the trailing exactly-null block.
struct BlockDiagForm {
  Mat rotation;
  std::vector<double> angles;
  int trailing_zero_count = 0;
};

BlockDiagForm antisym_block_diag(const Mat& a);

// U A U^T = Lambda (x) i sigma_y with Lambda >= 0, descending.
struct ComplexBlockDiag {
  CMat unitary;
  Vec lambda;
};

ComplexBlockDiag complex_antisym_block_diag(const CMat& a);

Mat so_exp(const Mat& a);
Mat so_log(const Mat& r);

// Orthogonal R = basis * ((+)_j rot2(angles_j)) * basis^T with basis in SO(d),
// angles principal in (-pi, pi].
struct RotationBlocks {
  Mat basis;
  std::vector<double> angles;
};

RotationBlocks orthogonal_block_form(const Mat& r);

// K1 * A * K2 = R with K1, K2 orthogonal and symplectic (K Omega K^T = Omega).
// Under the reshuffled indexing (2p + h -> p + h n) R = [[R11, R12], [0, R22]],
// R11 upper triangular, R22 lower Hessenberg. For orthogonal A, R12 = 0 and R11
// is diagonal with entries +-1.
struct CondensedForm {
  Mat K1;
  Mat K2;
  Mat R;
};

CondensedForm symplectic_condensed_form(const Mat& a);

// Permutation between Omega ordering (2p + h) and block ordering (p + h n).
Mat to_block_order(const Mat& a);
Mat from_block_order(const Mat& a);

}  // namespace flosim
