#pragma once

#include <vector>

#include "flosim/dense_oracle.hpp"
#include "flosim/kak_phase.hpp"
#include "flosim/numerics.hpp"

namespace flosim {

// psi = omega K A |0> on m qubits (m even), with K^dag c K = R c, <0|K|0> = a
// and A = prod_j exp(lambda_j c_{4j} c_{4j+2}).
struct GaussianDesc {
  int m = 0;
  cplx omega{1.0, 0.0};
  Mat R;
  cplx a{1.0, 0.0};
  std::vector<double> lambda;
  bool zero = false;  // annihilated by a projector

  Eigen::Index dim() const { return 2 * m; }
  double norm() const { return zero ? 0.0 : std::abs(omega); }
};

GaussianDesc vacuum(int m);

// Rotation of the A factor: angle 2 lambda_j in each (4j, 4j+2) plane.
Mat a_rotation(const std::vector<double>& lambda);

Mat covariance(const GaussianDesc& g);

// Chain factors of K A (without omega), acting on the vacuum.
std::vector<ChainFactor> ket_factors(const GaussianDesc& g);
// Chain factors of (K A)^dag.
std::vector<ChainFactor> bra_factors(const GaussianDesc& g);

GaussianDesc apply_passive(const GaussianDesc& g, const Mat& S, cplx b);
// Convenience: S = exp(beta), b = passive_vacuum_phase(beta).
GaussianDesc apply_passive_generator(const GaussianDesc& g, const Mat& beta);

GaussianDesc apply_elementary(const GaussianDesc& g, double mu, int j, int k);
GaussianDesc apply_general_flo(const GaussianDesc& g, const Mat& alpha);

GaussianDesc apply_projector_zero(const GaussianDesc& g, int i);
GaussianDesc apply_projector_one(const GaussianDesc& g, int i);

struct BasisOverlap {
  cplx value{0.0, 0.0};
  bool odd_parity = false;
};

// <x|psi>
BasisOverlap basis_inner_product(const GaussianDesc& g, const std::vector<int>& x);

// <psi_1|psi_2>
cplx gaussian_overlap(const GaussianDesc& g1, const GaussianDesc& g2);

CVec dense_expand(const GaussianDesc& g, int cap = kDefaultDenseCap);

// Exactly |x> for an even-parity bitstring.
GaussianDesc basis_state(const std::vector<int>& bits);

// Normalized state with pure covariance M (global phase unspecified).
GaussianDesc gaussian_from_covariance(const Mat& M);

// Re-derives (R, a, lambda) from the total rotation O = phi(K A) of the state
// O Omega O^T; phase of the result unspecified, omega = 1.
GaussianDesc canonical_from_rotation(int m, const Mat& O);

}  // namespace flosim
