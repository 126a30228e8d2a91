#pragma once

#include <array>
#include <random>
#include <utility>
#include <vector>

#include "flosim/gaussian_state.hpp"

namespace flosim {

using Rng = std::mt19937_64;

// Maps theta into (-2 pi, 2 pi].
double normalize_angle(double theta);

// 1 + |sin(theta / 2)|
double extent_single(double theta);

// (sum_y |t(y)|)^2 = prod_j (|cos(theta_j/4)| + |sin(theta_j/4)|)^2
double xi_star(const std::vector<double>& thetas);

// t(y) = prod_j cos(theta_j/4)^(1-y_j) sin(theta_j/4)^y_j
double branch_weight(const std::vector<double>& thetas, const std::vector<int>& y);
// P(y) = |t(y)| / sqrt(xi*)
double branch_probability(const std::vector<double>& thetas, const std::vector<int>& y);

struct BranchSample {
  std::vector<int> y;
  double weight = 1.0;          // t(y), signed
  cplx prefactor{1.0, 0.0};     // i^{|y|} t(y)
};

BranchSample make_branch(const std::vector<double>& thetas, std::vector<int> y);
BranchSample sample_branch(const std::vector<double>& thetas, Rng& rng);

enum class Branch { A, B };

// |M_theta> = 1/2 (|0000> + |1100> + |0011> + e^{i theta} |1111>)
CVec dense_magic_state(double theta);
CVec dense_branch_state(double theta, Branch b);

// |A(theta)> or |B(theta)> on qubits (q[0], q[1]) and (q[2], q[3]), each pair
// adjacent, as scalar * prod_i exp(mu_i c_j c_k) |0>.
struct ElementaryOp {
  double mu;
  int j, k;
};

struct BranchPrep {
  std::vector<ElementaryOp> ops;  // applied first to last
  cplx scalar{1.0, 0.0};
};

BranchPrep branch_prep(double theta, Branch b, const std::array<int, 4>& q);

// GaussianDesc on m qubits with the branch state on qubits offset..offset+3
// and vacuum elsewhere.
GaussianDesc branch_state_desc(double theta, Branch b, int offset, int m);

// Sum of amplitude * |x> over even-parity basis strings x.
using SparseState = std::vector<std::pair<std::vector<int>, cplx>>;

// Largest |<s|state>|^2 over `trials` Haar-random Gaussian states s plus the
// given witnesses; a lower bound on the FLO fidelity.
double flo_fidelity_bound_check(const SparseState& state, int trials, Rng& rng,
                                const std::vector<GaussianDesc>& witnesses = {});

// Haar-random rotation in SO(d).
Mat random_special_orthogonal(Eigen::Index d, Rng& rng);

// 1 + 2 |sin(2 theta)|
double fermionic_nonlinearity_rot(double theta);

}  // namespace flosim
