#pragma once

#include <cstdint>
#include <vector>

#include "flosim/numerics.hpp"

namespace flosim {

struct Circuit;
struct GadgetizedProgram;

inline constexpr int kDefaultDenseCap = 12;

// Throws CapacityError when m exceeds cap.
void check_dense_cap(int m, int cap = kDefaultDenseCap);

// Amplitude index of a basis string; qubit 0 is the most significant bit.
std::uint64_t basis_index(const std::vector<int>& bits);
CVec dense_basis_state(const std::vector<int>& bits);

// Jordan-Wigner: c_{2i} = Z..Z X_i, c_{2i+1} = Z..Z Y_i.
CVec dense_majorana(int m, int j, const CVec& psi);
// (w . c) psi for complex coefficients w.
CVec dense_linear_form(int m, const CVec& w, const CVec& psi);
// (1/4 sum alpha_jk c_j c_k) psi
CVec dense_quadratic(int m, const Mat& alpha, const CVec& psi);

// exp(1/4 sum alpha c c) as a 2^m x 2^m matrix via Hermitian eigendecomposition.
CMat dense_flo_unitary(int m, const Mat& alpha);
// Applies exp(1/4 sum alpha c c). Eigendecomposition up to 8 qubits, beyond
// that a scaled Taylor series run to machine precision.
CVec dense_apply_flo(int m, const Mat& alpha, const CVec& psi);
CVec dense_apply_elementary(int m, double mu, int j, int k, const CVec& psi);
CVec dense_apply_two_qubit(int m, int q, const Eigen::Matrix4cd& g, const CVec& psi);
CVec dense_apply_cphase(int m, double theta, int q, const CVec& psi);

// M_jk = -(i/2) <[c_j, c_k]> / <psi|psi>
Mat dense_covariance(int m, const CVec& psi);

// Final statevector of the circuit applied to |input>.
CVec dense_run(const Circuit& c, int cap = kDefaultDenseCap);
// Exact Born probability of the (possibly masked) output.
double dense_born(const Circuit& c, int cap = kDefaultDenseCap);

// Dense evaluation of a gadgetized program: the final state before projection,
// and 16^k |<b|<M_theta_1|..<M_theta_k| psi>|^2 (summed over unmeasured outputs).
CVec dense_program_state(const GadgetizedProgram& p, int cap = kDefaultDenseCap);
double dense_program_probability(const GadgetizedProgram& p, int cap = kDefaultDenseCap);

}  // namespace flosim
