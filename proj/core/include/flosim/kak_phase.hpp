#pragma once

#include <variant>
#include <vector>

#include "flosim/numerics.hpp"

namespace flosim {

// ---- passive generators ----------------------------------------------------
// [beta, Omega] = 0 iff beta = X (x) I + Y (x) i sigma_y; the map to the
// n x n matrix X + iY is an algebra isomorphism onto u(n).

bool is_passive(const Mat& beta, double tol);
CMat passive_to_complex(const Mat& k);
Mat passive_from_complex(const CMat& u);

// <0| exp(1/4 sum beta_jk c_j c_k) |0> = exp(-(i/4) tr(beta Omega)).
cplx passive_vacuum_phase(const Mat& beta);

// Principal generator of a passive rotation (eigen-angles in (-pi, pi]).
Mat passive_log(const Mat& k);

// xi with exp(xi) = exp(beta) exp(gamma) and matching vacuum phases, so that
// exp(1/4 xi c c) = exp(1/4 beta c c) exp(1/4 gamma c c) as operators.
Mat merge_passive(const Mat& beta, const Mat& gamma);

// ---- vacuum matrix elements --------------------------------------------------

// alpha + beta (w1 . c)(w2 . c)
struct PairFactor {
  CVec w1, w2;
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
};

// (w . c)
struct LinearFactor {
  CVec w;
};

// A passive unitary K with K^dag c K = rotation c and <0|K|0> = phase.
struct PassiveFactor {
  Mat rotation;
  cplx phase{1.0, 0.0};
};

using TraceItem = std::variant<PairFactor, LinearFactor>;
using ChainFactor = std::variant<PassiveFactor, PairFactor, LinearFactor>;

// exp(mu c_j c_k) = cos mu + sin mu c_j c_k
PairFactor elementary_factor(Eigen::Index dim, double mu, int j, int k);

// <ref| L_1 .. L_p M_1 .. M_q R_1 .. R_r |ref> for a Gaussian reference with
// covariance Mblock (<ref|c_j c_k|ref> = delta_jk + i M_jk). The three groups
// are kept apart for bookkeeping only; they are evaluated as one ordered product.
struct TripleTraceInput {
  Mat Mblock;
  std::vector<TraceItem> left;
  std::vector<TraceItem> middle;
  std::vector<TraceItem> right;
  cplx prefactor{1.0, 0.0};

  int m_count() const;  // number of linear factors
};

// Wick expansion: with forms f_1..f_N listed in order, C_ab = f_a^T H f_b
// (a < b, antisymmetrized), D = diag(beta on the first form of each pair) and
// B = alpha-blocks on pair positions, the element is prefactor * Pf(D C D + B).
// fold = false factors the betas out instead: prod(beta) * Pf(C + B / beta).
struct LMatrix {
  CMat L;
  cplx prefactor{1.0, 0.0};
};

LMatrix build_L_matrix(const TripleTraceInput& t, bool fold = true);
cplx triple_trace(const TripleTraceInput& t, bool fold = true);

// <0| F_1 F_2 .. F_N |0>. Passive factors are pushed to the right, where they
// act on the vacuum as phases.
cplx vacuum_chain(Eigen::Index dim, const std::vector<ChainFactor>& factors, bool fold = true);

// ---- KAK -------------------------------------------------------------------

// Lambda (x) i sigma_y (x) sigma_z: entries (4j, 4j+2) = L_j, (4j+1, 4j+3) = -L_j.
Mat kak_a_generator(const std::vector<double>& lambda);

// Chain factors of exp(1/4 sum G c c) for G = kak_a_generator(lambda).
std::vector<ChainFactor> kak_a_factors(const std::vector<double>& lambda);

// K1 exp(kak_a_generator(Lambda)) K2 = R with K1, K2 passive rotations.
struct KakSO {
  Mat K1;
  std::vector<double> Lambda;
  Mat K2;
};

KakSO kak_so(const Mat& r);

// exp(1/4 sum alpha c c) = sign * exp(1/4 beta c c) exp(1/4 G c c) exp(1/4 gamma c c)
// with G = kak_a_generator(Lambda).
struct KakFactors {
  Mat beta;
  std::vector<double> Lambda;
  Mat gamma;
  int sign = 1;
  double recovery_magnitude = 1.0;  // |matrix element| used to fix the sign
};

KakFactors kak_flo_with_sign(const Mat& alpha);

}  // namespace flosim
