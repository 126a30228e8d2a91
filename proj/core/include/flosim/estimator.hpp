#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flosim/circuit.hpp"
#include "flosim/gaussian_state.hpp"
#include "flosim/magic.hpp"

namespace flosim {

enum class EstimatorMode { AllQubits, Partial };

struct SamplePlan {
  long s = 1;  // branch samples
  long l = 0;  // norm samples per group
  long L = 0;  // groups
  double epsilon = 0;
  double delta = 0;
  double p_assumed = 1;
  double xi_star = 1;
  int n_unmeasured = 0;
};

// Partial mode splits (epsilon, delta) evenly between the branch stage and the
// norm stage. No magic means a single deterministic branch (s = 1).
SamplePlan plan_samples(const std::vector<double>& angles, double epsilon, double delta, EstimatorMode mode,
                        double p_assumed = 1.0, int n_unmeasured = 0);

struct EstimateResult {
  double p_hat = 0;  // clamped to [0, 1]
  double p_raw = 0;
  long s_used = 0, l_used = 0, L_used = 0;
  double xi_star = 1;
  double max_abs_alpha = 0;
  std::uint64_t seed = 0;
  double wall_time = 0;
  long distinct_branches = 0;
  EstimatorMode mode = EstimatorMode::AllQubits;
  SamplePlan plan;
};

struct EstimateOptions {
  double p_assumed = 1.0;
  // Coarse pass (epsilon 1/4, delta/2) to bound p before planning the real run.
  bool adaptive = false;
  int threads = 0;  // 0: FLOSIM_THREADS or 1
};

// Once-evolved program state V |input>.
GaussianDesc evolve_program(const GadgetizedProgram& p);

// 4^k i^{-|y|} <b, y~| psi> where y~ puts branch A (y_j = 0) or B (y_j = 1) on
// block j and b is the full output (padding at 0). |alpha| > 1 + 1e-6 raises
// InternalError.
cplx alpha_y(const GadgetizedProgram& p, const GaussianDesc& psi, const std::vector<int>& y);

// sum_y t(y) alpha_y over every y; |.|^2 is the exact output probability.
// Exponential in k, used as a cross-check.
cplx branch_sum_amplitude(const GadgetizedProgram& p, const GaussianDesc& psi);

// theta = U |x> where phi(U) permutes the free Majoranas: U is stored as
// elementary rotations by +-pi/4 (signed transpositions), x is uniform over
// strings that agree with `fixed` where it is not kUnmeasured and have even
// parity on the free qubits.
struct BasisBra {
  std::vector<int> x;
  std::vector<ElementaryOp> ops;  // U = ops applied first to last
};

BasisBra random_basis_bra(const std::vector<int>& fixed, Rng& rng);
GaussianDesc basis_bra_state(const BasisBra& b);
// <theta|psi>, exact up to the (irrelevant) phase convention of U.
cplx basis_bra_overlap(const BasisBra& b, const GaussianDesc& psi);

// Random FLO basis state on n qubits (n even), all qubits free.
GaussianDesc random_flo_basis_bra(int n_unmeasured, Rng& rng);

// 2^{n'-1} |<theta|psi>|^2 averaged over random theta equals ||psi||^2 for an
// even-parity psi whose qubits outside the free set sit in the `fixed` state.
double norm_sample(const std::vector<int>& fixed, const std::vector<std::pair<cplx, GaussianDesc>>& terms, Rng& rng);

EstimateResult estimate_all_qubits(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                                   const EstimateOptions& opts = {});
EstimateResult estimate_partial(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                                const EstimateOptions& opts = {});
// Dispatches on c.full_output().
EstimateResult estimate(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                        const EstimateOptions& opts = {});

std::string mode_name(EstimatorMode m);

}  // namespace flosim
