#include <gtest/gtest.h>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "flosim/estimator.hpp"
#include "random_flo.hpp"

using namespace flosim;
using namespace flosim::testing;

namespace {

Circuit cz_circuit() {
  Circuit c;
  c.n = 4;
  c.input = {0, 0, 0, 0};
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  c.gates.emplace_back(Matchgate{0, h, h});
  c.gates.emplace_back(Matchgate{2, h, h});
  c.gates.emplace_back(Matchgate{1, h, h});
  c.gates.emplace_back(ControlledPhase{M_PI, 1});
  c.gates.emplace_back(Matchgate{1, h, h});
  c.output = {1, 1, 0, 0};
  return c;
}

}  // namespace

TEST(Plan, MatchesFormula) {
  SamplePlan p = plan_samples({M_PI}, 0.1, 0.05, EstimatorMode::AllQubits);
  double want = 2 * std::pow(std::sqrt(2.0) + 1, 2) / std::pow(std::sqrt(1.1) - 1, 2) * std::log(2 * M_E * M_E / 0.05);
  EXPECT_EQ(p.s, static_cast<long>(std::ceil(want)));
  SamplePlan q = plan_samples({}, 0.1, 0.05, EstimatorMode::AllQubits);
  EXPECT_EQ(q.s, 1);
  SamplePlan r = plan_samples({0.0}, 0.1, 0.05, EstimatorMode::AllQubits);
  EXPECT_GT(p.s, r.s);
  SamplePlan part = plan_samples({M_PI}, 0.1, 0.1, EstimatorMode::Partial, 1.0, 2);
  EXPECT_GE(part.l * part.L, 32 * M_E * M_E * std::sqrt(2.0) / 0.01 * std::log(2 / 0.1));
  EXPECT_THROW(plan_samples({}, 0.0, 0.1, EstimatorMode::AllQubits), ParamError);
  EXPECT_THROW(plan_samples({}, 0.1, 1.0, EstimatorMode::AllQubits), ParamError);
  EXPECT_THROW(plan_samples({}, 0.1, 0.1, EstimatorMode::AllQubits, 0.0), ParamError);
}

TEST(Alpha, MatchesDenseAndIsBounded) {
  Rng rng(81);
  for (int t = 0; t < 6; ++t) {
    Circuit c = random_circuit(4, 6, {M_PI, 0.3}, rng);
    GadgetizedProgram p = gadgetize(c);
    GaussianDesc psi = evolve_program(p);
    cplx amp = branch_sum_amplitude(p, psi);
    EXPECT_NEAR(std::norm(amp), dense_born(c), 1e-8);
    for (int y = 0; y < 4; ++y) EXPECT_LE(std::abs(alpha_y(p, psi, {y & 1, y >> 1})), 1 + 1e-6);
  }
}

TEST(Alpha, NoGadgetsIsBasisAmplitude) {
  Rng rng(82);
  Circuit c = random_circuit(4, 5, {}, rng);
  GadgetizedProgram p = gadgetize(c);
  GaussianDesc psi = evolve_program(p);
  cplx a = alpha_y(p, psi, {});
  EXPECT_LT(std::abs(a - dense_run(c)(basis_index(c.output))), 1e-9);
}

TEST(BasisBra, ChainAgreesWithExplicitState) {
  Rng rng(83);
  for (int t = 0; t < 10; ++t) {
    std::vector<int> fixed{kUnmeasured, 1, kUnmeasured, 1, kUnmeasured, kUnmeasured};
    BasisBra b = random_basis_bra(fixed, rng);
    EXPECT_EQ(b.x[1], 1);
    EXPECT_EQ((b.x[0] + b.x[2] + b.x[4] + b.x[5]) % 2, 0);
    GaussianDesc psi = canonical_from_rotation(6, random_special_orthogonal(12, rng));
    EXPECT_LT(std::abs(basis_bra_overlap(b, psi) - gaussian_overlap(basis_bra_state(b), psi)), 1e-9);
  }
}

TEST(BasisBra, NormSampleIsUnbiased) {
  Rng rng(84);
  GaussianDesc psi = canonical_from_rotation(4, random_special_orthogonal(8, rng));
  psi.omega = 0.7;
  const int n = 20000;
  double acc = 0.0;
  std::vector<int> fixed(4, kUnmeasured);
  for (int i = 0; i < n; ++i) acc += norm_sample(fixed, {{1.0, psi}}, rng);
  EXPECT_NEAR(acc / n, 0.49, 0.03);
}

TEST(Estimator, FloOnlyIsExact) {
  Rng rng(85);
  Circuit c = random_circuit(4, 8, {}, rng);
  EstimateResult r = estimate(c, 0.1, 0.1, 7);
  EXPECT_EQ(r.s_used, 1);
  EXPECT_NEAR(r.p_raw, dense_born(c), 1e-8);
}

TEST(Estimator, DeterministicGivenSeed) {
  Circuit c = cz_circuit();
  EstimateResult a = estimate(c, 0.2, 0.2, 42), b = estimate(c, 0.2, 0.2, 42);
  EXPECT_EQ(a.p_raw, b.p_raw);
  EstimateOptions two;
  two.threads = 2;
  EXPECT_EQ(estimate(c, 0.2, 0.2, 42, two).p_raw, a.p_raw);
}

TEST(Estimator, CzCircuitWithinEpsilon) {
  Circuit c = cz_circuit();
  const double p = dense_born(c);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EstimateResult r = estimate_all_qubits(c, 0.1, 0.1, seed);
    hits += std::abs(r.p_hat - p) <= 0.1;
    EXPECT_LE(r.max_abs_alpha, 1 + 1e-6);
  }
  EXPECT_GE(hits, 8);
}

TEST(Estimator, PartialFullyMeasuredMatchesAllQubits) {
  Rng rng(86);
  Circuit c = random_circuit(4, 6, {}, rng);
  EstimateResult r = estimate_partial(c, 0.1, 0.1, 3);
  EXPECT_NEAR(r.p_raw, dense_born(c), 1e-8);
}

TEST(Estimator, PartialFloOnly) {
  Rng rng(87);
  Circuit c = random_circuit(4, 6, {}, rng);
  c.output = {1, 1, kUnmeasured, kUnmeasured};
  const double p = dense_born(c);
  EstimateResult r = estimate_partial(c, 0.2, 0.2, 5);
  EXPECT_NEAR(r.p_hat, p, 0.2);
}

TEST(Estimator, Validation) {
  Circuit c = cz_circuit();
  c.output = {1, 0, 0, 0};
  EXPECT_THROW(estimate(c, 0.1, 0.1, 1), ParityError);
  c.output = {1, 1, 0, 0};
  EXPECT_THROW(estimate(c, 1.5, 0.1, 1), ParamError);
  c.output = {1, kUnmeasured, 0, 0};
  EXPECT_THROW(estimate_all_qubits(c, 0.1, 0.1, 1), ParamError);
}
