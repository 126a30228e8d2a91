#include <gtest/gtest.h>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "flosim/estimator.hpp"
#include "random_flo.hpp"

using namespace flosim;
using namespace flosim::testing;

TEST(Gadgetize, LayoutInvariants) {
  Circuit c;
  c.n = 4;
  c.input = c.output = {0, 0, 0, 0};
  c.gates = {ControlledPhase{M_PI, 1}, ControlledPhase{0.3, 0}};
  GadgetizedProgram p = gadgetize(c);
  EXPECT_EQ(p.k, 2);
  EXPECT_EQ(p.total_qubits, 12);
  ASSERT_EQ(p.blocks.size(), 2u);
  EXPECT_DOUBLE_EQ(p.blocks[0].theta, -M_PI);
  EXPECT_DOUBLE_EQ(p.magic_angles[1], -0.3);
  for (const auto& b : p.blocks) {
    EXPECT_EQ(b.q[1], b.q[0] + 1);
    EXPECT_EQ(b.q[3], b.q[2] + 1);
  }
  for (int q = 1; q < 4; ++q) EXPECT_LT(p.output_qubit[q - 1], p.output_qubit[q]);
  EXPECT_EQ(p.flo_gates.size(), 4u);
}

TEST(Gadgetize, RepeatedPairCrossesDeadBlock) {
  // The second gadget sees the first one's dead block between its targets.
  Rng rng(73);
  Circuit c = random_circuit(4, 0, {}, rng);
  c.gates = {random_matchgate(1, rng), ControlledPhase{0.7, 1}, random_matchgate(0, rng), random_matchgate(1, rng),
             ControlledPhase{1.9, 1}, random_matchgate(1, rng)};
  c.output = {1, 0, 1, 0};
  GadgetizedProgram p = gadgetize(c);
  EXPECT_GT(p.blocks[1].q[2], p.blocks[1].q[1] + 1);
  EXPECT_NEAR(dense_program_probability(p), dense_born(c), 1e-8);
}

TEST(Gadgetize, PadsOddRegisters) {
  Circuit c;
  c.n = 3;
  c.input = c.output = {0, 0, 0};
  c.gates = {ControlledPhase{1.0, 0}};
  GadgetizedProgram p = gadgetize(c);
  EXPECT_EQ(p.total_qubits, 8);
  EXPECT_EQ(p.input.size(), 8u);
}

TEST(Gadgetize, RejectsControlledPhaseWithoutNeighbour) {
  Circuit c;
  c.n = 2;
  c.input = c.output = {0, 0};
  c.gates = {ControlledPhase{1.0, 1}};
  EXPECT_THROW(gadgetize(c), AdjacencyError);
}

TEST(Gadgetize, DenseIdentity) {
  Rng rng(71);
  for (int k : {1, 2})
    for (double th : {M_PI, M_PI / 2, 0.3})
      for (int t = 0; t < 3; ++t) {
        Circuit c = random_circuit(4, 6, std::vector<double>(k, th), rng);
        GadgetizedProgram p = gadgetize(c);
        EXPECT_NEAR(dense_program_probability(p), dense_born(c), 1e-8) << k << " " << th;
        c.output[1] = c.output[2] = kUnmeasured;
        p = gadgetize(c);
        EXPECT_NEAR(dense_program_probability(p), dense_born(c), 1e-8);
        // Each projected gadget divides the norm by exactly 4.
        c.output.assign(4, kUnmeasured);
        p = gadgetize(c);
        EXPECT_NEAR(dense_program_probability(p), 1.0, 1e-10);
      }
}

TEST(Gadgetize, EngineMatchesDenseProgramState) {
  Rng rng(72);
  for (int t = 0; t < 4; ++t) {
    Circuit c = random_circuit(4, 8, {M_PI / 3}, rng);
    GadgetizedProgram p = gadgetize(c);
    EXPECT_LT((dense_expand(evolve_program(p)) - dense_program_state(p)).cwiseAbs().maxCoeff(), 1e-8);
  }
}
