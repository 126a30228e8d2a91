#pragma once

#include <vector>

#include "flosim/circuit.hpp"
#include "flosim/magic.hpp"

namespace flosim {

// Gaussian entries above the diagonal.
Mat random_antisym(Eigen::Index d, Rng& rng, double scale = 1.0);
// X (x) I + Y (x) i sigma_y with X antisymmetric, Y symmetric.
Mat random_passive(Eigen::Index d, Rng& rng, double scale = 1.0);
std::vector<int> random_even_bits(int m, Rng& rng);
Eigen::Matrix2cd random_u2(Rng& rng);
Matchgate random_matchgate(int q, Rng& rng);

// Mixes matchgates, elementaries and generators; the controlled phases are
// inserted at random positions with the given angles. Random even-parity input
// and output.
Circuit random_circuit(int n, int flo_gates, const std::vector<double>& cphases, Rng& rng);

}  // namespace flosim
