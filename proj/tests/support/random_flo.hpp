#pragma once

#include "flosim/gaussian_state.hpp"
#include "flosim/random.hpp"

namespace flosim::testing {

using flosim::random_antisym;
using flosim::random_circuit;
using flosim::random_even_bits;
using flosim::random_matchgate;
using flosim::random_passive;

inline double phase_free_distance(const CVec& a, const CVec& b) {
  cplx ov = a.dot(b);
  cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (a * ph - b).cwiseAbs().maxCoeff();
}

}  // namespace flosim::testing
