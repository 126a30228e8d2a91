#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flosim/numerics.hpp"

namespace flosim {

struct Matchgate {
  int q = 0;
  Eigen::Matrix2cd A;
  Eigen::Matrix2cd B;
};

// exp(mu c_j c_k)
struct Elementary {
  double mu = 0;
  int j = 0;
  int k = 1;
};

// exp(1/4 sum beta_jk c_j c_k) with [beta, Omega] = 0. `file` is where the
// matrix was read from, reused by the printer.
struct PassiveGen {
  Mat beta;
  std::string file;
};

struct GeneralGen {
  Mat alpha;
  std::string file;
};

// diag(1, 1, 1, e^{i theta}) on qubits (q, q+1).
struct ControlledPhase {
  double theta = 0;
  int q = 0;
};

using Gate = std::variant<Matchgate, Elementary, PassiveGen, GeneralGen, ControlledPhase>;

inline constexpr int kUnmeasured = -1;

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
  std::vector<int> input;
  std::vector<int> output;  // 0, 1 or kUnmeasured

  bool full_output() const;
  int measured_count() const;
  int cphase_count() const;
};

bool operator==(const Circuit& a, const Circuit& b);

// Basis order |00>, |01>, |10>, |11> on (q, q+1).
Eigen::Matrix4cd matchgate_matrix(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B);

// Throws NotMatchgateError unless A, B are unitary with det A = det B.
void validate_matchgate(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B);

// G(A, B) = phase * exp(1/4 sum alpha_jk c_j c_k) on the 4 Majoranas of the pair.
struct GeneratorWithPhase {
  Mat alpha;
  cplx phase{1.0, 0.0};
};

GeneratorWithPhase matchgate_to_generator(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B);

Mat read_matrix_file(const std::filesystem::path& file);
void write_matrix_file(const std::filesystem::path& file, const Mat& m);

// Relative matrix paths resolve against base_dir.
Circuit parse_circuit(std::string_view text, const std::filesystem::path& base_dir = {});
Circuit load_circuit(const std::filesystem::path& file);

// Generator gates are printed by file reference; save_circuit writes sidecar
// matrix files for gates that have none.
std::string print_circuit(const Circuit& c);
void save_circuit(Circuit& c, const std::filesystem::path& file);

// Reverse gadgets replace each controlled phase with ancilla preparations and a
// final projection, leaving an FLO-only program on n + 4k (+ padding) qubits.
struct FloOp {
  // Elementary when `elementary` is set (mu, idx[0], idx[1]); otherwise
  // phase * exp(1/4 sum alpha_ab c_idx[a] c_idx[b]).
  bool elementary = false;
  bool passive = false;
  double mu = 0;
  std::vector<int> idx;
  Mat alpha;
  cplx phase{1.0, 0.0};
};

// (a2, t) and (t+1, a3) are adjacent pairs; dead pairs of earlier gadgets may
// sit between t and t+1. Each pair of <M_theta| has even parity, so Z-strings
// crossing whole dead pairs are harmless.
struct ProjectionBlock {
  int q[4];  // physical qubits (a2, t, t+1, a3), increasing
  double theta;
};

struct GadgetizedProgram {
  int n = 0;             // logical qubits
  int k = 0;             // gadget count (scale 16^k)
  int total_qubits = 0;  // n + 4k, padded to even
  std::vector<int> input;     // physical basis state prepared before flo_gates
  std::vector<FloOp> flo_gates;
  std::vector<double> magic_angles;  // theta_j = -phi_j
  std::vector<ProjectionBlock> blocks;
  std::vector<int> output_qubit;  // physical location of logical qubit q at the end
  std::vector<int> output;        // per logical qubit, 0/1/kUnmeasured
};

GadgetizedProgram gadgetize(const Circuit& c);

}  // namespace flosim
