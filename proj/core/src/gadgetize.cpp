#include <list>

#include "flosim/circuit.hpp"
#include "flosim/errors.hpp"

namespace flosim {

namespace {

// Ops are recorded against wire ids first; physical positions are only known
// once every ancilla has been inserted into the wire order.
struct WireOp {
  bool elementary = false;
  bool passive = false;
  double mu = 0;
  std::vector<std::pair<int, int>> maj;  // (wire, 0 | 1)
  Mat alpha;
  cplx phase{1.0, 0.0};
};

struct WireBlock {
  int w[4];
  double theta;
};

}  // namespace

GadgetizedProgram gadgetize(const Circuit& c) {
  if (c.n < 1) throw DimensionError("circuit has no qubits");
  if (static_cast<int>(c.input.size()) != c.n || static_cast<int>(c.output.size()) != c.n)
    throw DimensionError("input/output length differs from qubit count");

  std::list<int> order;
  std::vector<std::list<int>::iterator> where;
  auto new_wire = [&](std::list<int>::iterator before) {
    int id = static_cast<int>(where.size());
    where.push_back(order.insert(before, id));
    return id;
  };
  std::vector<int> logical(c.n);
  for (int q = 0; q < c.n; ++q) logical[q] = new_wire(order.end());

  const GeneratorWithPhase hh = [] {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    return matchgate_to_generator(h, h);
  }();

  std::vector<WireOp> ops;
  std::vector<WireBlock> blocks;
  auto pair_op = [&](int w1, int w2, const GeneratorWithPhase& g) {
    WireOp op;
    op.maj = {{w1, 0}, {w1, 1}, {w2, 0}, {w2, 1}};
    op.alpha = g.alpha;
    op.phase = g.phase;
    ops.push_back(std::move(op));
  };

  for (const Gate& gate : c.gates) {
    if (auto* mg = std::get_if<Matchgate>(&gate)) {
      pair_op(logical[mg->q], logical[mg->q + 1], matchgate_to_generator(mg->A, mg->B));
    } else if (auto* el = std::get_if<Elementary>(&gate)) {
      WireOp op;
      op.elementary = true;
      op.mu = el->mu;
      op.maj = {{logical[el->j / 2], el->j % 2}, {logical[el->k / 2], el->k % 2}};
      ops.push_back(std::move(op));
    } else if (std::holds_alternative<PassiveGen>(gate) || std::holds_alternative<GeneralGen>(gate)) {
      WireOp op;
      op.passive = std::holds_alternative<PassiveGen>(gate);
      op.alpha = op.passive ? std::get<PassiveGen>(gate).beta : std::get<GeneralGen>(gate).alpha;
      if (op.alpha.rows() != 2 * c.n) throw DimensionError("generator dimension must be 2 * qubits");
      for (int j = 0; j < 2 * c.n; ++j) op.maj.push_back({logical[j / 2], j % 2});
      ops.push_back(std::move(op));
    } else if (auto* cp = std::get_if<ControlledPhase>(&gate)) {
      if (cp->q < 0 || cp->q + 1 >= c.n) throw AdjacencyError("controlled phase needs qubits (q, q+1) inside the register");
      int p1 = logical[cp->q], p2 = logical[cp->q + 1];
      int a1 = new_wire(where[p1]);
      int a2 = new_wire(where[p1]);
      auto after = std::next(where[p2]);
      int a3 = new_wire(after);
      int a4 = new_wire(after);
      pair_op(a1, a2, hh);
      pair_op(a3, a4, hh);
      blocks.push_back({{a2, p1, p2, a3}, -cp->theta});
      logical[cp->q] = a1;
      logical[cp->q + 1] = a4;
    }
  }

  GadgetizedProgram out;
  out.n = c.n;
  out.k = static_cast<int>(blocks.size());
  const int wires = static_cast<int>(where.size());
  out.total_qubits = wires + (wires % 2);

  std::vector<int> pos(wires);
  int next = 0;
  for (int id : order) pos[id] = next++;

  out.input.assign(out.total_qubits, 0);
  for (int q = 0; q < c.n; ++q) out.input[pos[q]] = c.input[q];

  for (const WireOp& w : ops) {
    FloOp op;
    op.elementary = w.elementary;
    op.passive = w.passive;
    op.mu = w.mu;
    op.alpha = w.alpha;
    op.phase = w.phase;
    for (auto [wire, h] : w.maj) op.idx.push_back(2 * pos[wire] + h);
    out.flo_gates.push_back(std::move(op));
  }
  for (const WireBlock& b : blocks) {
    ProjectionBlock pb{{pos[b.w[0]], pos[b.w[1]], pos[b.w[2]], pos[b.w[3]]}, b.theta};
    if (pb.q[1] != pb.q[0] + 1 || pb.q[3] != pb.q[2] + 1 || pb.q[2] <= pb.q[1])
      throw InternalError("projection pairs are not adjacent");
    out.blocks.push_back(pb);
    out.magic_angles.push_back(b.theta);
  }
  for (int q = 0; q < c.n; ++q) out.output_qubit.push_back(pos[logical[q]]);
  out.output = c.output;
  return out;
}

}  // namespace flosim
