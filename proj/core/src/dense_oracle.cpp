#include "flosim/dense_oracle.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "flosim/circuit.hpp"
#include "flosim/errors.hpp"

namespace flosim {

namespace {

constexpr cplx kI{0.0, 1.0};

std::uint64_t qubit_bit(int m, int i) { return std::uint64_t{1} << (m - 1 - i); }

// Bits of qubits 0..i-1.
std::uint64_t prefix_mask(int m, int i) {
  std::uint64_t all = (std::uint64_t{1} << m) - 1;
  return all ^ ((std::uint64_t{1} << (m - i)) - 1);
}

void check_state(int m, const CVec& psi) {
  if (m < 1 || m > 30) throw DimensionError("bad qubit count");
  if (psi.size() != (Eigen::Index{1} << m)) throw DimensionError("state length does not match qubit count");
}

}  // namespace

void check_dense_cap(int m, int cap) {
  if (m > cap) throw CapacityError(std::to_string(m) + " qubits exceed the dense cap of " + std::to_string(cap));
}

std::uint64_t basis_index(const std::vector<int>& bits) {
  std::uint64_t x = 0;
  for (int b : bits) x = (x << 1) | static_cast<std::uint64_t>(b & 1);
  return x;
}

CVec dense_basis_state(const std::vector<int>& bits) {
  CVec psi = CVec::Zero(Eigen::Index{1} << bits.size());
  psi(static_cast<Eigen::Index>(basis_index(bits))) = 1.0;
  return psi;
}

CVec dense_majorana(int m, int j, const CVec& psi) {
  check_state(m, psi);
  if (j < 0 || j >= 2 * m) throw IndexError("Majorana index out of range");
  const int i = j / 2;
  const std::uint64_t flip = qubit_bit(m, i);
  const std::uint64_t zmask = prefix_mask(m, i);
  const bool y = j % 2 == 1;
  CVec out(psi.size());
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); ++x) {
    cplx v = psi(x);
    if (std::popcount(x & zmask) & 1) v = -v;
    if (y) v *= (x & flip) ? -kI : kI;
    out(x ^ flip) = v;
  }
  return out;
}

CVec dense_linear_form(int m, const CVec& w, const CVec& psi) {
  CVec out = CVec::Zero(psi.size());
  for (int j = 0; j < 2 * m; ++j)
    if (w(j) != 0.0) out += w(j) * dense_majorana(m, j, psi);
  return out;
}

CVec dense_quadratic(int m, const Mat& alpha, const CVec& psi) {
  if (alpha.rows() != 2 * m || alpha.cols() != 2 * m) throw DimensionError("generator size does not match qubit count");
  CVec out = CVec::Zero(psi.size());
  for (int k = 0; k < 2 * m; ++k) {
    bool any = false;
    for (int j = 0; j < k && !any; ++j) any = alpha(j, k) != 0.0;
    if (!any) continue;
    CVec ck = dense_majorana(m, k, psi);
    for (int j = 0; j < k; ++j) {
      double a = 0.5 * (alpha(j, k) - alpha(k, j));
      if (a != 0.0) out += (0.5 * a) * dense_majorana(m, j, ck);
    }
  }
  return out;
}

CMat dense_flo_unitary(int m, const Mat& alpha) {
  check_dense_cap(m, 8);
  const Eigen::Index d = Eigen::Index{1} << m;
  CMat h(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    CVec e = CVec::Zero(d);
    e(c) = 1.0;
    h.col(c) = kI * dense_quadratic(m, alpha, e);
  }
  h = (h + h.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CVec ph = (-kI * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

CVec dense_apply_flo(int m, const Mat& alpha, const CVec& psi) {
  check_state(m, psi);
  if (m <= 8) return dense_flo_unitary(m, alpha) * psi;
  check_dense_cap(m, 30);
  double bound = 0.0;
  for (int j = 0; j < 2 * m; ++j)
    for (int k = j + 1; k < 2 * m; ++k) bound += 0.5 * std::abs(alpha(j, k));
  const int steps = std::max(1, static_cast<int>(std::ceil(bound / 0.5)));
  Mat a = alpha / steps;
  CVec out = psi;
  for (int s = 0; s < steps; ++s) {
    CVec term = out;
    CVec acc = out;
    const double scale = out.norm();
    for (int n = 1; n < 60; ++n) {
      term = dense_quadratic(m, a, term) / static_cast<double>(n);
      acc += term;
      if (term.norm() <= 1e-18 * scale) break;
    }
    out = acc;
  }
  return out;
}

CVec dense_apply_elementary(int m, double mu, int j, int k, const CVec& psi) {
  if (j == k) throw IndexError("elementary gate needs distinct Majorana indices");
  CVec ck = dense_majorana(m, k, psi);
  return std::cos(mu) * psi + std::sin(mu) * dense_majorana(m, j, ck);
}

CVec dense_apply_two_qubit(int m, int q, const Eigen::Matrix4cd& g, const CVec& psi) {
  check_state(m, psi);
  if (q < 0 || q + 1 >= m) throw IndexError("two-qubit gate out of range");
  const std::uint64_t b0 = qubit_bit(m, q), b1 = qubit_bit(m, q + 1);
  CVec out = psi;
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); ++x) {
    if (x & (b0 | b1)) continue;
    const std::uint64_t idx[4] = {x, x | b1, x | b0, x | b0 | b1};
    Eigen::Vector4cd v;
    for (int r = 0; r < 4; ++r) v(r) = psi(idx[r]);
    v = g * v;
    for (int r = 0; r < 4; ++r) out(idx[r]) = v(r);
  }
  return out;
}

CVec dense_apply_cphase(int m, double theta, int q, const CVec& psi) {
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Identity();
  g(3, 3) = std::polar(1.0, theta);
  return dense_apply_two_qubit(m, q, g, psi);
}

Mat dense_covariance(int m, const CVec& psi) {
  const double nrm = psi.squaredNorm();
  std::vector<CVec> cs;
  for (int j = 0; j < 2 * m; ++j) cs.push_back(dense_majorana(m, j, psi));
  Mat out = Mat::Zero(2 * m, 2 * m);
  for (int j = 0; j < 2 * m; ++j)
    for (int k = j + 1; k < 2 * m; ++k) {
      // <psi| c_j c_k |psi> = <c_j psi | c_k psi>
      cplx v = cs[j].dot(cs[k]) / nrm;
      out(j, k) = (-kI * v).real();
      out(k, j) = -out(j, k);
    }
  return out;
}

CVec dense_run(const Circuit& c, int cap) {
  check_dense_cap(c.n, cap);
  const int m = c.n;
  CVec psi = dense_basis_state(c.input);
  for (const Gate& g : c.gates) {
    if (auto* mg = std::get_if<Matchgate>(&g)) {
      psi = dense_apply_two_qubit(m, mg->q, matchgate_matrix(mg->A, mg->B), psi);
    } else if (auto* el = std::get_if<Elementary>(&g)) {
      psi = dense_apply_elementary(m, el->mu, el->j, el->k, psi);
    } else if (auto* pg = std::get_if<PassiveGen>(&g)) {
      psi = dense_apply_flo(m, pg->beta, psi);
    } else if (auto* gg = std::get_if<GeneralGen>(&g)) {
      psi = dense_apply_flo(m, gg->alpha, psi);
    } else if (auto* cp = std::get_if<ControlledPhase>(&g)) {
      psi = dense_apply_cphase(m, cp->theta, cp->q, psi);
    }
  }
  return psi;
}

namespace {

// Sum of |amp|^2 over basis states agreeing with the measured positions.
double masked_weight(const CVec& amp, const std::vector<int>& qubit, const std::vector<int>& bits, int m) {
  std::uint64_t care = 0, want = 0;
  for (std::size_t i = 0; i < qubit.size(); ++i) {
    if (bits[i] == kUnmeasured) continue;
    care |= qubit_bit(m, qubit[i]);
    if (bits[i]) want |= qubit_bit(m, qubit[i]);
  }
  double p = 0.0;
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(amp.size()); ++x)
    if ((x & care) == want) p += std::norm(amp(x));
  return p;
}

}  // namespace

double dense_born(const Circuit& c, int cap) {
  CVec psi = dense_run(c, cap);
  std::vector<int> q(c.n);
  for (int i = 0; i < c.n; ++i) q[i] = i;
  return masked_weight(psi, q, c.output, c.n);
}

CVec dense_program_state(const GadgetizedProgram& p, int cap) {
  const int m = p.total_qubits;
  check_dense_cap(m, cap);
  CVec psi = dense_basis_state(p.input);
  for (const FloOp& op : p.flo_gates) {
    if (op.elementary) {
      psi = dense_apply_elementary(m, op.mu, op.idx[0], op.idx[1], psi);
      continue;
    }
    Mat full = Mat::Zero(2 * m, 2 * m);
    for (std::size_t a = 0; a < op.idx.size(); ++a)
      for (std::size_t b = 0; b < op.idx.size(); ++b) full(op.idx[a], op.idx[b]) = op.alpha(a, b);
    psi = op.phase * dense_apply_flo(m, full, psi);
  }
  return psi;
}

double dense_program_probability(const GadgetizedProgram& p, int cap) {
  const int m = p.total_qubits;
  CVec psi = dense_program_state(p, cap);

  std::vector<bool> projected(m, false);
  for (const auto& b : p.blocks)
    for (int r = 0; r < 4; ++r) projected[b.q[r]] = true;
  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (!projected[i]) keep.push_back(i);

  // Contract <M_theta| on every block.
  CVec rest = CVec::Zero(Eigen::Index{1} << keep.size());
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); ++x) {
    if (psi(x) == 0.0) continue;
    cplx w = 1.0;
    for (const auto& b : p.blocks) {
      int s = 0;
      for (int r = 0; r < 4; ++r) s = (s << 1) | ((x & qubit_bit(m, b.q[r])) ? 1 : 0);
      if (s == 0b0000 || s == 0b1100 || s == 0b0011) w *= 0.5;
      else if (s == 0b1111) w *= 0.5 * std::polar(1.0, -b.theta);
      else w = 0.0;
    }
    if (w == 0.0) continue;
    std::uint64_t r = 0;
    for (int i : keep) r = (r << 1) | ((x & qubit_bit(m, i)) ? 1 : 0);
    rest(r) += w * psi(x);
  }

  // Logical outputs live on kept qubits; padding and spare qubits are summed.
  std::vector<int> pos(m, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  std::vector<int> q, bits;
  for (std::size_t i = 0; i < p.output.size(); ++i) {
    q.push_back(pos[p.output_qubit[i]]);
    bits.push_back(p.output[i]);
  }
  return std::pow(16.0, p.k) * masked_weight(rest, q, bits, static_cast<int>(keep.size()));
}

}  // namespace flosim
