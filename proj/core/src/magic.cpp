#include "flosim/magic.hpp"

#include <cmath>

#include <Eigen/QR>

#include "flosim/errors.hpp"

namespace flosim {

namespace {
constexpr cplx kI{0.0, 1.0};
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, 4 * M_PI);
  if (t <= -2 * M_PI) t += 4 * M_PI;
  if (t > 2 * M_PI) t -= 4 * M_PI;
  return t;
}

double extent_single(double theta) { return 1.0 + std::abs(std::sin(theta / 2)); }

double xi_star(const std::vector<double>& thetas) {
  double x = 1.0;
  for (double t : thetas) {
    double s = std::abs(std::cos(t / 4)) + std::abs(std::sin(t / 4));
    x *= s * s;
  }
  return x;
}

double branch_weight(const std::vector<double>& thetas, const std::vector<int>& y) {
  if (y.size() != thetas.size()) throw DimensionError("branch string length differs from angle count");
  double w = 1.0;
  for (std::size_t j = 0; j < y.size(); ++j) w *= y[j] ? std::sin(thetas[j] / 4) : std::cos(thetas[j] / 4);
  return w;
}

double branch_probability(const std::vector<double>& thetas, const std::vector<int>& y) {
  return std::abs(branch_weight(thetas, y)) / std::sqrt(xi_star(thetas));
}

BranchSample make_branch(const std::vector<double>& thetas, std::vector<int> y) {
  BranchSample s;
  s.weight = branch_weight(thetas, y);
  int ones = 0;
  for (int b : y) ones += b;
  static const cplx ipow[4] = {1.0, kI, -1.0, -kI};
  s.prefactor = ipow[ones % 4] * s.weight;
  s.y = std::move(y);
  return s;
}

BranchSample sample_branch(const std::vector<double>& thetas, Rng& rng) {
  std::vector<int> y(thetas.size());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    double c = std::abs(std::cos(thetas[j] / 4)), s = std::abs(std::sin(thetas[j] / 4));
    y[j] = u(rng) * (c + s) < s ? 1 : 0;
  }
  return make_branch(thetas, std::move(y));
}

CVec dense_magic_state(double theta) {
  CVec v = CVec::Zero(16);
  v(0b0000) = 0.5;
  v(0b1100) = 0.5;
  v(0b0011) = 0.5;
  v(0b1111) = 0.5 * std::polar(1.0, theta);
  return v;
}

CVec dense_branch_state(double theta, Branch b) {
  const double sg = b == Branch::A ? 1.0 : -1.0;
  CVec v = CVec::Zero(16);
  v(0b0000) = 0.5 * std::polar(1.0, -theta / 4);
  v(0b0011) = sg * 0.5 * std::polar(1.0, theta / 4);
  v(0b1100) = sg * 0.5 * std::polar(1.0, theta / 4);
  v(0b1111) = 0.5 * std::polar(1.0, 3 * theta / 4);
  return v;
}

BranchPrep branch_prep(double theta, Branch b, const std::array<int, 4>& q) {
  if (q[1] != q[0] + 1 || q[3] != q[2] + 1) throw IndexError("branch state pairs must be adjacent qubits");
  // Each pair is (|00> + e^{i phi}|11>)/sqrt2 = e^{i phi/2} exp(-phi/2 c_{2r}c_{2r+1}) exp(pi/4 c_{2l}c_{2r})|00>.
  const double phi = theta / 2 + (b == Branch::A ? 0.0 : M_PI);
  BranchPrep p;
  p.scalar = std::polar(1.0, -theta / 4) * std::polar(1.0, phi);
  for (int h : {0, 2}) {
    const int l = q[h], r = q[h + 1];
    p.ops.push_back({M_PI / 4, 2 * l, 2 * r});
    p.ops.push_back({-phi / 2, 2 * r, 2 * r + 1});
  }
  return p;
}

GaussianDesc branch_state_desc(double theta, Branch b, int offset, int m) {
  if (offset < 0 || offset + 4 > m) throw IndexError("branch block does not fit");
  BranchPrep p = branch_prep(theta, b, {offset, offset + 1, offset + 2, offset + 3});
  GaussianDesc g = vacuum(m);
  for (const auto& op : p.ops) g = apply_elementary(g, op.mu, op.j, op.k);
  g.omega *= p.scalar;
  return g;
}

Mat random_special_orthogonal(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = n(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

double flo_fidelity_bound_check(const SparseState& state, int trials, Rng& rng,
                                const std::vector<GaussianDesc>& witnesses) {
  if (state.empty()) throw DimensionError("empty state");
  const int m = static_cast<int>(state.front().first.size());
  double nrm = 0.0;
  for (const auto& [x, amp] : state) {
    if (static_cast<int>(x.size()) != m) throw DimensionError("basis strings differ in length");
    nrm += std::norm(amp);
  }
  auto fidelity = [&](const GaussianDesc& g) {
    cplx ov = 0.0;
    for (const auto& [x, amp] : state) ov += std::conj(basis_inner_product(g, x).value) * amp;
    return std::norm(ov) / (nrm * std::norm(g.omega));
  };
  double best = 0.0;
  for (const auto& w : witnesses) best = std::max(best, fidelity(w));
  for (int t = 0; t < trials; ++t)
    best = std::max(best, fidelity(canonical_from_rotation(m, random_special_orthogonal(2 * m, rng))));
  return best;
}

double fermionic_nonlinearity_rot(double theta) { return 1.0 + 2.0 * std::abs(std::sin(2 * theta)); }

}  // namespace flosim
