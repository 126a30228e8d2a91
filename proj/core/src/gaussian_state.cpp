#include "flosim/gaussian_state.hpp"

#include <cmath>

#include "flosim/errors.hpp"

namespace flosim {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_qubit(const GaussianDesc& g, int i) {
  if (i < 0 || i >= g.m) throw IndexError("qubit index " + std::to_string(i) + " out of range");
}

GaussianDesc zero_state(const GaussianDesc& g) {
  GaussianDesc z = g;
  z.omega = 0.0;
  z.zero = true;
  return z;
}

struct Canonical {
  GaussianDesc g;   // omega = 1
  cplx right_phase;  // vacuum phase of the discarded right passive factor
};

Canonical canonicalize(int m, const Mat& o) {
  KakSO k = kak_so(o);
  Canonical c;
  c.g.m = m;
  c.g.omega = 1.0;
  c.g.R = k.K1;
  c.g.a = passive_vacuum_phase(passive_log(k.K1));
  c.g.lambda = k.Lambda;
  c.right_phase = passive_vacuum_phase(passive_log(k.K2));
  return c;
}

template <class... Parts>
std::vector<ChainFactor> concat(Parts&&... parts) {
  std::vector<ChainFactor> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

}  // namespace

GaussianDesc vacuum(int m) {
  if (m < 2 || m % 2 != 0) throw DimensionError("qubit count must be even and at least 2");
  GaussianDesc g;
  g.m = m;
  g.R = Mat::Identity(2 * m, 2 * m);
  g.lambda.assign(m / 2, 0.0);
  return g;
}

Mat a_rotation(const std::vector<double>& lambda) {
  const auto d = static_cast<Eigen::Index>(4 * lambda.size());
  Mat s = Mat::Identity(d, d);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const auto b = static_cast<Eigen::Index>(4 * j);
    const double c = std::cos(2 * lambda[j]), sn = std::sin(2 * lambda[j]);
    s(b, b) = c;
    s(b, b + 2) = sn;
    s(b + 2, b) = -sn;
    s(b + 2, b + 2) = c;
  }
  return s;
}

Mat covariance(const GaussianDesc& g) {
  Mat o = g.R * a_rotation(g.lambda);
  return o * symplectic_form(g.dim()) * o.transpose();
}

std::vector<ChainFactor> ket_factors(const GaussianDesc& g) {
  std::vector<ChainFactor> out;
  out.emplace_back(PassiveFactor{g.R, g.a});
  for (std::size_t j = 0; j < g.lambda.size(); ++j)
    if (g.lambda[j] != 0.0)
      out.emplace_back(elementary_factor(g.dim(), g.lambda[j], static_cast<int>(4 * j), static_cast<int>(4 * j + 2)));
  return out;
}

std::vector<ChainFactor> bra_factors(const GaussianDesc& g) {
  std::vector<ChainFactor> out;
  for (std::size_t j = 0; j < g.lambda.size(); ++j)
    if (g.lambda[j] != 0.0)
      out.emplace_back(elementary_factor(g.dim(), -g.lambda[j], static_cast<int>(4 * j), static_cast<int>(4 * j + 2)));
  out.emplace_back(PassiveFactor{g.R.transpose(), std::conj(g.a)});
  return out;
}

GaussianDesc apply_passive(const GaussianDesc& g, const Mat& S, cplx b) {
  if (S.rows() != g.dim() || S.cols() != g.dim()) throw DimensionError("passive rotation has wrong size");
  const double tol = tol_orth(g.dim());
  Mat om = symplectic_form(g.dim());
  if (max_abs(Mat(S * om * S.transpose() - om)) > tol || max_abs(Mat(S * S.transpose() - Mat::Identity(g.dim(), g.dim()))) > tol)
    throw NotPassiveError("rotation does not preserve Omega");
  if (std::abs(std::abs(b) - 1.0) > 1e-9) throw ParamError("vacuum phase must have unit modulus");
  GaussianDesc out = g;
  out.R = S * g.R;
  out.a = g.a * b;
  return out;
}

GaussianDesc apply_passive_generator(const GaussianDesc& g, const Mat& beta) {
  Mat b = checked_antisym(beta);
  if (b.rows() != g.dim()) throw DimensionError("generator has wrong size");
  cplx ph = passive_vacuum_phase(b);
  return apply_passive(g, so_exp(b), ph);
}

GaussianDesc apply_elementary(const GaussianDesc& g, double mu, int j, int k) {
  if (j == k) throw IndexError("elementary gate needs distinct Majorana indices");
  if (j < 0 || k < 0 || j >= g.dim() || k >= g.dim()) throw IndexError("Majorana index out of range");
  if (g.zero || mu == 0.0) return g;

  Mat q = Mat::Identity(g.dim(), g.dim());
  q(j, j) = std::cos(2 * mu);
  q(k, k) = std::cos(2 * mu);
  q(j, k) = std::sin(2 * mu);
  q(k, j) = -std::sin(2 * mu);
  Canonical c = canonicalize(g.m, q * g.R * a_rotation(g.lambda));
  const cplx omega_c = g.omega * c.right_phase;

  std::vector<ChainFactor> u{elementary_factor(g.dim(), mu, j, k)};
  cplx v = std::conj(omega_c) * g.omega * vacuum_chain(g.dim(), concat(bra_factors(c.g), u, ket_factors(g)));
  cplx s = v / std::norm(g.omega);
  if (std::abs(s) < 0.5) throw PhaseRecoveryError("phase-recovery overlap vanished");
  const double sign = s.real() >= 0 ? 1.0 : -1.0;
  if (std::abs(s - sign) > 1e-6) throw PhaseRecoveryError("phase-recovery overlap is not +-1");
  GaussianDesc out = c.g;
  out.omega = sign * omega_c;
  return out;
}

GaussianDesc apply_general_flo(const GaussianDesc& g, const Mat& alpha) {
  Mat a = checked_antisym(alpha);
  if (a.rows() != g.dim()) throw DimensionError("generator has wrong size");
  if (g.zero) return g;
  KakFactors f = kak_flo_with_sign(a);
  GaussianDesc out = apply_passive(g, so_exp(f.gamma), passive_vacuum_phase(f.gamma));
  for (std::size_t j = 0; j < f.Lambda.size(); ++j) {
    if (f.Lambda[j] == 0.0) continue;
    const int b = static_cast<int>(4 * j);
    out = apply_elementary(out, 0.5 * f.Lambda[j], b, b + 2);
    out = apply_elementary(out, -0.5 * f.Lambda[j], b + 1, b + 3);
  }
  out = apply_passive(out, so_exp(f.beta), passive_vacuum_phase(f.beta));
  out.omega *= static_cast<double>(f.sign);
  return out;
}

GaussianDesc apply_projector_zero(const GaussianDesc& g, int i) {
  check_qubit(g, i);
  if (g.zero) return g;
  const int p = 2 * i, q = 2 * i + 1;
  Mat m = covariance(g);
  const double keep = 0.5 * (1.0 + m(p, q));
  if (keep < 1e-14) return zero_state(g);

  // Conditioned covariance of a_i a_i^dag psi.
  const auto d = g.dim();
  Mat mp = Mat::Zero(d, d);
  const double den = 1.0 + m(p, q);
  for (Eigen::Index r = 0; r < d; ++r) {
    if (r == p || r == q) continue;
    for (Eigen::Index s = 0; s < d; ++s) {
      if (s == p || s == q) continue;
      mp(r, s) = m(r, s) + (m(r, q) * m(s, p) - m(r, p) * m(s, q)) / den;
    }
  }
  mp(p, q) = 1.0;
  mp(q, p) = -1.0;

  GaussianDesc cand = gaussian_from_covariance(mp);
  PairFactor proj;
  proj.w1 = CVec::Zero(d);
  proj.w2 = CVec::Zero(d);
  proj.w1(p) = 1.0;
  proj.w2(q) = 1.0;
  proj.alpha = 0.5;
  proj.beta = -0.5 * kI;
  std::vector<ChainFactor> mid{proj};
  cplx v = g.omega * vacuum_chain(d, concat(bra_factors(cand), mid, ket_factors(g)));
  const double want = keep * std::norm(g.omega);
  if (std::abs(std::norm(v) - want) > 1e-6 * std::max(1.0, std::norm(g.omega)))
    throw InternalError("projected norm disagrees with covariance prediction");
  cand.omega = v;
  return cand;
}

GaussianDesc apply_projector_one(const GaussianDesc& g, int i) {
  check_qubit(g, i);
  if (g.zero) return g;
  // c_{2i} c_{2j} a_i a_i^dag c_{2j} c_{2i} = a_i^dag a_i for any qubit j != i.
  const int j = i == 0 ? 1 : 0;
  GaussianDesc out = apply_elementary(g, -M_PI / 2, 2 * i, 2 * j);
  out = apply_projector_zero(out, i);
  if (out.zero) return out;
  return apply_elementary(out, M_PI / 2, 2 * i, 2 * j);
}

BasisOverlap basis_inner_product(const GaussianDesc& g, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != g.m) throw DimensionError("bitstring length does not match qubit count");
  BasisOverlap out;
  int ones = 0;
  for (int b : x) ones += b & 1;
  if (ones % 2 != 0) {
    out.odd_parity = true;
    return out;
  }
  if (g.zero) return out;
  // <x| = <0| c_{2 i_k} .. c_{2 i_1} for i_1 < .. < i_k.
  std::vector<ChainFactor> chain;
  for (int i = g.m - 1; i >= 0; --i) {
    if (!x[i]) continue;
    LinearFactor f{CVec::Zero(g.dim())};
    f.w(2 * i) = 1.0;
    chain.emplace_back(std::move(f));
  }
  chain = concat(chain, ket_factors(g));
  out.value = g.omega * vacuum_chain(g.dim(), chain);
  return out;
}

cplx gaussian_overlap(const GaussianDesc& g1, const GaussianDesc& g2) {
  if (g1.m != g2.m) throw DimensionError("states have different qubit counts");
  if (g1.zero || g2.zero) return 0.0;
  return std::conj(g1.omega) * g2.omega * vacuum_chain(g1.dim(), concat(bra_factors(g1), ket_factors(g2)));
}

CVec dense_expand(const GaussianDesc& g, int cap) {
  check_dense_cap(g.m, cap);
  CVec psi = CVec::Zero(Eigen::Index{1} << g.m);
  if (g.zero) return psi;
  psi(0) = 1.0;
  for (std::size_t j = 0; j < g.lambda.size(); ++j)
    if (g.lambda[j] != 0.0) psi = dense_apply_elementary(g.m, g.lambda[j], 4 * j, 4 * j + 2, psi);
  Mat beta = passive_log(g.R);
  psi = dense_apply_flo(g.m, beta, psi);
  return g.omega * (g.a / passive_vacuum_phase(beta)) * psi;
}

GaussianDesc canonical_from_rotation(int m, const Mat& o) { return canonicalize(m, o).g; }

GaussianDesc gaussian_from_covariance(const Mat& M) {
  Mat m = checked_antisym(M);
  const auto d = m.rows();
  if (d % 4 != 0) throw DimensionError("covariance dimension must be divisible by 4");
  if (max_abs(Mat(m * m.transpose() - Mat::Identity(d, d))) > tol_block(d))
    throw ShapeError("covariance is not pure");
  BlockDiagForm bd = antisym_block_diag(m);
  Mat o = bd.rotation.transpose();
  for (std::size_t j = 0; j < bd.angles.size(); ++j)
    if (bd.angles[j] < 0) o.col(2 * j + 1) *= -1.0;
  if (o.determinant() < 0) throw InternalError("covariance describes an odd-parity state");
  return canonical_from_rotation(static_cast<int>(d / 2), o);
}

GaussianDesc basis_state(const std::vector<int>& bits) {
  const int m = static_cast<int>(bits.size());
  if (m < 2 || m % 2 != 0) throw DimensionError("qubit count must be even and at least 2");
  int ones = 0;
  for (int b : bits) ones += b & 1;
  if (ones % 2 != 0) throw ParityError("basis state has odd parity");
  Mat cov = symplectic_form(2 * m);
  for (int i = 0; i < m; ++i)
    if (bits[i]) {
      cov(2 * i, 2 * i + 1) = -1.0;
      cov(2 * i + 1, 2 * i) = 1.0;
    }
  GaussianDesc g = gaussian_from_covariance(cov);
  cplx v = basis_inner_product(g, bits).value;
  g.omega /= v;
  return g;
}

}  // namespace flosim
