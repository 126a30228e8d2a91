#include "flosim/kak_phase.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "flosim/errors.hpp"

namespace flosim {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_passive(const Mat& beta, const char* what) {
  if (beta.rows() != beta.cols() || beta.rows() % 2 != 0) throw DimensionError(std::string(what) + " has bad shape");
  if (!is_passive(beta, tol_sym(beta.rows())))
    throw NotPassiveError(std::string(what) + " does not commute with Omega");
}

// log u for unitary u; `shift` moves the largest eigen-angle down by 2 pi.
CMat unitary_log(const CMat& u, bool shift) {
  Eigen::ComplexSchur<CMat> cs(u);
  const CMat& t = cs.matrixT();
  const auto n = u.rows();
  CVec ang(n);
  Eigen::Index top = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    ang(i) = std::arg(t(i, i));
    if (ang(i).real() > ang(top).real()) top = i;
  }
  if (shift && n > 0) ang(top) -= 2.0 * M_PI;
  return cs.matrixU() * (kI * ang).asDiagonal() * cs.matrixU().adjoint();
}

Mat passive_log_impl(const Mat& k, bool shift) {
  check_special_orthogonal(k);
  require_passive(k, "passive rotation");
  Mat beta = passive_from_complex(unitary_log(passive_to_complex(k), shift));
  return (beta - beta.transpose()) / 2.0;
}

}  // namespace

bool is_passive(const Mat& beta, double tol) { return commutes_with_omega(beta, tol); }

CMat passive_to_complex(const Mat& k) {
  const auto n = k.rows() / 2;
  CMat u(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) u(p, q) = cplx(k(2 * p, 2 * q), k(2 * p, 2 * q + 1));
  return u;
}

Mat passive_from_complex(const CMat& u) {
  const auto n = u.rows();
  Mat k(2 * n, 2 * n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      k(2 * p, 2 * q) = u(p, q).real();
      k(2 * p + 1, 2 * q + 1) = u(p, q).real();
      k(2 * p, 2 * q + 1) = u(p, q).imag();
      k(2 * p + 1, 2 * q) = -u(p, q).imag();
    }
  return k;
}

cplx passive_vacuum_phase(const Mat& beta) {
  require_passive(beta, "generator");
  double tr = (beta * symplectic_form(beta.rows())).trace();
  return std::exp(-0.25 * kI * tr);
}

Mat passive_log(const Mat& k) { return passive_log_impl(k, false); }

Mat merge_passive(const Mat& beta, const Mat& gamma) {
  require_passive(beta, "first generator");
  require_passive(gamma, "second generator");
  if (beta.rows() != gamma.rows()) throw DimensionError("generator sizes differ");
  Mat k = so_exp(beta) * so_exp(gamma);
  cplx want = passive_vacuum_phase(beta) * passive_vacuum_phase(gamma);
  Mat xi = passive_log_impl(k, false);
  // Principal log may land on the other lift; the two differ by -1.
  if (std::abs(passive_vacuum_phase(xi) - want) > 1.0) xi = passive_log_impl(k, true);
  return xi;
}

Mat kak_a_generator(const std::vector<double>& lambda) {
  const auto d = static_cast<Eigen::Index>(4 * lambda.size());
  Mat g = Mat::Zero(d, d);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const auto b = static_cast<Eigen::Index>(4 * j);
    g(b, b + 2) = lambda[j];
    g(b + 2, b) = -lambda[j];
    g(b + 1, b + 3) = -lambda[j];
    g(b + 3, b + 1) = lambda[j];
  }
  return g;
}

std::vector<ChainFactor> kak_a_factors(const std::vector<double>& lambda) {
  const auto d = static_cast<Eigen::Index>(4 * lambda.size());
  std::vector<ChainFactor> out;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0.0) continue;
    const int b = static_cast<int>(4 * j);
    out.emplace_back(elementary_factor(d, 0.5 * lambda[j], b, b + 2));
    out.emplace_back(elementary_factor(d, -0.5 * lambda[j], b + 1, b + 3));
  }
  return out;
}

KakSO kak_so(const Mat& r) {
  const auto d = r.rows();
  if (d % 4 != 0 || r.cols() != d) throw DimensionError("KAK needs a square matrix of dimension divisible by 4");
  check_special_orthogonal(r);
  const auto n = d / 2;

  CondensedForm cf = symplectic_condensed_form(r);
  Mat w = to_block_order(cf.R);
  double off = std::max(max_abs(Mat(w.topRightCorner(n, n))), max_abs(Mat(w.bottomLeftCorner(n, n))));
  if (off > tol_block(d)) throw InternalError("condensed form of an orthogonal matrix is not block diagonal");
  Vec dsign(n);
  for (Eigen::Index i = 0; i < n; ++i) dsign(i) = w(i, i) >= 0 ? 1.0 : -1.0;
  Mat dl = dsign.asDiagonal() * w.bottomRightCorner(n, n);

  // D L = S B S^T; then diag(D, L) = diag(DSB^1/2, DSB^1/2) diag(B^-1/2, B^1/2) diag(S^T, S^T).
  RotationBlocks rb = orthogonal_block_form(dl);
  Mat half = Mat::Identity(n, n);
  KakSO out;
  for (std::size_t j = 0; j < rb.angles.size(); ++j) {
    half.block<2, 2>(2 * j, 2 * j) = rot2(0.5 * rb.angles[j]);
    out.Lambda.push_back(-0.5 * rb.angles[j]);
  }
  Mat left = dsign.asDiagonal() * rb.basis * half;
  Mat k1b = Mat::Zero(d, d), k2b = Mat::Zero(d, d);
  k1b.topLeftCorner(n, n) = left;
  k1b.bottomRightCorner(n, n) = left;
  k2b.topLeftCorner(n, n) = rb.basis.transpose();
  k2b.bottomRightCorner(n, n) = rb.basis.transpose();
  out.K1 = cf.K1.transpose() * from_block_order(k1b);
  out.K2 = from_block_order(k2b) * cf.K2.transpose();

  double res = max_abs(Mat(out.K1 * so_exp(kak_a_generator(out.Lambda)) * out.K2 - r));
  if (res > tol_block(d)) throw InternalError("KAK reconstruction residual " + std::to_string(res));
  return out;
}

KakFactors kak_flo_with_sign(const Mat& alpha_in) {
  Mat alpha = checked_antisym(alpha_in);
  const auto d = alpha.rows();
  if (d % 4 != 0) throw DimensionError("generator dimension must be divisible by 4");

  KakSO k = kak_so(so_exp(alpha));
  KakFactors out;
  out.beta = passive_log(k.K1);
  out.gamma = passive_log(k.K2);
  out.Lambda = k.Lambda;

  // V with phi(V) = Rb^T turns U into a product of commuting pair rotations,
  // whose vacuum element is prod exp(i mu_j / 2), of modulus one.
  BlockDiagForm bd = antisym_block_diag(alpha);
  cplx m1 = 1.0;
  for (double mu : bd.angles) m1 *= std::exp(0.5 * kI * mu);

  KakSO kv = kak_so(Mat(bd.rotation.transpose()));
  Mat bv = passive_log(kv.K1), gv = passive_log(kv.K2);
  const cplx pb = passive_vacuum_phase(out.beta), pg = passive_vacuum_phase(out.gamma);
  const cplx pbv = passive_vacuum_phase(bv), pgv = passive_vacuum_phase(gv);

  std::vector<ChainFactor> chain;
  auto append = [&chain](std::vector<ChainFactor> f) {
    for (auto& x : f) chain.push_back(std::move(x));
  };
  std::vector<double> neg_v(kv.Lambda.size());
  for (std::size_t j = 0; j < neg_v.size(); ++j) neg_v[j] = -kv.Lambda[j];
  chain.emplace_back(PassiveFactor{kv.K2.transpose(), std::conj(pgv)});
  append(kak_a_factors(neg_v));
  chain.emplace_back(PassiveFactor{kv.K1.transpose(), std::conj(pbv)});
  chain.emplace_back(PassiveFactor{k.K1, pb});
  append(kak_a_factors(k.Lambda));
  chain.emplace_back(PassiveFactor{k.K2, pg});
  chain.emplace_back(PassiveFactor{kv.K1, pbv});
  append(kak_a_factors(kv.Lambda));
  chain.emplace_back(PassiveFactor{kv.K2, pgv});
  cplx m2 = vacuum_chain(d, chain);

  out.recovery_magnitude = std::abs(m2);
  const double floor = std::pow(2.0, -static_cast<double>(d) / 4.0);
  if (out.recovery_magnitude < floor / 4.0)
    throw PhaseRecoveryError("sign-recovery matrix element below floor: " + std::to_string(out.recovery_magnitude));
  cplx s = m1 / m2;
  out.sign = s.real() >= 0 ? 1 : -1;
  if (std::abs(s - static_cast<double>(out.sign)) > 1e-6)
    throw PhaseRecoveryError("sign-recovery ratio is not +-1");
  return out;
}

}  // namespace flosim
