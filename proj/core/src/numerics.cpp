#include "flosim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "flosim/errors.hpp"

namespace flosim {

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const CMat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Mat symplectic_form(Eigen::Index dim) {
  Mat om = Mat::Zero(dim, dim);
  for (Eigen::Index p = 0; p + 1 < dim; p += 2) {
    om(p, p + 1) = 1.0;
    om(p + 1, p) = -1.0;
  }
  return om;
}

Eigen::Matrix2d rot2(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return r;
}

namespace {

template <class M>
M checked_antisym_impl(const M& a, bool require_even) {
  if (a.rows() != a.cols()) throw ShapeError("matrix is not square");
  if (require_even && a.rows() % 2 != 0) throw DimensionError("odd dimension");
  double asym = max_abs(M(a + a.transpose()));
  if (asym > tol_sym(a.rows()))
    throw ShapeError("matrix is not antisymmetric (residual " + std::to_string(asym) + ")");
  return (a - a.transpose()) / 2.0;
}

}  // namespace

Mat checked_antisym(const Mat& a, bool require_even) { return checked_antisym_impl(a, require_even); }
CMat checked_antisym(const CMat& a, bool require_even) { return checked_antisym_impl(a, require_even); }

void check_special_orthogonal(const Mat& r) {
  if (r.rows() != r.cols()) throw ShapeError("matrix is not square");
  const auto d = r.rows();
  double res = max_abs(Mat(r * r.transpose() - Mat::Identity(d, d)));
  if (res > tol_orth(d)) throw ShapeError("matrix is not orthogonal (residual " + std::to_string(res) + ")");
  if (d > 0 && std::abs(r.determinant() - 1.0) > tol_orth(d)) throw ShapeError("orthogonal matrix has det -1");
}

bool commutes_with_omega(const Mat& a, double tol) {
  Mat om = symplectic_form(a.rows());
  return max_abs(Mat(a * om - om * a)) <= tol;
}

BlockDiagForm antisym_block_diag(const Mat& src) {
  Mat a = checked_antisym(src, false);
  const auto d = a.rows();
  BlockDiagForm out;
  out.rotation = Mat::Identity(d, d);
  if (d == 0) return out;

  Eigen::RealSchur<Mat> schur(a);
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();

  struct Block {
    double lambda;
    Eigen::Index r0, r1;
  };
  std::vector<Block> blocks;
  std::vector<Eigen::Index> singles;
  for (Eigen::Index i = 0; i < d;) {
    if (i + 1 < d && t(i + 1, i) != 0.0) {
      blocks.push_back({0.5 * (t(i, i + 1) - t(i + 1, i)), i, i + 1});
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2) blocks.push_back({0.0, singles[s], singles[s + 1]});
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& x, const Block& y) { return std::abs(x.lambda) > std::abs(y.lambda); });

  Mat o(d, d);
  Eigen::Index row = 0;
  for (auto& b : blocks) {
    if (b.lambda < 0) {
      std::swap(b.r0, b.r1);
      b.lambda = -b.lambda;
    }
    o.row(row++) = u.col(b.r0).transpose();
    o.row(row++) = u.col(b.r1).transpose();
    out.angles.push_back(b.lambda);
  }
  bool odd = singles.size() % 2 == 1;
  if (odd) o.row(row++) = u.col(singles.back()).transpose();

  if (o.determinant() < 0) {
    if (odd) {
      o.row(d - 1) *= -1.0;
    } else {
      o.row(d - 1) *= -1.0;
      out.angles.back() = -out.angles.back();
    }
  }
  out.rotation = o;

  double scale = std::max(1.0, max_abs(a));
  int zeros = odd ? 1 : 0;
  for (auto it = out.angles.rbegin(); it != out.angles.rend() && std::abs(*it) <= 1e-13 * scale; ++it) zeros += 2;
  out.trailing_zero_count = zeros;
  return out;
}

ComplexBlockDiag complex_antisym_block_diag(const CMat& src) {
  CMat a = checked_antisym(src, true);
  const auto d = a.rows();
  ComplexBlockDiag out;
  out.lambda = Vec::Zero(d / 2);
  CMat v(d, d);
  CMat basis = CMat::Identity(d, d);
  CMat b = a;
  double scale = std::max(1.0, max_abs(a));
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < d / 2; ++j) {
    const auto r = b.rows();
    Eigen::SelfAdjointEigenSolver<CMat> es(b.adjoint() * b);
    double s2 = es.eigenvalues()(r - 1);
    double sigma = std::sqrt(std::max(s2, 0.0));
    if (sigma <= 1e-14 * scale) {
      // Remaining block is null; any orthonormal completion works.
      v.rightCols(d - col) = basis;
      break;
    }
    CVec x = es.eigenvectors().col(r - 1);
    CVec y = (-(b * x)).conjugate() / sigma;
    // x^T b y = sigma, and b restricted to the complement of {x, y} decouples.
    CMat xy(r, 2);
    xy.col(0) = x;
    xy.col(1) = y;
    Eigen::HouseholderQR<CMat> qr(xy);
    CMat q = qr.householderQ() * CMat::Identity(r, r);
    q.col(0) = x;
    q.col(1) = y;
    v.col(col++) = basis * x;
    v.col(col++) = basis * y;
    out.lambda(j) = sigma;
    CMat rest = q.rightCols(r - 2);
    b = rest.transpose() * b * rest;
    basis = basis * rest;
  }
  out.unitary = v.transpose();
  return out;
}

Mat so_exp(const Mat& a) {
  BlockDiagForm f = antisym_block_diag(a);
  const auto d = a.rows();
  Mat e = Mat::Identity(d, d);
  for (std::size_t j = 0; j < f.angles.size(); ++j) e.block<2, 2>(2 * j, 2 * j) = rot2(f.angles[j]);
  return f.rotation.transpose() * e * f.rotation;
}

RotationBlocks orthogonal_block_form(const Mat& r) {
  const auto d = r.rows();
  if (r.cols() != d) throw ShapeError("matrix is not square");
  if (d % 2 != 0) throw DimensionError("odd dimension");
  RotationBlocks out;
  out.basis = Mat::Identity(d, d);
  if (d == 0) return out;

  Eigen::RealSchur<Mat> schur(r);
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cols;
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < d;) {
    if (i + 1 < d && t(i + 1, i) != 0.0) {
      cols.emplace_back(i, i + 1);
      out.angles.push_back(std::atan2(0.5 * (t(i, i + 1) - t(i + 1, i)), 0.5 * (t(i, i) + t(i + 1, i + 1))));
      i += 2;
    } else {
      (t(i, i) >= 0 ? plus : minus).push_back(i);
      i += 1;
    }
  }
  if (plus.size() % 2 != 0 || minus.size() % 2 != 0)
    throw ShapeError("orthogonal matrix is not special orthogonal");
  for (std::size_t s = 0; s < plus.size(); s += 2) {
    cols.emplace_back(plus[s], plus[s + 1]);
    out.angles.push_back(0.0);
  }
  for (std::size_t s = 0; s < minus.size(); s += 2) {
    cols.emplace_back(minus[s], minus[s + 1]);
    out.angles.push_back(M_PI);
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.basis.col(2 * j) = u.col(cols[j].first);
    out.basis.col(2 * j + 1) = u.col(cols[j].second);
  }
  if (out.basis.determinant() < 0) {
    out.basis.col(d - 1) *= -1.0;
    double& last = out.angles.back();
    if (last != M_PI) last = -last;
  }
  return out;
}

Mat so_log(const Mat& r) {
  check_special_orthogonal(r);
  RotationBlocks f = orthogonal_block_form(r);
  const auto d = r.rows();
  Mat g = Mat::Zero(d, d);
  for (std::size_t j = 0; j < f.angles.size(); ++j) {
    g(2 * j, 2 * j + 1) = f.angles[j];
    g(2 * j + 1, 2 * j) = -f.angles[j];
  }
  Mat out = f.basis * g * f.basis.transpose();
  return (out - out.transpose()) / 2.0;
}

namespace {

std::vector<Eigen::Index> block_order_map(Eigen::Index dim) {
  // omega index 2p + h  ->  block index p + h n
  const auto n = dim / 2;
  std::vector<Eigen::Index> m(dim);
  for (Eigen::Index p = 0; p < n; ++p) {
    m[2 * p] = p;
    m[2 * p + 1] = p + n;
  }
  return m;
}

}  // namespace

Mat to_block_order(const Mat& a) {
  auto m = block_order_map(a.rows());
  Mat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(m[i], m[j]) = a(i, j);
  return out;
}

Mat from_block_order(const Mat& a) {
  auto m = block_order_map(a.rows());
  Mat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(m[i], m[j]);
  return out;
}

}  // namespace flosim
