#include <cmath>

#include "flosim/errors.hpp"
#include "flosim/numerics.hpp"

namespace flosim {

namespace {

// Working in block order (p + h n), the orthogonal symplectic group is
// generated by diag(H, H) reflections and rotations mixing index k with n + k.
struct Urv {
  Eigen::Index n;
  Mat w;   // current Ul^T A Vr
  Mat ul;
  Mat vr;

  // Reflection mapping x onto a multiple of e_0; empty when already there.
  static bool reflector(const Vec& x, Vec& v) {
    if (x.size() <= 1 || x.tail(x.size() - 1).norm() == 0.0) return false;
    double nx = x.norm();
    v = x;
    v(0) += (x(0) >= 0 ? nx : -nx);
    v /= v.norm();
    return true;
  }

  // Left diag(H, H) with H acting on indices start..n-1 of each half.
  void left_reflect(Eigen::Index start, const Vec& v) {
    const auto len = n - start;
    for (Eigen::Index h : {Eigen::Index(0), n}) {
      auto rows = w.middleRows(h + start, len);
      rows -= 2.0 * v * (v.transpose() * rows);
      auto cols = ul.middleCols(h + start, len);
      cols -= 2.0 * (cols * v) * v.transpose();
    }
  }

  void right_reflect(Eigen::Index start, const Vec& v) {
    const auto len = n - start;
    for (Eigen::Index h : {Eigen::Index(0), n}) {
      auto cols = w.middleCols(h + start, len);
      cols -= 2.0 * (cols * v) * v.transpose();
      auto vc = vr.middleCols(h + start, len);
      vc -= 2.0 * (vc * v) * v.transpose();
    }
  }

  // Rows (k, n+k) <- [[c, s], [-s, c]] rows; zeroes w(n+k, col).
  void left_rotate(Eigen::Index k, Eigen::Index col) {
    double x = w(k, col), y = w(n + k, col);
    double r = std::hypot(x, y);
    if (y == 0.0 || r == 0.0) return;
    double c = x / r, s = y / r;
    Vec rk = w.row(k), rn = w.row(n + k);
    w.row(k) = c * rk + s * rn;
    w.row(n + k) = -s * rk + c * rn;
    Vec uk = ul.col(k), un = ul.col(n + k);
    ul.col(k) = c * uk + s * un;
    ul.col(n + k) = -s * uk + c * un;
  }

  // Columns (k, n+k) rotated to zero w(row, k).
  void right_rotate(Eigen::Index k, Eigen::Index row) {
    double x = w(row, k), y = w(row, n + k);
    double r = std::hypot(x, y);
    if (x == 0.0 || r == 0.0) return;
    double c = y / r, s = -x / r;
    Vec wk = w.col(k), wn = w.col(n + k);
    w.col(k) = c * wk + s * wn;
    w.col(n + k) = -s * wk + c * wn;
    Vec vk = vr.col(k), vn = vr.col(n + k);
    vr.col(k) = c * vk + s * vn;
    vr.col(n + k) = -s * vk + c * vn;
  }

  void run() {
    Vec v;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (reflector(w.col(j).segment(n + j, n - j), v)) left_reflect(j, v);
      left_rotate(j, j);
      if (reflector(w.col(j).segment(j, n - j), v)) left_reflect(j, v);
      if (j + 1 >= n) continue;
      const Eigen::Index r = n + j;
      if (reflector(w.row(r).segment(j + 1, n - j - 1).transpose(), v)) right_reflect(j + 1, v);
      right_rotate(j + 1, r);
      if (reflector(w.row(r).segment(n + j + 1, n - j - 1).transpose(), v)) right_reflect(j + 1, v);
    }
  }
};

}  // namespace

CondensedForm symplectic_condensed_form(const Mat& a) {
  if (a.rows() != a.cols()) throw ShapeError("matrix is not square");
  if (a.rows() % 2 != 0) throw DimensionError("odd dimension");
  const auto d = a.rows();
  Urv u{d / 2, to_block_order(a), Mat::Identity(d, d), Mat::Identity(d, d)};
  u.run();
  CondensedForm out;
  out.K1 = from_block_order(Mat(u.ul.transpose()));
  out.K2 = from_block_order(u.vr);
  out.R = from_block_order(u.w);
  return out;
}

}  // namespace flosim
