#include <cmath>

#include "flosim/errors.hpp"
#include "flosim/numerics.hpp"

namespace flosim {

namespace {

// Parlett-Reid skew tridiagonalization with partial pivoting. Each step
// eliminates column k below k+1 with Gauss transforms applied congruently,
// which leaves the Pfaffian unchanged up to the pivot swap sign.
template <class Scalar>
Scalar pfaffian_impl(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  if (n % 2 != 0) return Scalar(0);
  Scalar pf(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    Scalar piv = a(k, k + 1);
    if (piv == Scalar(0)) return Scalar(0);
    pf *= piv;
    const Eigen::Index rest = n - k - 2;
    if (rest > 0) {
      auto tau = (a.row(k).tail(rest) / piv).transpose().eval();
      auto col = a.col(k + 1).tail(rest).eval();
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace

double pfaffian(const Mat& a) { return pfaffian_impl<double>(checked_antisym(a, true)); }

cplx pfaffian(const CMat& a) { return pfaffian_impl<cplx>(checked_antisym(a, true)); }

cplx pfaffian_unchecked(const CMat& a) { return pfaffian_impl<cplx>(a); }

}  // namespace flosim
