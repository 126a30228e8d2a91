#include <gtest/gtest.h>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "flosim/gaussian_state.hpp"
#include "random_flo.hpp"

using namespace flosim;
using namespace flosim::testing;

namespace {

// Applies one random FLO step to both descriptions.
void random_step(int kind, GaussianDesc& g, CVec& psi, Rng& rng) {
  const int m = g.m, d = 2 * m;
  std::uniform_real_distribution<double> ud(-M_PI, M_PI);
  std::uniform_int_distribution<int> pick(0, d - 1);
  if (kind == 0) {
    Mat beta = random_passive(d, rng);
    g = apply_passive_generator(g, beta);
    psi = dense_apply_flo(m, beta, psi);
  } else if (kind == 1) {
    int j = pick(rng), k = pick(rng);
    if (j == k) k = (j + 1) % d;
    double mu = ud(rng);
    g = apply_elementary(g, mu, j, k);
    psi = dense_apply_elementary(m, mu, j, k, psi);
  } else {
    Mat alpha = random_antisym(d, rng);
    g = apply_general_flo(g, alpha);
    psi = dense_apply_flo(m, alpha, psi);
  }
}

double dist(const CVec& a, const CVec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(GaussianState, VacuumExpandsToZeroState) {
  CVec v = dense_expand(vacuum(4));
  EXPECT_EQ(v(0), cplx(1.0));
  EXPECT_NEAR(v.norm(), 1.0, 1e-15);
  EXPECT_THROW(vacuum(3), DimensionError);
}

TEST(GaussianState, ElementaryIsPhaseExact) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    GaussianDesc g = vacuum(4);
    CVec psi = dense_expand(g);
    for (int s = 0; s < 6; ++s) random_step(1, g, psi, rng);
    EXPECT_LT(dist(dense_expand(g), psi), 1e-9) << t;
  }
}

TEST(GaussianState, MixedProgramsArePhaseExact) {
  Rng rng(22);
  for (int t = 0; t < 30; ++t) {
    const int m = t % 2 ? 6 : 4;
    GaussianDesc g = basis_state(random_even_bits(m, rng));
    CVec psi = dense_expand(g);
    for (int s = 0; s < 10; ++s) random_step(static_cast<int>(rng() % 3), g, psi, rng);
    EXPECT_LT(dist(dense_expand(g), psi), 1e-8) << t;
    EXPECT_NEAR(g.norm(), 1.0, 1e-9);
  }
}

TEST(GaussianState, CovarianceMatchesDense) {
  Rng rng(23);
  GaussianDesc g = vacuum(4);
  CVec psi = dense_expand(g);
  for (int s = 0; s < 8; ++s) random_step(s % 3, g, psi, rng);
  EXPECT_LT(max_abs(Mat(covariance(g) - dense_covariance(4, psi))), 1e-9);
}

TEST(GaussianState, PassiveValidation) {
  GaussianDesc g = vacuum(2);
  Mat notp = Mat::Zero(4, 4);
  notp(0, 2) = 1;
  notp(2, 0) = -1;
  EXPECT_THROW(apply_passive(g, so_exp(notp), 1.0), NotPassiveError);
  EXPECT_THROW(apply_passive(g, Mat::Identity(6, 6), 1.0), DimensionError);
  EXPECT_THROW(apply_elementary(g, 0.1, 0, 0), IndexError);
  EXPECT_THROW(apply_elementary(g, 0.1, 0, 4), IndexError);
}

TEST(GaussianState, BasisStateIsExact) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    auto bits = random_even_bits(t % 2 ? 6 : 4, rng);
    EXPECT_LT(dist(dense_expand(basis_state(bits)), dense_basis_state(bits)), 1e-10);
  }
  EXPECT_THROW(basis_state({1, 0, 0, 0}), ParityError);
}

TEST(GaussianState, BasisInnerProduct) {
  Rng rng(25);
  GaussianDesc g = vacuum(4);
  CVec psi = dense_expand(g);
  for (int s = 0; s < 6; ++s) random_step(s % 3, g, psi, rng);
  for (std::uint64_t x = 0; x < 16; ++x) {
    std::vector<int> bits(4);
    for (int i = 0; i < 4; ++i) bits[i] = (x >> (3 - i)) & 1;
    BasisOverlap o = basis_inner_product(g, bits);
    EXPECT_LT(std::abs(o.value - psi(basis_index(bits))), 1e-9) << x;
    EXPECT_EQ(o.odd_parity, __builtin_popcountll(x) % 2 == 1);
  }
}

TEST(GaussianState, OverlapMatchesDense) {
  Rng rng(26);
  for (int t = 0; t < 10; ++t) {
    GaussianDesc a = vacuum(4), b = basis_state({1, 1, 0, 0});
    CVec pa = dense_expand(a), pb = dense_expand(b);
    for (int s = 0; s < 5; ++s) {
      random_step(s % 3, a, pa, rng);
      random_step((s + 1) % 3, b, pb, rng);
    }
    EXPECT_LT(std::abs(gaussian_overlap(a, b) - pa.dot(pb)), 1e-9);
  }
}

TEST(GaussianState, ProjectorsMatchDense) {
  Rng rng(27);
  for (int t = 0; t < 20; ++t) {
    const int m = 4;
    GaussianDesc g = vacuum(m);
    CVec psi = dense_expand(g);
    for (int s = 0; s < 6; ++s) random_step(s % 3, g, psi, rng);
    const int i = t % m;
    CVec p0 = psi, p1 = psi;
    for (std::uint64_t x = 0; x < 16; ++x) {
      bool one = (x >> (m - 1 - i)) & 1;
      (one ? p0 : p1)(x) = 0.0;
    }
    EXPECT_LT(dist(dense_expand(apply_projector_zero(g, i)), p0), 1e-8) << t;
    EXPECT_LT(dist(dense_expand(apply_projector_one(g, i)), p1), 1e-8) << t;
  }
}

TEST(GaussianState, ProjectingOrthogonalOutcomeGivesZero) {
  GaussianDesc g = basis_state({1, 1, 0, 0});
  GaussianDesc z = apply_projector_zero(g, 0);
  EXPECT_TRUE(z.zero);
  EXPECT_EQ(z.norm(), 0.0);
  EXPECT_EQ(dense_expand(z).norm(), 0.0);
  GaussianDesc o = apply_projector_one(g, 1);
  EXPECT_NEAR(o.norm(), 1.0, 1e-12);
  EXPECT_THROW(apply_projector_zero(g, 4), IndexError);
}

TEST(GaussianState, FromCovariance) {
  Rng rng(28);
  for (int t = 0; t < 10; ++t) {
    GaussianDesc g = vacuum(6);
    CVec psi = dense_expand(g);
    for (int s = 0; s < 5; ++s) random_step(s % 3, g, psi, rng);
    GaussianDesc h = gaussian_from_covariance(covariance(g));
    EXPECT_NEAR(h.norm(), 1.0, 1e-12);
    EXPECT_LT(phase_free_distance(dense_expand(h), psi), 1e-8);
  }
  Mat odd = symplectic_form(4);
  odd(0, 1) = -1;
  odd(1, 0) = 1;
  EXPECT_THROW(gaussian_from_covariance(odd), InternalError);
  EXPECT_THROW(gaussian_from_covariance(0.5 * symplectic_form(4)), ShapeError);
}

TEST(GaussianState, CanonicalFromRotation) {
  Rng rng(29);
  Mat o = random_special_orthogonal(8, rng);
  GaussianDesc g = canonical_from_rotation(4, o);
  Mat want = o * symplectic_form(8) * o.transpose();
  EXPECT_LT(max_abs(Mat(covariance(g) - want)), 1e-9);
}
