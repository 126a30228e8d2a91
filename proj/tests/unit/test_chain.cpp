#include <gtest/gtest.h>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "flosim/kak_phase.hpp"
#include "random_flo.hpp"

using namespace flosim;
using namespace flosim::testing;

namespace {

CVec random_cvec(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> nd;
  CVec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v;
}

cplx dense_chain(int m, const std::vector<ChainFactor>& fs) {
  CVec psi = CVec::Zero(Eigen::Index{1} << m);
  psi(0) = 1.0;
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    if (auto* p = std::get_if<PassiveFactor>(&*it)) {
      Mat beta = passive_log(p->rotation);
      psi = (p->phase / passive_vacuum_phase(beta)) * dense_apply_flo(m, beta, psi);
    } else if (auto* q = std::get_if<PairFactor>(&*it)) {
      psi = q->alpha * psi + q->beta * dense_linear_form(m, q->w1, dense_linear_form(m, q->w2, psi));
    } else {
      psi = dense_linear_form(m, std::get<LinearFactor>(*it).w, psi);
    }
  }
  return psi(0);
}

}  // namespace

TEST(PassivePhase, MatchesDenseVacuumElement) {
  Rng rng(11);
  for (int m : {2, 3, 4}) {
    Mat beta = random_passive(2 * m, rng);
    EXPECT_TRUE(is_passive(beta, 1e-12));
    CMat u = dense_flo_unitary(m, beta);
    EXPECT_LT(std::abs(u(0, 0) - passive_vacuum_phase(beta)), 1e-10);
    // Passive unitaries keep the vacuum.
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-10);
  }
}

TEST(PassiveComplex, RoundTripAndLog) {
  Rng rng(12);
  Mat beta = random_passive(8, rng);
  Mat k = so_exp(beta);
  EXPECT_LT(max_abs(Mat(passive_from_complex(passive_to_complex(k)) - k)), 1e-12);
  CMat u = passive_to_complex(k);
  EXPECT_LT(max_abs(CMat(u * u.adjoint() - CMat::Identity(4, 4))), 1e-12);
  Mat l = passive_log(k);
  EXPECT_TRUE(is_passive(l, 1e-10));
  EXPECT_LT(max_abs(Mat(so_exp(l) - k)), 1e-10);
}

TEST(MergePassive, OperatorProduct) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    Mat b = random_passive(6, rng, 1.5), g = random_passive(6, rng, 1.5);
    Mat x = merge_passive(b, g);
    CMat want = dense_flo_unitary(3, b) * dense_flo_unitary(3, g);
    EXPECT_LT(max_abs(CMat(dense_flo_unitary(3, x) - want)), 1e-9);
  }
}

TEST(VacuumChain, MatchesDense) {
  Rng rng(14);
  std::uniform_real_distribution<double> ud(-M_PI, M_PI);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 3;
    const int d = 2 * m;
    std::vector<ChainFactor> fs;
    const int nf = 1 + trial % 7;
    for (int f = 0; f < nf; ++f) {
      switch ((f + trial) % 4) {
        case 0: {
          Mat beta = random_passive(d, rng);
          fs.emplace_back(PassiveFactor{so_exp(beta), passive_vacuum_phase(beta) * std::polar(1.0, ud(rng))});
          break;
        }
        case 1: {
          std::uniform_int_distribution<int> pick(0, d - 1);
          int j = pick(rng), k = pick(rng);
          if (j == k) k = (j + 1) % d;
          fs.emplace_back(elementary_factor(d, ud(rng), j, k));
          break;
        }
        case 2:
          fs.emplace_back(PairFactor{random_cvec(d, rng), random_cvec(d, rng), cplx(ud(rng), ud(rng)), cplx(ud(rng), 0.3)});
          break;
        default:
          fs.emplace_back(LinearFactor{random_cvec(d, rng)});
          fs.emplace_back(LinearFactor{random_cvec(d, rng)});
      }
    }
    cplx want = dense_chain(m, fs);
    for (bool fold : {true, false}) {
      cplx got = vacuum_chain(d, fs, fold);
      EXPECT_LT(std::abs(got - want), 1e-9 * std::max(1.0, std::abs(want))) << trial << " fold=" << fold;
    }
  }
}

TEST(VacuumChain, OddLinearCountVanishes) {
  Rng rng(15);
  std::vector<ChainFactor> fs{LinearFactor{random_cvec(4, rng)}};
  EXPECT_EQ(vacuum_chain(4, fs), cplx(0.0));
}

TEST(VacuumChain, ZeroBetaFoldsIntoPrefactor) {
  PairFactor p = elementary_factor(4, 0.0, 0, 2);
  EXPECT_EQ(p.beta, cplx(0.0));
  LMatrix l = build_L_matrix(TripleTraceInput{symplectic_form(4), {}, {p}, {}, 1.0});
  EXPECT_EQ(l.L.rows(), 0);
  EXPECT_EQ(l.prefactor, cplx(1.0));
}

TEST(TripleTrace, GroupsActAsOneProduct) {
  Rng rng(16);
  const int d = 6;
  TripleTraceInput t;
  t.Mblock = symplectic_form(d);
  t.left = {LinearFactor{random_cvec(d, rng)}};
  t.middle = {elementary_factor(d, 0.4, 1, 4)};
  t.right = {LinearFactor{random_cvec(d, rng)}};
  EXPECT_EQ(t.m_count(), 2);
  std::vector<ChainFactor> fs{std::get<LinearFactor>(t.left[0]), std::get<PairFactor>(t.middle[0]),
                              std::get<LinearFactor>(t.right[0])};
  EXPECT_LT(std::abs(triple_trace(t) - dense_chain(3, fs)), 1e-12);
}

TEST(TripleTrace, ShapeErrors) {
  TripleTraceInput t;
  t.Mblock = symplectic_form(4);
  t.middle = {LinearFactor{CVec::Zero(6)}};
  EXPECT_THROW(triple_trace(t), ShapeError);
}
