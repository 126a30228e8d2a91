#include <algorithm>

#include "flosim/errors.hpp"
#include "flosim/kak_phase.hpp"

namespace flosim {

PairFactor elementary_factor(Eigen::Index dim, double mu, int j, int k) {
  PairFactor p;
  p.w1 = CVec::Zero(dim);
  p.w2 = CVec::Zero(dim);
  p.w1(j) = 1.0;
  p.w2(k) = 1.0;
  p.alpha = std::cos(mu);
  p.beta = std::sin(mu);
  return p;
}

int TripleTraceInput::m_count() const {
  int n = 0;
  for (const auto* group : {&left, &middle, &right})
    for (const auto& it : *group) n += std::holds_alternative<LinearFactor>(it) ? 1 : 0;
  return n;
}

LMatrix build_L_matrix(const TripleTraceInput& t, bool fold) {
  const Eigen::Index d = t.Mblock.rows();
  if (t.Mblock.cols() != d) throw ShapeError("reference covariance is not square");

  struct Form {
    const CVec* w;
    int pair_role;  // 0 linear, 1 first of pair, 2 second of pair
    cplx alpha, beta;
  };
  std::vector<Form> forms;
  LMatrix out;
  out.prefactor = t.prefactor;
  for (const auto* group : {&t.left, &t.middle, &t.right}) {
    for (const auto& it : *group) {
      if (const auto* lin = std::get_if<LinearFactor>(&it)) {
        if (lin->w.size() != d) throw ShapeError("linear form has wrong length");
        forms.push_back({&lin->w, 0, 0.0, 0.0});
      } else {
        const auto& p = std::get<PairFactor>(it);
        if (p.w1.size() != d || p.w2.size() != d) throw ShapeError("pair form has wrong length");
        if (p.beta == 0.0) {
          out.prefactor *= p.alpha;
          continue;
        }
        forms.push_back({&p.w1, 1, p.alpha, p.beta});
        forms.push_back({&p.w2, 2, p.alpha, p.beta});
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(forms.size());
  CMat f(d, n);
  for (Eigen::Index a = 0; a < n; ++a) f.col(a) = *forms[a].w;
  CMat h = CMat::Identity(d, d) + cplx(0.0, 1.0) * t.Mblock.cast<cplx>();
  CMat g = f.transpose() * h * f;

  CMat l = CMat::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b) {
      l(a, b) = g(a, b);
      l(b, a) = -g(a, b);
    }
  for (Eigen::Index a = 0; a < n; ++a) {
    if (forms[a].pair_role != 1) continue;
    const cplx alpha = forms[a].alpha, beta = forms[a].beta;
    if (fold) {
      l.row(a) *= beta;
      l.col(a) *= beta;
      l(a, a + 1) += alpha;
      l(a + 1, a) -= alpha;
    } else {
      out.prefactor *= beta;
      l(a, a + 1) += alpha / beta;
      l(a + 1, a) -= alpha / beta;
    }
  }
  out.L = std::move(l);
  return out;
}

cplx triple_trace(const TripleTraceInput& t, bool fold) {
  LMatrix l = build_L_matrix(t, fold);
  if (l.L.rows() % 2 != 0) return 0.0;
  return l.prefactor * pfaffian_unchecked(l.L);
}

cplx vacuum_chain(Eigen::Index dim, const std::vector<ChainFactor>& factors, bool fold) {
  Mat acc = Mat::Identity(dim, dim);
  bool acc_trivial = true;
  cplx phase = 1.0;
  std::vector<TraceItem> items;
  items.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (const auto* p = std::get_if<PassiveFactor>(&*it)) {
      if (p->rotation.rows() != dim) throw ShapeError("passive factor has wrong dimension");
      acc = p->rotation * acc;
      acc_trivial = false;
      phase *= p->phase;
    } else if (const auto* q = std::get_if<PairFactor>(&*it)) {
      PairFactor moved = *q;
      if (!acc_trivial) {
        moved.w1 = acc.transpose().cast<cplx>() * q->w1;
        moved.w2 = acc.transpose().cast<cplx>() * q->w2;
      }
      items.emplace_back(std::move(moved));
    } else {
      LinearFactor moved = std::get<LinearFactor>(*it);
      if (!acc_trivial) moved.w = acc.transpose().cast<cplx>() * moved.w;
      items.emplace_back(std::move(moved));
    }
  }
  std::reverse(items.begin(), items.end());
  TripleTraceInput t;
  t.Mblock = symplectic_form(dim);
  t.middle = std::move(items);
  t.prefactor = phase;
  return triple_trace(t, fold);
}

}  // namespace flosim
