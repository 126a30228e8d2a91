#include <functional>
#include <sstream>

#include "flosim/dense_oracle.hpp"
#include "flosim/estimator.hpp"
#include "flosim/random.hpp"
#include "flosim_cli/cli.hpp"

namespace flosim::cli {

namespace {

template <class T>
std::string fmt(const char* label, T v) {
  std::ostringstream os;
  os.precision(3);
  os << label << "=" << v;
  return os.str();
}

SuiteResult pfaffian_suite() {
  Rng rng(101);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    Mat a = random_antisym(2 + 2 * (t % 16), rng);
    double pf = pfaffian(a), det = a.determinant();
    worst = std::max(worst, std::abs(pf * pf - det) / std::max(1e-300, std::abs(det)));
  }
  return {"pfaffian", worst < 1e-8, fmt("max_rel_err", worst)};
}

SuiteResult kak_suite() {
  Rng rng(102);
  double worst = 0, min_mag = 1;
  for (int t = 0; t < 50; ++t) {
    Mat alpha = random_antisym(8, rng);
    KakFactors f = kak_flo_with_sign(alpha);
    CMat got = static_cast<double>(f.sign) * dense_flo_unitary(4, f.beta) *
               dense_flo_unitary(4, kak_a_generator(f.Lambda)) * dense_flo_unitary(4, f.gamma);
    worst = std::max(worst, max_abs(CMat(got - dense_flo_unitary(4, alpha))));
    min_mag = std::min(min_mag, f.recovery_magnitude);
  }
  return {"kak_sign", worst < 1e-8 && min_mag >= 0.25 * (1 - 1e-6),
          fmt("max_err", worst) + " " + fmt("min_recovery", min_mag)};
}

SuiteResult engine_suite() {
  Rng rng(103);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    Circuit c = random_circuit(4, 12, {}, rng);
    GaussianDesc g = basis_state(c.input);
    for (const Gate& gate : c.gates) {
      if (auto* el = std::get_if<Elementary>(&gate)) g = apply_elementary(g, el->mu, el->j, el->k);
      if (auto* pg = std::get_if<PassiveGen>(&gate)) g = apply_passive_generator(g, pg->beta);
      if (auto* gg = std::get_if<GeneralGen>(&gate)) g = apply_general_flo(g, gg->alpha);
      if (auto* mg = std::get_if<Matchgate>(&gate)) {
        GeneratorWithPhase gp = matchgate_to_generator(mg->A, mg->B);
        Mat full = Mat::Zero(8, 8);
        full.block(2 * mg->q, 2 * mg->q, 4, 4) = gp.alpha;
        g = apply_general_flo(g, full);
        g.omega *= gp.phase;
      }
    }
    worst = std::max(worst, (dense_expand(g) - dense_run(c)).cwiseAbs().maxCoeff());
  }
  return {"phase_exact_engine", worst < 1e-8, fmt("max_err", worst)};
}

SuiteResult magic_suite() {
  double worst = std::abs(extent_single(M_PI) - 2) + std::abs(extent_single(0) - 1);
  for (int i = 0; i < 64; ++i) {
    double th = 2 * M_PI * i / 63.0;
    CVec a = dense_branch_state(th, Branch::A), b = dense_branch_state(th, Branch::B);
    worst = std::max(worst, (std::cos(th / 4) * a + cplx(0, std::sin(th / 4)) * b - dense_magic_state(th)).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(a.dot(b)));
  }
  return {"magic_identities", worst < 1e-12, fmt("max_err", worst)};
}

SuiteResult gadget_suite() {
  Rng rng(104);
  double worst = 0;
  for (double th : {M_PI, M_PI / 2, 0.3}) {
    Circuit c = random_circuit(4, 5, {th}, rng);
    worst = std::max(worst, std::abs(dense_program_probability(gadgetize(c)) - dense_born(c)));
  }
  return {"gadget_identity", worst < 1e-8, fmt("max_err", worst)};
}

SuiteResult estimator_suite() {
  Rng rng(105);
  double worst = 0, alpha = 0;
  for (int t = 0; t < 5; ++t) {
    Circuit c = random_circuit(4, 8, {}, rng);
    EstimateResult r = estimate(c, 0.1, 0.1, 1);
    worst = std::max(worst, std::abs(r.p_raw - dense_born(c)));
    alpha = std::max(alpha, r.max_abs_alpha);
  }
  Circuit c = random_circuit(4, 6, {M_PI, 1.0}, rng);
  GadgetizedProgram p = gadgetize(c);
  GaussianDesc psi = evolve_program(p);
  worst = std::max(worst, std::abs(std::norm(branch_sum_amplitude(p, psi)) - dense_born(c)));
  return {"estimator_exact_paths", worst < 1e-8 && alpha <= 1 + 1e-6, fmt("max_err", worst)};
}

}  // namespace

std::vector<SuiteResult> selftest() {
  std::vector<std::function<SuiteResult()>> suites{pfaffian_suite, kak_suite,    engine_suite,
                                                   magic_suite,    gadget_suite, estimator_suite};
  std::vector<SuiteResult> out;
  for (auto& s : suites) {
    try {
      out.push_back(s());
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace flosim::cli
