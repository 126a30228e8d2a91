#include "flosim/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "flosim/errors.hpp"

namespace flosim {

namespace {

constexpr double kE2 = M_E * M_E;
constexpr double kAlphaSlack = 1e-6;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix(splitmix(seed ^ splitmix(stream)) + index);
}

int worker_count(const EstimateOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  if (const char* env = std::getenv("FLOSIM_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return std::min(t, 256);
  }
  return 1;
}

// fn(i) for i in [0, n); results must not depend on the schedule.
template <class Fn>
void parallel_for(long n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = static_cast<int>(std::min<long>(workers, n));
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

void check_params(double epsilon, double delta) {
  if (!(epsilon > 0 && epsilon < 1)) throw ParamError("epsilon must lie in (0, 1)");
  if (!(delta > 0 && delta < 1)) throw ParamError("delta must lie in (0, 1)");
}

cplx minus_i_pow(int k) {
  static const cplx table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return table[k % 4];
}

std::array<int, 4> block_qubits(const ProjectionBlock& b) { return {b.q[0], b.q[1], b.q[2], b.q[3]}; }

// Bitstring on the physical register: logical outputs, 0 on blocks and padding.
std::vector<int> physical_output(const GadgetizedProgram& p) {
  std::vector<int> b(p.total_qubits, 0);
  for (std::size_t q = 0; q < p.output.size(); ++q) b[p.output_qubit[q]] = p.output[q];
  return b;
}

void push_basis_bra(std::vector<ChainFactor>& chain, const std::vector<int>& x, Eigen::Index dim) {
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
    if (x[i] != 1) continue;
    LinearFactor f{CVec::Zero(dim)};
    f.w(2 * i) = 1.0;
    chain.emplace_back(std::move(f));
  }
}

struct BranchTally {
  std::map<std::vector<int>, long> counts;
};

BranchTally sample_branches(const std::vector<double>& angles, long s, std::uint64_t seed) {
  BranchTally t;
  if (angles.empty()) {
    t.counts[{}] = s;
    return t;
  }
  Rng rng(stream_seed(seed, 1, 0));
  for (long j = 0; j < s; ++j) t.counts[sample_branch(angles, rng).y]++;
  return t;
}

double sign_of(double x) { return x < 0 ? -1.0 : 1.0; }

void check_even(const std::vector<int>& bits, const char* what) {
  int ones = 0;
  for (int b : bits) ones += b == 1;
  if (ones % 2) throw ParityError(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string mode_name(EstimatorMode m) { return m == EstimatorMode::AllQubits ? "all" : "partial"; }

SamplePlan plan_samples(const std::vector<double>& angles, double epsilon, double delta, EstimatorMode mode,
                        double p_assumed, int n_unmeasured) {
  check_params(epsilon, delta);
  if (!(p_assumed > 0 && p_assumed <= 1)) throw ParamError("p_assumed must lie in (0, 1]");
  if (n_unmeasured < 0) throw ParamError("negative unmeasured count");
  SamplePlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.p_assumed = p_assumed;
  plan.xi_star = xi_star(angles);
  plan.n_unmeasured = n_unmeasured;

  const bool partial = mode == EstimatorMode::Partial;
  const double e = partial ? epsilon / 2 : epsilon;
  const double d = partial ? delta / 2 : delta;
  const double p = p_assumed;
  if (angles.empty()) {
    plan.s = 1;
  } else {
    const double gap = std::sqrt(p + e) - std::sqrt(p);
    const double lead = 2.0 * std::pow(std::sqrt(plan.xi_star) + std::sqrt(p), 2) / (gap * gap);
    plan.s = static_cast<long>(std::ceil(lead * std::log(2.0 * kE2 / d)));
  }
  if (partial) {
    if (n_unmeasured == 0) {
      plan.l = plan.L = 1;
    } else {
      const double en = epsilon / 2, dn = delta / 2;
      plan.l = static_cast<long>(std::ceil(8.0 * kE2 * std::sqrt(static_cast<double>(n_unmeasured)) / (en * en)));
      plan.L = static_cast<long>(std::ceil(std::log(2.0 / dn)));
    }
  }
  return plan;
}

GaussianDesc evolve_program(const GadgetizedProgram& p) {
  GaussianDesc g = basis_state(p.input);
  const Eigen::Index d = g.dim();
  for (const FloOp& op : p.flo_gates) {
    if (op.elementary) {
      g = apply_elementary(g, op.mu, op.idx[0], op.idx[1]);
      continue;
    }
    Mat full = Mat::Zero(d, d);
    for (std::size_t a = 0; a < op.idx.size(); ++a)
      for (std::size_t b = 0; b < op.idx.size(); ++b) full(op.idx[a], op.idx[b]) = op.alpha(a, b);
    g = op.passive ? apply_passive_generator(g, full) : apply_general_flo(g, full);
    g.omega *= op.phase;
  }
  return g;
}

cplx alpha_y(const GadgetizedProgram& p, const GaussianDesc& psi, const std::vector<int>& y) {
  if (y.size() != p.blocks.size()) throw DimensionError("branch string length differs from gadget count");
  if (psi.m != p.total_qubits) throw DimensionError("state does not match the program register");
  for (int b : p.output)
    if (b == kUnmeasured) throw ParamError("alpha_y needs a fully specified output");
  const Eigen::Index d = psi.dim();

  std::vector<ChainFactor> chain;
  push_basis_bra(chain, physical_output(p), d);
  cplx scalar = 1.0;
  int weight = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    BranchPrep bp = branch_prep(p.blocks[j].theta, y[j] ? Branch::B : Branch::A, block_qubits(p.blocks[j]));
    scalar *= std::conj(bp.scalar);
    weight += y[j];
    for (const auto& op : bp.ops) chain.emplace_back(elementary_factor(d, -op.mu, op.j, op.k));
  }
  for (auto& f : ket_factors(psi)) chain.push_back(std::move(f));

  cplx v = psi.zero ? cplx(0.0) : psi.omega * vacuum_chain(d, chain);
  cplx a = std::pow(4.0, static_cast<double>(p.k)) * minus_i_pow(weight) * scalar * v;
  if (std::abs(a) > 1.0 + kAlphaSlack)
    throw InternalError("|alpha_y| = " + std::to_string(std::abs(a)) + " exceeds 1");
  return a;
}

cplx branch_sum_amplitude(const GadgetizedProgram& p, const GaussianDesc& psi) {
  const int k = p.k;
  if (k > 20) throw CapacityError("too many gadgets for exhaustive branch enumeration");
  cplx sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> y(k);
    for (int j = 0; j < k; ++j) y[j] = (mask >> j) & 1;
    sum += branch_weight(p.magic_angles, y) * alpha_y(p, psi, y);
  }
  return sum;
}

BasisBra random_basis_bra(const std::vector<int>& fixed, Rng& rng) {
  BasisBra b;
  b.x = fixed;
  std::vector<int> free;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (fixed[i] == kUnmeasured) free.push_back(static_cast<int>(i));
  std::bernoulli_distribution coin(0.5);
  int ones = 0;
  for (int i : free) ones += b.x[i] = coin(rng) ? 1 : 0;
  if (!free.empty() && ones % 2) b.x[free[0]] ^= 1;

  // Fisher-Yates on the free Majoranas; each swap becomes exp(pi/4 c_a c_b),
  // a signed transposition. Odd permutations get one extra fixed transposition.
  std::vector<int> maj;
  for (int i : free) {
    maj.push_back(2 * i);
    maj.push_back(2 * i + 1);
  }
  const int n = static_cast<int>(maj.size());
  int swaps = 0;
  for (int i = n - 1; i > 0; --i) {
    int j = std::uniform_int_distribution<int>(0, i)(rng);
    if (j == i) continue;
    b.ops.push_back({M_PI / 4, maj[j], maj[i]});
    std::swap(maj[i], maj[j]);
    ++swaps;
  }
  if (swaps % 2) b.ops.push_back({M_PI / 4, 2 * free[0], 2 * free[0] + 1});
  return b;
}

GaussianDesc basis_bra_state(const BasisBra& b) {
  GaussianDesc g = basis_state(b.x);
  for (const auto& op : b.ops) g = apply_elementary(g, op.mu, op.j, op.k);
  return g;
}

cplx basis_bra_overlap(const BasisBra& b, const GaussianDesc& psi) {
  if (static_cast<int>(b.x.size()) != psi.m) throw DimensionError("bra and state differ in qubit count");
  if (psi.zero) return 0.0;
  const Eigen::Index d = psi.dim();
  std::vector<ChainFactor> chain;
  push_basis_bra(chain, b.x, d);
  for (const auto& op : b.ops) chain.emplace_back(elementary_factor(d, -op.mu, op.j, op.k));
  for (auto& f : ket_factors(psi)) chain.push_back(std::move(f));
  return psi.omega * vacuum_chain(d, chain);
}

GaussianDesc random_flo_basis_bra(int n_unmeasured, Rng& rng) {
  if (n_unmeasured < 2 || n_unmeasured % 2) throw DimensionError("qubit count must be even and at least 2");
  return basis_bra_state(random_basis_bra(std::vector<int>(n_unmeasured, kUnmeasured), rng));
}

double norm_sample(const std::vector<int>& fixed, const std::vector<std::pair<cplx, GaussianDesc>>& terms, Rng& rng) {
  BasisBra b = random_basis_bra(fixed, rng);
  int n_free = 0;
  for (int v : fixed) n_free += v == kUnmeasured;
  cplx ov = 0.0;
  for (const auto& [c, g] : terms) ov += c * basis_bra_overlap(b, g);
  return (n_free > 0 ? std::ldexp(1.0, n_free - 1) : 1.0) * std::norm(ov);
}

namespace {

EstimateResult run_all_qubits(const Circuit& c, const GadgetizedProgram& prog, const SamplePlan& plan,
                              std::uint64_t seed, int workers) {
  EstimateResult r;
  r.mode = EstimatorMode::AllQubits;
  r.plan = plan;
  r.seed = seed;
  r.xi_star = plan.xi_star;
  r.s_used = plan.s;
  GaussianDesc psi = evolve_program(prog);

  BranchTally tally = sample_branches(prog.magic_angles, plan.s, seed);
  std::vector<std::pair<std::vector<int>, long>> ys(tally.counts.begin(), tally.counts.end());
  std::vector<cplx> alpha(ys.size());
  parallel_for(static_cast<long>(ys.size()), workers, [&](long i) { alpha[i] = alpha_y(prog, psi, ys[i].first); });

  cplx m = 0.0;
  const double root_xi = std::sqrt(plan.xi_star);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double t = branch_weight(prog.magic_angles, ys[i].first);
    m += static_cast<double>(ys[i].second) * root_xi * sign_of(t) * alpha[i];
    r.max_abs_alpha = std::max(r.max_abs_alpha, std::abs(alpha[i]));
  }
  m /= static_cast<double>(plan.s);
  r.p_raw = std::norm(m);
  r.distinct_branches = static_cast<long>(ys.size());
  (void)c;
  return r;
}

EstimateResult run_partial(const Circuit& c, const GadgetizedProgram& prog, const SamplePlan& plan, std::uint64_t seed,
                           int workers) {
  EstimateResult r;
  r.mode = EstimatorMode::Partial;
  r.plan = plan;
  r.seed = seed;
  r.xi_star = plan.xi_star;
  r.s_used = plan.s;
  r.l_used = plan.l;
  r.L_used = plan.L;

  GaussianDesc psi = evolve_program(prog);
  GaussianDesc projected = psi;
  std::vector<int> fixed(prog.total_qubits, 0);
  for (int q = 0; q < c.n; ++q) {
    const int phys = prog.output_qubit[q];
    fixed[phys] = c.output[q];
    if (c.output[q] == 0) projected = apply_projector_zero(projected, phys);
    if (c.output[q] == 1) projected = apply_projector_one(projected, phys);
  }

  BranchTally tally = sample_branches(prog.magic_angles, plan.s, seed);
  std::vector<std::pair<std::vector<int>, long>> ys(tally.counts.begin(), tally.counts.end());
  std::vector<std::pair<cplx, GaussianDesc>> terms(ys.size());
  const double root_xi = std::sqrt(plan.xi_star);
  const double scale = std::pow(4.0, static_cast<double>(prog.k));
  parallel_for(static_cast<long>(ys.size()), workers, [&](long i) {
    const auto& y = ys[i].first;
    GaussianDesc g = projected;
    cplx scalar = 1.0;
    int weight = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const ProjectionBlock& blk = prog.blocks[j];
      BranchPrep bp = branch_prep(blk.theta, y[j] ? Branch::B : Branch::A, block_qubits(blk));
      scalar *= std::conj(bp.scalar);
      weight += y[j];
      for (auto it = bp.ops.rbegin(); it != bp.ops.rend(); ++it) g = apply_elementary(g, -it->mu, it->j, it->k);
      for (int q : blk.q) g = apply_projector_zero(g, q);
    }
    const double t = y.empty() ? 1.0 : branch_weight(prog.magic_angles, y);
    terms[i].first = static_cast<double>(ys[i].second) / static_cast<double>(plan.s) * root_xi * sign_of(t) * scale *
                     minus_i_pow(weight) * scalar;
    terms[i].second = std::move(g);
  });
  for (const auto& [coef, g] : terms) {
    const double a = scale * g.norm();
    if (a > 1.0 + kAlphaSlack) throw InternalError("projected branch norm " + std::to_string(a) + " exceeds 1");
    r.max_abs_alpha = std::max(r.max_abs_alpha, a);
  }
  r.distinct_branches = static_cast<long>(ys.size());

  if (plan.n_unmeasured == 0) {
    BasisBra b{fixed, {}};
    cplx ov = 0.0;
    for (const auto& [coef, g] : terms) ov += coef * basis_bra_overlap(b, g);
    r.p_raw = std::norm(ov);
    return r;
  }

  const long total = plan.l * plan.L;
  std::vector<double> x(total);
  parallel_for(total, workers, [&](long t) {
    Rng rng(stream_seed(seed, 2, static_cast<std::uint64_t>(t)));
    x[t] = norm_sample(fixed, terms, rng);
  });
  std::vector<double> means(plan.L);
  for (long g = 0; g < plan.L; ++g) {
    double acc = 0.0;
    for (long i = 0; i < plan.l; ++i) acc += x[g * plan.l + i];
    means[g] = acc / static_cast<double>(plan.l);
  }
  std::sort(means.begin(), means.end());
  r.p_raw = plan.L % 2 ? means[plan.L / 2] : 0.5 * (means[plan.L / 2 - 1] + means[plan.L / 2]);
  return r;
}

template <class Run>
EstimateResult drive(const Circuit& c, EstimatorMode mode, double epsilon, double delta, std::uint64_t seed,
                     const EstimateOptions& opts, Run&& run) {
  const auto t0 = std::chrono::steady_clock::now();
  check_params(epsilon, delta);
  GadgetizedProgram prog = gadgetize(c);
  const int workers = worker_count(opts);
  const int n_free = c.n - c.measured_count();

  double p_assumed = opts.p_assumed;
  double d = delta;
  if (opts.adaptive && prog.k > 0) {
    SamplePlan coarse = plan_samples(prog.magic_angles, 0.25, delta / 2, mode, 1.0, n_free);
    EstimateResult pre = run(c, prog, coarse, splitmix(seed ^ 0xC0A25Eull), workers);
    p_assumed = std::clamp(pre.p_raw + 0.25, 1e-6, 1.0);
    d = delta / 2;
  }
  SamplePlan plan = plan_samples(prog.magic_angles, epsilon, d, mode, p_assumed, n_free);
  EstimateResult r = run(c, prog, plan, seed, workers);
  r.p_hat = std::clamp(r.p_raw, 0.0, 1.0);
  r.wall_time = seconds_since(t0);
  return r;
}

}  // namespace

EstimateResult estimate_all_qubits(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                                   const EstimateOptions& opts) {
  if (!c.full_output()) throw ParamError("all-qubit estimation needs a fully specified output");
  check_even(c.output, "output bitstring has odd parity");
  return drive(c, EstimatorMode::AllQubits, epsilon, delta, seed, opts, run_all_qubits);
}

EstimateResult estimate_partial(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                                const EstimateOptions& opts) {
  check_even(c.output, "measured bits have odd parity");
  return drive(c, EstimatorMode::Partial, epsilon, delta, seed, opts, run_partial);
}

EstimateResult estimate(const Circuit& c, double epsilon, double delta, std::uint64_t seed,
                        const EstimateOptions& opts) {
  return c.full_output() ? estimate_all_qubits(c, epsilon, delta, seed, opts)
                         : estimate_partial(c, epsilon, delta, seed, opts);
}

}  // namespace flosim
