#include "flosim_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "flosim/dense_oracle.hpp"
#include "flosim/errors.hpp"
#include "flosim/estimator.hpp"
#include "flosim/magic.hpp"

namespace flosim::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string circuit_path;
  double epsilon = 0.05;
  double delta = 0.1;
  std::optional<std::uint64_t> seed;
  std::string mode = "auto";
  std::string format;
  double p_assumed = 1.0;
  bool adaptive = false;
  bool timing = false;
  int dense_cap = kDefaultDenseCap;
  std::string out_path;
};

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json plan_json(const SamplePlan& p) {
  return ordered_json{{"s", p.s},           {"l", p.l},
                      {"L", p.L},           {"epsilon", p.epsilon},
                      {"delta", p.delta},   {"p_assumed", p.p_assumed},
                      {"xi_star", p.xi_star}, {"n_unmeasured", p.n_unmeasured}};
}

ordered_json header(const std::string& command) {
  return ordered_json{{"tool", "flosim"}, {"version", FLOSIM_VERSION}, {"command", command}};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw IoError("cannot write " + cfg.out_path);
  f << text;
}

std::string render(const ordered_json& j, const std::string& format) {
  if (format.empty() || format == "json") return j.dump(2) + "\n";
  if (format != "csv") throw ParamError("unknown format '" + format + "'");
  std::string keys, vals;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_structured()) continue;
    keys += (keys.empty() ? "" : ",") + it.key();
    vals += (vals.empty() ? "" : ",") + (it->is_string() ? it->get<std::string>() : it->dump());
  }
  return keys + "\n" + vals + "\n";
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  Circuit c = load_circuit(cfg.circuit_path);
  const std::uint64_t seed = cfg.seed ? *cfg.seed : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
  EstimateOptions opts;
  opts.p_assumed = cfg.p_assumed;
  opts.adaptive = cfg.adaptive;
  EstimateResult r;
  if (cfg.mode == "all")
    r = estimate_all_qubits(c, cfg.epsilon, cfg.delta, seed, opts);
  else if (cfg.mode == "partial")
    r = estimate_partial(c, cfg.epsilon, cfg.delta, seed, opts);
  else if (cfg.mode == "auto")
    r = estimate(c, cfg.epsilon, cfg.delta, seed, opts);
  else
    throw ParamError("mode must be all, partial or auto");

  ordered_json j = header("estimate");
  j["circuit"] = cfg.circuit_path;
  j["seed"] = seed;
  j["mode"] = mode_name(r.mode);
  j["adaptive"] = cfg.adaptive;
  j["plan"] = plan_json(r.plan);
  j["p_hat"] = r.p_hat;
  j["p_raw"] = r.p_raw;
  j["s_used"] = r.s_used;
  j["l_used"] = r.l_used;
  j["L_used"] = r.L_used;
  j["xi_star"] = r.xi_star;
  j["max_abs_alpha"] = r.max_abs_alpha;
  j["distinct_branches"] = r.distinct_branches;
  j["gadgets"] = c.cphase_count();
  if (cfg.timing) j["wall_time"] = r.wall_time;
  emit(cfg, render(j, cfg.format), out);
  return 0;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  Circuit c = load_circuit(cfg.circuit_path);
  ordered_json j = header("exact");
  j["circuit"] = cfg.circuit_path;
  j["qubits"] = c.n;
  j["dense_cap"] = cfg.dense_cap;
  j["probability"] = dense_born(c, cfg.dense_cap);
  emit(cfg, render(j, cfg.format), out);
  return 0;
}

int cmd_extent(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.format.empty() && cfg.format != "csv") throw ParamError("extent only emits csv");
  emit(cfg, extent_csv(), out);
  return 0;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  auto suites = selftest();
  ordered_json j = header("selftest");
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const auto& s : suites) {
    all = all && s.pass;
    arr.push_back({{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  }
  j["suites"] = arr;
  j["pass"] = all;
  emit(cfg, j.dump(2) + "\n", out);
  return all ? 0 : 3;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& msg, int line = 0, int column = 0) {
  ordered_json j{{"error", kind}, {"message", msg}};
  if (line > 0) {
    j["line"] = line;
    j["column"] = column;
  }
  err << j.dump() << "\n";
}

}  // namespace

std::string extent_csv() {
  std::ostringstream os;
  os << "theta,xi,w_squared,ratio\n";
  for (int i = 0; i < 256; ++i) {
    const double th = M_PI * i / 128.0;
    const double xi = extent_single(th);
    const double w = fermionic_nonlinearity_rot(th / 4);
    os << g17(th) << "," << g17(xi) << "," << g17(w * w) << "," << g17(w * w / xi) << "\n";
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Probability estimation for matchgate circuits with controlled phases"};
  app.set_version_flag("--version", std::string(FLOSIM_VERSION));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json (default) or csv");
    sub->add_option("--out", cfg.out_path, "Write the report to FILE");
  };
  auto* est = app.add_subcommand("estimate", "Estimate the output probability of a circuit");
  est->add_option("circuit", cfg.circuit_path)->required();
  est->add_option("--eps", cfg.epsilon, "Additive error");
  est->add_option("--delta", cfg.delta, "Failure probability");
  est->add_option("--seed", cfg.seed, "Master seed (default: random, always reported)");
  est->add_option("--mode", cfg.mode, "all, partial or auto");
  est->add_option("--p-assumed", cfg.p_assumed, "Prior upper bound on p used for planning");
  est->add_flag("--adaptive", cfg.adaptive, "Coarse pass to bound p before planning");
  est->add_flag("--timing", cfg.timing, "Include wall time in the report");
  add_common(est);

  auto* ex = app.add_subcommand("exact", "Exact probability from the dense oracle");
  ex->add_option("circuit", cfg.circuit_path)->required();
  ex->add_option("--dense-cap", cfg.dense_cap, "Largest qubit count simulated densely");
  add_common(ex);

  auto* ext = app.add_subcommand("extent", "Extent versus fermionic nonlinearity comparison data");
  add_common(ext);

  auto* st = app.add_subcommand("selftest", "Run the built-in invariant suites");
  add_common(st);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << FLOSIM_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return 2;
  }

  try {
    if (*est) return cmd_estimate(cfg, out);
    if (*ex) return cmd_exact(cfg, out);
    if (*ext) return cmd_extent(cfg, out);
    return cmd_selftest(cfg, out);
  } catch (const Error& e) {
    report_error(err, error_code_name(e.code()), e.what(), e.line(), e.column());
    return is_invariant_breach(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 3;
  }
}

}  // namespace flosim::cli
