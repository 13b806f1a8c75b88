// Command-line surface: load channels and states, evaluate information
// measures and capacity bounds, run the verification suites.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qchan/capacity.hpp"
#include "qchan/inequalities.hpp"
#include "qchan/io.hpp"
#include "qchan/measures.hpp"

namespace {

using namespace qchan;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Ordered key/value report; body goes to stdout, human summary to stderr.
class Report {
public:
  void add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, num(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, uint64_t value) { add(key, std::to_string(value)); }

  void add_check(const std::string& prefix, const CheckReport& rep) {
    add(prefix + ".trials", rep.trials);
    add(prefix + ".min_slack", rep.min_slack);
    add(prefix + ".threshold", rep.threshold);
    add(prefix + ".pass", rep.passed() ? "1" : "0");
    for (size_t i = 0; i < rep.witnesses.size(); ++i)
      add(prefix + ".witness." + std::to_string(i), rep.witnesses[i]);
  }

  void print(bool table) const {
    for (const auto& [k, v] : lines_) std::cout << k << "=" << v << "\n";
    if (table) {
      for (const auto& [k, v] : lines_)
        std::cerr << "  " << k << (k.size() < 40 ? std::string(40 - k.size(), ' ') : " ")
                  << v << "\n";
    }
  }

private:
  std::vector<std::pair<std::string, std::string>> lines_;
};


int run_measure(const std::string& channel_path, const std::string& state_path,
                const std::string& which, uint64_t seed, int restarts,
                bool table) {
  Report rep;
  rep.add("command", "measure");
  rep.add("channel", channel_path);
  rep.add("channel.digest", file_digest(channel_path));
  rep.add("state", state_path);
  rep.add("state.digest", file_digest(state_path));
  rep.add("which", which);
  rep.add("seed", seed);

  ChannelFile cf = load_channel_file(channel_path);
  QuantumOperation op = cf.as_operation();

  if (which == "fidelity") {
    DensityOperator rho = load_state_file(state_path);
    FidelityReport f{entanglement_fidelity(rho, op),
                     "entanglement fidelity on dim " + std::to_string(rho.dim())};
    rep.add("result.fidelity", f.value);
    rep.add("result.context", f.context);
  } else if (which == "exchange") {
    DensityOperator rho = load_state_file(state_path);
    rep.add("result.exchange", entropy_exchange(rho, op));
  } else if (which == "coherent") {
    DensityOperator rho = load_state_file(state_path);
    rep.add("result.coherent", coherent_information(rho, op));
  } else if (which == "fano") {
    DensityOperator rho = load_state_file(state_path);
    double fe = entanglement_fidelity(rho, op);
    auto bounds = quantum_fano_bound(fe, rho.dim());
    rep.add("result.fidelity", fe);
    rep.add("result.fano.tight", bounds.tight);
    rep.add("result.fano.loose", bounds.loose);
  } else if (which == "subspace") {
    // the state file's matrix is interpreted as the subspace projector
    CMatrix p = load_matrix_file(state_path);
    SubspaceFidelityConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    rep.add("result.subspace", subspace_fidelity(p, op, cfg));
  } else {
    throw Error("unknown measure '" + which + "'");
  }
  rep.print(table);
  return kExitOk;
}

int run_capacity(const std::string& channel_path, int n_max,
                 const std::string& encodings, int source_dim, uint64_t seed,
                 int restarts, bool dump_argmax, bool table) {
  Report rep;
  rep.add("command", "capacity");
  rep.add("channel", channel_path);
  rep.add("channel.digest", file_digest(channel_path));
  rep.add("encodings", encodings);
  rep.add("n_max", n_max);
  rep.add("seed", seed);
  rep.add("restarts", restarts);

  ChannelFile cf = load_channel_file(channel_path);
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;

  CapacityEstimate est;
  if (encodings == "unitary") {
    est = capacity_bound_unitary(cf.as_operation(), n_max, cfg);
  } else if (encodings == "general") {
    QuantumOperation op = cf.as_operation();
    int s = source_dim > 0 ? source_dim : op.dim_in();
    est = capacity_bound_general(op, s, n_max, cfg);
    rep.add("source_dim", s);
  } else if (encodings == "observed") {
    if (!cf.is_observed())
      throw Error("observed encodings need a channel file with branches");
    est = observed_capacity_bound(*cf.observed, n_max, cfg);
  } else {
    throw Error("unknown encoding class '" + encodings + "'");
  }

  std::vector<double> c_values;
  for (const auto& entry : est.per_n) {
    std::string p = "capacity.n" + std::to_string(entry.n);
    rep.add(p + ".per_use", entry.per_use);
    rep.add(p + ".clipped", entry.clipped);
    rep.add(p + ".c_n", entry.c_n);
    rep.add(p + ".best_restart", entry.best_restart);
    c_values.push_back(entry.c_n);
    if (dump_argmax) {
      std::ostringstream dump;
      dump.precision(12);
      const CMatrix& m = entry.argmax_state;
      dump << "[";
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        dump << (r ? "," : "") << "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          dump << (c ? "," : "") << "[" << m(r, c).real() << "," << m(r, c).imag()
               << "]";
        dump << "]";
      }
      dump << "]";
      rep.add(p + ".argmax", dump.str());
    }
  }
  int dim = cf.as_operation().dim_in();
  auto super = superadditivity_check(c_values, dim, cfg.f_tol);
  rep.add_check("superadditivity", super);
  rep.print(table);
  return kExitOk;
}

CheckReport dp_failure_scenario() {
  CheckReport rep;
  rep.name = "dp_failure_scenario";
  const double p = 0.01;
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = p / 2;
  m(1, 1) = p / 2;
  m(2, 2) = 1.0 - p;
  DensityOperator rho(m);
  QuantumOperation proj = dp_failure_projection();
  double s = von_neumann_entropy(rho);
  double i = coherent_information(rho, proj);
  // the projection keeps a maximally entangled remnant: I = 1 exactly
  rep.record(-std::abs(i - 1.0), "I(rho,P.P) != 1");
  // and the first data-processing inequality fails for this non-TP map
  rep.record(i - s, "expected I > S for the projection scenario");
  return rep;
}

int run_verify(const std::string& suite, int trials, uint64_t seed, int restarts,
               bool table) {
  Report rep;
  rep.add("command", "verify");
  rep.add("suite", suite);
  rep.add("trials", trials);
  rep.add("seed", seed);

  std::vector<CheckReport> checks;
  auto want = [&](const std::string& name) {
    return suite == "all" || suite == name;
  };

  if (want("dp")) {
    checks.push_back(data_processing_suite(trials, seed));
    checks.push_back(dp_failure_scenario());
  }
  if (want("convexity")) checks.push_back(convexity_suite(trials, seed));
  if (want("additivity")) checks.push_back(additivity_suite(trials, seed));
  if (want("fano")) {
    checks.push_back(quantum_fano_suite(trials, seed));
    checks.push_back(araki_lieb_suite(trials, seed));
  }
  if (want("continuity")) checks.push_back(continuity_suite(trials, seed));
  if (want("fidelity-lemma")) {
    checks.push_back(fidelity_lemma_suite(trials, seed));
    checks.push_back(generalized_fidelity_lemma_suite(trials, seed));
  }
  if (want("examples")) {
    checks.push_back(verify_example1());
    checks.push_back(verify_example2());
  }
  if (want("observed")) {
    checks.push_back(observed_pointwise_suite(trials, seed));
    checks.push_back(equivalence_identity_suite(std::min(trials, 300), seed));
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    checks.push_back(teleportation_gap_check(cfg));
  }
  if (suite == "all")
    checks.push_back(representation_robustness_suite(std::min(trials, 100), seed));

  if (checks.empty()) throw Error("unknown suite '" + suite + "'");

  bool all_pass = true;
  for (const auto& c : checks) {
    rep.add_check("check." + c.name, c);
    all_pass = all_pass && c.passed();
  }
  rep.add("verify.pass", all_pass ? "1" : "0");
  rep.print(table);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

void add_operation_dump(Report& rep, const std::string& prefix,
                        const QuantumOperation& op) {
  rep.add(prefix + ".dim_in", op.dim_in());
  rep.add(prefix + ".dim_out", op.dim_out());
  rep.add(prefix + ".kraus_count", op.kraus_count());
  for (int i = 0; i < op.kraus_count(); ++i) {
    std::ostringstream dump;
    dump.precision(6);
    const CMatrix& m = op.kraus()[i];
    dump << "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      dump << (r ? "," : "") << "[";
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        dump << (c ? "," : "") << "[" << m(r, c).real() << "," << m(r, c).imag()
             << "]";
      dump << "]";
    }
    dump << "]";
    rep.add(prefix + ".kraus." + std::to_string(i), dump.str());
  }
}

int run_example(const std::string& name, uint64_t seed, int restarts, bool table) {
  Report rep;
  rep.add("command", "example");
  rep.add("name", name);
  rep.add("seed", seed);
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;

  if (name == "example1") {
    add_operation_dump(rep, "channel", example1_channel());
    add_operation_dump(rep, "encoding", example1_encoding());
    const double grid[] = {0.5, 0.75, 0.9, 1.0};
    for (double p : grid) {
      CMatrix m = CMatrix::Zero(4, 4);
      m(0, 0) = p;
      m(1, 1) = 1.0 - p;
      auto v = example1_values(DensityOperator(m));
      std::string key = "example1.p" + num(p);
      rep.add(key + ".S", v.s_rho);
      rep.add(key + ".I_composed", v.i_composed);
      rep.add(key + ".I_pipelined", v.i_pipelined);
      rep.add(key + ".reference.I_composed", v.s_rho);
      rep.add(key + ".reference.I_pipelined", 2.0 * v.s_rho - 1.0);
      rep.add(key + ".pipelining_violated",
              v.i_composed > v.i_pipelined + 1e-9 ? "1" : "0");
    }
    rep.add("note",
            "computed I_pipelined follows S-1; the reference closed form "
            "2S-1 matches only at S=0");
  } else if (name == "example2") {
    add_operation_dump(rep, "channel", example2_channel());
    auto v = example2_values();
    rep.add("example2.I_first", v.i_first);
    rep.add("example2.I_second", v.i_second);
    rep.add("example2.I_joint", v.i_joint);
    rep.add("example2.reference", "(0, 0, 2)");
    auto vp = example2_values_product();
    rep.add("example2.product.I_joint", vp.i_joint);
    rep.add("example2.product.reference", "0");
  } else if (name == "teleportation") {
    ObservedChannel obs = pauli_observed_channel();
    add_operation_dump(rep, "channel", obs.total());
    auto gap = teleportation_gap_check(cfg);
    auto unobs = max_coherent_info(obs.total(), cfg);
    auto obs_val = max_avg_coherent_info(obs, cfg, {unobs.argmax});
    rep.add("teleportation.unobserved_bound", unobs.value);
    rep.add("teleportation.observed_bound", obs_val.value);
    rep.add("teleportation.reference", "0 < 1");
    rep.add("teleportation.pass", gap.passed() ? "1" : "0");
  } else if (name == "erasure") {
    const double eps[] = {0.0, 0.25, 0.5};
    for (double e : eps) {
      auto res = max_coherent_info(erasure_channel(e), cfg);
      std::string key = "erasure.eps" + num(e);
      rep.add(key + ".bound", res.value);
      rep.add(key + ".clipped", std::max(0.0, res.value));
      rep.add(key + ".reference", std::max(0.0, 1.0 - 2.0 * e));
    }
  } else if (name == "phase-erasure") {
    const double deltas[] = {0.0, 0.3, 1.0};
    for (double d : deltas) {
      auto res = max_avg_coherent_info(phase_erasure_channel(d), cfg);
      std::string key = "phase_erasure.delta" + num(d);
      rep.add(key + ".bound", res.value);
      rep.add(key + ".reference", 1.0 - d);
    }
  } else if (name == "dp-failure") {
    add_operation_dump(rep, "projection", dp_failure_projection());
    const double p = 0.01;
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = p / 2;
    m(1, 1) = p / 2;
    m(2, 2) = 1.0 - p;
    DensityOperator rho(m);
    rep.add("dp_failure.p", p);
    rep.add("dp_failure.S", von_neumann_entropy(rho));
    rep.add("dp_failure.I", coherent_information(rho, dp_failure_projection()));
    rep.add("dp_failure.reference", "I = 1 > S ~ 0.0908");
  } else {
    throw Error("unknown example '" + name + "'");
  }
  rep.print(table);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information measures and capacity bounds for noisy quantum channels"};
  app.require_subcommand(1);

  uint64_t seed = 42;
  int restarts = 32;
  bool table = false;
  app.add_option("--seed", seed, "random seed (echoed in every report)");
  app.add_option("--restarts", restarts, "optimizer restarts");
  app.add_flag("--table", table, "also print a human-readable table to stderr");

  auto* measure = app.add_subcommand("measure", "evaluate one information measure");
  measure->fallthrough();
  std::string channel_path, state_path, which;
  measure->add_option("--channel", channel_path, "channel file")->required();
  measure->add_option("--state", state_path, "state (or projector) file")->required();
  measure
      ->add_option("--which", which,
                   "one of fidelity|exchange|coherent|fano|subspace")
      ->required();

  auto* capacity = app.add_subcommand("capacity", "numerical capacity bounds");
  capacity->fallthrough();
  std::string cap_channel, encodings = "unitary";
  int n_max = 1, source_dim = 0;
  bool dump_argmax = false;
  capacity->add_option("--channel", cap_channel, "channel file")->required();
  capacity->add_option("--n", n_max, "largest number of channel uses");
  capacity->add_option("--encodings", encodings, "unitary|general|observed");
  capacity->add_option("--source-dim", source_dim,
                       "source dimension for general encodings");
  capacity->add_flag("--dump-argmax", dump_argmax, "include maximizing states");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->fallthrough();
  std::string suite = "all";
  int trials = 1000;
  verify->add_option("--suite", suite,
                     "all|dp|convexity|additivity|fano|continuity|fidelity-"
                     "lemma|examples|observed");
  verify->add_option("--trials", trials, "randomized trials per suite");

  auto* example = app.add_subcommand("example", "reproduce a worked scenario");
  example->fallthrough();
  std::string example_name;
  example
      ->add_option("--name", example_name,
                   "example1|example2|teleportation|erasure|phase-erasure|dp-failure")
      ->required();

  auto started = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    app.parse(argc, argv);
    if (measure->parsed())
      code = run_measure(channel_path, state_path, which, seed, restarts, table);
    else if (capacity->parsed())
      code = run_capacity(cap_channel, n_max, encodings, source_dim, seed,
                          restarts, dump_argmax, table);
    else if (verify->parsed())
      code = run_verify(suite, trials, seed, restarts, table);
    else if (example->parsed())
      code = run_example(example_name, seed, restarts, table);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInputError;
  } catch (const qchan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "duration_ms=" << elapsed << "\n";
  return code;
}
