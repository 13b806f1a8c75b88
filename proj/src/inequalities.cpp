#include "qchan/inequalities.hpp"

#include <cmath>
#include <sstream>

#include "qchan/random.hpp"

namespace qchan {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

QuantumOperation sum_operations(const std::vector<QuantumOperation>& branches) {
  std::vector<CMatrix> kraus;
  for (const auto& b : branches)
    for (const auto& a : b.kraus()) kraus.push_back(a);
  return QuantumOperation(std::move(kraus));
}

}  // namespace

CheckReport check_data_processing(const DensityOperator& rho,
                                  const QuantumOperation& e1,
                                  const QuantumOperation& e2) {
  if (!e2.is_trace_preserving())
    throw Error("check_data_processing: second stage must be trace-preserving");
  CheckReport rep;
  rep.name = "data_processing";
  double i1 = coherent_information(rho, e1);
  double i2 = coherent_information(rho, compose(e2, e1));
  if (e1.is_trace_preserving()) {
    double s = von_neumann_entropy(rho);
    rep.record(s - i1, "S(rho)=" + fmt(s) + " < I(rho,E1)=" + fmt(i1));
  }
  rep.record(i1 - i2, "I(rho,E1)=" + fmt(i1) + " < I(rho,E2oE1)=" + fmt(i2));
  return rep;
}

CheckReport check_convexity(const DensityOperator& rho,
                            const std::vector<QuantumOperation>& branches) {
  CheckReport rep;
  rep.name = "generalized_convexity";
  QuantumOperation total = sum_operations(branches);
  double total_weight = apply(total, rho).weight;
  if (total_weight <= kEigClipTol)
    throw Error("check_convexity: zero total weight");
  double avg = 0.0;
  for (const auto& b : branches) {
    double w = apply(b, rho).weight;
    if (w <= kEigClipTol) continue;
    avg += w * coherent_information(rho, b);
  }
  avg /= total_weight;
  double joint = coherent_information(rho, total);
  rep.record(avg - joint,
             "avg=" + fmt(avg) + " < I(rho,sum E_i)=" + fmt(joint));
  return rep;
}

CheckReport check_additivity(const std::vector<DensityOperator>& states,
                             const std::vector<QuantumOperation>& ops) {
  if (states.size() != ops.size() || states.empty())
    throw Error("check_additivity: need matching state/operation lists");
  CheckReport rep;
  rep.name = "additivity";
  double sum = 0.0;
  CMatrix joint_state = states.front().matrix();
  QuantumOperation joint_op = ops.front();
  sum += coherent_information(states.front(), ops.front());
  for (size_t i = 1; i < states.size(); ++i) {
    sum += coherent_information(states[i], ops[i]);
    joint_state = tensor(joint_state, states[i].matrix());
    joint_op = tensor_ops(joint_op, ops[i]);
  }
  double joint = coherent_information(DensityOperator(joint_state), joint_op);
  rep.record(-std::abs(joint - sum),
             "joint=" + fmt(joint) + " vs sum=" + fmt(sum));
  return rep;
}

CheckReport check_araki_lieb_exchange(const DensityOperator& rho,
                                      const QuantumOperation& e) {
  if (!e.is_trace_preserving())
    throw Error("check_araki_lieb_exchange: operation must be trace-preserving");
  CheckReport rep;
  rep.name = "araki_lieb_exchange";
  double s_in = von_neumann_entropy(rho);
  double s_out = entropy_bits(apply(e, rho).output);
  double se = entropy_exchange(rho, e);
  rep.record(se - (s_in - s_out), "S_e=" + fmt(se) + " < S(rho)-S(E(rho))=" +
                                      fmt(s_in - s_out));
  return rep;
}

CheckReport check_quantum_fano(const DensityOperator& rho,
                               const QuantumOperation& e) {
  if (!e.is_trace_preserving())
    throw Error("check_quantum_fano: operation must be trace-preserving");
  CheckReport rep;
  rep.name = "quantum_fano";
  double fe = entanglement_fidelity(rho, e);
  double se = entropy_exchange(rho, e);
  auto bounds = quantum_fano_bound(fe, rho.dim());
  rep.record(bounds.tight - se,
             "S_e=" + fmt(se) + " > bound=" + fmt(bounds.tight) +
                 " at F_e=" + fmt(fe));
  rep.record(bounds.loose - se, "S_e=" + fmt(se) + " > loose bound=" +
                                    fmt(bounds.loose));
  return rep;
}

CheckReport check_continuity(const DensityOperator& rho, const CMatrix& delta,
                             const QuantumOperation& e) {
  CheckReport rep;
  rep.name = "continuity";
  rep.record(continuity_slack(rho, delta, e),
             "tr|Delta|=" + fmt(trace_norm(delta)));
  return rep;
}

CheckReport check_fidelity_lemma(const DensityOperator& rho,
                                 const QuantumOperation& e,
                                 const QuantumOperation& d) {
  if (!e.is_trace_preserving() || !d.is_trace_preserving())
    throw Error("check_fidelity_lemma: operations must be trace-preserving");
  CheckReport rep;
  rep.name = "fidelity_lemma";
  const int dim = rho.dim();
  double s = von_neumann_entropy(rho);
  double i = coherent_information(rho, e);
  double fe = entanglement_fidelity(rho, compose(d, e));
  double slack = i + 2.0 + 4.0 * (1.0 - fe) * std::log2(dim) - s;
  rep.record(slack, "S=" + fmt(s) + " I=" + fmt(i) + " F_e=" + fmt(fe));
  // stronger one-shot form: S - I <= 2 h(F_e) + 2 (1-F_e) log2(d^2-1)
  double strong = 2.0 * binary_entropy(std::min(1.0, std::max(0.0, fe))) +
                  2.0 * (1.0 - fe) * std::log2(static_cast<double>(dim) * dim - 1.0);
  rep.record(strong - (s - i),
             "strong form: S-I=" + fmt(s - i) + " > " + fmt(strong));
  return rep;
}

CheckReport check_generalized_fidelity_lemma(
    const DensityOperator& rho, const ObservedChannel& obs,
    const std::vector<QuantumOperation>& decoders) {
  if (static_cast<int>(decoders.size()) != obs.branch_count())
    throw Error("check_generalized_fidelity_lemma: one decoder per branch");
  for (const auto& d : decoders)
    if (!d.is_trace_preserving())
      throw Error("check_generalized_fidelity_lemma: decoders must be trace-preserving");
  CheckReport rep;
  rep.name = "generalized_fidelity_lemma";
  const int dim = rho.dim();
  double avg = observed_avg_coherent_info(obs, rho);
  std::vector<CMatrix> total_kraus;
  for (int m = 0; m < obs.branch_count(); ++m) {
    QuantumOperation comp = compose(decoders[m], obs.branch(m));
    for (const auto& a : comp.kraus()) total_kraus.push_back(a);
  }
  QuantumOperation total(std::move(total_kraus));
  double fe = entanglement_fidelity(rho, total);
  double s = von_neumann_entropy(rho);
  double slack = avg + 2.0 + 4.0 * (1.0 - fe) * std::log2(dim) - s;
  rep.record(slack, "S=" + fmt(s) + " avg=" + fmt(avg) + " F_e=" + fmt(fe));
  return rep;
}

double observed_avg_coherent_info(const ObservedChannel& obs,
                                  const DensityOperator& rho) {
  double avg = 0.0;
  for (const auto& b : obs.branches()) {
    double w = apply(b, rho).weight;
    if (w <= kEigClipTol) continue;
    avg += w * coherent_information(rho, b);
  }
  return avg;
}

// ---------------------------------------------------------------------

Example1Values example1_values(const DensityOperator& rho) {
  QuantumOperation channel = example1_channel();
  QuantumOperation encoding = example1_encoding();
  Example1Values v;
  v.s_rho = von_neumann_entropy(rho);
  v.i_composed = coherent_information(rho, compose(channel, encoding));
  DensityOperator encoded(apply(encoding, rho).output);
  v.i_pipelined = coherent_information(encoded, channel);
  return v;
}

CheckReport verify_example1() {
  CheckReport rep;
  rep.name = "example1";
  QuantumOperation channel = example1_channel();
  QuantumOperation encoding = example1_encoding();
  QuantumOperation composed = compose(channel, encoding);
  const int grid = 20;
  for (int k = 0; k < grid; ++k) {
    double p = static_cast<double>(k) / (grid - 1);
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    DensityOperator rho(m);
    auto v = example1_values(rho);

    double roundtrip = max_abs_diff(apply_matrix(composed, m), m);
    rep.record(-roundtrip, "p=" + fmt(p) + ": N o C moved the state by " +
                               fmt(roundtrip));
    rep.record(-std::abs(v.i_composed - v.s_rho),
               "p=" + fmt(p) + ": I(rho,NoC)=" + fmt(v.i_composed) +
                   " vs S=" + fmt(v.s_rho));
    rep.record(-std::abs(v.i_pipelined - (2.0 * v.s_rho - 1.0)),
               "p=" + fmt(p) + ": I(C(rho),N)=" + fmt(v.i_pipelined) +
                   " vs 2S-1=" + fmt(2.0 * v.s_rho - 1.0) +
                   " (operators give S-1=" + fmt(v.s_rho - 1.0) + ")");
    if (v.s_rho < 1.0 - kMatTol)
      rep.record(v.i_composed - v.i_pipelined - 1e-6,
                 "p=" + fmt(p) + ": pipelining violation not strict");
  }
  return rep;
}

namespace {

// I_A/2 (x) Bell_{BD} (x) I_C/2 on qubit ordering (A, B, C, D).
CMatrix example2_state(const CMatrix& rho_bd) {
  CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  CMatrix abdc = tensor(half, tensor(rho_bd, half));  // ordering (A, B, D, C)
  return permute_subsystems(abdc, {2, 2, 2, 2}, {0, 1, 3, 2});
}

Example2Values example2_values_impl(const CMatrix& rho_bd) {
  CMatrix m12 = example2_state(rho_bd);
  DensityOperator rho12(m12);
  DensityOperator rho1(partial_trace(m12, {4, 4}, {0}));
  DensityOperator rho2(partial_trace(m12, {4, 4}, {1}));
  QuantumOperation e = example2_channel();
  Example2Values v;
  v.i_first = coherent_information(rho1, e);
  v.i_second = coherent_information(rho2, e);
  v.i_joint = coherent_information(rho12, tensor_ops(e, e));
  return v;
}

CMatrix bell_bd() {
  CVector psi = CVector::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(3) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

}  // namespace

Example2Values example2_values() { return example2_values_impl(bell_bd()); }

Example2Values example2_values_product() {
  return example2_values_impl(0.25 * CMatrix::Identity(4, 4));
}

CheckReport verify_example2() {
  CheckReport rep;
  rep.name = "example2";
  auto v = example2_values();
  rep.record(-std::abs(v.i_first), "I(rho1,E)=" + fmt(v.i_first) + " != 0");
  rep.record(-std::abs(v.i_second), "I(rho2,E)=" + fmt(v.i_second) + " != 0");
  rep.record(-std::abs(v.i_joint - 2.0),
             "I(rho12,ExE)=" + fmt(v.i_joint) + " != 2");
  return rep;
}

// ---------------------------------------------------------------------

CheckReport data_processing_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "data_processing_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    DensityOperator rho = random_density(d, rng);
    QuantumOperation e1 = random_tp_operation(d, rng);
    QuantumOperation e2 = random_tp_operation(d, rng);
    auto sub = check_data_processing(rho, e1, e2);
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport convexity_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "convexity_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    DensityOperator rho = random_density(d, rng);
    std::vector<QuantumOperation> branches;
    if (t % 2 == 0) {
      // branches of a measurement-style split
      branches = random_observed_channel(d, rng.uniform_int(2, 3), rng).branches();
    } else {
      // convex combination of trace-preserving operations
      int count = rng.uniform_int(2, 3);
      auto probs = random_distribution(count, rng);
      for (int i = 0; i < count; ++i) {
        QuantumOperation tp = random_tp_operation(d, rng);
        std::vector<CMatrix> scaled;
        for (const auto& a : tp.kraus())
          scaled.push_back(std::sqrt(probs[i]) * a);
        branches.emplace_back(std::move(scaled));
      }
    }
    auto sub = check_convexity(rho, branches);
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport additivity_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "additivity_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<DensityOperator> states;
    std::vector<QuantumOperation> ops;
    for (int i = 0; i < 2; ++i) {
      states.push_back(random_density(2, rng));
      ops.push_back(random_tp_operation(2, rng));
    }
    auto sub = check_additivity(states, ops);
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport araki_lieb_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "araki_lieb_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    auto sub = check_araki_lieb_exchange(random_density(d, rng),
                                         random_tp_operation(d, rng));
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport quantum_fano_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "quantum_fano_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    auto sub = check_quantum_fano(random_density(d, rng),
                                  random_tp_operation(d, rng));
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport continuity_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "continuity_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    DensityOperator rho = random_density_rank(d, d, rng);
    CMatrix delta = random_traceless_hermitian(d, 0.2 * rng.uniform(), rng);
    // shrink the perturbation until rho + delta stays positive
    double lam_min = hermitian_eig(rho.matrix()).values.minCoeff();
    auto opnorm = [](const CMatrix& m) {
      return hermitian_eig(m).values.cwiseAbs().maxCoeff();
    };
    double nd = opnorm(delta);
    if (nd > 1e-15 && nd > lam_min)
      delta *= std::max(0.0, (lam_min - 1e-11) / nd);
    auto sub = check_continuity(rho, delta, random_tp_operation(d, rng));
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport fidelity_lemma_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "fidelity_lemma_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    auto sub = check_fidelity_lemma(random_density(d, rng),
                                    random_tp_operation(d, rng),
                                    random_tp_operation(d, rng));
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport generalized_fidelity_lemma_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "generalized_fidelity_lemma_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    ObservedChannel obs = random_observed_channel(d, rng.uniform_int(2, 3), rng);
    std::vector<QuantumOperation> decoders;
    for (int m = 0; m < obs.branch_count(); ++m)
      decoders.push_back(random_tp_operation(d, rng));
    auto sub = check_generalized_fidelity_lemma(random_density(d, rng), obs,
                                                decoders);
    sub.name = "trial " + std::to_string(t);
    rep.absorb(sub);
  }
  return rep;
}

CheckReport representation_robustness_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "representation_robustness_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    DensityOperator rho = random_density(d, rng);
    QuantumOperation e = random_tp_operation(d, rng);
    const int k = e.kraus_count();

    double fe = entanglement_fidelity(rho, e);
    double se = entropy_exchange(rho, e);
    double ci = coherent_information(rho, e);

    // remix the Kraus list by a random unitary
    CMatrix u = random_unitary(k, rng);
    std::vector<CMatrix> remixed(k, CMatrix::Zero(d, d));
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) remixed[j] += u(j, i) * e.kraus()[i];
    QuantumOperation e2{std::move(remixed)};
    double dev = std::max({std::abs(entanglement_fidelity(rho, e2) - fe),
                           std::abs(entropy_exchange(rho, e2) - se),
                           std::abs(coherent_information(rho, e2) - ci)});
    rep.record(-dev, "trial " + std::to_string(t) + ": remix deviation " + fmt(dev));

    // dilation round-trip: output and environment entropy
    auto dil = dilate_tp(e);
    CMatrix joint = tensor(rho.matrix(), dil.env_state * dil.env_state.adjoint());
    CMatrix evolved = dil.unitary * joint * dil.unitary.adjoint();
    CMatrix out = partial_trace(evolved, {d, dil.env_dim}, {0});
    CMatrix env = partial_trace(evolved, {d, dil.env_dim}, {1});
    double dev2 = std::max(max_abs_diff(out, apply(e, rho).output),
                           std::abs(entropy_bits(env) - se));
    rep.record(-dev2, "trial " + std::to_string(t) + ": dilation deviation " + fmt(dev2));
  }
  return rep;
}

CheckReport observed_pointwise_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "observed_pointwise_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    ObservedChannel obs = random_observed_channel(d, rng.uniform_int(2, 3), rng);
    DensityOperator rho = random_density(d, rng);
    double avg = observed_avg_coherent_info(obs, rho);
    double total = coherent_information(rho, obs.total());
    rep.record(avg - total, "trial " + std::to_string(t) + ": avg=" + fmt(avg) +
                                " < I(rho,N)=" + fmt(total));
  }
  return rep;
}

}  // namespace qchan
