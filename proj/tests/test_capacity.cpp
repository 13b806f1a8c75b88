#include <doctest.h>

#include <cmath>

#include "qchan/capacity.hpp"
#include "qchan/inequalities.hpp"
#include "qchan/random.hpp"

using namespace qchan;

namespace {

OptimizerConfig quick(int restarts = 8, uint64_t seed = 42) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("capacity");

TEST_CASE("maximum coherent information") {
  // noiseless qubit: log2 2 at the maximally mixed state
  auto id = max_coherent_info(QuantumOperation::identity(2), quick());
  CHECK(id.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(max_abs_diff(id.argmax, 0.5 * CMatrix::Identity(2, 2)) < 1e-3);

  for (int d : {3, 4}) {
    auto r = max_coherent_info(QuantumOperation::identity(d), quick());
    CHECK(r.value == doctest::Approx(std::log2(double(d))).epsilon(1e-6));
  }

  // erasure: max(0, 1 - 2 eps)
  auto er = max_coherent_info(erasure_channel(0.25), quick());
  CHECK(er.value == doctest::Approx(0.5).epsilon(1e-4));

  // constant channels carry nothing; pure inputs give exactly zero
  Rng rng(301);
  auto cc = max_coherent_info(constant_channel(random_density(2, rng)), quick(4));
  CHECK(std::abs(cc.value) < 1e-6);

  // reported value is reproducible from the reported argmax
  QuantumOperation e = random_tp_operation(2, rng);
  auto res = max_coherent_info(e, quick());
  CHECK(coherent_information(DensityOperator(res.argmax), e) ==
        doctest::Approx(res.value).epsilon(1e-9));

  CHECK_THROWS_AS(max_coherent_info(dp_failure_projection(), quick()), Error);
}

TEST_CASE("optimizer finds an interior maximum") {
  // amplitude damping: the maximizing input is neither pure nor maximally
  // mixed, so this exercises the search itself rather than the seeded starts
  double g = 0.3;
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - g);
  k1(0, 1) = std::sqrt(g);
  QuantumOperation damping({k0, k1});
  REQUIRE(damping.is_trace_preserving());

  double best_grid = -10.0;
  for (int k = 0; k <= 10000; ++k) {
    double p = static_cast<double>(k) / 10000.0;
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0 - p;
    m(1, 1) = p;
    best_grid =
        std::max(best_grid, coherent_information(DensityOperator(m), damping));
  }
  auto res = max_coherent_info(damping, quick(16));
  CHECK(res.value == doctest::Approx(best_grid).epsilon(1e-6));
  CHECK(res.value > 0.3);  // interior optimum, well above the I=0 pure plateau
}

TEST_CASE("state-only capacity bounds") {
  auto dec = capacity_bound_unitary(completely_decohering_channel(2), 2, quick(4));
  CHECK(dec.per_n.size() == 2);
  CHECK(std::abs(dec.per_n[0].per_use) < 1e-9);
  CHECK(std::abs(dec.per_n[1].per_use) < 1e-9);
  CHECK(dec.per_n[0].clipped == 0.0);

  auto idb = capacity_bound_unitary(QuantumOperation::identity(2), 2, quick());
  CHECK(idb.per_n[0].per_use == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(idb.per_n[1].per_use == doctest::Approx(1.0).epsilon(1e-6));

  auto fp = capacity_bound_unitary(four_pauli_channel(), 1, quick());
  CHECK(std::abs(fp.per_n[0].per_use) < 1e-6);  // pure inputs attain 0
}

TEST_CASE("general-encoding bound") {
  // identity channel: nothing to gain over the state-only bound
  auto gen = capacity_bound_general(QuantumOperation::identity(2), 2, 1, quick(4));
  CHECK(gen.per_n[0].c_n == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(gen.per_n[0].argmax_encoding_kraus.empty());

  // general bound dominates the state-only bound when seeded with its argmax
  Rng rng(307);
  for (int t = 0; t < 5; ++t) {
    QuantumOperation e = random_tp_operation(2, rng);
    auto unit = capacity_bound_unitary(e, 1, quick(6, 10 + t));
    auto gen2 = capacity_bound_general(e, 2, 1, quick(6, 10 + t),
                                       {unit.per_n[0].argmax_state});
    CHECK(gen2.per_n[0].c_n >= unit.per_n[0].c_n - 1e-9);
  }
}

TEST_CASE("pipelining channel under general encodings") {
  // source qubit into the 4-dimensional channel; the block-mixing encoding
  // reaches I = S(rho) = 1, while its encoded states alone stay at S - 1
  QuantumOperation channel = example1_channel();
  auto gen = capacity_bound_general(channel, 2, 1, quick(8, 99));
  CHECK(gen.per_n[0].c_n >= 1.0 - 1e-5);

  QuantumOperation encoding = example1_encoding();
  double best_encoded = -10;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = p;
    m(1, 1) = 1 - p;
    DensityOperator encoded(apply(encoding, DensityOperator(m)).output);
    best_encoded = std::max(best_encoded, coherent_information(encoded, channel));
  }
  CHECK(best_encoded <= 0.0 + 1e-9);
  CHECK(gen.per_n[0].c_n > best_encoded + 0.9);
}

TEST_CASE("superadditivity diagnostics") {
  auto ident = superadditivity_check({1.0, 2.0}, 2, 1e-8);
  CHECK(ident.passed());
  CHECK(ident.min_slack == doctest::Approx(0.0).epsilon(1e-12));

  auto zeros = superadditivity_check({0.0, 0.0, 0.0}, 2, 1e-8);
  CHECK(zeros.passed());

  auto broken = superadditivity_check({1.0, 1.5}, 2, 1e-8);
  CHECK_FALSE(broken.passed());
  CHECK(!broken.witnesses.empty());
}

TEST_CASE("classical capacity") {
  // noiseless channels: log2 d exactly
  for (int d : {2, 3, 4}) {
    RMatrix eye = RMatrix::Identity(d, d);
    auto res = shannon_capacity(ClassicalChannel(d, d, eye), 1e-9);
    CHECK(res.converged);
    CHECK(res.capacity == doctest::Approx(std::log2(double(d))).epsilon(1e-9));
  }

  // binary symmetric channel: 1 - h(p)
  double p = 0.11;
  RMatrix bsc(2, 2);
  bsc << 1 - p, p, p, 1 - p;
  auto res = shannon_capacity(ClassicalChannel(2, 2, bsc), 1e-12);
  CHECK(res.capacity == doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-6));

  // useless channel: all columns equal
  RMatrix useless(2, 2);
  useless << 0.3, 0.3, 0.7, 0.7;
  auto res2 = shannon_capacity(ClassicalChannel(2, 2, useless), 1e-9);
  CHECK(res2.capacity == doctest::Approx(0.0).epsilon(1e-9));

  // the iteration objective never decreases
  Rng mono_rng(997);
  for (int t = 0; t < 10; ++t) {
    ClassicalChannel c = random_classical_channel(3, 3, mono_rng);
    auto r = shannon_capacity(c, 1e-10);
    for (size_t i = 1; i < r.objective_trace.size(); ++i)
      CHECK(r.objective_trace[i] >= r.objective_trace[i - 1] - 1e-12);
  }

  // brute-force oracle over input distributions for 2-input channels
  Rng rng(311);
  for (int t = 0; t < 3; ++t) {
    ClassicalChannel c = random_classical_channel(2, 3, rng);
    auto ba = shannon_capacity(c, 1e-12);
    double best = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      double q = static_cast<double>(k) / 20000.0;
      std::vector<double> px = {q, 1 - q};
      double hx = 0, hy = 0, hxy = 0;
      std::vector<double> py(3, 0.0);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) py[y] += px[x] * c.prob(y, x);
      auto ent = [](double v) { return v > 1e-15 ? -v * std::log2(v) : 0.0; };
      for (double v : px) hx += ent(v);
      for (double v : py) hy += ent(v);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) hxy += ent(px[x] * c.prob(y, x));
      best = std::max(best, hx + hy - hxy);
    }
    CHECK(ba.capacity == doctest::Approx(best).epsilon(1e-5));
  }
}

TEST_CASE("mutual information identity") {
  RMatrix eye = RMatrix::Identity(3, 3);
  auto rep = mutual_info_identity_check(ClassicalChannel(3, 3, eye),
                                        {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(rep.passed());

  double p = 0.11;
  RMatrix bsc(2, 2);
  bsc << 1 - p, p, p, 1 - p;
  ClassicalChannel cb(2, 2, bsc);
  auto rep2 = mutual_info_identity_check(cb, {0.5, 0.5});
  CHECK(rep2.passed());
  // and the common value is 1 - h(p)
  CMatrix rho_x = 0.5 * CMatrix::Identity(2, 2);
  QuantumOperation nq = classical_to_quantum(cb);
  DensityOperator rx(rho_x);
  double quantum = von_neumann_entropy(rx) +
                   entropy_bits(apply(nq, rx).output) - entropy_exchange(rx, nq);
  CHECK(quantum == doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-9));

  Rng rng(313);
  for (int t = 0; t < 200; ++t) {
    int nin = rng.uniform_int(2, 4), nout = rng.uniform_int(2, 4);
    ClassicalChannel c = random_classical_channel(nin, nout, rng);
    CHECK(mutual_info_identity_check(c, random_distribution(nin, rng)).passed());
  }
}

TEST_CASE("observed capacity bounds") {
  auto pauli = observed_capacity_bound(pauli_observed_channel(), 1, quick());
  CHECK(pauli.per_n[0].per_use == doctest::Approx(1.0).epsilon(1e-6));

  auto pe = observed_capacity_bound(phase_erasure_channel(0.3), 1, quick());
  CHECK(pe.per_n[0].per_use == doctest::Approx(0.7).epsilon(1e-4));

  auto mixed = observed_capacity_bound(mixed_erasure_channel(0.2, 0.1), 1, quick());
  CHECK(mixed.per_n[0].per_use == doctest::Approx(0.5).epsilon(1e-4));

  auto ero = observed_capacity_bound(erasure_observed_channel(0.25), 1, quick());
  CHECK(ero.per_n[0].per_use == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("equivalence map") {
  // single trace-preserving branch: same coherent information, flagged output
  Rng rng(317);
  QuantumOperation e = random_tp_operation(2, rng);
  ObservedChannel single({e});
  QuantumOperation m = equivalence_map(single);
  CHECK(m.dim_out() == e.dim_out());
  CHECK(m.is_trace_preserving());
  DensityOperator rho = random_density(2, rng);
  CHECK(coherent_information(rho, m) ==
        doctest::Approx(coherent_information(rho, e)).epsilon(1e-9));

  // the observed four-Pauli channel at I/2: average is one full bit
  DensityOperator half = DensityOperator::maximally_mixed(2);
  ObservedChannel pauli = pauli_observed_channel();
  QuantumOperation map = equivalence_map(pauli);
  CHECK(map.dim_out() == 8);
  CHECK(coherent_information(half, map) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(observed_avg_coherent_info(pauli, half) ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK(equivalence_identity_suite(300, 918).passed());
}

TEST_CASE("observation never hurts") {
  // the teleportation scenario: 0 for the summed channel, 1 observed
  auto gap = teleportation_gap_check(quick(16));
  CHECK(gap.passed());

  auto rep = observed_vs_unobserved(pauli_observed_channel(), 1, quick());
  CHECK(rep.passed());
  CHECK(rep.min_slack == doctest::Approx(1.0).epsilon(1e-4));  // strict gap

  // a single-branch split has nothing to observe
  Rng rng(319);
  ObservedChannel single({random_tp_operation(2, rng)});
  auto rep2 = observed_vs_unobserved(single, 1, quick(6));
  CHECK(rep2.passed());
  CHECK(std::abs(rep2.min_slack) < 1e-6);

  for (int t = 0; t < 10; ++t) {
    ObservedChannel obs = random_observed_channel(2, 2, rng);
    CHECK(observed_vs_unobserved(obs, 1, quick(6, 40 + t)).passed());
  }
}

TEST_SUITE_END();
