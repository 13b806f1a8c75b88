#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "qchan/io.hpp"
#include "qchan/random.hpp"

using namespace qchan;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(QCHAN_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path.string();
}

std::string data_path(const std::string& rel) {
  return std::string(QCHAN_DATA_DIR) + "/" + rel;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("channel files round-trip") {
  Rng rng(401);
  for (int t = 0; t < 10; ++t) {
    QuantumOperation e = random_tp_operation(rng.uniform_int(2, 3), rng);
    ChannelFile back = parse_channel_json(channel_to_json(e));
    REQUIRE(back.op.has_value());
    REQUIRE(back.op->kraus_count() == e.kraus_count());
    for (int i = 0; i < e.kraus_count(); ++i)
      CHECK(max_abs_diff(back.op->kraus()[i], e.kraus()[i]) < 1e-12);
  }

  ObservedChannel obs = pauli_observed_channel();
  ChannelFile back = parse_channel_json(channel_to_json(obs));
  REQUIRE(back.is_observed());
  CHECK(back.observed->branch_count() == 4);
  CHECK(back.as_operation().is_trace_preserving());
}

TEST_CASE("state files round-trip") {
  Rng rng(403);
  DensityOperator rho = random_density(3, rng);
  DensityOperator back = parse_state_json(state_to_json(rho));
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_channel_json("{\"dim_in\": 2, \"dim_out\": 2}"),
                       doctest::Contains("kraus"), Error);
  CHECK_THROWS_WITH_AS(
      parse_channel_json("{\"dim_out\": 2, \"kraus\": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"),
      doctest::Contains("dim_in"), Error);
  CHECK_THROWS_WITH_AS(
      parse_channel_json("{\"dim_in\": 2, \"dim_out\": 2, \"kraus\": "
                         "[[[[1,0],[0,0]],[[0,0]]]]}"),
      doctest::Contains("kraus[0]"), Error);
  CHECK_THROWS_WITH_AS(parse_state_json("{\"matrix\": [[[1,0]]]}"),
                       doctest::Contains("dim"), Error);
  CHECK_THROWS_AS(parse_channel_json("not json at all"), Error);
}

TEST_CASE("cli measures") {
  auto r = run_cli("measure --channel " + data_path("channels/identity_qubit.json") +
                   " --state " + data_path("states/qubit_mixed.json") +
                   " --which fidelity");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "result.fidelity=1"));

  auto r2 = run_cli("measure --channel " + data_path("channels/four_pauli.json") +
                    " --state " + data_path("states/qubit_mixed.json") +
                    " --which coherent");
  CHECK(r2.exit_code == 0);
  CHECK(contains(r2.out, "result.coherent=-1"));

  auto r3 = run_cli("measure --channel " + data_path("channels/erasure_0.25.json") +
                    " --state " + data_path("states/qubit_mixed.json") +
                    " --which coherent");
  CHECK(r3.exit_code == 0);
  CHECK(contains(r3.out, "result.coherent=0.5"));

  auto r4 = run_cli("measure --channel " + data_path("channels/four_pauli.json") +
                    " --state " + data_path("states/qubit_mixed.json") +
                    " --which fano");
  CHECK(r4.exit_code == 0);
  CHECK(contains(r4.out, "result.fano.tight="));
  CHECK(contains(r4.out, "result.fano.loose="));

  // the state file carries the projector for subspace fidelity
  auto r5 = run_cli("measure --channel " +
                    data_path("channels/decohering_qubit.json") + " --state " +
                    data_path("states/qubit_full_projector.json") +
                    " --which subspace --restarts 8");
  CHECK(r5.exit_code == 0);
  CHECK(contains(r5.out, "result.subspace=0.5"));
}

TEST_CASE("cli input errors exit with code 2") {
  std::string bad = temp_file("qchan_bad_channel.json", "{\"dim_in\": oops");
  auto r = run_cli("measure --channel " + bad + " --state " + bad +
                   " --which fidelity");
  CHECK(r.exit_code == 2);

  std::string wrong_dims = temp_file(
      "qchan_wrong_state.json",
      "{\"dim\": 3, \"matrix\": [[[1,0],[0,0]],[[0,0],[0,0]]]}");
  auto r2 = run_cli("measure --channel " +
                    data_path("channels/identity_qubit.json") + " --state " +
                    wrong_dims + " --which fidelity");
  CHECK(r2.exit_code == 2);

  auto r3 = run_cli("capacity --channel " +
                    data_path("channels/identity_qubit.json") +
                    " --encodings observed");
  CHECK(r3.exit_code == 2);  // not an observed-channel file

  auto r4 = run_cli("example --name unheard-of");
  CHECK(r4.exit_code == 2);
}

TEST_CASE("cli capacity") {
  auto r = run_cli("capacity --channel " +
                   data_path("channels/decohering_qubit.json") +
                   " --n 2 --restarts 4");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "capacity.n1.clipped=0"));
  CHECK(contains(r.out, "capacity.n2.clipped=0"));
  CHECK(contains(r.out, "superadditivity.pass=1"));

  auto r2 = run_cli("capacity --channel " +
                    data_path("channels/pauli_observed.json") +
                    " --encodings observed --restarts 8");
  CHECK(r2.exit_code == 0);
  CHECK(contains(r2.out, "capacity.n1.per_use=1"));
}

TEST_CASE("cli verify and examples") {
  auto r = run_cli("verify --suite dp --trials 50 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "check.data_processing_suite.pass=1"));
  CHECK(contains(r.out, "verify.pass=1"));

  // the pipelining closed-form discrepancy is reported, not hidden
  auto r2 = run_cli("verify --suite examples");
  CHECK(r2.exit_code == 1);
  CHECK(contains(r2.out, "check.example1.pass=0"));
  CHECK(contains(r2.out, "check.example2.pass=1"));
  CHECK(contains(r2.out, "verify.pass=0"));

  auto r3 = run_cli("example --name example2");
  CHECK(r3.exit_code == 0);
  CHECK(contains(r3.out, "example2.I_joint=2"));

  auto r4 = run_cli("example --name dp-failure");
  CHECK(r4.exit_code == 0);
  CHECK(contains(r4.out, "dp_failure.I=1"));
}

TEST_CASE("cli reports are deterministic for a fixed seed") {
  std::string args = "verify --suite additivity --trials 30 --seed 7";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_SUITE_END();
