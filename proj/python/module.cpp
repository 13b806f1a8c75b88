// Python bindings for the core operations: linear-algebra helpers,
// quantum operations, information measures, checks and capacity bounds.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qchan/capacity.hpp"
#include "qchan/inequalities.hpp"
#include "qchan/io.hpp"
#include "qchan/measures.hpp"
#include "qchan/random.hpp"

namespace py = pybind11;
using namespace qchan;

namespace {

OptimizerConfig make_config(int restarts, int max_iters, double f_tol,
                            uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = max_iters;
  cfg.f_tol = f_tol;
  cfg.seed = seed;
  return cfg;
}

py::dict estimate_to_dict(const CapacityEstimate& est) {
  py::dict out;
  out["encoding_class"] = to_string(est.encoding_class);
  out["seed"] = est.seed;
  py::list entries;
  for (const auto& e : est.per_n) {
    py::dict d;
    d["n"] = e.n;
    d["c_n"] = e.c_n;
    d["per_use"] = e.per_use;
    d["clipped"] = e.clipped;
    d["argmax_state"] = e.argmax_state;
    if (!e.argmax_encoding_kraus.empty())
      d["argmax_encoding_kraus"] = e.argmax_encoding_kraus;
    d["best_restart"] = e.best_restart;
    d["converged"] = e.converged;
    entries.append(std::move(d));
  }
  out["per_n"] = std::move(entries);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "information measures and capacity bounds for noisy quantum channels";

  py::register_exception<Error>(m, "QchanError", PyExc_ValueError);

  // ---- linear algebra -------------------------------------------------
  m.def("tensor", py::overload_cast<const CMatrix&, const CMatrix&>(&tensor),
        py::arg("a"), py::arg("b"), "Kronecker product, first factor most significant.");
  m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("dims"),
        py::arg("keep"), "Reduced matrix on the kept subsystems.");
  m.def("permute_subsystems", &permute_subsystems, py::arg("m"), py::arg("dims"),
        py::arg("perm"));
  m.def(
      "hermitian_eig",
      [](const CMatrix& m_) {
        auto e = hermitian_eig(m_);
        return py::make_tuple(e.values, e.vectors);
      },
      py::arg("m"), "Eigenvalues (descending) and eigenvectors of (m+m^dag)/2.");
  m.def("trace_norm", &trace_norm, py::arg("m"));
  m.def("entropy_bits", &entropy_bits, py::arg("hermitian"),
        "Base-2 entropy of a positive-semidefinite matrix.");
  m.def("shannon_entropy", &shannon_entropy, py::arg("p"));
  m.def("binary_entropy", &binary_entropy, py::arg("p"));

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<CMatrix>(), py::arg("matrix"))
      .def_property_readonly("dim", &DensityOperator::dim)
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_static("maximally_mixed", &DensityOperator::maximally_mixed, py::arg("dim"))
      .def("__repr__", [](const DensityOperator& r) {
        return "<DensityOperator dim=" + std::to_string(r.dim()) + ">";
      });

  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
  m.def(
      "purify",
      [](const DensityOperator& rho) { return purify(rho).amplitudes(); },
      py::arg("rho"),
      "Purification on R (x) Q with dim(R) = rank(rho), as an amplitude vector.");

  // ---- channels --------------------------------------------------------
  py::class_<QuantumOperation>(m, "QuantumOperation")
      .def(py::init<std::vector<CMatrix>>(), py::arg("kraus"))
      .def_property_readonly("dim_in", &QuantumOperation::dim_in)
      .def_property_readonly("dim_out", &QuantumOperation::dim_out)
      .def_property_readonly("kraus", [](const QuantumOperation& e) { return e.kraus(); })
      .def_property_readonly("is_trace_preserving",
                             &QuantumOperation::is_trace_preserving)
      .def_static("identity", &QuantumOperation::identity, py::arg("dim"))
      .def_static("from_unitary", &QuantumOperation::from_unitary, py::arg("u"))
      .def("__repr__", [](const QuantumOperation& e) {
        return "<QuantumOperation " + std::to_string(e.dim_in()) + "->" +
               std::to_string(e.dim_out()) + ", " +
               std::to_string(e.kraus_count()) + " Kraus>";
      });

  py::class_<ObservedChannel>(m, "ObservedChannel")
      .def(py::init<std::vector<QuantumOperation>>(), py::arg("branches"))
      .def_property_readonly("branches",
                             [](const ObservedChannel& o) { return o.branches(); })
      .def_property_readonly("branch_count", &ObservedChannel::branch_count)
      .def("total", &ObservedChannel::total)
      .def("tensor_pow", &ObservedChannel::tensor_pow, py::arg("n"));

  py::class_<ClassicalChannel>(m, "ClassicalChannel")
      .def(py::init<int, int, RMatrix>(), py::arg("n_in"), py::arg("n_out"),
           py::arg("transition"))
      .def_property_readonly("transition", &ClassicalChannel::transition);

  m.def(
      "apply",
      [](const QuantumOperation& e, const DensityOperator& rho) {
        auto r = apply(e, rho);
        return py::make_tuple(r.output, r.weight);
      },
      py::arg("e"), py::arg("rho"),
      "Unnormalized output sum_i A_i rho A_i^dag and its trace.");
  m.def("compose", &compose, py::arg("e2"), py::arg("e1"));
  m.def("tensor_ops", &tensor_ops, py::arg("a"), py::arg("b"));
  m.def("tensor_pow",
        py::overload_cast<const QuantumOperation&, int>(&tensor_pow),
        py::arg("e"), py::arg("n"));
  m.def(
      "dilate_tp",
      [](const QuantumOperation& e) {
        auto d = dilate_tp(e);
        return py::make_tuple(d.unitary, d.env_dim, d.env_state);
      },
      py::arg("e"), "Unitary environment model (U, env_dim, env_state).");
  m.def("classical_to_quantum", &classical_to_quantum, py::arg("c"));

  m.def("four_pauli_channel", &four_pauli_channel);
  m.def("pauli_observed_channel", &pauli_observed_channel);
  m.def("erasure_channel", &erasure_channel, py::arg("eps"));
  m.def("erasure_observed_channel", &erasure_observed_channel, py::arg("eps"));
  m.def("phase_erasure_channel", &phase_erasure_channel, py::arg("delta"));
  m.def("mixed_erasure_channel", &mixed_erasure_channel, py::arg("eps"),
        py::arg("delta"));
  m.def("completely_decohering_channel", &completely_decohering_channel,
        py::arg("dim"));
  m.def("constant_channel", &constant_channel, py::arg("sigma"));
  m.def("example1_channel", &example1_channel);
  m.def("example1_encoding", &example1_encoding);
  m.def("example2_channel", &example2_channel);
  m.def("dp_failure_projection", &dp_failure_projection);

  // ---- measures ----------------------------------------------------------
  m.def("w_matrix", &w_matrix, py::arg("rho"), py::arg("e"));
  m.def("entanglement_fidelity", &entanglement_fidelity, py::arg("rho"), py::arg("e"));
  m.def("entropy_exchange", &entropy_exchange, py::arg("rho"), py::arg("e"));
  m.def("coherent_information", &coherent_information, py::arg("rho"), py::arg("e"));
  m.def(
      "quantum_fano_bound",
      [](double fe, int d) {
        auto b = quantum_fano_bound(fe, d);
        return py::make_tuple(b.tight, b.loose);
      },
      py::arg("fe"), py::arg("d"), "Tight and loose bounds on the entropy exchange.");
  m.def("continuity_bound", &continuity_bound, py::arg("delta"));
  m.def(
      "subspace_fidelity",
      [](const CMatrix& p, const QuantumOperation& e, int restarts, uint64_t seed) {
        SubspaceFidelityConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        return subspace_fidelity(p, e, cfg);
      },
      py::arg("p"), py::arg("e"), py::arg("restarts") = 32, py::arg("seed") = 42);
  m.def(
      "typical_projector",
      [](const DensityOperator& rho, int n, double eps) {
        auto t = typical_projector(rho, n, eps);
        return py::make_tuple(t.projector, t.weight);
      },
      py::arg("rho"), py::arg("n"), py::arg("eps"));

  // ---- checks and capacity bounds ---------------------------------------
  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("trials", &CheckReport::trials)
      .def_readonly("min_slack", &CheckReport::min_slack)
      .def_readonly("witnesses", &CheckReport::witnesses)
      .def_readonly("seed", &CheckReport::seed)
      .def_readonly("threshold", &CheckReport::threshold)
      .def_property_readonly("passed", &CheckReport::passed)
      .def("__repr__", [](const CheckReport& r) {
        return "<CheckReport " + r.name + (r.passed() ? " pass" : " FAIL") +
               " min_slack=" + std::to_string(r.min_slack) + ">";
      });

  m.def("verify_example1", &verify_example1);
  m.def("verify_example2", &verify_example2);
  m.def("data_processing_suite", &data_processing_suite, py::arg("trials"),
        py::arg("seed"));
  m.def("convexity_suite", &convexity_suite, py::arg("trials"), py::arg("seed"));
  m.def("additivity_suite", &additivity_suite, py::arg("trials"), py::arg("seed"));
  m.def("araki_lieb_suite", &araki_lieb_suite, py::arg("trials"), py::arg("seed"));
  m.def("quantum_fano_suite", &quantum_fano_suite, py::arg("trials"), py::arg("seed"));
  m.def("continuity_suite", &continuity_suite, py::arg("trials"), py::arg("seed"));
  m.def("fidelity_lemma_suite", &fidelity_lemma_suite, py::arg("trials"),
        py::arg("seed"));
  m.def("generalized_fidelity_lemma_suite", &generalized_fidelity_lemma_suite,
        py::arg("trials"), py::arg("seed"));
  m.def("representation_robustness_suite", &representation_robustness_suite,
        py::arg("trials"), py::arg("seed"));

  m.def(
      "max_coherent_info",
      [](const QuantumOperation& e, int restarts, int max_iters, double f_tol,
         uint64_t seed) {
        auto r = max_coherent_info(e, make_config(restarts, max_iters, f_tol, seed));
        return py::make_tuple(r.value, r.argmax);
      },
      py::arg("e"), py::arg("restarts") = 32, py::arg("max_iters") = 2000,
      py::arg("f_tol") = 1e-8, py::arg("seed") = 42,
      "Best coherent information over input states and the maximizing state.");
  m.def(
      "max_avg_coherent_info",
      [](const ObservedChannel& obs, int restarts, int max_iters, double f_tol,
         uint64_t seed) {
        auto r = max_avg_coherent_info(obs, make_config(restarts, max_iters, f_tol, seed));
        return py::make_tuple(r.value, r.argmax);
      },
      py::arg("obs"), py::arg("restarts") = 32, py::arg("max_iters") = 2000,
      py::arg("f_tol") = 1e-8, py::arg("seed") = 42);
  m.def(
      "capacity_bound_unitary",
      [](const QuantumOperation& n_op, int n_max, int restarts, uint64_t seed) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        return estimate_to_dict(capacity_bound_unitary(n_op, n_max, cfg));
      },
      py::arg("channel"), py::arg("n_max") = 1, py::arg("restarts") = 32,
      py::arg("seed") = 42);
  m.def(
      "capacity_bound_general",
      [](const QuantumOperation& n_op, int source_dim, int n_max, int restarts,
         uint64_t seed) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        return estimate_to_dict(capacity_bound_general(n_op, source_dim, n_max, cfg));
      },
      py::arg("channel"), py::arg("source_dim"), py::arg("n_max") = 1,
      py::arg("restarts") = 32, py::arg("seed") = 42);
  m.def(
      "observed_capacity_bound",
      [](const ObservedChannel& obs, int n_max, int restarts, uint64_t seed) {
        OptimizerConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        return estimate_to_dict(observed_capacity_bound(obs, n_max, cfg));
      },
      py::arg("obs"), py::arg("n_max") = 1, py::arg("restarts") = 32,
      py::arg("seed") = 42);
  m.def(
      "shannon_capacity",
      [](const ClassicalChannel& c, double threshold) {
        auto r = shannon_capacity(c, threshold);
        return py::make_tuple(r.capacity, r.input_dist);
      },
      py::arg("c"), py::arg("threshold") = 1e-9,
      "Classical capacity in bits and the optimal input distribution.");
  m.def("equivalence_map", &equivalence_map, py::arg("obs"));
  m.def("observed_avg_coherent_info", &observed_avg_coherent_info, py::arg("obs"),
        py::arg("rho"));

  // ---- file formats -------------------------------------------------------
  m.def(
      "load_channel_file",
      [](const std::string& path) -> py::object {
        ChannelFile cf = load_channel_file(path);
        if (cf.is_observed()) return py::cast(*cf.observed);
        return py::cast(*cf.op);
      },
      py::arg("path"));
  m.def("load_state_file", &load_state_file, py::arg("path"));
  m.def("channel_to_json",
        py::overload_cast<const QuantumOperation&>(&channel_to_json), py::arg("op"));
  m.def("state_to_json", &state_to_json, py::arg("rho"));

  m.attr("__version__") = "0.1.0";
}
