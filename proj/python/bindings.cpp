#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vqsp/ansatz.hpp"
#include "vqsp/cost.hpp"
#include "vqsp/errors.hpp"
#include "vqsp/harness.hpp"
#include "vqsp/optimizers.hpp"

namespace py = pybind11;
using namespace vqsp;

namespace {

CostContext exact_context(const std::string &target, std::size_t n_qubits, const std::string &ansatz,
                          std::size_t layers) {
    return CostContext(build_ansatz({ansatz_kind_from_string(ansatz), n_qubits, layers}),
                       completed_unitary(make_target(target_name_from_string(target), n_qubits)));
}

py::array_t<std::complex<double>> to_array(const StateVector &s) {
    py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(s.dim()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        view(static_cast<py::ssize_t>(i)) = s[i];
    }
    return out;
}

py::dict trace_dict(const TrainingTrace &t) {
    py::dict d;
    d["cost_history"] = t.cost_history;
    d["theta_initial"] = t.theta_initial;
    d["theta_final"] = t.theta_final;
    d["iterations_run"] = t.iterations_run;
    d["final_cost"] = t.final_cost();
    d["final_exact_cost"] = t.final_exact_cost;
    d["error"] = t.error;
    d["warnings"] = t.warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_vqsp, m) {
    m.doc() = "Variational state preparation with hypergraph ansatzes";
    m.attr("__version__") = VQSP_VERSION;

    m.def(
        "target_state",
        [](const std::string &name, std::size_t n_qubits) {
            return to_array(make_target(target_name_from_string(name), n_qubits).state);
        },
        py::arg("name"), py::arg("n_qubits"));

    m.def(
        "ansatz_info",
        [](const std::string &kind, std::size_t n_qubits, std::size_t layers) {
            const AnsatzConfig cfg{ansatz_kind_from_string(kind), n_qubits, layers};
            const auto c = build_ansatz(cfg);
            py::dict d;
            d["n_params"] = c.n_params();
            d["depth"] = dag_depth(c);
            d["formula_depth"] = reference_depth(cfg);
            d["gates"] = c.size();
            return d;
        },
        py::arg("kind"), py::arg("n_qubits"), py::arg("layers"));

    m.def(
        "prepare",
        [](const std::string &kind, std::size_t n_qubits, std::size_t layers, const std::vector<double> &theta) {
            return to_array(prepare(build_ansatz({ansatz_kind_from_string(kind), n_qubits, layers}), theta));
        },
        py::arg("kind"), py::arg("n_qubits"), py::arg("layers"), py::arg("theta"));

    m.def(
        "cost",
        [](const std::string &target, std::size_t n_qubits, const std::string &ansatz, std::size_t layers,
           const std::vector<double> &theta) { return cost(exact_context(target, n_qubits, ansatz, layers), theta); },
        py::arg("target"), py::arg("n_qubits"), py::arg("ansatz"), py::arg("layers"), py::arg("theta"));

    m.def(
        "gradient",
        [](const std::string &target, std::size_t n_qubits, const std::string &ansatz, std::size_t layers,
           const std::vector<double> &theta) {
            return gradient(exact_context(target, n_qubits, ansatz, layers), theta);
        },
        py::arg("target"), py::arg("n_qubits"), py::arg("ansatz"), py::arg("layers"), py::arg("theta"));

    m.def(
        "train",
        [](const std::string &target, std::size_t n_qubits, const std::string &ansatz, std::size_t layers,
           const std::string &optimizer, std::size_t iterations, std::uint64_t seed, std::optional<std::uint64_t> shots) {
            EvaluationMode mode = ExactMode{};
            if (shots) {
                mode = ShotsMode{*shots, seed};
            }
            const CostContext ctx(build_ansatz({ansatz_kind_from_string(ansatz), n_qubits, layers}),
                                  completed_unitary(make_target(target_name_from_string(target), n_qubits)), mode);
            OptimizerConfig opt = AdamConfig{};
            if (optimizer == "qng") {
                opt = QngConfig{};
            } else if (optimizer != "adam") {
                throw ValidationError("optimizer must be adam or qng");
            }
            TrainOptions options;
            options.iterations = iterations;
            options.seed = seed;
            TrainingTrace trace;
            {
                py::gil_scoped_release release;
                trace = train(ctx, opt, options);
            }
            return trace_dict(trace);
        },
        py::arg("target"), py::arg("n_qubits"), py::arg("ansatz"), py::arg("layers"), py::arg("optimizer") = "adam",
        py::arg("iterations") = 100, py::arg("seed") = 0, py::arg("shots") = py::none());

    m.def(
        "run_experiment_json",
        [](const std::string &config_text) {
            std::istringstream in(config_text);
            auto cfg = read_config(in);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = run(cfg);
            }
            return to_json(result);
        },
        py::arg("config_text"), "Runs an experiment from INI text and returns the JSON result.");

    m.def("list_experiments", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto &f : figure_mappings()) {
            out.emplace_back(f.figure, std::string(to_string(f.kind)), f.description);
        }
        return out;
    });
}
