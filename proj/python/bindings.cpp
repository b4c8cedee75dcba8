#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qevo/experiment.hpp"
#include "qevo/fd_oracle.hpp"
#include "qevo/ga.hpp"
#include "qevo/qcircuit.hpp"
#include "qevo/qneuron.hpp"
#include "qevo/schrodinger.hpp"

namespace py = pybind11;

namespace {

template <typename G>
py::dict trace_to_dict(const qevo::ga::RunTrace<G>& trace) {
  py::list records;
  for (const auto& r : trace.records)
    records.append(py::make_tuple(r.generation, r.best_fitness, r.mean_fitness));
  py::dict out;
  out["records"] = records;
  out["best"] = trace.records.back().best;
  out["termination"] = trace.termination == qevo::ga::Termination::threshold_reached
                           ? "threshold_reached"
                           : "max_generations";
  out["elitism"] = trace.elitism;
  out["uniform_selection_events"] = trace.uniform_selection_events;
  return out;
}

qevo::experiment::Config config_from_pydict(const py::dict& d) {
  nlohmann::json j;
  py::object json_module = py::module_::import("json");
  const std::string dumped = py::cast<std::string>(json_module.attr("dumps")(d));
  return qevo::experiment::config_from_json(nlohmann::json::parse(dumped));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Genetic-algorithm toolkit: stationary Schrodinger solutions, quantum-neuron "
            "training and two-qubit control-circuit synthesis";

  using qevo::ga::GaConfig;
  py::class_<GaConfig>(m, "GaConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &GaConfig::population_size)
      .def_readwrite("crossover_rate", &GaConfig::crossover_rate)
      .def_readwrite("mutation_rate", &GaConfig::mutation_rate)
      .def_readwrite("site_mutation_rate", &GaConfig::site_mutation_rate)
      .def_readwrite("max_generations", &GaConfig::max_generations)
      .def_readwrite("fitness_threshold", &GaConfig::fitness_threshold)
      .def_readwrite("rng_seed", &GaConfig::rng_seed)
      .def_readwrite("crossover_enabled", &GaConfig::crossover_enabled)
      .def_readwrite("elite_count", &GaConfig::elite_count)
      .def("validate", &GaConfig::validate);

  // wavefunction search
  m.def("schrodinger_default_config", &qevo::schrodinger::default_config, py::arg("seed"));
  m.def(
      "solve_schrodinger",
      [](const std::string& system, const GaConfig& config) {
        const auto kind = qevo::schrodinger::potential_from_name(system);
        const auto sys = qevo::schrodinger::default_system(kind);
        const auto result = qevo::schrodinger::solve(kind, config);
        py::dict out;
        out["trace"] = trace_to_dict(result.trace);
        out["psi"] = result.best;
        std::vector<double> xs(sys.grid.points);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = sys.grid.x(i);
        out["x"] = xs;
        return out;
      },
      py::arg("system"), py::arg("config"),
      "Evolve a wavefunction on the stock grid of the named system.");
  m.def(
      "wave_fitness",
      [](const std::vector<double>& psi, const std::string& system, std::optional<double> energy) {
        auto sys = qevo::schrodinger::default_system(qevo::schrodinger::potential_from_name(system));
        if (energy) sys.energy = *energy;
        return qevo::schrodinger::fitness(psi, sys);
      },
      py::arg("psi"), py::arg("system"), py::arg("energy") = std::nullopt,
      "Residual fitness exp(-Z) of a sample vector on the stock grid.");

  // finite-difference reference
  m.def(
      "oracle_eigenvalues",
      [](const std::string& system, const std::string& convention, std::size_t count) {
        const auto sys =
            qevo::schrodinger::default_system(qevo::schrodinger::potential_from_name(system));
        const auto h = qevo::fdm::build_hamiltonian(
            sys, convention == "physical" ? qevo::fdm::StepConvention::physical
                                          : qevo::fdm::StepConvention::unit_step);
        return qevo::fdm::eigensolve(h, count).values;
      },
      py::arg("system"), py::arg("convention") = "physical", py::arg("count") = 6,
      "Lowest reference energies of the named system on its stock grid.");
  m.def(
      "oracle_eigenvector",
      [](const std::string& system, const std::string& convention, std::size_t index) {
        const auto sys =
            qevo::schrodinger::default_system(qevo::schrodinger::potential_from_name(system));
        const auto h = qevo::fdm::build_hamiltonian(
            sys, convention == "physical" ? qevo::fdm::StepConvention::physical
                                          : qevo::fdm::StepConvention::unit_step);
        const auto eig = qevo::fdm::eigensolve(h, index + 1);
        const auto psi =
            qevo::fdm::normalize(qevo::fdm::with_boundaries(eig.vectors[index]), sys.grid);
        std::vector<double> xs(sys.grid.points);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = sys.grid.x(i);
        return py::make_tuple(xs, psi);
      },
      py::arg("system"), py::arg("convention") = "physical", py::arg("index") = 0,
      "Grid coordinates and the normalized reference eigenvector.");

  // neuron
  m.def("neuron_forward", &qevo::neuron::forward, py::arg("w1"), py::arg("w2"), py::arg("x1"),
        py::arg("x2"));
  m.def("neuron_fitness_table", &qevo::neuron::fitness_table, py::arg("w1"), py::arg("w2"));
  m.def("neuron_fitness_overlap", &qevo::neuron::fitness_overlap, py::arg("w1"), py::arg("w2"));
  m.def("neuron_default_config", &qevo::neuron::default_config, py::arg("seed"));
  m.def(
      "neuron_enumerate_best",
      [](const std::string& mode) {
        const auto landscape =
            qevo::neuron::enumerate_best(qevo::neuron::fitness_mode_from_name(mode));
        return py::make_tuple(landscape.best, landscape.argmax);
      },
      py::arg("mode") = "table");
  m.def(
      "train_neuron",
      [](const GaConfig& config, const std::string& mode) {
        const auto result =
            qevo::neuron::train(config, qevo::neuron::fitness_mode_from_name(mode));
        py::dict out;
        out["trace"] = trace_to_dict(result.trace);
        out["best"] = result.best;
        return out;
      },
      py::arg("config"), py::arg("mode") = "table");

  // circuits
  using qevo::circuit::Mat;
  py::class_<Mat>(m, "CircuitMatrix")
      .def(py::init([](const std::vector<int>& pattern, double scale) {
             if (pattern.size() != 16)
               throw std::invalid_argument("CircuitMatrix: expected 16 pattern entries");
             return Mat{4, 4, pattern, scale};
           }),
           py::arg("pattern"), py::arg("scale") = 1.0)
      .def_readonly("rows", &Mat::rows)
      .def_readonly("cols", &Mat::cols)
      .def_readonly("pattern", &Mat::pattern)
      .def_readonly("scale", &Mat::scale);
  m.def("gate", [](const std::string& name) {
    if (name == "I") return qevo::circuit::identity2();
    if (name == "H") return qevo::circuit::hadamard();
    if (name == "X") return qevo::circuit::pauli_x();
    if (name == "Z") return qevo::circuit::pauli_z();
    if (name == "CNOT") return qevo::circuit::cnot();
    throw std::invalid_argument("unknown gate '" + name + "'");
  });
  m.def("kron", &qevo::circuit::kron, py::arg("a"), py::arg("b"));
  m.def("compose_serial", &qevo::circuit::compose_serial, py::arg("first"), py::arg("then"));
  m.def("circuit_target", &qevo::circuit::target_from_name, py::arg("name"));
  m.def("hamming_matches", &qevo::circuit::hamming_matches, py::arg("candidate"),
        py::arg("target"));
  m.def("fidelity_distance", &qevo::circuit::fidelity_distance, py::arg("candidate"),
        py::arg("target"));
  m.def(
      "behave",
      [](const Mat& matrix, bool light_on) {
        const auto d = qevo::circuit::behave(matrix, light_on);
        py::dict out;
        out["stop"] = d.stop;
        out["turn_left"] = d.turn_left;
        out["turn_right"] = d.turn_right;
        out["forward"] = d.forward;
        return out;
      },
      py::arg("circuit"), py::arg("light_on"));
  m.def("circuit_default_config", &qevo::circuit::default_config, py::arg("seed"),
        py::arg("mutation_rate") = 0.1);
  m.def(
      "synthesize",
      [](const Mat& target, const GaConfig& config, const std::string& mode) {
        const auto result = qevo::circuit::synthesize(
            target, config, qevo::circuit::fitness_mode_from_name(mode));
        py::dict out;
        out["trace"] = trace_to_dict(result.trace);
        out["pattern"] = result.best.pattern;
        out["scale"] = result.best.scale;
        out["exact"] = result.exact;
        out["generations"] = result.generations;
        return out;
      },
      py::arg("target"), py::arg("config"), py::arg("mode") = "hamming");

  // experiment runner + golden suite
  m.def(
      "run_experiment",
      [](const py::dict& config) {
        const auto outcomes = qevo::experiment::run_experiment(config_from_pydict(config));
        py::list out;
        for (const auto& o : outcomes) {
          py::dict entry;
          entry["seed"] = o.seed;
          entry["best_fitness"] = o.best_fitness;
          entry["generations"] = o.generations;
          entry["threshold_reached"] = o.threshold_reached;
          entry["directory"] = o.directory;
          out.append(entry);
        }
        return out;
      },
      py::arg("config"), "Run a configured experiment; see the CLI config schema.");
  m.def("verify", []() {
    py::list out;
    for (const auto& check : qevo::experiment::verify())
      out.append(py::make_tuple(check.name, check.pass, check.detail));
    return out;
  });
}
