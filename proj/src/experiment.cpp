#include "qevo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "qevo/fd_oracle.hpp"

namespace qevo::experiment {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("'" + key + "' must be a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return static_cast<std::size_t>(v.get<long long>());
  config_error("'" + key + "' must be a non-negative integer");
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) config_error("'" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) config_error("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::string format_full(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// frozen output of the exhaustive 16-genotype overlap enumeration
constexpr double overlap_best = 3.7071067811865475;  // 3 + 1/sqrt(2)
const std::vector<std::pair<int, int>> overlap_argmax = {{1, 3}, {3, 1}};

}  // namespace

Kind kind_from_name(std::string_view name) {
  if (name == "schrodinger") return Kind::schrodinger;
  if (name == "neuron") return Kind::neuron;
  if (name == "circuit") return Kind::circuit;
  config_error("unknown experiment '" + std::string(name) +
               "' (expected schrodinger, neuron or circuit)");
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::schrodinger: return "schrodinger";
    case Kind::neuron: return "neuron";
    case Kind::circuit: return "circuit";
  }
  config_error("bad experiment kind");
}

schrodinger::QuantumSystem Config::quantum_system() const {
  schrodinger::QuantumSystem sys = schrodinger::default_system(
      schrodinger::potential_from_name(system));
  sys.energy = energy;
  sys.grid = schrodinger::Grid{grid_min, grid_max, grid_points};
  sys.validate();
  return sys;
}

circuit::Mat Config::circuit_target() const {
  if (target == "custom") return circuit::custom_target(custom_target);
  return circuit::target_from_name(target);
}

void Config::validate() const {
  ga.validate();
  if (seeds.empty()) config_error("'seeds' must list at least one seed");
  switch (kind) {
    case Kind::schrodinger: {
      if (!(amplitude_min < amplitude_max))
        config_error("'amplitude_min' must be below 'amplitude_max'");
      const auto sys = quantum_system();
      if (sys.potential == schrodinger::PotentialKind::hydrogen_radial && grid_min < 0.05)
        config_error("hydrogen grid_min must be >= 0.05 (singularity guard)");
      break;
    }
    case Kind::neuron:
      neuron::fitness_mode_from_name(fitness_mode);
      break;
    case Kind::circuit:
      circuit::fitness_mode_from_name(fitness_mode);
      circuit_target();
      break;
  }
}

Config default_config(Kind kind) {
  Config config;
  config.kind = kind;
  switch (kind) {
    case Kind::schrodinger: {
      config.ga = schrodinger::default_config(0);
      const auto sys = schrodinger::default_system(schrodinger::PotentialKind::box);
      config.system = "box";
      config.energy = sys.energy;
      config.grid_min = sys.grid.lower;
      config.grid_max = sys.grid.upper;
      config.grid_points = sys.grid.points;
      break;
    }
    case Kind::neuron:
      config.ga = neuron::default_config(0);
      config.fitness_mode = "table";
      break;
    case Kind::circuit:
      config.ga = circuit::default_config(0);
      config.fitness_mode = "hamming";
      config.target = "fig7a";
      break;
  }
  return config;
}

namespace {

const std::set<std::string> common_keys = {
    "experiment",       "output_dir",     "seeds",
    "population_size",  "crossover_rate", "mutation_rate",
    "site_mutation_rate", "max_generations", "fitness_threshold",
    "crossover_enabled", "elite_count"};

const std::set<std::string> schrodinger_keys = {"system",      "energy",       "grid_min",
                                                "grid_max",    "grid_points",  "amplitude_min",
                                                "amplitude_max"};

const std::set<std::string> neuron_keys = {"fitness_mode"};

const std::set<std::string> circuit_keys = {"fitness_mode", "target", "custom_target"};

}  // namespace

Config config_from_json(const json& j, std::optional<Kind> expected) {
  if (!j.is_object()) config_error("expected a JSON object");

  Kind kind;
  if (j.contains("experiment")) {
    kind = kind_from_name(as_string(j.at("experiment"), "experiment"));
    if (expected && kind != *expected)
      config_error("'experiment' is " + kind_name(kind) + " but the command expects " +
                   kind_name(*expected));
  } else if (expected) {
    kind = *expected;
  } else {
    config_error("missing 'experiment'");
  }

  std::set<std::string> allowed = common_keys;
  const std::set<std::string>* extra = nullptr;
  switch (kind) {
    case Kind::schrodinger: extra = &schrodinger_keys; break;
    case Kind::neuron: extra = &neuron_keys; break;
    case Kind::circuit: extra = &circuit_keys; break;
  }
  allowed.insert(extra->begin(), extra->end());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) config_error("unknown key '" + key + "'");
  }

  Config config = default_config(kind);

  // system first: it decides the stock energy and grid
  if (kind == Kind::schrodinger && j.contains("system")) {
    config.system = as_string(j.at("system"), "system");
    const auto sys = schrodinger::default_system(schrodinger::potential_from_name(config.system));
    config.energy = sys.energy;
    config.grid_min = sys.grid.lower;
    config.grid_max = sys.grid.upper;
    config.grid_points = sys.grid.points;
  }

  if (j.contains("output_dir")) config.output_dir = as_string(j.at("output_dir"), "output_dir");
  if (j.contains("seeds")) {
    const json& seeds = j.at("seeds");
    if (!seeds.is_array() || seeds.empty())
      config_error("'seeds' must be a non-empty array of integers");
    config.seeds.clear();
    for (const json& s : seeds) {
      if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0))
        config_error("'seeds' entries must be non-negative integers");
      config.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (j.contains("population_size"))
    config.ga.population_size = as_count(j.at("population_size"), "population_size");
  if (j.contains("crossover_rate"))
    config.ga.crossover_rate = as_double(j.at("crossover_rate"), "crossover_rate");
  if (j.contains("mutation_rate"))
    config.ga.mutation_rate = as_double(j.at("mutation_rate"), "mutation_rate");
  if (j.contains("site_mutation_rate"))
    config.ga.site_mutation_rate = as_double(j.at("site_mutation_rate"), "site_mutation_rate");
  if (j.contains("max_generations"))
    config.ga.max_generations = as_count(j.at("max_generations"), "max_generations");
  if (j.contains("crossover_enabled"))
    config.ga.crossover_enabled = as_bool(j.at("crossover_enabled"), "crossover_enabled");
  if (j.contains("elite_count")) config.ga.elite_count = as_count(j.at("elite_count"), "elite_count");
  if (j.contains("fitness_mode"))
    config.fitness_mode = as_string(j.at("fitness_mode"), "fitness_mode");

  if (j.contains("fitness_threshold")) {
    const json& threshold = j.at("fitness_threshold");
    if (threshold.is_null())
      config.ga.fitness_threshold.reset();
    else
      config.ga.fitness_threshold = as_double(threshold, "fitness_threshold");
  } else if (kind == Kind::circuit && config.fitness_mode == "fidelity") {
    // exact-match score for the trace-overlap fitness
    config.ga.fitness_threshold = 1.0 - 1e-9;
  }

  switch (kind) {
    case Kind::schrodinger:
      if (j.contains("energy")) config.energy = as_double(j.at("energy"), "energy");
      if (j.contains("grid_min")) config.grid_min = as_double(j.at("grid_min"), "grid_min");
      if (j.contains("grid_max")) config.grid_max = as_double(j.at("grid_max"), "grid_max");
      if (j.contains("grid_points"))
        config.grid_points = as_count(j.at("grid_points"), "grid_points");
      if (j.contains("amplitude_min"))
        config.amplitude_min = as_double(j.at("amplitude_min"), "amplitude_min");
      if (j.contains("amplitude_max"))
        config.amplitude_max = as_double(j.at("amplitude_max"), "amplitude_max");
      break;
    case Kind::neuron:
      break;
    case Kind::circuit:
      if (j.contains("target")) config.target = as_string(j.at("target"), "target");
      if (config.target == "custom") {
        if (!j.contains("custom_target"))
          config_error("target 'custom' requires 'custom_target'");
        const json& entries = j.at("custom_target");
        if (!entries.is_array() || entries.size() != 16)
          config_error("'custom_target' must be an array of 16 entries");
        for (std::size_t i = 0; i < 16; ++i) {
          if (!entries[i].is_number_integer())
            config_error("'custom_target' entries must be integers");
          config.custom_target[i] = entries[i].get<int>();
        }
      } else if (j.contains("custom_target")) {
        config_error("'custom_target' is only valid with target 'custom'");
      }
      break;
  }

  try {
    config.validate();
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    config_error(e.what());
  }
  return config;
}

Config load_config_file(const std::filesystem::path& path, std::optional<Kind> expected) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j, expected);
}

json manifest_json(const Config& config, std::uint64_t seed) {
  json j;
  j["experiment"] = kind_name(config.kind);
  j["output_dir"] = config.output_dir.generic_string();
  j["seeds"] = json::array({seed});
  j["population_size"] = config.ga.population_size;
  j["crossover_rate"] = config.ga.crossover_rate;
  j["mutation_rate"] = config.ga.mutation_rate;
  j["site_mutation_rate"] = config.ga.site_mutation_rate;
  j["max_generations"] = config.ga.max_generations;
  if (config.ga.fitness_threshold)
    j["fitness_threshold"] = *config.ga.fitness_threshold;
  else
    j["fitness_threshold"] = nullptr;
  j["crossover_enabled"] = config.ga.crossover_enabled;
  j["elite_count"] = config.ga.elite_count;
  switch (config.kind) {
    case Kind::schrodinger:
      j["system"] = config.system;
      j["energy"] = config.energy;
      j["grid_min"] = config.grid_min;
      j["grid_max"] = config.grid_max;
      j["grid_points"] = config.grid_points;
      j["amplitude_min"] = config.amplitude_min;
      j["amplitude_max"] = config.amplitude_max;
      break;
    case Kind::neuron:
      j["fitness_mode"] = config.fitness_mode;
      break;
    case Kind::circuit:
      j["fitness_mode"] = config.fitness_mode;
      j["target"] = config.target;
      if (config.target == "custom")
        j["custom_target"] = std::vector<int>(config.custom_target.begin(),
                                              config.custom_target.end());
      break;
  }
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  auto out = open_for_write(path);
  out << "generation,best_fitness,mean_fitness\n";
  for (const TraceRow& row : rows)
    out << row.generation << ',' << format_full(row.best) << ',' << format_full(row.mean) << '\n';
}

void write_wavefunction_csv(const std::filesystem::path& path, const schrodinger::Grid& grid,
                            const schrodinger::Wave& psi) {
  if (psi.size() != grid.points)
    throw std::invalid_argument("write_wavefunction_csv: wave length does not match the grid");
  auto out = open_for_write(path);
  out << "x,psi\n";
  for (std::size_t i = 0; i < psi.size(); ++i)
    out << format_full(grid.x(i)) << ',' << format_full(psi[i]) << '\n';
}

void write_behavior_csv(const std::filesystem::path& path, const circuit::Mat& matrix) {
  auto out = open_for_write(path);
  out << "light,stop,turn_left,turn_right,forward\n";
  for (const bool light_on : {false, true}) {
    out << (light_on ? "on" : "off");
    try {
      const auto d = circuit::behave(matrix, light_on);
      out << ',' << format_full(d.stop) << ',' << format_full(d.turn_left) << ','
          << format_full(d.turn_right) << ',' << format_full(d.forward) << '\n';
    } catch (const std::runtime_error&) {
      out << ",nan,nan,nan,nan\n";  // circuit maps this input to the zero state
    }
  }
}

namespace {

void write_manifest(const std::filesystem::path& path, const Config& config, std::uint64_t seed) {
  auto out = open_for_write(path);
  out << manifest_json(config, seed).dump(2) << '\n';
}

void write_weights_json(const std::filesystem::path& path, const neuron::TrainResult& result) {
  json j;
  j["w1"] = result.best.first;
  j["w2"] = result.best.second;
  j["fitness"] = result.trace.records.back().best_fitness;
  j["generations"] = result.trace.records.back().generation;
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

void write_circuit_json(const std::filesystem::path& path, const circuit::SynthesisResult& result,
                        const circuit::Mat& target) {
  json j;
  json rows = json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < 4; ++c) row.push_back(result.best.at(r, c));
    rows.push_back(row);
  }
  j["pattern"] = rows;
  j["scale"] = result.best.scale;
  j["exact"] = result.exact;
  j["hamming_matches"] = circuit::hamming_matches(result.best, target);
  j["generations"] = result.generations;
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

}  // namespace

std::vector<SeedOutcome> run_experiment(const Config& config) {
  config.validate();
  std::vector<SeedOutcome> outcomes;
  outcomes.reserve(config.seeds.size());

  for (const std::uint64_t seed : config.seeds) {
    std::filesystem::path dir = config.output_dir / ("seed_" + std::to_string(seed));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    ga::GaConfig run_config = config.ga;
    run_config.rng_seed = seed;

    SeedOutcome outcome;
    outcome.seed = seed;
    outcome.directory = dir;

    switch (config.kind) {
      case Kind::schrodinger: {
        const auto sys = config.quantum_system();
        const auto result =
            schrodinger::solve(sys, run_config, config.amplitude_min, config.amplitude_max);
        write_trace_csv(dir / "trace.csv", trace_rows(result.trace));
        write_wavefunction_csv(dir / "wavefunction.csv", sys.grid, result.best);
        outcome.best_fitness = result.trace.records.back().best_fitness;
        outcome.generations = result.trace.records.back().generation;
        outcome.threshold_reached =
            result.trace.termination == ga::Termination::threshold_reached;
        break;
      }
      case Kind::neuron: {
        const auto mode = neuron::fitness_mode_from_name(config.fitness_mode);
        const auto result = neuron::train(run_config, mode);
        write_trace_csv(dir / "trace.csv", trace_rows(result.trace));
        write_weights_json(dir / "weights.json", result);
        outcome.best_fitness = result.trace.records.back().best_fitness;
        outcome.generations = result.trace.records.back().generation;
        outcome.threshold_reached =
            result.trace.termination == ga::Termination::threshold_reached;
        break;
      }
      case Kind::circuit: {
        const auto mode = circuit::fitness_mode_from_name(config.fitness_mode);
        const auto target = config.circuit_target();
        const auto result = circuit::synthesize(target, run_config, mode);
        write_trace_csv(dir / "trace.csv", trace_rows(result.trace));
        write_circuit_json(dir / "circuit.json", result, target);
        write_behavior_csv(dir / "behavior.csv", result.best);
        outcome.best_fitness = result.trace.records.back().best_fitness;
        outcome.generations = result.generations;
        outcome.threshold_reached =
            result.trace.termination == ga::Termination::threshold_reached;
        break;
      }
    }

    write_manifest(dir / "manifest.json", config, seed);
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

void write_table3_csv(std::ostream& out, const std::vector<std::uint64_t>& seeds,
                      std::size_t max_generations) {
  if (seeds.empty()) throw std::invalid_argument("table3: need at least one seed");
  const std::array<double, 4> mutation_rates = {0.1, 0.2, 0.3, 0.4};

  out << "circuit";
  for (const double pm : mutation_rates) {
    char header[32];
    std::snprintf(header, sizeof header, ",pm_%.1f", pm);
    out << header;
  }
  out << '\n';

  for (const std::string_view name : {"fig7a", "fig7b", "fig7c"}) {
    out << name;
    const circuit::Mat target = circuit::target_from_name(name);
    for (const double pm : mutation_rates) {
      std::vector<std::size_t> generations;
      generations.reserve(seeds.size());
      for (const std::uint64_t seed : seeds) {
        ga::GaConfig config = circuit::default_config(seed, pm);
        config.max_generations = max_generations;
        const auto result = circuit::synthesize(target, config, circuit::FitnessMode::hamming);
        generations.push_back(result.exact ? std::size_t(result.generations) : max_generations);
      }
      std::sort(generations.begin(), generations.end());
      out << ',' << generations[(generations.size() - 1) / 2];  // lower median
    }
    out << '\n';
  }
}

bool check_composition(const GateSet& gates, std::string* detail) {
  const auto note = [detail](const std::string& msg) {
    if (detail) *detail = msg;
    return false;
  };

  const struct {
    const circuit::Mat* gate;
    const char* name;
  } named[] = {{&gates.identity, "I"},
               {&gates.hadamard, "H"},
               {&gates.pauli_z, "Z"},
               {&gates.pauli_x, "X"},
               {&gates.cnot, "CNOT"}};
  for (const auto& [gate, name] : named)
    if (!circuit::is_unitary(*gate)) return note(std::string(name) + " gate is not unitary");

  const circuit::Mat h_par_i = circuit::kron(gates.hadamard, gates.identity);
  const std::vector<int> expected_h_par_i = {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, -1, 0, 0, 1, 0, -1};
  if (h_par_i.pattern != expected_h_par_i || std::abs(h_par_i.scale - 0.7071067811865475244) > 1e-15)
    return note("H (x) I composition mismatch");

  const circuit::Mat epr = circuit::compose_serial(h_par_i, gates.cnot);
  const std::vector<int> expected_epr = {1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, -1, 1, 0, -1, 0};
  if (epr.pattern != expected_epr) return note("EPR circuit composition mismatch");

  if (circuit::kron(circuit::basis2(0), circuit::basis2(0)).pattern != std::vector<int>{1, 0, 0, 0})
    return note("|00> composition mismatch");
  if (circuit::kron(circuit::basis2(1), circuit::basis2(1)).pattern != std::vector<int>{0, 0, 0, 1})
    return note("|11> composition mismatch");

  const circuit::Mat x_par_i = circuit::kron(gates.pauli_x, gates.identity);
  const std::vector<int> expected_x_par_i = {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0};
  if (x_par_i.pattern != expected_x_par_i) return note("X (x) I composition mismatch");

  const auto fig7c_on = circuit::apply(circuit::target_fig7c(), {0.0, 0.0, 0.0, 1.0});
  if (fig7c_on != std::vector<double>{0.0, 1.0, 0.0, -1.0})
    return note("third-vehicle matrix application mismatch");

  if (detail) *detail = "gates unitary, compositions match the worked matrices";
  return true;
}

bool check_behavior(std::string* detail) {
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  const auto matches = [&](const circuit::BehaviorDistribution& d, double stop, double left,
                           double right, double forward) {
    return close(d.stop, stop) && close(d.turn_left, left) && close(d.turn_right, right) &&
           close(d.forward, forward);
  };

  if (!matches(circuit::behave(circuit::target_fig7a(), false), 0.5, 0.0, 0.0, 0.5)) {
    if (detail) *detail = "fig7a light-off distribution mismatch";
    return false;
  }
  if (!matches(circuit::behave(circuit::target_fig7b(), true), 0.0, 1.0, 0.0, 0.0)) {
    if (detail) *detail = "fig7b light-on distribution mismatch";
    return false;
  }
  if (!matches(circuit::behave(circuit::target_fig7c(), true), 0.0, 0.5, 0.0, 0.5)) {
    if (detail) *detail = "fig7c light-on distribution mismatch";
    return false;
  }
  if (detail) *detail = "golden distributions match";
  return true;
}

bool check_oracle_eigenpair(schrodinger::PotentialKind kind, std::string* detail) {
  auto sys = schrodinger::default_system(kind);
  const auto hamiltonian = fdm::build_hamiltonian(sys, fdm::StepConvention::unit_step);
  const auto eigen = fdm::eigensolve(hamiltonian, 1);
  sys.energy = eigen.values.front();
  const double z = schrodinger::z_value(fdm::with_boundaries(eigen.vectors.front()), sys);
  if (detail) *detail = "Z = " + format_full(z) + " at E = " + format_full(sys.energy);
  return z <= 1e-12;
}

bool check_neuron_landscape(neuron::FitnessMode mode, std::string* detail) {
  const auto landscape = neuron::enumerate_best(mode);
  if (mode == neuron::FitnessMode::table) {
    const bool ok = landscape.best == 4.0 && landscape.argmax.size() == 1 &&
                    landscape.argmax.front() == std::pair<int, int>{0, 0};
    if (detail)
      *detail = ok ? "unique maximum 4 at (w0, w0)" : "table landscape maximum mismatch";
    return ok;
  }
  const bool ok = std::abs(landscape.best - overlap_best) <= 1e-12 &&
                  landscape.argmax == overlap_argmax;
  if (detail)
    *detail = ok ? "maximum 3 + 1/sqrt(2) at (w1, w3) and (w3, w1)"
                 : "overlap landscape maximum mismatch (best = " + format_full(landscape.best) + ")";
  return ok;
}

std::vector<Check> verify() {
  std::vector<Check> checks;
  std::string detail;

  for (const auto kind : {schrodinger::PotentialKind::box, schrodinger::PotentialKind::harmonic,
                          schrodinger::PotentialKind::hydrogen_radial}) {
    detail.clear();
    const bool pass = check_oracle_eigenpair(kind, &detail);
    checks.push_back({"oracle-eigenpair-" + schrodinger::potential_name(kind), pass, detail});
  }

  detail.clear();
  checks.push_back(
      {"neuron-table-landscape", check_neuron_landscape(neuron::FitnessMode::table, &detail),
       detail});
  detail.clear();
  checks.push_back(
      {"neuron-overlap-landscape", check_neuron_landscape(neuron::FitnessMode::overlap, &detail),
       detail});

  detail.clear();
  checks.push_back({"circuit-composition", check_composition(GateSet{}, &detail), detail});
  detail.clear();
  checks.push_back({"circuit-behavior", check_behavior(&detail), detail});

  return checks;
}

}  // namespace qevo::experiment
