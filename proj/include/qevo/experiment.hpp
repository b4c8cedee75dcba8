#pragma once

// Experiment runner behind the CLI: flat JSON config with strict keys,
// per-seed output directories (trace.csv plus experiment-specific artifacts
// and a re-runnable manifest.json), the generation-count grid table, and the
// golden verification suite.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qevo/ga.hpp"
#include "qevo/qcircuit.hpp"
#include "qevo/qneuron.hpp"
#include "qevo/schrodinger.hpp"

namespace qevo::experiment {

enum class Kind { schrodinger, neuron, circuit };

Kind kind_from_name(std::string_view name);
std::string kind_name(Kind kind);

struct Config {
  Kind kind = Kind::schrodinger;
  ga::GaConfig ga;  // rng_seed is overridden per entry of `seeds`
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";

  // schrodinger
  std::string system = "box";
  double energy = 0.0;
  double grid_min = 0.0;
  double grid_max = 0.0;
  std::size_t grid_points = 0;
  double amplitude_min = -1.0;
  double amplitude_max = 1.0;

  // neuron: table|overlap, circuit: hamming|fidelity
  std::string fitness_mode;

  // circuit
  std::string target = "fig7a";
  std::array<int, 16> custom_target{};

  schrodinger::QuantumSystem quantum_system() const;
  circuit::Mat circuit_target() const;
  void validate() const;
};

/// Stock defaults for each experiment family.
Config default_config(Kind kind);

/// Strict parse: unknown keys are rejected, missing keys fall back to the
/// kind's defaults. `expected` pins the experiment when the JSON omits it
/// (and must agree when both are present).
Config config_from_json(const nlohmann::json& j, std::optional<Kind> expected = {});
Config load_config_file(const std::filesystem::path& path, std::optional<Kind> expected = {});

/// Fully resolved configuration for one seed; feeding it back through
/// config_from_json reproduces the same outputs.
nlohmann::json manifest_json(const Config& config, std::uint64_t seed);

struct SeedOutcome {
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  int generations = 0;
  bool threshold_reached = false;
  std::filesystem::path directory;
};

/// Run every seed of the configured experiment and write its artifacts.
std::vector<SeedOutcome> run_experiment(const Config& config);

struct TraceRow {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

template <typename G>
std::vector<TraceRow> trace_rows(const ga::RunTrace<G>& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.records.size());
  for (const auto& r : trace.records) rows.push_back({r.generation, r.best_fitness, r.mean_fitness});
  return rows;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);
void write_wavefunction_csv(const std::filesystem::path& path, const schrodinger::Grid& grid,
                            const schrodinger::Wave& psi);
void write_behavior_csv(const std::filesystem::path& path, const circuit::Mat& matrix);

/// Generations-to-solution grid over the built-in targets and mutation rates
/// {0.1, 0.2, 0.3, 0.4}: one row per circuit, cell = lower median across the
/// seeds (unsolved runs count as max_generations).
void write_table3_csv(std::ostream& out, const std::vector<std::uint64_t>& seeds,
                      std::size_t max_generations = 1000);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GateSet {
  circuit::Mat identity = circuit::identity2();
  circuit::Mat hadamard = circuit::hadamard();
  circuit::Mat pauli_z = circuit::pauli_z();
  circuit::Mat pauli_x = circuit::pauli_x();
  circuit::Mat cnot = circuit::cnot();
};

bool check_composition(const GateSet& gates, std::string* detail = nullptr);
bool check_behavior(std::string* detail = nullptr);
bool check_oracle_eigenpair(schrodinger::PotentialKind kind, std::string* detail = nullptr);
bool check_neuron_landscape(neuron::FitnessMode mode, std::string* detail = nullptr);

/// Full golden suite: oracle eigenpair residuals for the three systems, the
/// 16-genotype neuron enumeration, the composition goldens and the behavior
/// goldens.
std::vector<Check> verify();

}  // namespace qevo::experiment
