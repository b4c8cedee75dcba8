// qevo command line: runs the three evolutionary experiments, exports the
// finite-difference reference spectra, and checks the golden suite.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qevo/experiment.hpp"
#include "qevo/fd_oracle.hpp"
#include "qevo/qneuron.hpp"

namespace {

namespace fs = std::filesystem;
using qevo::experiment::Config;
using qevo::experiment::Kind;

std::string format_full(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

fs::path default_output_dir() {
  if (const char* env = std::getenv("QEVO_OUTPUT_DIR"); env && *env) return env;
  return "out";
}

struct CommonOptions {
  std::string config_file;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  std::string fitness_mode;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_fitness_mode) {
  cmd->add_option("--config", opts.config_file, "JSON config file (flags override its values)");
  cmd->add_option("--seed", opts.seeds, "run seed; repeat the flag for several runs");
  cmd->add_option("--out", opts.output_dir, "output directory (default $QEVO_OUTPUT_DIR or ./out)");
  if (with_fitness_mode)
    cmd->add_option("--fitness-mode", opts.fitness_mode, "fitness variant for this experiment");
}

Config resolve_config(Kind kind, const CommonOptions& opts) {
  Config config;
  if (!opts.config_file.empty())
    config = qevo::experiment::load_config_file(opts.config_file, kind);
  else
    config = qevo::experiment::default_config(kind);
  if (!opts.seeds.empty()) config.seeds = opts.seeds;
  if (!opts.output_dir.empty())
    config.output_dir = opts.output_dir;
  else if (opts.config_file.empty())
    config.output_dir = default_output_dir();
  if (!opts.fitness_mode.empty()) {
    config.fitness_mode = opts.fitness_mode;
    // a Hamming match count is meaningless for the trace-overlap score
    if (kind == Kind::circuit && config.fitness_mode == "fidelity" &&
        config.ga.fitness_threshold == 16.0)
      config.ga.fitness_threshold = 1.0 - 1e-9;
  }
  return config;
}

void report_outcomes(const std::vector<qevo::experiment::SeedOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    std::cout << "seed " << o.seed << ": best fitness " << format_full(o.best_fitness) << " after "
              << o.generations << " generations"
              << (o.threshold_reached ? " (threshold reached)" : "") << " -> "
              << o.directory.string() << '\n';
  }
}

int run_solve(const CommonOptions& opts, const std::string& system) {
  Config config = resolve_config(Kind::schrodinger, opts);
  if (!system.empty() && system != config.system) {
    // explicit system choice wins and re-resolves its stock energy and grid
    const auto sys =
        qevo::schrodinger::default_system(qevo::schrodinger::potential_from_name(system));
    config.system = system;
    config.energy = sys.energy;
    config.grid_min = sys.grid.lower;
    config.grid_max = sys.grid.upper;
    config.grid_points = sys.grid.points;
  }
  report_outcomes(qevo::experiment::run_experiment(config));
  return 0;
}

int run_simple(Kind kind, const CommonOptions& opts, const std::string& target) {
  Config config = resolve_config(kind, opts);
  if (kind == Kind::circuit && !target.empty()) config.target = target;
  report_outcomes(qevo::experiment::run_experiment(config));
  return 0;
}

// full 16-genotype output table and both fitness landscapes as CSV
int run_neuron_landscape() {
  std::cout << "w1,w2,x1,x2,y0,y1,target0,target1\n";
  for (int w1 = 0; w1 < qevo::neuron::weight_count; ++w1) {
    for (int w2 = 0; w2 < qevo::neuron::weight_count; ++w2) {
      for (const auto& [x1, x2] : qevo::neuron::input_pairs()) {
        const auto y = qevo::neuron::forward(w1, w2, x1, x2);
        const auto d = qevo::neuron::xor_target(x1, x2);
        std::cout << w1 << ',' << w2 << ',' << int(x1[1]) << ',' << int(x2[1]) << ','
                  << format_full(y[0]) << ',' << format_full(y[1]) << ',' << int(d[0]) << ','
                  << int(d[1]) << '\n';
      }
    }
  }
  std::cout << "\nw1,w2,fitness_table,fitness_overlap\n";
  for (int w1 = 0; w1 < qevo::neuron::weight_count; ++w1)
    for (int w2 = 0; w2 < qevo::neuron::weight_count; ++w2)
      std::cout << w1 << ',' << w2 << ',' << format_full(qevo::neuron::fitness_table(w1, w2))
                << ',' << format_full(qevo::neuron::fitness_overlap(w1, w2)) << '\n';
  return 0;
}

int run_behave(const std::string& target, const std::string& config_file) {
  qevo::circuit::Mat matrix;
  if (!config_file.empty()) {
    const Config config = qevo::experiment::load_config_file(config_file, Kind::circuit);
    matrix = config.circuit_target();
  } else {
    matrix = qevo::circuit::target_from_name(target);
  }
  std::cout << "light,stop,turn_left,turn_right,forward\n";
  for (const bool light_on : {false, true}) {
    const auto d = qevo::circuit::behave(matrix, light_on);
    std::cout << (light_on ? "on" : "off") << ',' << format_full(d.stop) << ','
              << format_full(d.turn_left) << ',' << format_full(d.turn_right) << ','
              << format_full(d.forward) << '\n';
  }
  return 0;
}

int run_table3(const CommonOptions& opts, std::size_t max_generations) {
  std::vector<std::uint64_t> seeds = opts.seeds.empty()
                                         ? std::vector<std::uint64_t>{1, 2, 3, 4, 5}
                                         : opts.seeds;
  const fs::path dir = opts.output_dir.empty() ? default_output_dir() : fs::path(opts.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const fs::path path = dir / "table3.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  qevo::experiment::write_table3_csv(out, seeds, max_generations);
  std::cout << "wrote " << path.string() << " (" << seeds.size() << " seeds per cell)\n";
  return 0;
}

int run_oracle(const std::string& system, const std::string& convention_name, std::size_t count,
               std::size_t state_index, const std::string& output_dir) {
  const auto kind = qevo::schrodinger::potential_from_name(system);
  const auto sys = qevo::schrodinger::default_system(kind);
  const auto convention = convention_name == "physical" ? qevo::fdm::StepConvention::physical
                                                        : qevo::fdm::StepConvention::unit_step;
  if (convention_name != "physical" && convention_name != "unit")
    throw std::invalid_argument("config: --convention must be unit or physical");
  if (count == 0) throw std::invalid_argument("config: --count must be positive");
  if (state_index >= count)
    throw std::invalid_argument("config: --state must be below --count");

  const auto hamiltonian = qevo::fdm::build_hamiltonian(sys, convention);
  const auto eigen = qevo::fdm::eigensolve(hamiltonian, count);

  const fs::path dir = output_dir.empty() ? default_output_dir() : fs::path(output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  {
    std::ofstream out(dir / "eigenvalues.csv");
    if (!out) throw std::runtime_error("cannot write eigenvalues.csv");
    out << "index,energy\n";
    for (std::size_t k = 0; k < eigen.values.size(); ++k)
      out << k << ',' << format_full(eigen.values[k]) << '\n';
  }
  const auto wave =
      qevo::fdm::normalize(qevo::fdm::with_boundaries(eigen.vectors[state_index]), sys.grid);
  qevo::experiment::write_wavefunction_csv(dir / "wavefunction.csv", sys.grid, wave);

  std::cout << system << " (" << (convention == qevo::fdm::StepConvention::physical
                                      ? "physical step"
                                      : "unit step")
            << "): lowest energies";
  for (double v : eigen.values) std::cout << ' ' << format_full(v);
  std::cout << "\nwrote " << (dir / "eigenvalues.csv").string() << " and "
            << (dir / "wavefunction.csv").string() << '\n';
  return 0;
}

int run_verify() {
  const auto checks = qevo::experiment::verify();
  bool all_pass = true;
  for (const auto& check : checks) {
    std::cout << (check.pass ? "PASS" : "FAIL") << ' ' << check.name;
    if (!check.detail.empty()) std::cout << " — " << check.detail;
    std::cout << '\n';
    all_pass = all_pass && check.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic-algorithm toolkit: stationary Schrodinger solutions, quantum-neuron "
               "training and two-qubit control-circuit synthesis"};
  app.require_subcommand(1);

  CommonOptions solve_opts, neuron_opts, synth_opts, table3_opts;
  std::string solve_system;
  std::string synth_target;
  std::string behave_target = "fig7a";
  std::string behave_config;
  std::size_t table3_max_generations = 1000;
  std::string oracle_system = "box";
  std::string oracle_convention = "physical";
  std::size_t oracle_count = 6;
  std::size_t oracle_state = 0;
  std::string oracle_out;

  auto* solve = app.add_subcommand("solve", "evolve a wavefunction for box/harmonic/hydrogen");
  solve->add_option("system", solve_system, "box, harmonic or hydrogen");
  add_common(solve, solve_opts, false);

  auto* train = app.add_subcommand("train-neuron", "evolve the XOR neuron weight pair");
  add_common(train, neuron_opts, true);
  bool neuron_landscape = false;
  train->add_flag("--landscape", neuron_landscape,
                  "print the 16-genotype output table and fitness landscapes instead of training");

  auto* synth = app.add_subcommand("synthesize", "evolve a 2-qubit control circuit");
  synth->add_option("target", synth_target, "fig7a, fig7b, fig7c (or custom via --config)");
  add_common(synth, synth_opts, true);

  auto* behave = app.add_subcommand("behave", "print the behavior distribution of a circuit");
  behave->add_option("target", behave_target, "fig7a, fig7b or fig7c");
  behave->add_option("--config", behave_config, "JSON config naming the circuit target");

  auto* table3 = app.add_subcommand(
      "table3", "generations-to-solution grid over circuits and mutation rates");
  add_common(table3, table3_opts, false);
  table3->add_option("--max-generations", table3_max_generations, "budget per run");

  auto* oracle = app.add_subcommand("oracle", "export reference eigenvalues and eigenvector");
  oracle->add_option("system", oracle_system, "box, harmonic or hydrogen");
  oracle->add_option("--convention", oracle_convention, "unit or physical step (default physical)");
  oracle->add_option("--count", oracle_count, "number of lowest eigenpairs");
  oracle->add_option("--state", oracle_state, "which eigenvector to export (default 0)");
  oracle->add_option("--out", oracle_out, "output directory");

  auto* verify = app.add_subcommand("verify", "run the golden oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(solve_opts, solve_system);
    if (train->parsed())
      return neuron_landscape ? run_neuron_landscape()
                              : run_simple(Kind::neuron, neuron_opts, "");
    if (synth->parsed()) return run_simple(Kind::circuit, synth_opts, synth_target);
    if (behave->parsed()) return run_behave(behave_target, behave_config);
    if (table3->parsed()) return run_table3(table3_opts, table3_max_generations);
    if (oracle->parsed())
      return run_oracle(oracle_system, oracle_convention, oracle_count, oracle_state, oracle_out);
    if (verify->parsed()) return run_verify();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
