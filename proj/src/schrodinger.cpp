#include "qevo/schrodinger.hpp"

#include <cmath>
#include <stdexcept>

#include "qevo/fd_oracle.hpp"

namespace qevo::schrodinger {

PotentialKind potential_from_name(std::string_view name) {
  if (name == "box") return PotentialKind::box;
  if (name == "harmonic") return PotentialKind::harmonic;
  if (name == "hydrogen") return PotentialKind::hydrogen_radial;
  throw std::invalid_argument("unknown system '" + std::string(name) +
                              "' (expected box, harmonic or hydrogen)");
}

std::string potential_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::box: return "box";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::hydrogen_radial: return "hydrogen";
  }
  throw std::invalid_argument("potential_name: bad kind");
}

void Grid::validate() const {
  if (!(lower < upper)) throw std::invalid_argument("Grid: lower bound must be < upper bound");
  if (points < 5) throw std::invalid_argument("Grid: need at least 5 sample points");
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("Grid: bounds must be finite");
}

double QuantumSystem::potential_at(double x) const {
  switch (potential) {
    case PotentialKind::box: return 0.0;
    case PotentialKind::harmonic: return 0.5 * x * x;
    case PotentialKind::hydrogen_radial: {
      if (x <= 0.0)
        throw std::domain_error("hydrogen radial potential undefined for x <= 0");
      const double l = double(angular_momentum);
      return l * (l + 1.0) / (x * x) - 2.0 / x;
    }
  }
  throw std::invalid_argument("potential_at: bad kind");
}

void QuantumSystem::validate() const {
  grid.validate();
  if (!std::isfinite(energy)) throw std::invalid_argument("QuantumSystem: energy must be finite");
  if (potential == PotentialKind::hydrogen_radial) {
    if (angular_momentum < 0)
      throw std::invalid_argument("QuantumSystem: angular momentum must be >= 0");
    if (grid.lower <= 0.0)
      throw std::domain_error("hydrogen radial grid must start at x > 0");
  }
}

std::vector<double> residual(const Wave& psi, const QuantumSystem& sys) {
  sys.validate();
  const std::size_t m = sys.grid.points;
  if (psi.size() != m)
    throw std::invalid_argument("residual: wave length does not match the grid");

  std::vector<double> d(m - 2);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double second_diff = 0.5 * (psi[i - 1] + psi[i + 1] - 2.0 * psi[i]);
    d[i - 1] = second_diff + (sys.energy - sys.potential_at(sys.grid.x(i))) * psi[i];
  }
  return d;
}

double z_value(const Wave& psi, const QuantumSystem& sys) {
  const std::vector<double> d = residual(psi, sys);
  double numerator = 0.0;
  for (double v : d) numerator += v * v;
  double denominator = 0.0;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) denominator += psi[i] * psi[i];
  if (denominator <= 0.0) throw std::runtime_error("z_value: zero wave");
  return numerator / denominator;
}

double fitness(const Wave& psi, const QuantumSystem& sys) {
  double interior_norm = 0.0;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) interior_norm += psi[i] * psi[i];
  if (psi.size() == sys.grid.points && interior_norm <= 0.0) return 0.0;
  return std::exp(-z_value(psi, sys));
}

ga::Population<double> init_wave_population(const QuantumSystem& sys, std::size_t count,
                                            ga::Rng& rng, double amplitude_low,
                                            double amplitude_high) {
  sys.validate();
  if (!(amplitude_low < amplitude_high))
    throw std::invalid_argument("init_wave_population: empty amplitude interval");
  ga::Population<double> pop;
  pop.generation = 0;
  pop.members.reserve(count);
  std::uniform_real_distribution<double> amplitude(amplitude_low, amplitude_high);
  const std::size_t m = sys.grid.points;
  for (std::size_t i = 0; i < count; ++i) {
    Wave psi(m, 0.0);
    for (std::size_t j = 1; j + 1 < m; ++j) psi[j] = amplitude(rng);
    pop.members.push_back(std::move(psi));
  }
  return pop;
}

ga::GaProblem<double> make_wave_problem(const QuantumSystem& sys, double amplitude_low,
                                        double amplitude_high) {
  sys.validate();
  if (!(amplitude_low < amplitude_high))
    throw std::invalid_argument("make_wave_problem: empty amplitude interval");
  const std::size_t m = sys.grid.points;

  ga::GaProblem<double> problem;
  problem.init = [sys, amplitude_low, amplitude_high, m](ga::Rng& rng) {
    std::uniform_real_distribution<double> amplitude(amplitude_low, amplitude_high);
    Wave psi(m, 0.0);
    for (std::size_t j = 1; j + 1 < m; ++j) psi[j] = amplitude(rng);
    return psi;
  };
  problem.fitness = [sys](const Wave& psi) { return fitness(psi, sys); };
  // boundary genes stay clamped at zero; interior genes resample uniformly
  problem.resample_gene = [amplitude_low, amplitude_high, m](const Wave&, std::size_t j,
                                                             ga::Rng& rng) {
    if (j == 0 || j + 1 == m) return 0.0;
    std::uniform_real_distribution<double> amplitude(amplitude_low, amplitude_high);
    return amplitude(rng);
  };
  return problem;
}

QuantumSystem default_system(PotentialKind kind) {
  QuantumSystem sys;
  sys.potential = kind;
  switch (kind) {
    case PotentialKind::box:
      sys.grid = Grid{0.0, 10.0, 64};
      sys.energy = 0.02;
      break;
    case PotentialKind::harmonic:
      sys.grid = Grid{-6.0, 6.0, 64};
      sys.energy = 0.5;
      break;
    case PotentialKind::hydrogen_radial:
      sys.grid = Grid{0.05, 20.0, 64};
      sys.energy = -0.5;
      sys.angular_momentum = 1;
      break;
  }
  sys.validate();
  return sys;
}

ga::GaConfig default_config(std::uint64_t seed) {
  ga::GaConfig config;
  config.population_size = 44;
  config.crossover_rate = 0.65;
  config.mutation_rate = 0.2;
  config.site_mutation_rate = 0.1;
  config.max_generations = 3200;
  config.fitness_threshold = 0.87;
  config.rng_seed = seed;
  config.crossover_enabled = true;
  config.elite_count = 1;
  return config;
}

SolveResult solve(const QuantumSystem& sys, const ga::GaConfig& config, double amplitude_low,
                  double amplitude_high) {
  const auto problem = make_wave_problem(sys, amplitude_low, amplitude_high);
  ga::RunTrace<double> trace = ga::run(problem, config);
  Wave best = fdm::normalize(trace.records.back().best, sys.grid);
  return {std::move(trace), std::move(best)};
}

SolveResult solve(PotentialKind kind, const ga::GaConfig& config) {
  return solve(default_system(kind), config, -1.0, 1.0);
}

}  // namespace qevo::schrodinger
