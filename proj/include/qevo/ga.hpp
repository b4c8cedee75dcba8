#pragma once

// Reproducible generational genetic-algorithm core shared by the three
// experiment families (wavefunction search, neuron weights, circuit matrices).
//
// Every stochastic decision of a run is drawn from one seeded 64-bit stream
// in a fixed order: population init, then per generation roulette selection
// (N spins), tournament pairing (4 index draws per pair), the crossover-rate
// gate (1 draw per pair), the cut point (1 draw when the gate fires), and
// mutation (1 draw per chromosome, then 1 per gene of a mutating chromosome,
// plus whatever the gene resampler consumes). Identical (problem, config)
// therefore reproduces the trace bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qevo::ga {

using Rng = std::mt19937_64;

/// Full parameterization of one GA run.
struct GaConfig {
  std::size_t population_size = 2;    // N
  double crossover_rate = 0.0;        // p_r, applied once per tournament pair
  double mutation_rate = 0.0;         // p_m, per chromosome
  double site_mutation_rate = 0.0;    // p_s, per gene of a mutating chromosome
  std::size_t max_generations = 1;
  std::optional<double> fitness_threshold;  // stop once best fitness >= threshold
  std::uint64_t rng_seed = 0;
  bool crossover_enabled = true;
  std::size_t elite_count = 1;        // 0 disables elitism

  void validate() const;
};

template <typename G>
struct Population {
  std::vector<std::vector<G>> members;
  std::vector<double> fitnesses;  // parallel to members once evaluated
  int generation = 0;
};

enum class Termination { threshold_reached, max_generations };

template <typename G>
struct TraceRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::vector<G> best;
};

template <typename G>
struct RunTrace {
  std::vector<TraceRecord<G>> records;
  Termination termination = Termination::max_generations;
  bool elitism = false;
  // generations whose fitnesses summed to zero, forcing uniform selection
  std::size_t uniform_selection_events = 0;
};

/// Per-gene resampling rule; receives the whole chromosome and the gene index.
template <typename G>
using GeneResampler = std::function<G(const std::vector<G>&, std::size_t, Rng&)>;

/// Problem definition plugged into run(): chromosome factory, pure
/// non-negative fitness, and the per-gene mutation rule.
template <typename G>
struct GaProblem {
  std::function<std::vector<G>(Rng&)> init;
  std::function<double(const std::vector<G>&)> fitness;
  GeneResampler<G> resample_gene;
};

inline void GaConfig::validate() const {
  const auto fail = [](const char* msg) {
    throw std::invalid_argument(std::string("GaConfig: ") + msg);
  };
  if (population_size < 2) fail("population_size must be >= 2");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover_rate must be in [0,1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation_rate must be in [0,1]");
  if (!(site_mutation_rate >= 0.0 && site_mutation_rate <= 1.0))
    fail("site_mutation_rate must be in [0,1]");
  if (max_generations < 1) fail("max_generations must be >= 1");
  if (fitness_threshold && !std::isfinite(*fitness_threshold))
    fail("fitness_threshold must be finite");
  if (elite_count >= population_size) fail("elite_count must be < population_size");
}

/// Index selected by a roulette spin u in [0, sum of fitnesses).
inline std::size_t pick_roulette(std::span<const double> fitnesses, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    cumulative += fitnesses[i];
    if (u < cumulative) return i;
  }
  return fitnesses.size() - 1;  // spin landed on the rounding edge of the last slot
}

/// Fitter of two drawn indices; ties break toward the lower population index.
inline std::size_t tournament_winner(std::span<const double> fitnesses, std::size_t i,
                                     std::size_t j) {
  if (fitnesses[i] == fitnesses[j]) return std::min(i, j);
  return fitnesses[i] > fitnesses[j] ? i : j;
}

/// Wheel parent selection: N chromosomes sampled with replacement, each with
/// probability fitness/total. A zero fitness sum falls back to uniform
/// sampling and reports the event through zero_fitness_fallback.
template <typename G>
Population<G> roulette_select(const Population<G>& pop, Rng& rng,
                              bool* zero_fitness_fallback = nullptr) {
  if (pop.members.size() != pop.fitnesses.size() || pop.members.empty())
    throw std::invalid_argument("roulette_select: population not evaluated");
  const std::size_t n = pop.members.size();

  Population<G> out;
  out.generation = pop.generation;
  out.members.reserve(n);
  out.fitnesses.reserve(n);

  const double total = std::accumulate(pop.fitnesses.begin(), pop.fitnesses.end(), 0.0);
  if (total <= 0.0) {
    if (zero_fitness_fallback) *zero_fitness_fallback = true;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = pick(rng);
      out.members.push_back(pop.members[j]);
      out.fitnesses.push_back(pop.fitnesses[j]);
    }
    return out;
  }

  std::uniform_real_distribution<double> spin(0.0, total);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = pick_roulette(pop.fitnesses, spin(rng));
    out.members.push_back(pop.members[j]);
    out.fitnesses.push_back(pop.fitnesses[j]);
  }
  return out;
}

/// Two parents, each the fitter of an independent uniformly drawn index pair.
template <typename G>
std::pair<std::vector<G>, std::vector<G>> tournament_pair(const Population<G>& pop, Rng& rng) {
  const std::size_t n = pop.members.size();
  if (n < 2) throw std::invalid_argument("tournament_pair: population size must be >= 2");
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  // sequenced draws: i1, j1, i2, j2
  const std::size_t i1 = pick(rng);
  const std::size_t j1 = pick(rng);
  const std::size_t i2 = pick(rng);
  const std::size_t j2 = pick(rng);
  return {pop.members[tournament_winner(pop.fitnesses, i1, j1)],
          pop.members[tournament_winner(pop.fitnesses, i2, j2)]};
}

/// Exchange the tails of two equal-length chromosomes at a fixed cut point
/// (1 <= cut <= length-1).
template <typename G>
std::pair<std::vector<G>, std::vector<G>> crossover_at(const std::vector<G>& a,
                                                       const std::vector<G>& b, std::size_t cut) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("crossover: need at least 2 genes");
  if (cut < 1 || cut >= a.size()) throw std::invalid_argument("crossover: cut out of range");
  std::vector<G> child1(a.begin(), a.begin() + cut);
  child1.insert(child1.end(), b.begin() + cut, b.end());
  std::vector<G> child2(b.begin(), b.begin() + cut);
  child2.insert(child2.end(), a.begin() + cut, a.end());
  return {std::move(child1), std::move(child2)};
}

template <typename G>
std::pair<std::vector<G>, std::vector<G>> one_point_crossover(const std::vector<G>& a,
                                                              const std::vector<G>& b, Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("crossover: need at least 2 genes");
  std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
  return crossover_at(a, b, cut(rng));
}

/// With probability p_m the chromosome becomes a mutant; inside a mutant each
/// gene is independently resampled with probability p_s.
template <typename G>
std::vector<G> mutate(std::vector<G> chromosome, const GeneResampler<G>& resample, double p_m,
                      double p_s, Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) >= p_m) return chromosome;
  for (std::size_t j = 0; j < chromosome.size(); ++j) {
    if (u01(rng) < p_s) chromosome[j] = resample(chromosome, j, rng);
  }
  return chromosome;
}

/// Generational loop: evaluate, record, roulette-select, pair + recombine
/// (when enabled), mutate, and reinsert elites until the fitness threshold is
/// met or max_generations have been evaluated.
template <typename G>
RunTrace<G> run(const GaProblem<G>& problem, const GaConfig& config) {
  config.validate();
  if (!problem.init || !problem.fitness || !problem.resample_gene)
    throw std::invalid_argument("run: problem callbacks must all be set");

  Rng rng(config.rng_seed);
  const std::size_t n = config.population_size;

  RunTrace<G> trace;
  trace.elitism = config.elite_count > 0;

  Population<G> pop;
  pop.generation = 1;
  pop.members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pop.members.push_back(problem.init(rng));

  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (;;) {
    pop.fitnesses.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      try {
        f = problem.fitness(pop.members[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("generation " + std::to_string(pop.generation) + ", member " +
                                 std::to_string(i) + ": " + e.what());
      }
      if (!std::isfinite(f) || f < 0.0)
        throw std::runtime_error("generation " + std::to_string(pop.generation) +
                                 ": fitness must be finite and non-negative");
      pop.fitnesses[i] = f;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (pop.fitnesses[i] > pop.fitnesses[best]) best = i;
    const double best_fitness = pop.fitnesses[best];
    const double mean_fitness =
        std::accumulate(pop.fitnesses.begin(), pop.fitnesses.end(), 0.0) / double(n);
    trace.records.push_back({pop.generation, best_fitness, mean_fitness, pop.members[best]});

    if (config.fitness_threshold && best_fitness >= *config.fitness_threshold) {
      trace.termination = Termination::threshold_reached;
      break;
    }
    if (static_cast<std::size_t>(pop.generation) >= config.max_generations) {
      trace.termination = Termination::max_generations;
      break;
    }

    bool fallback = false;
    Population<G> selected = roulette_select(pop, rng, &fallback);
    if (fallback) ++trace.uniform_selection_events;

    std::vector<std::vector<G>> next;
    next.reserve(n);
    if (config.crossover_enabled) {
      for (std::size_t p = 0; p + 1 < n; p += 2) {
        auto parents = tournament_pair(selected, rng);
        if (u01(rng) < config.crossover_rate)
          parents = one_point_crossover(parents.first, parents.second, rng);
        next.push_back(std::move(parents.first));
        next.push_back(std::move(parents.second));
      }
      if (n % 2 != 0) next.push_back(std::move(selected.members.back()));
    } else {
      next = std::move(selected.members);
    }

    for (auto& member : next)
      member = mutate(std::move(member), problem.resample_gene, config.mutation_rate,
                      config.site_mutation_rate, rng);

    if (config.elite_count > 0) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pop.fitnesses[a] > pop.fitnesses[b];
      });
      for (std::size_t e = 0; e < config.elite_count; ++e) next[e] = pop.members[order[e]];
    }

    pop.members = std::move(next);
    pop.fitnesses.clear();
    ++pop.generation;
  }
  return trace;
}

}  // namespace qevo::ga
