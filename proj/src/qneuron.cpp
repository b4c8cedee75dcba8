#include "qevo/qneuron.hpp"

#include <cmath>
#include <stdexcept>

namespace qevo::neuron {

namespace {

constexpr double inv_sqrt2 = 0.7071067811865475244;

int sgn(double x) {
  if (x > 0.0) return 1;
  if (x < 0.0) return -1;
  return 0;
}

void check_index(int index) {
  if (index < 0 || index >= weight_count)
    throw std::invalid_argument("weight index must be in 0..3");
}

}  // namespace

Pattern2 weight_pattern(int index) {
  check_index(index);
  switch (index) {
    case 0: return {{{1, 1}, {1, -1}}};   // Hadamard
    case 1: return {{{0, 1}, {1, 0}}};    // Pauli-X
    case 2: return {{{1, 0}, {0, -1}}};   // Pauli-Z
    default: return {{{1, 0}, {0, 1}}};   // identity
  }
}

std::array<std::array<double, 2>, 2> weight_matrix(int index) {
  const Pattern2 p = weight_pattern(index);
  return {{{inv_sqrt2 * p[0][0], inv_sqrt2 * p[0][1]},
           {inv_sqrt2 * p[1][0], inv_sqrt2 * p[1][1]}}};
}

Vec2 forward(int w1, int w2, const Vec2& x1, const Vec2& x2) {
  const auto m1 = weight_matrix(w1);
  const auto m2 = weight_matrix(w2);
  const Vec2 net = {m1[0][0] * x1[0] + m1[0][1] * x1[1] + m2[0][0] * x2[0] + m2[0][1] * x2[1],
                    m1[1][0] * x1[0] + m1[1][1] * x1[1] + m2[1][0] * x2[0] + m2[1][1] * x2[1]};
  const double s0 = sgn(net[0]);
  const double s1 = sgn(net[1]);
  // activation matrix (1/sqrt 2) [[0,1],[1,-1]]
  Vec2 y = {inv_sqrt2 * s1, inv_sqrt2 * (s0 - s1)};
  const double norm = std::sqrt(y[0] * y[0] + y[1] * y[1]);
  if (norm > 0.0) {
    y[0] /= norm;
    y[1] /= norm;
  }
  return y;
}

Vec2 xor_target(const Vec2& x1, const Vec2& x2) {
  // basis bit = 1 when the second amplitude carries the weight
  const bool b1 = x1[1] > x1[0];
  const bool b2 = x2[1] > x2[0];
  return (b1 != b2) ? Vec2{0.0, 1.0} : Vec2{1.0, 0.0};
}

const std::array<std::pair<Vec2, Vec2>, 4>& input_pairs() {
  static const std::array<std::pair<Vec2, Vec2>, 4> pairs = {{
      {{1.0, 0.0}, {1.0, 0.0}},
      {{0.0, 1.0}, {1.0, 0.0}},
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.0, 1.0}, {0.0, 1.0}},
  }};
  return pairs;
}

double fitness_overlap(int w1, int w2) {
  double sum = 0.0;
  for (const auto& [x1, x2] : input_pairs()) {
    const Vec2 y = forward(w1, w2, x1, x2);
    const Vec2 d = xor_target(x1, x2);
    sum += std::abs(d[0] * y[0] + d[1] * y[1]);
  }
  return sum;
}

double fitness_table(int w1, int w2) {
  check_index(w1);
  check_index(w2);
  return (w1 == 0 && w2 == 0) ? 4.0 : 1.0;
}

FitnessMode fitness_mode_from_name(std::string_view name) {
  if (name == "table") return FitnessMode::table;
  if (name == "overlap") return FitnessMode::overlap;
  throw std::invalid_argument("unknown neuron fitness mode '" + std::string(name) +
                              "' (expected table or overlap)");
}

std::string_view fitness_mode_name(FitnessMode mode) {
  return mode == FitnessMode::table ? "table" : "overlap";
}

Landscape enumerate_best(FitnessMode mode) {
  Landscape out;
  for (int w1 = 0; w1 < weight_count; ++w1) {
    for (int w2 = 0; w2 < weight_count; ++w2) {
      const double f =
          mode == FitnessMode::table ? fitness_table(w1, w2) : fitness_overlap(w1, w2);
      if (f > out.best + 1e-12) {
        out.best = f;
        out.argmax.assign(1, {w1, w2});
      } else if (std::abs(f - out.best) <= 1e-12) {
        out.argmax.emplace_back(w1, w2);
      }
    }
  }
  return out;
}

ga::GaConfig default_config(std::uint64_t seed) {
  ga::GaConfig config;
  config.population_size = 12;
  config.crossover_rate = 0.0;
  config.mutation_rate = 0.6;
  config.site_mutation_rate = 0.1;
  config.max_generations = 50;
  config.rng_seed = seed;
  config.crossover_enabled = false;
  config.elite_count = 1;
  return config;
}

ga::GaProblem<int> make_problem(FitnessMode mode) {
  ga::GaProblem<int> problem;
  problem.init = [](ga::Rng& rng) {
    std::uniform_int_distribution<int> pick(0, weight_count - 1);
    const int w1 = pick(rng);
    const int w2 = pick(rng);
    return std::vector<int>{w1, w2};
  };
  problem.fitness = [mode](const std::vector<int>& genes) {
    if (genes.size() != 2) throw std::invalid_argument("neuron chromosome must have 2 genes");
    return mode == FitnessMode::table ? fitness_table(genes[0], genes[1])
                                      : fitness_overlap(genes[0], genes[1]);
  };
  problem.resample_gene = [](const std::vector<int>&, std::size_t, ga::Rng& rng) {
    std::uniform_int_distribution<int> pick(0, weight_count - 1);
    return pick(rng);
  };
  return problem;
}

TrainResult train(const ga::GaConfig& config, FitnessMode mode) {
  ga::RunTrace<int> trace = ga::run(make_problem(mode), config);
  const auto& best = trace.records.back().best;
  return {std::move(trace), {best[0], best[1]}};
}

}  // namespace qevo::neuron
