#pragma once

// Quantum McCulloch-Pitts neuron with 2x2 gate-matrix weights, evolved to
// realize the XOR truth table. Two fitness variants ship: the hard-coded
// 16-entry landscape transcribed from the reference tables (default) and a
// principled overlap score against the XOR targets.

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qevo/ga.hpp"

namespace qevo::neuron {

inline constexpr int weight_count = 4;

using Vec2 = std::array<double, 2>;
using Pattern2 = std::array<std::array<int, 2>, 2>;

/// Integer entry pattern of weight w_index: Hadamard, Pauli-X, Pauli-Z,
/// identity (indices 0..3). The full weight is the pattern times 1/sqrt(2).
Pattern2 weight_pattern(int index);
std::array<std::array<double, 2>, 2> weight_matrix(int index);

/// Neuron output: net = w1*x1 + w2*x2, s = sgn(net) elementwise with
/// sgn(0) = 0, then the activation matrix (1/sqrt 2)[[0,1],[1,-1]] applied to
/// s and the result normalized to unit Euclidean norm (zero stays zero).
Vec2 forward(int w1, int w2, const Vec2& x1, const Vec2& x2);

/// XOR target output for a pair of basis inputs.
Vec2 xor_target(const Vec2& x1, const Vec2& x2);

/// The four basis input pairs in truth-table order: 00, 10, 01, 11.
const std::array<std::pair<Vec2, Vec2>, 4>& input_pairs();

/// Sum over the four input pairs of |<target|output>|; at most 4.
double fitness_overlap(int w1, int w2);

/// Transcribed landscape: (0,0) scores 4, every other ordered pair scores 1.
double fitness_table(int w1, int w2);

enum class FitnessMode { table, overlap };
FitnessMode fitness_mode_from_name(std::string_view name);
std::string_view fitness_mode_name(FitnessMode mode);

struct Landscape {
  double best = 0.0;
  std::vector<std::pair<int, int>> argmax;  // all genotypes attaining best
};

/// Exhaustive enumeration over the 16 genotypes.
Landscape enumerate_best(FitnessMode mode);

/// Stock GA parameters: N=12, mutation only (no crossover), p_m=0.6,
/// p_s=0.1, 50 generations, no fitness threshold.
ga::GaConfig default_config(std::uint64_t seed);

ga::GaProblem<int> make_problem(FitnessMode mode);

struct TrainResult {
  ga::RunTrace<int> trace;
  std::pair<int, int> best;
};

TrainResult train(const ga::GaConfig& config, FitnessMode mode);

}  // namespace qevo::neuron
