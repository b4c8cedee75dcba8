#pragma once

// Two-qubit circuit algebra over integer entry patterns with a scalar
// factor, evolutionary synthesis toward target control matrices, and the
// measurement-based behavior simulator for the reactive-vehicle experiments.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qevo/ga.hpp"

namespace qevo::circuit {

/// Integer entry pattern carried with a scalar normalization factor.
/// Covers 2x2 gates, 4x4 circuits and basis/state column vectors.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> pattern;  // row-major
  double scale = 1.0;

  int at(std::size_t r, std::size_t c) const { return pattern[r * cols + c]; }
  int& at(std::size_t r, std::size_t c) { return pattern[r * cols + c]; }
  double value(std::size_t r, std::size_t c) const { return scale * at(r, c); }
};

Mat identity2();
Mat hadamard();
Mat pauli_x();
Mat pauli_z();
Mat cnot();
Mat basis2(int bit);  // |0> or |1> as a column

/// Kronecker product of the patterns; scales multiply. Parallel wiring.
Mat kron(const Mat& a, const Mat& b);

/// Series wiring in application order: `first` acts on the state before
/// `then`, so the result is the matrix product then * first.
Mat compose_serial(const Mat& first, const Mat& then);

/// scale*pattern applied to a dense state vector.
std::vector<double> apply(const Mat& m, const std::vector<double>& state);

bool is_unitary(const Mat& m, double tol = 1e-12);

/// Built-in synthesis targets: the EPR circuit (H on the first wire, then
/// CNOT), X on the first wire, and the worked upper-triangular control
/// matrix of the third vehicle.
Mat target_fig7a();
Mat target_fig7b();
Mat target_fig7c();
Mat target_from_name(std::string_view name);
Mat custom_target(const std::array<int, 16>& row_major, double scale = 1.0);

/// Count of equal pattern entries between two 4x4 matrices (0..16,
/// 16 = exact match). Scales are ignored.
int hamming_matches(const Mat& candidate, const Mat& target);

/// 1 - |Tr(candidate * target^-1)| / 4 on the scaled matrices; 0 at an exact
/// match, minimized. Throws on a singular target.
double fidelity_distance(const Mat& candidate, const Mat& target);

/// |Tr(candidate * target^-1)| / 4, the maximized complement of
/// fidelity_distance used as a GA score.
double fidelity_score(const Mat& candidate, const Mat& target);

/// Measurement probabilities over the four basis outcomes.
struct BehaviorDistribution {
  double stop = 0.0;        // |00>
  double turn_left = 0.0;   // |01>
  double turn_right = 0.0;  // |10>
  double forward = 0.0;     // |11>
};

/// Feed |00> (light off) or |11> (light on) through the circuit, normalize
/// the resulting state and square the basis projections.
BehaviorDistribution behave(const Mat& circuit, bool light_on);

enum class FitnessMode { hamming, fidelity };
FitnessMode fitness_mode_from_name(std::string_view name);
std::string_view fitness_mode_name(FitnessMode mode);

/// Stock GA parameters: N=200, p_r=0.6, p_s=0.1, at most 1000 generations,
/// threshold at the exact Hamming match.
ga::GaConfig default_config(std::uint64_t seed, double mutation_rate = 0.1);

ga::GaProblem<int> make_problem(const Mat& target, FitnessMode mode);

Mat chromosome_to_matrix(const std::vector<int>& genes, double scale);

struct SynthesisResult {
  ga::RunTrace<int> trace;
  Mat best;              // best chromosome with the target's scale attached
  bool exact = false;    // pattern identical to the target
  int generations = 0;   // generation count at termination
};

SynthesisResult synthesize(const Mat& target, const ga::GaConfig& config, FitnessMode mode);

}  // namespace qevo::circuit
