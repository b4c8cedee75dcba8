#include "qevo/qcircuit.hpp"

#include <cmath>
#include <stdexcept>

namespace qevo::circuit {

namespace {

constexpr double inv_sqrt2 = 0.7071067811865475244;

void check_square4(const Mat& m, const char* who) {
  if (m.rows != 4 || m.cols != 4)
    throw std::invalid_argument(std::string(who) + ": expected a 4x4 matrix");
}

}  // namespace

Mat identity2() { return {2, 2, {1, 0, 0, 1}, 1.0}; }
Mat hadamard() { return {2, 2, {1, 1, 1, -1}, inv_sqrt2}; }
Mat pauli_x() { return {2, 2, {0, 1, 1, 0}, 1.0}; }
Mat pauli_z() { return {2, 2, {1, 0, 0, -1}, 1.0}; }
Mat cnot() { return {4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}, 1.0}; }

Mat basis2(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("basis2: bit must be 0 or 1");
  return {2, 1, bit == 0 ? std::vector<int>{1, 0} : std::vector<int>{0, 1}, 1.0};
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out;
  out.rows = a.rows * b.rows;
  out.cols = a.cols * b.cols;
  out.scale = a.scale * b.scale;
  out.pattern.assign(out.rows * out.cols, 0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
  return out;
}

Mat compose_serial(const Mat& first, const Mat& then) {
  if (then.cols != first.rows)
    throw std::invalid_argument("compose_serial: shapes are not conformable");
  Mat out;
  out.rows = then.rows;
  out.cols = first.cols;
  out.scale = then.scale * first.scale;
  out.pattern.assign(out.rows * out.cols, 0);
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t k = 0; k < then.cols; ++k) {
      const int aik = then.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < out.cols; ++j) out.at(i, j) += aik * first.at(k, j);
    }
  return out;
}

std::vector<double> apply(const Mat& m, const std::vector<double>& state) {
  if (state.size() != m.cols) throw std::invalid_argument("apply: state length mismatch");
  std::vector<double> out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) sum += double(m.at(i, j)) * state[j];
    out[i] = m.scale * sum;
  }
  return out;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows != m.cols) return false;
  const std::size_t n = m.rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += m.value(i, k) * m.value(j, k);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(dot - expected) > tol) return false;
    }
  }
  return true;
}

Mat target_fig7a() { return compose_serial(kron(hadamard(), identity2()), cnot()); }

Mat target_fig7b() { return kron(pauli_x(), identity2()); }

Mat target_fig7c() {
  // worked control matrix of the third vehicle; not unitary under any
  // scalar factor, the behavior simulator renormalizes the state instead
  return {4, 4, {1, 0, 1, 0, 0, 1, 0, 1, 0, 0, -1, 0, 0, 0, 0, -1}, 1.0};
}

Mat target_from_name(std::string_view name) {
  if (name == "fig7a") return target_fig7a();
  if (name == "fig7b") return target_fig7b();
  if (name == "fig7c") return target_fig7c();
  throw std::invalid_argument("unknown target '" + std::string(name) +
                              "' (expected fig7a, fig7b or fig7c)");
}

Mat custom_target(const std::array<int, 16>& row_major, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("custom_target: scale must be positive and finite");
  Mat out{4, 4, std::vector<int>(row_major.begin(), row_major.end()), scale};
  return out;
}

int hamming_matches(const Mat& candidate, const Mat& target) {
  check_square4(candidate, "hamming_matches");
  check_square4(target, "hamming_matches");
  int matches = 0;
  for (std::size_t i = 0; i < 16; ++i)
    if (candidate.pattern[i] == target.pattern[i]) ++matches;
  return matches;
}

namespace {

// dense 4x4 inverse of scale*pattern by Gauss-Jordan with partial pivoting
std::array<double, 16> invert_scaled(const Mat& m) {
  check_square4(m, "fidelity");
  std::array<double, 16> a{};
  std::array<double, 16> inv{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) a[i * 4 + j] = m.value(i, j);
    inv[i * 4 + i] = 1.0;
  }
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(a[r * 4 + col]) > std::abs(a[pivot * 4 + col])) pivot = r;
    if (std::abs(a[pivot * 4 + col]) < 1e-12)
      throw std::runtime_error("fidelity: singular target matrix");
    if (pivot != col)
      for (std::size_t j = 0; j < 4; ++j) {
        std::swap(a[pivot * 4 + j], a[col * 4 + j]);
        std::swap(inv[pivot * 4 + j], inv[col * 4 + j]);
      }
    const double scale = 1.0 / a[col * 4 + col];
    for (std::size_t j = 0; j < 4; ++j) {
      a[col * 4 + j] *= scale;
      inv[col * 4 + j] *= scale;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = a[r * 4 + col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        a[r * 4 + j] -= factor * a[col * 4 + j];
        inv[r * 4 + j] -= factor * inv[col * 4 + j];
      }
    }
  }
  return inv;
}

}  // namespace

double fidelity_score(const Mat& candidate, const Mat& target) {
  check_square4(candidate, "fidelity");
  const std::array<double, 16> target_inv = invert_scaled(target);
  double trace = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      trace += candidate.value(i, k) * target_inv[k * 4 + i];
  return std::abs(trace) / 4.0;
}

double fidelity_distance(const Mat& candidate, const Mat& target) {
  return 1.0 - fidelity_score(candidate, target);
}

BehaviorDistribution behave(const Mat& circuit, bool light_on) {
  check_square4(circuit, "behave");
  std::vector<double> input(4, 0.0);
  input[light_on ? 3 : 0] = 1.0;
  std::vector<double> state = circuit::apply(circuit, input);
  double norm2 = 0.0;
  for (double amplitude : state) norm2 += amplitude * amplitude;
  if (norm2 <= 0.0) throw std::runtime_error("behave: circuit maps the input to the zero state");
  return {state[0] * state[0] / norm2, state[1] * state[1] / norm2, state[2] * state[2] / norm2,
          state[3] * state[3] / norm2};
}

FitnessMode fitness_mode_from_name(std::string_view name) {
  if (name == "hamming") return FitnessMode::hamming;
  if (name == "fidelity") return FitnessMode::fidelity;
  throw std::invalid_argument("unknown circuit fitness mode '" + std::string(name) +
                              "' (expected hamming or fidelity)");
}

std::string_view fitness_mode_name(FitnessMode mode) {
  return mode == FitnessMode::hamming ? "hamming" : "fidelity";
}

ga::GaConfig default_config(std::uint64_t seed, double mutation_rate) {
  ga::GaConfig config;
  config.population_size = 200;
  config.crossover_rate = 0.6;
  config.mutation_rate = mutation_rate;
  config.site_mutation_rate = 0.1;
  config.max_generations = 1000;
  config.fitness_threshold = 16.0;
  config.rng_seed = seed;
  config.crossover_enabled = true;
  config.elite_count = 1;
  return config;
}

Mat chromosome_to_matrix(const std::vector<int>& genes, double scale) {
  if (genes.size() != 16)
    throw std::invalid_argument("chromosome_to_matrix: expected 16 genes");
  return {4, 4, genes, scale};
}

ga::GaProblem<int> make_problem(const Mat& target, FitnessMode mode) {
  check_square4(target, "make_problem");
  if (mode == FitnessMode::fidelity) invert_scaled(target);  // fail fast when singular

  ga::GaProblem<int> problem;
  problem.init = [](ga::Rng& rng) {
    std::uniform_int_distribution<int> entry(-1, 1);
    std::vector<int> genes(16);
    for (int& g : genes) g = entry(rng);
    return genes;
  };
  problem.fitness = [target, mode](const std::vector<int>& genes) {
    const Mat candidate = chromosome_to_matrix(genes, target.scale);
    return mode == FitnessMode::hamming ? double(hamming_matches(candidate, target))
                                        : fidelity_score(candidate, target);
  };
  problem.resample_gene = [](const std::vector<int>&, std::size_t, ga::Rng& rng) {
    std::uniform_int_distribution<int> entry(-1, 1);
    return entry(rng);
  };
  return problem;
}

SynthesisResult synthesize(const Mat& target, const ga::GaConfig& config, FitnessMode mode) {
  ga::RunTrace<int> trace = ga::run(make_problem(target, mode), config);
  SynthesisResult out;
  out.best = chromosome_to_matrix(trace.records.back().best, target.scale);
  out.exact = hamming_matches(out.best, target) == 16;
  out.generations = trace.records.back().generation;
  out.trace = std::move(trace);
  return out;
}

}  // namespace qevo::circuit
