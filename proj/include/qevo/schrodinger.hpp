#pragma once

// Candidate wavefunctions sampled on a grid and the discretized stationary
// Schrodinger residual that scores them. The second difference is taken with
// a unit index step; see fdm::build_hamiltonian for the physical-step variant
// used by the reference eigensolver.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qevo/ga.hpp"

namespace qevo::schrodinger {

enum class PotentialKind { box, harmonic, hydrogen_radial };

PotentialKind potential_from_name(std::string_view name);
std::string potential_name(PotentialKind kind);

/// Uniform sample grid x_i = lower + i*step, i = 0..points-1.
struct Grid {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t points = 5;

  double step() const { return (upper - lower) / double(points - 1); }
  double x(std::size_t i) const { return lower + double(i) * step(); }
  void validate() const;
};

struct QuantumSystem {
  PotentialKind potential = PotentialKind::box;
  int angular_momentum = 0;  // l, hydrogen radial equation only
  double energy = 0.0;       // fixed trial energy E
  Grid grid;

  double potential_at(double x) const;
  void validate() const;
};

/// A chromosome: wavefunction samples, one per grid point, boundaries
/// clamped to zero.
using Wave = std::vector<double>;

/// Pointwise residual D_j = (psi_{j-1} + psi_{j+1} - 2 psi_j)/2
/// + (E - V(x_j)) psi_j over the interior points (length points-2).
std::vector<double> residual(const Wave& psi, const QuantumSystem& sys);

/// Z = sum of squared interior residuals / sum of squared interior samples.
/// Throws if the interior is identically zero.
double z_value(const Wave& psi, const QuantumSystem& sys);

/// F = exp(-Z), in (0,1] for any nonzero wave; the zero wave scores 0.
double fitness(const Wave& psi, const QuantumSystem& sys);

/// Random population: interior genes i.i.d. uniform on the amplitude
/// interval, boundary samples clamped to zero.
ga::Population<double> init_wave_population(const QuantumSystem& sys, std::size_t count,
                                            ga::Rng& rng, double amplitude_low = -1.0,
                                            double amplitude_high = 1.0);

ga::GaProblem<double> make_wave_problem(const QuantumSystem& sys, double amplitude_low = -1.0,
                                        double amplitude_high = 1.0);

/// Stock systems: box on [0,10], harmonic on [-6,6], hydrogen radial on
/// [0.05,20], all with 64 grid points and the stock trial energies
/// (0.02, 0.5, -0.5 with l=1).
QuantumSystem default_system(PotentialKind kind);

/// Stock GA parameters for the wavefunction search: N=44, p_r=0.65,
/// p_m=0.2, p_s=0.1, at most 3200 generations, threshold 0.87.
ga::GaConfig default_config(std::uint64_t seed);

struct SolveResult {
  ga::RunTrace<double> trace;
  Wave best;  // best chromosome, normalized to unit trapezoidal integral
};

SolveResult solve(const QuantumSystem& sys, const ga::GaConfig& config,
                  double amplitude_low = -1.0, double amplitude_high = 1.0);
SolveResult solve(PotentialKind kind, const ga::GaConfig& config);

}  // namespace qevo::schrodinger
