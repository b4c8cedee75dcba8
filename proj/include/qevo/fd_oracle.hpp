#pragma once

// Independent finite-difference reference for the wavefunction search:
// dense Hamiltonian over the interior grid points (Dirichlet boundaries),
// a cyclic Jacobi eigensolver, and trapezoidal-rule normalization.

#include <cstddef>
#include <vector>

#include "qevo/schrodinger.hpp"

namespace qevo::fdm {

/// unit_step uses a step of 1 in the second difference (the convention of the
/// GA fitness); physical divides by the squared grid step.
enum class StepConvention { unit_step, physical };

/// Dense symmetric Hamiltonian over the interior points of a grid:
/// tridiagonal kinetic part -1/(2h^2) * [1, -2, 1] plus diagonal potential.
struct Hamiltonian {
  std::size_t dim = 0;          // number of interior points
  std::vector<double> entries;  // row-major dense
  StepConvention convention = StepConvention::unit_step;

  double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

Hamiltonian build_hamiltonian(const schrodinger::QuantumSystem& sys, StepConvention convention);

struct EigenSolution {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm, parallel to values
};

/// Lowest `count` eigenpairs by cyclic Jacobi sweeps. Eigenvector signs are
/// fixed so the largest-magnitude component is positive.
EigenSolution eigensolve(const Hamiltonian& h, std::size_t count);

/// psi / sqrt(trapezoidal integral of psi^2 over the grid).
std::vector<double> normalize(const std::vector<double>& psi, const schrodinger::Grid& grid);

/// Pad an interior-point vector with the zero boundary samples.
std::vector<double> with_boundaries(const std::vector<double>& interior);

}  // namespace qevo::fdm
