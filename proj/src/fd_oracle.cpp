#include "qevo/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qevo::fdm {

Hamiltonian build_hamiltonian(const schrodinger::QuantumSystem& sys, StepConvention convention) {
  sys.validate();
  const std::size_t m = sys.grid.points - 2;
  const double h = convention == StepConvention::physical ? sys.grid.step() : 1.0;
  const double inv_h2 = 1.0 / (h * h);

  Hamiltonian out;
  out.dim = m;
  out.convention = convention;
  out.entries.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    out.at(i, i) = inv_h2 + sys.potential_at(sys.grid.x(i + 1));
    if (i + 1 < m) {
      out.at(i, i + 1) = -0.5 * inv_h2;
      out.at(i + 1, i) = -0.5 * inv_h2;
    }
  }
  return out;
}

namespace {

double off_diagonal_norm(const Hamiltonian& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j) sum += a.at(i, j) * a.at(i, j);
  return std::sqrt(2.0 * sum);
}

double frobenius_norm(const Hamiltonian& a) {
  double sum = 0.0;
  for (double v : a.entries) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

EigenSolution eigensolve(const Hamiltonian& h, std::size_t count) {
  const std::size_t n = h.dim;
  if (n == 0) throw std::invalid_argument("eigensolve: empty matrix");
  if (count == 0 || count > n) throw std::invalid_argument("eigensolve: bad eigenpair count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h.at(i, j) != h.at(j, i))
        throw std::invalid_argument("eigensolve: matrix is not symmetric");

  Hamiltonian a = h;
  std::vector<double> v(n * n, 0.0);  // accumulated rotations, row-major
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double tolerance = 1e-12 * std::max(frobenius_norm(h), 1e-300);
  constexpr int sweep_budget = 100;

  int sweep = 0;
  while (off_diagonal_norm(a) > tolerance) {
    if (++sweep > sweep_budget)
      throw std::runtime_error("eigensolve: convergence failure after sweep budget");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0.0) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a.at(p, k);
          const double aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a.at(i, i) < a.at(j, j); });

  EigenSolution out;
  out.values.reserve(count);
  out.vectors.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t col = order[k];
    out.values.push_back(a.at(col, col));
    std::vector<double> vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i] = v[i * n + col];
    // deterministic sign: largest-magnitude component positive
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(vec[i]) > std::abs(vec[peak])) peak = i;
    if (vec[peak] < 0.0)
      for (double& x : vec) x = -x;
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

std::vector<double> normalize(const std::vector<double>& psi, const schrodinger::Grid& grid) {
  grid.validate();
  if (psi.size() != grid.points)
    throw std::invalid_argument("normalize: wave length does not match the grid");
  const double h = grid.step();
  double integral = 0.5 * (psi.front() * psi.front() + psi.back() * psi.back());
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) integral += psi[i] * psi[i];
  integral *= h;
  if (integral <= 0.0) throw std::runtime_error("normalize: zero wave");
  const double factor = 1.0 / std::sqrt(integral);
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = psi[i] * factor;
  return out;
}

std::vector<double> with_boundaries(const std::vector<double>& interior) {
  std::vector<double> out;
  out.reserve(interior.size() + 2);
  out.push_back(0.0);
  out.insert(out.end(), interior.begin(), interior.end());
  out.push_back(0.0);
  return out;
}

}  // namespace qevo::fdm
