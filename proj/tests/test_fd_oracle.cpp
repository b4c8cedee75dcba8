#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qevo/fd_oracle.hpp"
#include "qevo/schrodinger.hpp"

using namespace qevo;
using schrodinger::PotentialKind;

namespace {

double frobenius(const fdm::Hamiltonian& h) {
  double sum = 0.0;
  for (double v : h.entries) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("unit-step box kinetic block matches the four-point matrix") {
  schrodinger::QuantumSystem sys;
  sys.potential = PotentialKind::box;
  sys.grid = {0.0, 5.0, 6};  // 4 interior points
  const auto h = fdm::build_hamiltonian(sys, fdm::StepConvention::unit_step);
  REQUIRE(h.dim == 4);
  const double expected[4][4] = {{1.0, -0.5, 0.0, 0.0},
                                 {-0.5, 1.0, -0.5, 0.0},
                                 {0.0, -0.5, 1.0, -0.5},
                                 {0.0, 0.0, -0.5, 1.0}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(h.at(i, j) == expected[i][j]);
}

TEST_CASE("harmonic potential lands on the diagonal") {
  auto sys = schrodinger::default_system(PotentialKind::harmonic);
  const auto h = fdm::build_hamiltonian(sys, fdm::StepConvention::physical);
  const double inv_h2 = 1.0 / (sys.grid.step() * sys.grid.step());
  for (std::size_t i = 0; i < h.dim; ++i) {
    const double x = sys.grid.x(i + 1);
    CHECK(h.at(i, i) == doctest::Approx(inv_h2 + 0.5 * x * x).epsilon(1e-14));
  }
}

TEST_CASE("the Hamiltonian is exactly symmetric") {
  for (const auto kind :
       {PotentialKind::box, PotentialKind::harmonic, PotentialKind::hydrogen_radial}) {
    const auto sys = schrodinger::default_system(kind);
    for (const auto convention : {fdm::StepConvention::unit_step, fdm::StepConvention::physical}) {
      const auto h = fdm::build_hamiltonian(sys, convention);
      for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = 0; j < h.dim; ++j) CHECK(h.at(i, j) == h.at(j, i));
    }
  }
}

TEST_CASE("box eigenvalues match the closed tridiagonal form") {
  const auto sys = schrodinger::default_system(PotentialKind::box);
  const auto h = fdm::build_hamiltonian(sys, fdm::StepConvention::physical);
  const std::size_t m = h.dim;
  const auto eigen = fdm::eigensolve(h, m);

  const double step = sys.grid.step();
  for (std::size_t k = 1; k <= m; ++k) {
    // closed-form spectrum of -1/(2h^2) tridiag(1,-2,1) on m interior points
    const double expected =
        (1.0 - std::cos(double(k) * std::numbers::pi / double(m + 1))) / (step * step);
    CHECK(eigen.values[k - 1] == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("a 2x2 diagonal matrix eigensolves exactly") {
  fdm::Hamiltonian h;
  h.dim = 2;
  h.entries = {3.5, 0.0, 0.0, -1.25};
  const auto eigen = fdm::eigensolve(h, 2);
  CHECK(eigen.values[0] == -1.25);
  CHECK(eigen.values[1] == 3.5);
}

TEST_CASE("eigenvectors are orthonormal and satisfy the residual bound") {
  for (const auto kind :
       {PotentialKind::box, PotentialKind::harmonic, PotentialKind::hydrogen_radial}) {
    const auto sys = schrodinger::default_system(kind);
    const auto h = fdm::build_hamiltonian(sys, fdm::StepConvention::unit_step);
    const std::size_t count = 5;
    const auto eigen = fdm::eigensolve(h, count);

    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < h.dim; ++k) dot += eigen.vectors[i][k] * eigen.vectors[j][k];
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-8);
      }
      // ||Hv - lambda v|| <= 1e-8 ||H||
      double residual = 0.0;
      for (std::size_t r = 0; r < h.dim; ++r) {
        double hv = 0.0;
        for (std::size_t c = 0; c < h.dim; ++c) hv += h.at(r, c) * eigen.vectors[i][c];
        const double diff = hv - eigen.values[i] * eigen.vectors[i][r];
        residual += diff * diff;
      }
      CHECK(std::sqrt(residual) <= 1e-8 * frobenius(h));
    }
    // ascending order
    for (std::size_t i = 1; i < count; ++i) CHECK(eigen.values[i] >= eigen.values[i - 1]);
  }
}

TEST_CASE("eigensolve rejects a non-symmetric matrix") {
  fdm::Hamiltonian h;
  h.dim = 2;
  h.entries = {1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(fdm::eigensolve(h, 1), std::invalid_argument);
}

TEST_CASE("normalize") {
  SUBCASE("constant on [0,2] becomes 1/sqrt(2)") {
    schrodinger::Grid grid{0.0, 2.0, 201};
    const std::vector<double> ones(201, 1.0);
    const auto normalized = fdm::normalize(ones, grid);
    for (double v : normalized) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }

  SUBCASE("idempotent and unit integral") {
    schrodinger::Grid grid{-1.0, 3.0, 41};
    std::vector<double> psi(41);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::sin(0.3 * double(i)) + 0.2;
    const auto once = fdm::normalize(psi, grid);
    const auto twice = fdm::normalize(once, grid);
    const double h = grid.step();
    double integral = 0.5 * (once.front() * once.front() + once.back() * once.back());
    for (std::size_t i = 1; i + 1 < once.size(); ++i) integral += once[i] * once[i];
    integral *= h;
    CHECK(std::abs(integral - 1.0) <= 1e-12);
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(std::abs(once[i] - twice[i]) <= 1e-12);
  }

  SUBCASE("sign equivariance") {
    schrodinger::Grid grid{0.0, 1.0, 11};
    std::vector<double> psi(11, 0.5);
    auto pos = fdm::normalize(psi, grid);
    for (double& v : psi) v = -v;
    auto neg = fdm::normalize(psi, grid);
    for (std::size_t i = 0; i < psi.size(); ++i) CHECK(pos[i] == -neg[i]);
  }

  SUBCASE("the zero wave is rejected") {
    schrodinger::Grid grid{0.0, 1.0, 11};
    CHECK_THROWS_AS(fdm::normalize(std::vector<double>(11, 0.0), grid), std::runtime_error);
  }
}

TEST_CASE("with_boundaries pads zeros") {
  const auto padded = fdm::with_boundaries({1.0, 2.0, 3.0});
  CHECK(padded == std::vector<double>{0.0, 1.0, 2.0, 3.0, 0.0});
}
