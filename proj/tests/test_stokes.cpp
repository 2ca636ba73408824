#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "polwig/fock.hpp"
#include "polwig/stokes.hpp"

using namespace polwig;
using Catch::Approx;

TEST_CASE("product_state_means_and_variances_closed_form") {
  const Complex a{1.2, -0.5};
  const Complex b{-0.3, 0.9};
  const double n = std::norm(a) + std::norm(b);
  const StokesStats s = stokes_stats(make_coherent(a, b));
  CHECK(s.mean[0] == Approx(n).margin(1e-12));
  CHECK(s.mean[1] == Approx(std::norm(a) - std::norm(b)).margin(1e-12));
  CHECK(s.mean[2] == Approx(2.0 * (std::conj(a) * b).real()).margin(1e-12));
  CHECK(s.mean[3] == Approx(2.0 * (std::conj(a) * b).imag()).margin(1e-12));
  CHECK(s.variance[0] == Approx(n).margin(1e-12));
  CHECK(s.variance[1] == Approx(n).margin(1e-12));
  CHECK(s.variance[2] == Approx(n).margin(1e-12));
}

TEST_CASE("product_state_s0_second_moment") {
  const Complex a{0.8, 0.3};
  const Complex b{1.1, -0.6};
  const double n = std::norm(a) + std::norm(b);
  // Total photon number of a product coherent state is Poisson, so
  // <S0^2> = n + n^2.
  CHECK(stokes_s0_second_moment(make_coherent(a, b)) ==
        Approx(n + n * n).margin(1e-12));
}

TEST_CASE("exchange_symmetric_families_have_vanishing_s1_s3") {
  const CoherentSuperposition states[] = {
      make_psi1({1.1, 0.2}, {-0.8, 0.6}), make_psi2({0.9, -0.4}),
      make_psi3({1.5, 0.7})};
  for (const CoherentSuperposition& psi : states) {
    const StokesStats s = stokes_stats(psi);
    CHECK(std::abs(s.mean[1]) < 1e-13);
    CHECK(std::abs(s.mean[3]) < 1e-13);
  }
}

TEST_CASE("family_stats_match_number_basis_oracle") {
  const int n_max = 32;
  const StokesMatrices sm = stokes_matrices(n_max);
  const CoherentSuperposition states[] = {
      make_psi1({1.3, 0.0}, {0.0, 0.7}), make_psi2({0.9, 0.0}),
      make_psi3({1.7, 0.0})};
  for (const CoherentSuperposition& psi : states) {
    const StokesStats s = stokes_stats(psi);
    const FockVector v = fock_from_superposition(psi, n_max);
    const Eigen::VectorXcd u = v.amps / v.amps.norm();
    const OperatorMatrix* ops[4] = {&sm.s0, &sm.s1, &sm.s2, &sm.s3};
    for (int k = 0; k < 4; ++k) {
      const Complex mean = u.dot(*ops[k] * u);
      CHECK(s.mean[k] == Approx(mean.real()).margin(1e-8));
    }
    for (int k = 0; k < 3; ++k) {
      const double second = (*ops[k + 1] * u).squaredNorm();
      CHECK(s.second_moment[k] == Approx(second).margin(1e-8));
    }
  }
}

TEST_CASE("q_function_known_values") {
  const CoherentSuperposition vac = make_coherent(0.0, 0.0);
  CHECK(q_function(vac, 0.0, 0.0) ==
        Approx(0.079577471545947673).margin(1e-16));
  CHECK(q_function(vac, 2.1, 0.7) ==
        Approx(1.0 / (4.0 * M_PI)).margin(1e-16));

  const double n = 1.69;
  const CoherentSuperposition axis = make_coherent(std::sqrt(n), 0.0);
  CHECK(q_function(axis, 0.0, 0.0) ==
        Approx((1.0 + n) / (4.0 * M_PI)).margin(1e-14));
  CHECK(q_function(axis, M_PI, 0.0) ==
        Approx(std::exp(-n) / (4.0 * M_PI)).margin(1e-14));
}

TEST_CASE("q_function_normalizes_on_the_sphere") {
  const SphereQuadrature quad = make_sphere_quadrature(64, 64);
  const CoherentSuperposition states[] = {make_psi1({1.0, 0.0}, {-1.0, 0.0}),
                                          make_psi2({0.8, 0.5}),
                                          make_coherent({1.2, 0.3}, 0.9)};
  for (const CoherentSuperposition& psi : states) {
    double acc = 0.0;
    for (size_t i = 0; i < quad.dirs.size(); ++i)
      acc += quad.weights[i] *
             q_function(psi, quad.dirs[i].theta, quad.dirs[i].phi);
    CHECK(acc == Approx(1.0).margin(1e-8));
  }
}

TEST_CASE("sphere_quadrature_weights_sum_to_full_solid_angle") {
  const SphereQuadrature quad = make_sphere_quadrature(16, 12);
  double acc = 0.0;
  for (double w : quad.weights) acc += w;
  CHECK(acc == Approx(4.0 * M_PI).margin(1e-12));
  REQUIRE_THROWS_AS(make_sphere_quadrature(1, 8), ConfigError);
  REQUIRE_THROWS_AS(make_sphere_quadrature(8, 1), ConfigError);
}

TEST_CASE("polarization_degree_vacuum_is_zero") {
  const SphereQuadrature quad = make_sphere_quadrature(32, 16);
  CHECK(polarization_degree(make_coherent(0.0, 0.0), quad) ==
        Approx(0.0).margin(1e-12));
}

TEST_CASE("polarization_degree_matches_axis_state_analytic_form") {
  // For |alpha, 0> with n = |alpha|^2 the deviation integral evaluates to
  // D = (n - 1)/2 + (1 - e^{-2n}) / (4n).
  const SphereQuadrature quad = make_sphere_quadrature(64, 16);
  for (double n : {1.0, 4.0}) {
    const double d = 0.5 * (n - 1.0) + (1.0 - std::exp(-2.0 * n)) / (4.0 * n);
    const double expect = d / (1.0 + d);
    CHECK(polarization_degree(make_coherent(std::sqrt(n), 0.0), quad) ==
          Approx(expect).margin(1e-6));
  }
}

TEST_CASE("polarization_degree_rejects_coarse_quadrature") {
  const SphereQuadrature coarse = make_sphere_quadrature(8, 8);
  REQUIRE_THROWS_AS(
      polarization_degree(make_coherent(5.0, 0.0), coarse, 1e-6),
      QuadratureTooCoarse);
}

TEST_CASE("variance_sweep_matches_direct_evaluation") {
  const Complex beta{2.0, 0.0};
  const std::vector<double> grid{0.0, 1.0, 4.0};
  const auto rows = variance_sweep(StateFamily::psi1, beta, grid);
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].alpha_sq == grid[i]);
    const StokesStats s = stokes_stats(make_psi1(std::sqrt(grid[i]), beta));
    CHECK(rows[i].v1 == Approx(s.variance[0]).margin(1e-13));
    CHECK(rows[i].v2 == Approx(s.variance[1]).margin(1e-13));
    CHECK(rows[i].v3 == Approx(s.variance[2]).margin(1e-13));
  }
  REQUIRE_THROWS_AS(variance_sweep(StateFamily::psi1, beta, {-1.0}),
                    ConfigError);
}

TEST_CASE("polarization_sweep_matches_direct_evaluation") {
  const SphereQuadrature quad = make_sphere_quadrature(48, 16);
  const std::vector<double> grid{0.0, 1.0};
  const auto rows = polarization_sweep(grid, quad);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].p_horizontal_vertical == Approx(0.0).margin(1e-12));
  CHECK(rows[0].p_diagonal == Approx(0.0).margin(1e-12));
  CHECK(rows[1].p_horizontal_vertical ==
        Approx(polarization_degree(make_coherent(1.0, 0.0), quad))
            .margin(1e-12));
  CHECK(rows[1].p_diagonal ==
        Approx(polarization_degree(make_coherent(1.0, 1.0), quad))
            .margin(1e-12));
  REQUIRE_THROWS_AS(polarization_sweep({-0.5}, quad), ConfigError);
}
