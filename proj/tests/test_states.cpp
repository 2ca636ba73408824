#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "polwig/states.hpp"

using namespace polwig;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("coherent_overlap_magnitude_and_symmetry") {
  const Complex a{0.8, -0.3};
  const Complex g{-0.4, 0.6};
  CHECK(std::norm(overlap(a, g)) ==
        Approx(std::exp(-std::norm(a - g))).margin(1e-15));
  CHECK(std::abs(overlap(a, a) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(overlap(a, g) - std::conj(overlap(g, a))) < 1e-15);
  CHECK(std::norm(overlap(Complex{0.0, 0.0}, a)) ==
        Approx(std::exp(-std::norm(a))).margin(1e-15));
}

TEST_CASE("ipow_matches_repeated_multiplication") {
  const Complex z{0.7, -1.1};
  Complex ref{1.0, 0.0};
  for (unsigned k = 0; k <= 8; ++k) {
    CHECK(std::abs(ipow(z, k) - ref) < 1e-13 * std::abs(ref));
    ref *= z;
  }
  CHECK(ipow(Complex{0.0, 0.0}, 0) == Complex{1.0, 0.0});
}

TEST_CASE("family_states_have_unit_norm") {
  const CoherentSuperposition s1 = make_psi1({1.1, 0.2}, {-0.8, 0.0});
  const CoherentSuperposition s2 = make_psi2({0.9, -0.4});
  const CoherentSuperposition s3 = make_psi3({1.7, 0.3});
  CHECK(norm_squared(s1) == Approx(1.0).margin(1e-13));
  CHECK(norm_squared(s2) == Approx(1.0).margin(1e-13));
  CHECK(norm_squared(s3) == Approx(1.0).margin(1e-13));
  CHECK(s1.normalized);
  CHECK(s2.normalized);
  CHECK(s3.normalized);
}

TEST_CASE("psi1_coefficient_matches_closed_normalization") {
  // Real alpha, beta: branch overlap exp(2 a b - a^2 - b^2), so the
  // coefficient is 1/sqrt(2 (1 + exp(2ab - a^2 - b^2))).
  const double a = 2.0, b = -2.0;
  const CoherentSuperposition s = make_psi1(a, b);
  const double expect = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-16.0)));
  CHECK(std::abs(s.terms[0].coeff) == Approx(expect).margin(1e-15));
  CHECK(std::abs(s.terms[1].coeff) == Approx(expect).margin(1e-15));
}

TEST_CASE("psi2_coefficient_matches_closed_normalization") {
  const CoherentSuperposition s = make_psi2(1.0);
  const double expect = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-4.0)));
  CHECK(std::abs(s.terms[0].coeff) == Approx(expect).margin(1e-15));
}

TEST_CASE("psi3_coefficient_matches_closed_normalization") {
  const CoherentSuperposition s = make_psi3(2.0);
  const double expect = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-4.0)));
  CHECK(std::abs(s.terms[0].coeff) == Approx(expect).margin(1e-15));
  CHECK(std::abs(s.terms[0].coeff) == Approx(0.70071846).margin(1e-8));
}

TEST_CASE("normalize_rejects_zero_norm_state") {
  CoherentSuperposition s;
  s.terms = {{{1.0, 0.0}, {0.7, 0.1}, {-0.2, 0.0}},
             {{-1.0, 0.0}, {0.7, 0.1}, {-0.2, 0.0}}};
  REQUIRE_THROWS_AS(normalize(s), ZeroNormState);
}

TEST_CASE("moment_evaluation_requires_normalized_input") {
  CoherentSuperposition s;
  s.terms = {{{2.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}};
  REQUIRE_THROWS_WITH(expect_normal_ordered(s, 1, 1, 0, 0),
                      ContainsSubstring("not normalized"));
}

TEST_CASE("normal_ordered_moments_on_product_state") {
  const Complex a{0.9, 0.4};
  const Complex b{-0.6, 0.7};
  const CoherentSuperposition s = make_coherent(a, b);
  // <a_H^dag^m a_H^n a_V^dag^p a_V^q> = conj(a)^m a^n conj(b)^p b^q.
  CHECK(std::abs(expect_normal_ordered(s, 1, 1, 0, 0) - Complex(std::norm(a))) <
        1e-14);
  CHECK(std::abs(expect_normal_ordered(s, 0, 0, 1, 1) - Complex(std::norm(b))) <
        1e-14);
  const Complex ref =
      ipow(std::conj(a), 2) * a * std::conj(b) * ipow(b, 2);
  CHECK(std::abs(expect_normal_ordered(s, 2, 1, 1, 2) - ref) < 1e-14);
}

TEST_CASE("normal_ordered_moment_on_psi3_matches_analytic") {
  // psi3 = N(|a,0> + |0,a>): <n_H> = N^2 |a|^2 since the cross terms carry a
  // factor of the vacuum amplitude and vanish.
  const double a = 1.3;
  const CoherentSuperposition s = make_psi3(a);
  const double expect = a * a / (2.0 * (1.0 + std::exp(-a * a)));
  CHECK(expect_normal_ordered(s, 1, 1, 0, 0).real() ==
        Approx(expect).margin(1e-14));
  CHECK(expect_normal_ordered(s, 1, 1, 0, 0).imag() ==
        Approx(0.0).margin(1e-15));
}

TEST_CASE("inner_product_weights_coefficients_and_overlaps") {
  CoherentSuperposition bra;
  bra.terms = {{{0.5, 0.25}, {0.3, 0.0}, {0.0, 0.1}}};
  CoherentSuperposition ket;
  ket.terms = {{{-0.75, 0.5}, {0.1, -0.2}, {0.4, 0.0}}};
  const Complex expect = std::conj(Complex{0.5, 0.25}) *
                         Complex{-0.75, 0.5} *
                         overlap({0.1, -0.2}, {0.3, 0.0}) *
                         overlap({0.4, 0.0}, {0.0, 0.1});
  CHECK(std::abs(inner_product(bra, ket) - expect) < 1e-15);
}

TEST_CASE("max_branch_amp_takes_largest_mode_amplitude") {
  const CoherentSuperposition s = make_psi1({1.0, 0.0}, {0.0, -2.5});
  CHECK(max_branch_amp(s) == Approx(2.5).margin(1e-15));
  CHECK(max_branch_amp(make_coherent(0.0, 0.0)) == 0.0);
}
