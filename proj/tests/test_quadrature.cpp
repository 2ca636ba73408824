#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polwig/quadrature.hpp"
#include "polwig/reduction.hpp"

using namespace polwig;
using Catch::Approx;

TEST_CASE("gauss_legendre_integrates_polynomials_exactly") {
  const Quad1D q = gauss_legendre(8);
  REQUIRE(q.nodes.size() == 8);
  for (int k = 0; k <= 15; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i)
      acc += q.weights[i] * std::pow(q.nodes[i], k);
    const double expect = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(acc == Approx(expect).margin(1e-14));
  }
}

TEST_CASE("gauss_legendre_weights_sum_to_interval_length") {
  for (int n : {1, 2, 5, 17, 64}) {
    const Quad1D q = gauss_legendre(n);
    double acc = 0.0;
    for (double w : q.weights) acc += w;
    CHECK(acc == Approx(2.0).margin(1e-13));
  }
}

TEST_CASE("gauss_legendre_on_interval_integrates_gaussian") {
  const Quad1D q = gauss_legendre(64, -6.0, 6.0);
  double acc = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i)
    acc += q.weights[i] * std::exp(-q.nodes[i] * q.nodes[i]);
  CHECK(acc == Approx(std::sqrt(M_PI) * std::erf(6.0)).margin(1e-12));
}

TEST_CASE("gauss_legendre_rejects_nonpositive_order") {
  REQUIRE_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("periodic_uniform_integrates_trig_exactly") {
  const Quad1D q = periodic_uniform(16, 2.0 * M_PI);
  double cos_sq = 0.0, cos3 = 0.0, total = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double c = std::cos(q.nodes[i]);
    cos_sq += q.weights[i] * c * c;
    cos3 += q.weights[i] * std::cos(3.0 * q.nodes[i]);
    total += q.weights[i];
  }
  CHECK(total == Approx(2.0 * M_PI).margin(1e-13));
  CHECK(cos_sq == Approx(M_PI).margin(1e-13));
  CHECK(cos3 == Approx(0.0).margin(1e-13));
}

TEST_CASE("pairwise_sum_matches_high_precision_reference") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> xs(1000);
  long double ref = 0.0L;
  for (double& x : xs) {
    x = dist(gen);
    ref += static_cast<long double>(x);
  }
  const double got = pairwise_sum(xs);
  CHECK(got == Approx(static_cast<double>(ref)).margin(1e-12));
}

TEST_CASE("pairwise_sum_edge_sizes") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.25}) == 3.25);
  std::vector<double> xs(17, 1.0);
  CHECK(pairwise_sum(xs) == 17.0);
}

TEST_CASE("deterministic_parallel_sum_is_thread_count_invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> xs(4097);
  for (double& x : xs) x = dist(gen);
  const auto term = [&](int i) { return xs[static_cast<size_t>(i)]; };
  const int n = static_cast<int>(xs.size());
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = deterministic_parallel_sum(n, term);
  omp_set_num_threads(4);
  const double four = deterministic_parallel_sum(n, term);
  omp_set_num_threads(saved);
  CHECK(one == four);
  CHECK(one == pairwise_sum(xs));
#else
  CHECK(deterministic_parallel_sum(n, term) == pairwise_sum(xs));
#endif
}

TEST_CASE("parallel_for_index_visits_every_index_once") {
  std::vector<int> hits(101, 0);
  parallel_for_index(static_cast<int>(hits.size()),
                     [&](int i) { hits[static_cast<size_t>(i)] += 1; });
  for (int h : hits) CHECK(h == 1);
}
