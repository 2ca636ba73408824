#ifndef POLWIG_RNG_HPP
#define POLWIG_RNG_HPP

#include <cstdint>
#include <random>

#include "polwig/states.hpp"

namespace polwig {

// Seeded draws for randomized checks. Same seed, same platform, same build
// => same sequence, which is what the reproducible-report requirement needs.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng);
  }

  // Uniform over the disk of radius max_abs.
  Complex amp(double max_abs) {
    const double r = max_abs * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * M_PI));
  }

  // Random normalized superposition with the given branch count.
  CoherentSuperposition superposition(int branches, double max_abs) {
    CoherentSuperposition s;
    for (int b = 0; b < branches; ++b)
      s.terms.push_back({Complex{uniform(-1.0, 1.0), uniform(-1.0, 1.0)},
                         amp(max_abs), amp(max_abs)});
    return normalize(s);
  }
};

} // namespace polwig

#endif
