#pragma once

// Hand-rolled generators for property tests.

#include "polyharm/radial_scalar.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace polyharm::proptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int num_bound = 9, int den_bound = 5) {
    return make_rational(integer(-num_bound, num_bound), integer(1, den_bound));
  }

  Rational nonzero_rational(int num_bound = 9, int den_bound = 5) {
    Rational q;
    do q = rational(num_bound, den_bound);
    while (q == 0);
    return q;
  }

  /// Random homogeneous polynomial of the given degree with up to max_terms terms.
  MultiPoly poly(int m, int degree, int max_terms = 4) {
    std::vector<MultiPoly::Term> terms;
    const int n = integer(1, max_terms);
    for (int t = 0; t < n; ++t) {
      std::vector<int> e(static_cast<std::size_t>(m), 0);
      for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(integer(0, m - 1))];
      terms.push_back({monomial::from_exponents(e), rational()});
    }
    return MultiPoly::from_terms(m, degree, std::move(terms));
  }

  /// P / r^s with deg P in [0, 4] and s in [0, 5].
  RadialScalar field(int m) { return RadialScalar(poly(m, integer(0, 4)), integer(0, 5)); }

  /// Field of a prescribed homogeneity degree and r-exponent parity.
  RadialScalar field_of_degree(int m, int degree, int parity) {
    int s = integer(0, 3) * 2 + parity;
    while (degree + s < 0) s += 2;
    return RadialScalar(poly(m, degree + s), s);
  }

  std::vector<Rational> point(int m) {
    std::vector<Rational> x;
    bool nonzero = false;
    while (!nonzero) {
      x.clear();
      for (int i = 0; i < m; ++i) {
        x.push_back(rational(7, 4));
        nonzero = nonzero || x.back() != 0;
      }
    }
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

inline constexpr int kPropertyCases = 60;

}  // namespace polyharm::proptest
