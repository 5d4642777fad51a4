#pragma once

#include <random>

#include "korteweg/physics.hpp"

namespace korteweg::testing {

inline State1D random_state_1d(std::mt19937_64& rng, std::size_t n, double rho_lo = 0.5, double rho_hi = 2.0,
                               double mom = 1.0) {
  std::uniform_real_distribution<double> r(rho_lo, rho_hi), m(-mom, mom);
  State1D s{Field1D(n), Field1D(n)};
  for (std::size_t i = 0; i < n; ++i) {
    s.rho[i] = r(rng);
    s.mom[i] = m(rng);
  }
  return s;
}

inline State2D random_state_2d(std::mt19937_64& rng, std::size_t n, double rho_lo = 0.5, double rho_hi = 2.0,
                               double mom = 1.0) {
  std::uniform_real_distribution<double> r(rho_lo, rho_hi), m(-mom, mom);
  State2D s{Field2D(n), Field2D(n), Field2D(n)};
  for (std::size_t k = 0; k < n * n; ++k) {
    s.rho.values()[k] = r(rng);
    s.mom_x.values()[k] = m(rng);
    s.mom_y.values()[k] = m(rng);
  }
  return s;
}

inline Field1D random_field_1d(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Field1D f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = d(rng);
  return f;
}

inline Field2D random_field_2d(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Field2D f(n);
  for (auto& v : f.values()) v = d(rng);
  return f;
}

}  // namespace korteweg::testing
