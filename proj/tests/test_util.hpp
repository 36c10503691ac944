#pragma once

#include <cstdlib>
#include <random>

#include "fc/common.hpp"

namespace fc::test {

// FC_TEST_SEED overrides the default seed of the property generators.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen([] {
    const char* s = std::getenv("FC_TEST_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20240611ULL;
  }());
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Vec3 random_vec3(double lo, double hi) {
  return Vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace fc::test
