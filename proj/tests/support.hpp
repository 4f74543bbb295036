#pragma once

#include <doctest.h>

#include <cmath>
#include <random>

#include "macrolens/error.hpp"

namespace testing {

// Fixed seed so property tests replay identically.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20131104);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

template <class Fn>
macrolens::ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const macrolens::Error& e) {
    return e.kind();
  }
  FAIL("expected a macrolens::Error");
  return macrolens::ErrorKind::InvalidArgument;
}

}  // namespace testing

#define CHECK_ERROR_KIND(expr, kind) CHECK(testing::error_kind_of([&] { (void)(expr); }) == (kind))
