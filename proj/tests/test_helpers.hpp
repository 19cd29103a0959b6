#pragma once

#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "tdi/exact.hpp"

namespace tdi::testing {

/// Seed for the randomized property suites; override with TDI_TEST_SEED.
inline unsigned long test_seed() {
  if (const char* s = std::getenv("TDI_TEST_SEED")) return std::strtoul(s, nullptr, 10);
  return 0;
}

inline IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

inline RatVec rvec(const std::vector<long>& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

inline IntVec ivec(const std::vector<long>& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

}  // namespace tdi::testing
