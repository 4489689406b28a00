#pragma once

#include <vector>

#include "hivelab/hive_gt.hpp"

namespace testutil {

inline hivelab::hive::GTPattern pattern_from_rows(
    const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  hivelab::hive::GTPattern g(n);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= k; ++j) g.at(j, k) = rows[k - 1][j - 1];
  return g;
}

}  // namespace testutil
