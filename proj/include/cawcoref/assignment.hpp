#pragma once

// Maximum-weight one-to-one assignment on a rectangular matrix
// (Kuhn-Munkres with potentials, O(n^3)). Missing rows/columns are padded
// with zero weight.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace cawcoref {

struct Assignment {
  double value = 0.0;
  // row -> column, absent when the row was matched to padding
  std::vector<std::optional<std::size_t>> row_to_col;
};

inline Assignment max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  const std::size_t rows = weight.size();
  const std::size_t cols = rows ? weight.front().size() : 0;
  const std::size_t n = std::max(rows, cols);
  Assignment out;
  out.row_to_col.assign(rows, std::nullopt);
  if (n == 0) return out;

  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? -weight[i][j] : 0.0;
  };

  // 1-based potentials; p[j] is the row assigned to column j.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j] - 1;
    if (i < rows && j - 1 < cols) {
      out.row_to_col[i] = j - 1;
      out.value += weight[i][j - 1];
    }
  }
  return out;
}

}  // namespace cawcoref
