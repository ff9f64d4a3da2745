#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace dlab::matching::detail {

// Potential-based shortest-augmenting-path assignment (minimization) over an
// exact totally ordered type; instantiated with Rat and with long long.
// Infeasible slack entries are tracked with flags instead of a sentinel.
template <typename T>
std::pair<T, std::vector<int>> assignment_min(const std::vector<std::vector<T>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<int> row_of(static_cast<size_t>(n) + 1, 0);  // column -> row, 0 = free
  std::vector<int> parent(static_cast<size_t>(n) + 1, 0);
  std::vector<T> row_pot(static_cast<size_t>(n) + 1, T(0));
  std::vector<T> col_pot(static_cast<size_t>(n) + 1, T(0));
  for (int r = 1; r <= n; ++r) {
    row_of[0] = r;
    int j0 = 0;
    std::vector<T> slack(static_cast<size_t>(n) + 1, T(0));
    std::vector<char> slack_set(static_cast<size_t>(n) + 1, 0);
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int r0 = row_of[static_cast<size_t>(j0)];
      int j1 = -1;
      T delta{};
      bool delta_set = false;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        T cur = cost[static_cast<size_t>(r0 - 1)][static_cast<size_t>(j - 1)] -
                row_pot[static_cast<size_t>(r0)] - col_pot[static_cast<size_t>(j)];
        if (!slack_set[static_cast<size_t>(j)] || cur < slack[static_cast<size_t>(j)]) {
          slack[static_cast<size_t>(j)] = cur;
          slack_set[static_cast<size_t>(j)] = 1;
          parent[static_cast<size_t>(j)] = j0;
        }
        if (!delta_set || slack[static_cast<size_t>(j)] < delta) {
          delta = slack[static_cast<size_t>(j)];
          j1 = j;
          delta_set = true;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          row_pot[static_cast<size_t>(row_of[static_cast<size_t>(j)])] += delta;
          col_pot[static_cast<size_t>(j)] -= delta;
        } else if (slack_set[static_cast<size_t>(j)]) {
          slack[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = parent[static_cast<size_t>(j0)];
      row_of[static_cast<size_t>(j0)] = row_of[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of(static_cast<size_t>(n), -1);
  T total(0);
  for (int j = 1; j <= n; ++j) {
    const int r = row_of[static_cast<size_t>(j)];
    col_of[static_cast<size_t>(r - 1)] = j - 1;
    total += cost[static_cast<size_t>(r - 1)][static_cast<size_t>(j - 1)];
  }
  return {std::move(total), std::move(col_of)};
}

// Maximum-total-weight assignment; weights may be any comparable values.
template <typename T>
std::pair<T, std::vector<int>> assignment_max(const std::vector<std::vector<T>>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) return {T(0), {}};
  T top = weights[0][0];
  for (const auto& row : weights) {
    for (const T& w : row) {
      if (top < w) top = w;
    }
  }
  std::vector<std::vector<T>> cost(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    cost[i].reserve(weights[i].size());
    for (const T& w : weights[i]) cost[i].push_back(top - w);
  }
  auto [min_cost, col_of] = assignment_min(cost);
  T value = T(0);
  for (int i = 0; i < n; ++i) value += top;
  value -= min_cost;
  return {std::move(value), std::move(col_of)};
}

// Maximum assignment value restricted to the given rows and columns
// (index lists into the full matrix). Rows and columns must have equal size.
template <typename T>
T assignment_max_value(const std::vector<std::vector<T>>& weights,
                       const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) {
    throw std::invalid_argument("assignment: row/column subset size mismatch");
  }
  if (rows.empty()) return T(0);
  std::vector<std::vector<T>> sub(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    sub[i].reserve(cols.size());
    for (int j : cols) {
      sub[i].push_back(weights[static_cast<size_t>(rows[i])][static_cast<size_t>(j)]);
    }
  }
  return assignment_max(sub).first;
}

// Maximum-weight assignment with a canonical answer: among all optimal
// assignments, returns the lexicographically smallest row -> column map.
// Fixes one row at a time, keeping the first column that preserves the
// optimal total of the remaining subproblem.
template <typename T>
std::pair<T, std::vector<int>> assignment_max_lex(const std::vector<std::vector<T>>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> cols(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)] = j;
  std::vector<int> rows_below;
  std::vector<int> col_of(static_cast<size_t>(n), -1);

  std::vector<int> all_rows(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all_rows[static_cast<size_t>(i)] = i;
  T remaining = assignment_max_value(weights, all_rows, cols);
  const T total = remaining;

  for (int r = 0; r < n; ++r) {
    rows_below.clear();
    for (int i = r + 1; i < n; ++i) rows_below.push_back(i);
    bool fixed = false;
    for (size_t ci = 0; ci < cols.size(); ++ci) {
      const int j = cols[ci];
      std::vector<int> rest_cols = cols;
      rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(ci));
      T sub = assignment_max_value(weights, rows_below, rest_cols);
      if (weights[static_cast<size_t>(r)][static_cast<size_t>(j)] + sub == remaining) {
        col_of[static_cast<size_t>(r)] = j;
        cols = std::move(rest_cols);
        remaining = std::move(sub);
        fixed = true;
        break;
      }
    }
    if (!fixed) throw std::logic_error("assignment: no column preserves the optimum");
  }
  return {total, std::move(col_of)};
}

}  // namespace dlab::matching::detail
