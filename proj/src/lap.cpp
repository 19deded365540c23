#include "sgm/lap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "sgm/errors.hpp"

namespace sgm {

using Eigen::Index;

Permutation::Permutation(std::vector<Index> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (Index v : image_) {
    if (v < 0 || v >= size() || hit[v]) {
      throw std::invalid_argument("permutation image is not a bijection");
    }
    hit[v] = true;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> image(n);
  std::iota(image.begin(), image.end(), Index{0});
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(image_.size());
  for (Index i = 0; i < size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Eigen::MatrixXd Permutation::to_matrix() const {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size(), size());
  for (Index i = 0; i < size(); ++i) q(i, image_[i]) = 1.0;
  return q;
}

double assignment_value(const Eigen::MatrixXd& profit, const Permutation& perm) {
  double value = 0.0;
  for (Index i = 0; i < perm.size(); ++i) value += profit(i, perm(i));
  return value;
}

namespace {

void check_square(const Eigen::MatrixXd& profit) {
  if (profit.rows() != profit.cols() || profit.rows() == 0) {
    throw std::invalid_argument(
        fmt::format("assignment needs a nonempty square matrix, got {}x{}", profit.rows(),
                    profit.cols()));
  }
}

}  // namespace

Assignment solve_lap_max(const Eigen::MatrixXd& profit) {
  check_square(profit);
  if (!profit.allFinite()) throw InputError("assignment profit matrix has non-finite entries");

  const Index n = profit.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Minimize cost = -profit. Rows are inserted one at a time; each insertion
  // grows a shortest-path tree over columns (Dijkstra on reduced costs) until
  // it reaches a free column, then flips the path. Index 0 is a sentinel
  // column so that arrays are 1-based.
  std::vector<double> row_pot(n + 1, 0.0);
  std::vector<double> col_pot(n + 1, 0.0);
  std::vector<Index> col_owner(n + 1, 0);  // row assigned to column j, 0 = free
  std::vector<Index> prev_col(n + 1, 0);
  std::vector<double> min_slack(n + 1);
  std::vector<char> used(n + 1);
  // Row-major costs, the inner loop scans one row at a time.
  std::vector<double> cost(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) cost[i * n + j] = -profit(i, j);
  }

  for (Index row = 1; row <= n; ++row) {
    col_owner[0] = row;
    Index col = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col] = 1;
      const Index r = col_owner[col];
      const double* row_cost = cost.data() + (r - 1) * n - 1;
      double delta = kInf;
      Index next = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = row_cost[j] - row_pot[r] - col_pot[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          prev_col[j] = col;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          row_pot[col_owner[j]] += delta;
          col_pot[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      col = next;
    } while (col_owner[col] != 0);
    do {
      const Index back = prev_col[col];
      col_owner[col] = col_owner[back];
      col = back;
    } while (col != 0);
  }

  std::vector<Index> image(n);
  for (Index j = 1; j <= n; ++j) image[col_owner[j] - 1] = j - 1;
  Permutation perm(std::move(image));
  const double value = assignment_value(profit, perm);
  return {std::move(perm), value};
}

Assignment brute_force_lap(const Eigen::MatrixXd& profit) {
  check_square(profit);
  const Index n = profit.rows();
  if (n > 9) throw std::invalid_argument(fmt::format("brute force limited to n <= 9, got {}", n));

  std::vector<Index> image(n);
  std::iota(image.begin(), image.end(), Index{0});
  std::vector<Index> best = image;
  double best_value = -std::numeric_limits<double>::infinity();
  do {
    double value = 0.0;
    for (Index i = 0; i < n; ++i) value += profit(i, image[i]);
    if (value > best_value) {
      best_value = value;
      best = image;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  Permutation perm(std::move(best));
  return {std::move(perm), best_value};
}

}  // namespace sgm
