#pragma once

#include <vector>

#include <Eigen/Dense>

namespace sgm {

// Bijection on {0, ..., n-1}; image()[i] is where i is sent. As a 0/1 matrix,
// entry (i, image[i]) is one.
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless image is a bijection.
  explicit Permutation(std::vector<Eigen::Index> image);

  static Permutation identity(Eigen::Index n);

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(image_.size()); }
  Eigen::Index operator()(Eigen::Index i) const { return image_[i]; }
  const std::vector<Eigen::Index>& image() const noexcept { return image_; }

  Permutation inverse() const;
  Eigen::MatrixXd to_matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Eigen::Index> image_;
};

struct Assignment {
  Permutation permutation;
  // sum_i C(i, permutation(i))
  double value = 0.0;
};

// Exact maximum-profit assignment by the shortest augmenting path form of the
// Hungarian method, O(n^3). Deterministic for a given input. Throws
// InputError on non-finite entries, std::invalid_argument on a non-square or
// empty matrix.
Assignment solve_lap_max(const Eigen::MatrixXd& profit);

// Exhaustive search over all n! permutations in lexicographic order, keeping
// the first maximum. Test oracle; throws std::invalid_argument when n > 9.
Assignment brute_force_lap(const Eigen::MatrixXd& profit);

// sum_i C(i, perm(i))
double assignment_value(const Eigen::MatrixXd& profit, const Permutation& perm);

}  // namespace sgm
