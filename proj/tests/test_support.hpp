#pragma once

// Independent reference computations used as oracles by the unit and
// acceptance suites. None of these call into the solver's partitioned code
// paths.

#include <cstdint>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/lap.hpp"
#include "sgm/rng.hpp"
#include "sgm/simulation.hpp"
#include "sgm/solver.hpp"

namespace sgm::testing {

// Entries uniform on [lo, hi).
Matrix random_matrix(Index rows, Index cols, double lo, double hi, Rng& rng);
// Integer entries uniform on {lo, ..., hi}.
Matrix random_int_matrix(Index n, int lo, int hi, Rng& rng);
// Random 0/1 symmetric hollow matrix with edge probability p.
Matrix random_simple_adjacency(Index n, double p, Rng& rng);
Permutation random_permutation(Index n, Rng& rng);

// Instance with generic real (asymmetric, loopy) matrices.
SeededInstance random_instance(Index m, Index n, Rng& rng);
SeededInstance make_instance(Matrix a, Matrix b, Index m);

// Sinkhorn alternate scaling of a random positive matrix, run until the
// feasibility error is below 1e-14.
Matrix random_doubly_stochastic(Index n, Rng& rng);

// tr A'(I ⊕ P) B (I ⊕ P') from full (m+n)-dimensional products.
double full_objective(const SeededInstance& inst, const Matrix& p);

// Central differences of full_objective with step h.
Matrix finite_difference_gradient(const SeededInstance& inst, const Matrix& p, double h = 1e-6);

// min over all n! permutation matrices Q of the entrywise l1 norm |Q - P|.
struct L1Projection {
  std::vector<Index> image;
  double distance;
};
L1Projection brute_force_l1_projection(const Matrix& p);
double l1_distance(const Permutation& q, const Matrix& p);

// d(phi) straight from the definition, over labels: phi maps a G1 label to a
// G2 label.
long long recount_disagreements(const Graph& g1, const Graph& g2, const MatchResult& result);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};
Summary summarize(const std::vector<double>& values);

// Counts consecutive pairs where `later` fails to exceed (strict) or reach
// (non-strict) `earlier`; each such inversion must also fall inside `slack`
// combined standard errors for the trend to be accepted.
struct TrendCheck {
  int inversions = 0;
  bool inversions_within_noise = true;
};
TrendCheck check_increasing(const std::vector<Summary>& points, bool strict, double slack_se);
TrendCheck check_nonincreasing(const std::vector<Summary>& points, double slack_se);

}  // namespace sgm::testing
