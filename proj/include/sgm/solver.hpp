#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/lap.hpp"

namespace sgm {

// Slack allowed on the doubly stochastic constraints of a Frank-Wolfe iterate.
inline constexpr double kDoublyStochasticTol = 1e-8;

// Largest violation among |row sum - 1|, |column sum - 1| and negative entries.
double feasibility_error(const Matrix& p);
bool is_doubly_stochastic(const Matrix& p, double tol = kDoublyStochasticTol);

// (1/n) * ones * ones^T
Matrix barycenter(Index n);

struct SolverConfig {
  int max_iters = 30;
  // Stop once (f_new - f_old) <= tol_obj * max(1, |f_old|).
  double tol_obj = 1e-9;
  // Reserved; no gradient-based stopping rule is applied.
  double tol_grad = 0.0;
  // Unset: start at the barycenter. Set: start halfway between the barycenter
  // and a random permutation matrix drawn from this seed.
  std::optional<std::uint64_t> rng_seed;

  // Throws InputError.
  void validate() const;
};

// Relaxed seeded objective
//   f(P) = tr A11'B11 + tr P'A21B21' + tr P'A12'B12 + tr A22'P B22 P'
// for an n x n matrix P acting on the nonseeds.
double objective(const SeededInstance& inst, const Matrix& p);

// grad f(P) = A21B21' + A12'B12 + A22 P B22' + A22' P B22
Matrix gradient(const SeededInstance& inst, const Matrix& p);

// Along the segment alpha*P + (1-alpha)*Q the objective, less the constant
// tr A11'B11, is
//   g(alpha) = c a^2 + d a(1-a) + e (1-a)^2 + u a + v (1-a).
struct LineSearchCoefficients {
  double c = 0.0;  // tr A22'P B22 P'
  double d = 0.0;  // tr(A22'P B22 Q' + A22'Q B22 P')
  double e = 0.0;  // tr A22'Q B22 Q'
  double u = 0.0;  // tr(P'A21B21' + P'A12'B12)
  double v = 0.0;  // tr(Q'A21B21' + Q'A12'B12)

  double quadratic() const { return c - d + e; }
  double linear() const { return d - 2.0 * e + u - v; }
  double constant() const { return e + v; }
  double operator()(double alpha) const {
    return c * alpha * alpha + d * alpha * (1.0 - alpha) + e * (1.0 - alpha) * (1.0 - alpha) +
           u * alpha + v * (1.0 - alpha);
  }
};

struct LineSearchResult {
  double alpha = 1.0;  // weight on the current iterate P
  LineSearchCoefficients coeffs;
};

// Maximizes g over {0, 1} plus the interior critical point when g is a proper
// quadratic and the point lies in [0, 1]. Near-ties go to the larger alpha.
LineSearchResult line_search(const SeededInstance& inst, const Matrix& p, const Permutation& q);

struct IterationRecord {
  double objective = 0.0;  // f at the iterate produced by this step
  double alpha = 1.0;
  double lap_value = 0.0;  // tr Q' grad f(P)
  double feasibility = 0.0;  // feasibility_error of the produced iterate
};

struct FrankWolfeResult {
  Matrix p;
  double initial_objective = 0.0;
  std::vector<IterationRecord> log;
  bool converged = false;

  int iterations() const { return static_cast<int>(log.size()); }
};

FrankWolfeResult frank_wolfe_solve(const SeededInstance& inst, const SolverConfig& cfg);

// l1-nearest permutation matrix, i.e. the assignment maximizing tr Q'P.
Permutation project_to_permutation(const Matrix& p);

struct MatchedPair {
  std::string label1;
  std::string label2;
  bool seed = false;
};

struct MatchResult {
  // One entry per vertex of G1, in G1's label order.
  std::vector<MatchedPair> mapping;
  // On the nonseeds, internal indices: nonseed i of A -> nonseed permutation(i) of B.
  Permutation permutation;
  double objective_relaxed = 0.0;
  long long disagreements = 0;
  int iterations = 0;
  bool converged = false;
  double initial_objective = 0.0;
  std::vector<IterationRecord> log;

  // Label in G2 matched to label1; throws std::out_of_range if absent.
  const std::string& image_of(const std::string& label1) const;
};

// Number of ordered pairs (u, v), u == v included, where exactly one of
// g1(u, v) and g2(phi(u), phi(v)) is an edge (nonzero). phi[i] indexes g2.
long long count_disagreements(const Graph& g1, const Graph& g2, const std::vector<Index>& phi);

MatchResult match(const Graph& g1, const Graph& g2, const SeedSpec& seeds,
                  const SolverConfig& cfg = {});

}  // namespace sgm
