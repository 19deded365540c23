#include "sgm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "sgm/errors.hpp"
#include "sgm/rng.hpp"

namespace sgm {

double feasibility_error(const Matrix& p) {
  if (p.size() == 0) return 0.0;
  const double rows = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (p.colwise().sum().array() - 1.0).abs().maxCoeff();
  const double negative = std::max(0.0, -p.minCoeff());
  return std::max({rows, cols, negative});
}

bool is_doubly_stochastic(const Matrix& p, double tol) {
  return p.rows() == p.cols() && feasibility_error(p) <= tol;
}

Matrix barycenter(Index n) {
  return Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

void SolverConfig::validate() const {
  if (max_iters < 1) throw InputError(fmt::format("max iterations must be >= 1, got {}", max_iters));
  if (!(tol_obj >= 0.0)) throw InputError(fmt::format("tolerance must be >= 0, got {}", tol_obj));
}

namespace {

void check_dims(const SeededInstance& inst, const Matrix& p) {
  if (p.rows() != inst.n || p.cols() != inst.n) {
    throw std::invalid_argument(fmt::format("expected a {0}x{0} matrix on the nonseeds, got {1}x{2}",
                                            inst.n, p.rows(), p.cols()));
  }
}

// Sum of X(i, perm(i)), i.e. tr Q'X for the permutation matrix Q.
double permuted_trace(const Matrix& x, const Permutation& perm) {
  return assignment_value(x, perm);
}

// A21 B21' + A12' B12; the part of the gradient that does not depend on P.
Matrix seed_term(const SeededInstance& inst) {
  if (inst.m == 0) return Matrix::Zero(inst.n, inst.n);
  Matrix term = inst.a21() * inst.b21().transpose();
  term.noalias() += inst.a12().transpose() * inst.b12();
  return term;
}

struct QuadraticProducts {
  Matrix forward;   // A22 P B22'
  Matrix backward;  // A22' P B22
};

QuadraticProducts quadratic_products(const SeededInstance& inst, const Matrix& p) {
  const auto a22 = inst.a22();
  const auto b22 = inst.b22();
  QuadraticProducts out;
  Matrix tmp = a22 * p;
  out.forward.noalias() = tmp * b22.transpose();
  tmp.noalias() = a22.transpose() * p;
  out.backward.noalias() = tmp * b22;
  return out;
}

LineSearchCoefficients coefficients(const SeededInstance& inst, const Matrix& seed,
                                    const QuadraticProducts& prod, const Matrix& p,
                                    const Permutation& q) {
  const auto a22 = inst.a22();
  const auto b22 = inst.b22();
  LineSearchCoefficients k;
  k.c = prod.backward.cwiseProduct(p).sum();
  // tr A22'P B22 Q' = <A22'P B22, Q>;  tr A22'Q B22 P' = <A22 P B22', Q>
  k.d = permuted_trace(prod.backward, q) + permuted_trace(prod.forward, q);
  double e = 0.0;
  for (Index j = 0; j < inst.n; ++j) {
    const Index qj = q(j);
    for (Index i = 0; i < inst.n; ++i) e += a22(i, j) * b22(q(i), qj);
  }
  k.e = e;
  k.u = seed.cwiseProduct(p).sum();
  k.v = permuted_trace(seed, q);
  return k;
}

LineSearchResult choose_step(const LineSearchCoefficients& k) {
  LineSearchResult best{1.0, k};
  double best_value = k(1.0);
  const double scale = std::max({1.0, std::abs(k(1.0)), std::abs(k(0.0))});
  const double tie = 1e-12 * scale;

  auto consider = [&](double alpha) {
    const double value = k(alpha);
    if (value > best_value + tie) {
      best.alpha = alpha;
      best_value = value;
    }
  };
  const double quad = k.quadratic();
  if (quad != 0.0) {
    const double critical = -k.linear() / (2.0 * quad);
    if (critical >= 0.0 && critical <= 1.0) consider(critical);
  }
  consider(0.0);
  return best;
}

}  // namespace

double objective(const SeededInstance& inst, const Matrix& p) {
  check_dims(inst, p);
  double value = inst.a11().cwiseProduct(inst.b11()).sum();
  if (inst.m > 0) {
    value += p.cwiseProduct(inst.a21() * inst.b21().transpose()).sum();
    value += p.cwiseProduct(inst.a12().transpose() * inst.b12()).sum();
  }
  Matrix pb = p * inst.b22();
  Matrix pbp = pb * p.transpose();
  value += inst.a22().cwiseProduct(pbp).sum();
  return value;
}

Matrix gradient(const SeededInstance& inst, const Matrix& p) {
  check_dims(inst, p);
  auto prod = quadratic_products(inst, p);
  Matrix grad = seed_term(inst);
  grad += prod.forward;
  grad += prod.backward;
  return grad;
}

LineSearchResult line_search(const SeededInstance& inst, const Matrix& p, const Permutation& q) {
  check_dims(inst, p);
  if (q.size() != inst.n) {
    throw std::invalid_argument(
        fmt::format("permutation has size {}, expected {}", q.size(), inst.n));
  }
  return choose_step(coefficients(inst, seed_term(inst), quadratic_products(inst, p), p, q));
}

FrankWolfeResult frank_wolfe_solve(const SeededInstance& inst, const SolverConfig& cfg) {
  cfg.validate();
  const Index n = inst.n;
  FrankWolfeResult result;

  if (n == 1) {
    result.p = Matrix::Ones(1, 1);
    result.initial_objective = objective(inst, result.p);
    result.converged = true;
    return result;
  }

  Matrix p = barycenter(n);
  if (cfg.rng_seed) {
    Rng rng(*cfg.rng_seed);
    std::vector<Index> image(n);
    std::iota(image.begin(), image.end(), Index{0});
    rng.shuffle(image);
    p = 0.5 * p + 0.5 * Permutation(std::move(image)).to_matrix();
  }

  const Matrix seed = seed_term(inst);
  const double constant = inst.a11().cwiseProduct(inst.b11()).sum();
  double current = objective(inst, p);
  result.initial_objective = current;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const auto prod = quadratic_products(inst, p);
    Matrix grad = seed + prod.forward + prod.backward;
    const Assignment target = solve_lap_max(grad);
    const auto step =
        choose_step(coefficients(inst, seed, prod, p, target.permutation));

    if (step.alpha == 1.0) {
      result.log.push_back({current, 1.0, target.value, feasibility_error(p)});
      result.converged = true;
      break;
    }

    p *= step.alpha;
    for (Index i = 0; i < n; ++i) p(i, target.permutation(i)) += 1.0 - step.alpha;

    const double next = step.coeffs(step.alpha) + constant;
    result.log.push_back({next, step.alpha, target.value, feasibility_error(p)});
    const double previous = std::exchange(current, next);
    if (current - previous <= cfg.tol_obj * std::max(1.0, std::abs(previous))) {
      result.converged = true;
      break;
    }
  }

  result.p = std::move(p);
  return result;
}

Permutation project_to_permutation(const Matrix& p) {
  if (!is_doubly_stochastic(p)) {
    throw std::invalid_argument(
        fmt::format("projection needs a doubly stochastic matrix (violation {})",
                    p.rows() == p.cols() ? feasibility_error(p) : -1.0));
  }
  return solve_lap_max(p).permutation;
}

const std::string& MatchResult::image_of(const std::string& label1) const {
  for (const auto& pair : mapping) {
    if (pair.label1 == label1) return pair.label2;
  }
  throw std::out_of_range("vertex '" + label1 + "' is not in the mapping");
}

long long count_disagreements(const Graph& g1, const Graph& g2, const std::vector<Index>& phi) {
  const Index size = g1.size();
  if (g2.size() != size || static_cast<Index>(phi.size()) != size) {
    throw std::invalid_argument("disagreement count needs equal sizes");
  }
  const auto& a = g1.adjacency();
  const auto& b = g2.adjacency();
  long long count = 0;
  for (Index v = 0; v < size; ++v) {
    for (Index u = 0; u < size; ++u) {
      if ((a(u, v) != 0.0) != (b(phi[u], phi[v]) != 0.0)) ++count;
    }
  }
  return count;
}

MatchResult match(const Graph& g1, const Graph& g2, const SeedSpec& seeds,
                  const SolverConfig& cfg) {
  cfg.validate();
  const SeededInstance inst = canonicalize(g1, g2, seeds);
  FrankWolfeResult fw = frank_wolfe_solve(inst, cfg);

  MatchResult result;
  result.permutation = project_to_permutation(fw.p);
  result.objective_relaxed = fw.log.empty() ? fw.initial_objective : fw.log.back().objective;
  result.iterations = fw.iterations();
  result.converged = fw.converged;
  result.initial_objective = fw.initial_objective;
  result.log = std::move(fw.log);

  const Index total = inst.m + inst.n;
  std::vector<Index> phi(total);
  std::vector<MatchedPair> by_g1(total);
  for (Index k = 0; k < total; ++k) {
    const bool seed = k < inst.m;
    const Index target = seed ? k : inst.m + result.permutation(k - inst.m);
    const Index from = *g1.index_of(inst.labels1[k]);
    phi[from] = *g2.index_of(inst.labels2[target]);
    by_g1[from] = {inst.labels1[k], inst.labels2[target], seed};
  }
  result.mapping = std::move(by_g1);
  result.disagreements = count_disagreements(g1, g2, phi);
  return result;
}

}  // namespace sgm
