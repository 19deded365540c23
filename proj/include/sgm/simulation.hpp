#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/rng.hpp"
#include "sgm/solver.hpp"

namespace sgm {

// Ground-truth correspondence Psi: label in G1 -> label in G2.
using Correspondence = std::unordered_map<std::string, std::string>;

// Simple undirected G(c, p) on labels "v0".."v{c-1}".
Graph gen_er(Index c, double p, Rng& rng);

// Independently flips each unordered pair: an edge survives with probability
// 1 - rho, a non-edge appears with probability rho. Throws InputError unless
// g is binary, symmetric and hollow.
Graph perturb(const Graph& g, double rho, Rng& rng);

struct PlantedGraph {
  Graph graph;
  Correspondence truth;
};

// Relabels g by a uniformly random bijection onto fresh labels "w0".."w{c-1}",
// listed in that order, and returns the bijection.
PlantedGraph plant_correspondence(const Graph& g, Rng& rng);

// Fraction of nonseed vertices of G1 whose image under the result agrees with
// the truth. Throws InputError if the truth misses a vertex of the mapping.
double match_ratio(const MatchResult& result, const Correspondence& truth, const SeedSpec& seeds);

struct SimConfig {
  Index c = 150;
  double p = 0.5;
  std::vector<double> rhos{0.1};
  std::vector<Index> m_values{0};
  int trials = 50;
  std::uint64_t rng_seed = 1;
  SolverConfig solver;

  // Throws InputError.
  void validate() const;
};

struct TrialRecord {
  Index m = 0;
  double rho = 0.0;
  int trial = 0;
  double match_ratio = 0.0;
  double chance = 0.0;
  long long disagreements = 0;
  int iterations = 0;
  double runtime_ms = 0.0;

  // Equality ignoring the wall-clock field.
  bool same_outcome(const TrialRecord& other) const;
};

// Everything a single trial produced, handed to a sweep observer.
struct TrialArtifacts {
  const TrialRecord& record;
  const Graph& g1;
  const Graph& g2;
  const SeedSpec& seeds;
  const Correspondence& truth;
  const MatchResult& result;
};

using TrialObserver = std::function<void(const TrialArtifacts&)>;

// One trial in isolation: all randomness comes from the substream keyed by
// (cfg.rng_seed, rho, m, trial).
TrialRecord run_trial(const SimConfig& cfg, double rho, Index m, int trial,
                      const TrialObserver& observer = {});

// Every (rho, m, trial) combination, run on up to `jobs` threads. Records come
// back sorted by (rho, m, trial). The observer is invoked under a lock, one
// trial at a time, in completion order.
std::vector<TrialRecord> run_sweep(const SimConfig& cfg, unsigned jobs = 1,
                                   const TrialObserver& observer = {});

}  // namespace sgm
