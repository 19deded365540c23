#include "sgm/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

std::vector<std::string> numbered_labels(const char* prefix, Index count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (Index i = 0; i < count; ++i) labels.push_back(fmt::format("{}{}", prefix, i));
  return labels;
}

}  // namespace

Graph gen_er(Index c, double p, Rng& rng) {
  if (c < 1) throw InputError(fmt::format("vertex count must be >= 1, got {}", c));
  Matrix adj = Matrix::Zero(c, c);
  for (Index i = 0; i < c; ++i) {
    for (Index j = i + 1; j < c; ++j) {
      if (rng.bernoulli(p)) adj(i, j) = adj(j, i) = 1.0;
    }
  }
  return Graph(numbered_labels("v", c), std::move(adj));
}

Graph perturb(const Graph& g, double rho, Rng& rng) {
  const Matrix& adj = g.adjacency();
  const bool binary = ((adj.array() == 0.0) || (adj.array() == 1.0)).all();
  if (!binary || adj != adj.transpose() || (adj.diagonal().array() != 0.0).any()) {
    throw InputError("perturbation needs a binary, symmetric, hollow adjacency matrix");
  }
  Matrix out = adj;
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = i + 1; j < g.size(); ++j) {
      const double keep_or_create = adj(i, j) != 0.0 ? 1.0 - rho : rho;
      out(i, j) = out(j, i) = rng.bernoulli(keep_or_create) ? 1.0 : 0.0;
    }
  }
  return Graph(g.labels(), std::move(out));
}

PlantedGraph plant_correspondence(const Graph& g, Rng& rng) {
  const Index c = g.size();
  std::vector<Index> target(c);
  std::iota(target.begin(), target.end(), Index{0});
  rng.shuffle(target);

  // Vertex i of g becomes w{target[i]}.
  Matrix adj(c, c);
  for (Index j = 0; j < c; ++j) {
    for (Index i = 0; i < c; ++i) adj(target[i], target[j]) = g.adjacency()(i, j);
  }
  auto labels = numbered_labels("w", c);
  Correspondence truth;
  truth.reserve(c);
  for (Index i = 0; i < c; ++i) truth.emplace(g.labels()[i], labels[target[i]]);
  return {Graph(std::move(labels), std::move(adj)), std::move(truth)};
}

double match_ratio(const MatchResult& result, const Correspondence& truth, const SeedSpec& seeds) {
  std::unordered_map<std::string, bool> seeded;
  for (const auto& [u, v] : seeds.pairs) seeded.emplace(u, true);
  std::size_t nonseeds = 0;
  std::size_t correct = 0;
  for (const auto& pair : result.mapping) {
    auto it = truth.find(pair.label1);
    if (it == truth.end()) {
      throw InputError("ground truth has no image for vertex '" + pair.label1 + "'");
    }
    if (seeded.contains(pair.label1)) continue;
    ++nonseeds;
    if (it->second == pair.label2) ++correct;
  }
  for (const auto& [u, v] : seeds.pairs) {
    if (!truth.contains(u)) throw InputError("ground truth has no image for seed '" + u + "'");
  }
  if (nonseeds == 0) throw InputError("match ratio needs at least one nonseed vertex");
  return static_cast<double>(correct) / static_cast<double>(nonseeds);
}

void SimConfig::validate() const {
  if (c < 1) throw InputError(fmt::format("vertex count must be >= 1, got {}", c));
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(fmt::format("p must lie in [0, 1], got {}", p));
  if (rhos.empty()) throw InputError("at least one perturbation value is required");
  for (double rho : rhos) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
      throw InputError(fmt::format("rho must lie in [0, 1], got {}", rho));
    }
  }
  if (m_values.empty()) throw InputError("at least one seed count is required");
  for (Index m : m_values) {
    if (m < 0 || m >= c) {
      throw InputError(fmt::format("seed count {} outside [0, {}]", m, c - 1));
    }
  }
  if (trials < 1) throw InputError(fmt::format("trials must be >= 1, got {}", trials));
  solver.validate();
}

bool TrialRecord::same_outcome(const TrialRecord& other) const {
  return m == other.m && rho == other.rho && trial == other.trial &&
         match_ratio == other.match_ratio && chance == other.chance &&
         disagreements == other.disagreements && iterations == other.iterations;
}

TrialRecord run_trial(const SimConfig& cfg, double rho, Index m, int trial,
                      const TrialObserver& observer) {
  Rng rng(derive_seed(cfg.rng_seed, {std::bit_cast<std::uint64_t>(rho),
                                     static_cast<std::uint64_t>(m),
                                     static_cast<std::uint64_t>(trial)}));
  const Graph g1 = gen_er(cfg.c, cfg.p, rng);
  const PlantedGraph planted = plant_correspondence(perturb(g1, rho, rng), rng);

  std::vector<Index> vertices(cfg.c);
  std::iota(vertices.begin(), vertices.end(), Index{0});
  rng.shuffle(vertices);
  vertices.resize(m);
  std::sort(vertices.begin(), vertices.end());
  SeedSpec seeds;
  for (Index v : vertices) {
    const auto& label = g1.labels()[v];
    seeds.pairs.emplace_back(label, planted.truth.at(label));
  }

  const auto start = std::chrono::steady_clock::now();
  const MatchResult result = match(g1, planted.graph, seeds, cfg.solver);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;

  TrialRecord record;
  record.m = m;
  record.rho = rho;
  record.trial = trial;
  record.match_ratio = match_ratio(result, planted.truth, seeds);
  record.chance = 1.0 / static_cast<double>(cfg.c - m);
  record.disagreements = result.disagreements;
  record.iterations = result.iterations;
  record.runtime_ms = elapsed.count();
  if (observer) observer({record, g1, planted.graph, seeds, planted.truth, result});
  return record;
}

std::vector<TrialRecord> run_sweep(const SimConfig& cfg, unsigned jobs,
                                   const TrialObserver& observer) {
  cfg.validate();
  std::vector<double> rhos = cfg.rhos;
  std::vector<Index> ms = cfg.m_values;
  std::sort(rhos.begin(), rhos.end());
  rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  struct Task {
    double rho;
    Index m;
    int trial;
  };
  std::vector<Task> tasks;
  for (double rho : rhos) {
    for (Index m : ms) {
      for (int t = 0; t < cfg.trials; ++t) tasks.push_back({rho, m, t});
    }
  }

  std::vector<TrialRecord> records(tasks.size());
  std::mutex observer_mutex;
  TrialObserver locked;
  if (observer) {
    locked = [&](const TrialArtifacts& artifacts) {
      std::lock_guard lock(observer_mutex);
      observer(artifacts);
    };
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      try {
        records[k] = run_trial(cfg, tasks[k].rho, tasks[k].m, tasks[k].trial, locked);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const auto threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace sgm
