#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sgm {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;

// Vertex-labeled weighted digraph with a dense adjacency matrix. Entry (i, j)
// is the weight of the edge labels[i] -> labels[j]; zero means no edge. Loops,
// asymmetric and non-integral weights are all allowed.
class Graph {
 public:
  Graph() = default;
  // Throws InputError if labels repeat or adj is not labels.size() square.
  Graph(std::vector<std::string> labels, Matrix adj);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& adjacency() const noexcept { return adj_; }
  Index size() const noexcept { return static_cast<Index>(labels_.size()); }

  std::optional<Index> index_of(std::string_view label) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::string> labels_;
  Matrix adj_;
  std::unordered_map<std::string, Index> index_;
};

// Partial bijection psi between the vertex sets, as (label in G1, label in G2).
struct SeedSpec {
  std::vector<std::pair<std::string, std::string>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

// Edge-list text: one "u v" or "u v w" per line, '#' starts a comment, blank
// lines are skipped. Labels enter the graph in first-appearance order and a
// repeated (u, v) keeps the last weight.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Writes every nonzero entry as "u v w". When the row-major edge order would
// not reproduce the label order on reload (isolated vertices, late first
// appearances) every vertex is first declared with a zero-weight self loop.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

// Seed files share the edge-list comment rules; each line "u v" means psi(u) = v.
SeedSpec load_seed_list(std::istream& in);
SeedSpec load_seed_list_file(const std::string& path);
void write_seed_list(std::ostream& out, const SeedSpec& seeds);

// adj(i, j) <- max(adj(i, j), adj(j, i)).
Graph symmetrize(const Graph& g);
// Nonzero -> 1, zero diagonal.
Graph binarize(const Graph& g);

// The seeded matching problem relabeled so that the m seeds occupy the leading
// indices of both matrices, with seed i of A paired to seed i of B. Nonseeds
// follow in their original relative order.
struct SeededInstance {
  Matrix a;
  Matrix b;
  Index m = 0;
  Index n = 0;
  // Internal index -> original label.
  std::vector<std::string> labels1;
  std::vector<std::string> labels2;

  auto a11() const { return a.topLeftCorner(m, m); }
  auto a12() const { return a.topRightCorner(m, n); }
  auto a21() const { return a.bottomLeftCorner(n, m); }
  auto a22() const { return a.bottomRightCorner(n, n); }
  auto b11() const { return b.topLeftCorner(m, m); }
  auto b12() const { return b.topRightCorner(m, n); }
  auto b21() const { return b.bottomLeftCorner(n, m); }
  auto b22() const { return b.bottomRightCorner(n, n); }
};

// Throws SizeMismatchError, SeedError or NothingToMatchError.
SeededInstance canonicalize(const Graph& g1, const Graph& g2, const SeedSpec& seeds);

}  // namespace sgm
