#include "sgm/graph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "sgm/errors.hpp"

namespace sgm {

Graph::Graph(std::vector<std::string> labels, Matrix adj)
    : labels_(std::move(labels)), adj_(std::move(adj)) {
  const auto size = static_cast<Index>(labels_.size());
  if (adj_.rows() != size || adj_.cols() != size) {
    throw InputError(fmt::format("adjacency is {}x{} but there are {} labels", adj_.rows(),
                                 adj_.cols(), size));
  }
  index_.reserve(labels_.size());
  for (Index i = 0; i < size; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw InputError("duplicate vertex label '" + labels_[i] + "'");
    }
  }
}

std::optional<Index> Graph::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Splits a line into whitespace-separated tokens, dropping anything after '#'.
std::vector<std::string> tokenize(const std::string& line) {
  const auto hash = line.find('#');
  std::istringstream stream(hash == std::string::npos ? line : line.substr(0, hash));
  std::vector<std::string> tokens;
  for (std::string tok; stream >> tok;) tokens.push_back(std::move(tok));
  return tokens;
}

std::optional<double> parse_real(const std::string& tok) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    fn(lineno, tokens);
  }
}

template <typename Loader>
auto with_file(const std::string& path, Loader&& loader) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return loader(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char ch : label) {
    if (ch == '#' || std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Index> index;
  struct Edge {
    Index from, to;
    double weight;
  };
  std::vector<Edge> edges;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<Index>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  for_each_record(in, [&](std::size_t lineno, const std::vector<std::string>& tokens) {
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError(lineno, fmt::format("expected 'u v' or 'u v w', got {} fields",
                                           tokens.size()));
    }
    double weight = 1.0;
    if (tokens.size() == 3) {
      auto parsed = parse_real(tokens[2]);
      if (!parsed) throw ParseError(lineno, "weight '" + tokens[2] + "' is not a finite number");
      weight = *parsed;
    }
    const Index from = intern(tokens[0]);
    const Index to = intern(tokens[1]);
    edges.push_back({from, to, weight});
  });

  if (labels.empty()) throw InputError("empty graph: no edges found");

  const auto size = static_cast<Index>(labels.size());
  Matrix adj = Matrix::Zero(size, size);
  for (const auto& e : edges) adj(e.from, e.to) = e.weight;
  return Graph(std::move(labels), std::move(adj));
}

Graph load_edge_list_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return load_edge_list(in); });
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto& adj = g.adjacency();
  const auto& labels = g.labels();
  for (const auto& label : labels) {
    if (!valid_label(label)) throw InputError("label '" + label + "' cannot be written");
  }

  // Order in which a reader would first see each vertex.
  std::vector<Index> seen_order;
  std::vector<bool> seen(labels.size(), false);
  auto see = [&](Index v) {
    if (!seen[v]) {
      seen[v] = true;
      seen_order.push_back(v);
    }
  };
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = 0; j < g.size(); ++j) {
      if (adj(i, j) != 0.0) {
        see(i);
        see(j);
      }
    }
  }
  bool natural = static_cast<Index>(seen_order.size()) == g.size();
  for (Index k = 0; natural && k < g.size(); ++k) natural = seen_order[k] == k;

  if (!natural) {
    for (const auto& label : labels) out << label << ' ' << label << " 0\n";
  }
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j = 0; j < g.size(); ++j) {
      if (adj(i, j) == 0.0) continue;
      out << labels[i] << ' ' << labels[j];
      if (adj(i, j) != 1.0) out << ' ' << fmt::format("{}", adj(i, j));
      out << '\n';
    }
  }
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  write_edge_list(out, g);
}

SeedSpec load_seed_list(std::istream& in) {
  SeedSpec seeds;
  for_each_record(in, [&](std::size_t lineno, const std::vector<std::string>& tokens) {
    if (tokens.size() != 2) {
      throw ParseError(lineno, fmt::format("expected 'u v', got {} fields", tokens.size()));
    }
    seeds.pairs.emplace_back(tokens[0], tokens[1]);
  });
  return seeds;
}

SeedSpec load_seed_list_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return load_seed_list(in); });
}

void write_seed_list(std::ostream& out, const SeedSpec& seeds) {
  for (const auto& [u, v] : seeds.pairs) out << u << ' ' << v << '\n';
}

Graph symmetrize(const Graph& g) {
  Matrix adj = g.adjacency().cwiseMax(g.adjacency().transpose());
  return Graph(g.labels(), std::move(adj));
}

Graph binarize(const Graph& g) {
  Matrix adj = (g.adjacency().array() != 0.0).cast<double>().matrix();
  adj.diagonal().setZero();
  return Graph(g.labels(), std::move(adj));
}

SeededInstance canonicalize(const Graph& g1, const Graph& g2, const SeedSpec& seeds) {
  const Index total = g1.size();
  if (g1.size() != g2.size()) {
    throw SizeMismatchError(fmt::format("graphs have different vertex counts: {} vs {}",
                                        g1.size(), g2.size()));
  }
  const auto m = static_cast<Index>(seeds.size());
  if (m >= total) {
    throw NothingToMatchError(fmt::format(
        "{} seeds leave no vertices to match in graphs of {} vertices", m, total));
  }

  std::vector<Index> order1;
  std::vector<Index> order2;
  order1.reserve(total);
  order2.reserve(total);
  std::vector<bool> seeded1(total, false);
  std::vector<bool> seeded2(total, false);
  for (const auto& [u, v] : seeds.pairs) {
    auto i = g1.index_of(u);
    auto j = g2.index_of(v);
    if (!i) throw SeedError("seed vertex '" + u + "' is not in the first graph");
    if (!j) throw SeedError("seed vertex '" + v + "' is not in the second graph");
    if (seeded1[*i]) throw SeedError("vertex '" + u + "' is seeded twice");
    if (seeded2[*j]) throw SeedError("vertex '" + v + "' is seeded twice");
    seeded1[*i] = seeded2[*j] = true;
    order1.push_back(*i);
    order2.push_back(*j);
  }
  for (Index i = 0; i < total; ++i) {
    if (!seeded1[i]) order1.push_back(i);
    if (!seeded2[i]) order2.push_back(i);
  }

  SeededInstance inst;
  inst.m = m;
  inst.n = total - m;
  inst.a = g1.adjacency()(order1, order1);
  inst.b = g2.adjacency()(order2, order2);
  inst.labels1.reserve(total);
  inst.labels2.reserve(total);
  for (Index k = 0; k < total; ++k) {
    inst.labels1.push_back(g1.labels()[order1[k]]);
    inst.labels2.push_back(g2.labels()[order2[k]]);
  }
  return inst;
}

}  // namespace sgm
