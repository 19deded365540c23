#include "sgm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sgm/csv.hpp"
#include "sgm/errors.hpp"
#include "sgm/graph.hpp"
#include "sgm/simulation.hpp"
#include "sgm/solver.hpp"

namespace sgm::cli {

namespace {

constexpr const char* kMatchFooter = R"(
Output CSV: a table "label1,label2,is_seed" with one row per vertex of G1,
a blank line, then a table "metric,value" with rows objective, disagreements,
iterations and converged (0/1).)";

constexpr const char* kSimulateFooter = R"(
Output CSV columns, one row per trial, sorted by (rho, m, trial):
  rho,m,trial,match_ratio,chance,disagreements,iterations,runtime_ms
--m-values accepts "start:stop:step" (stop exclusive), "a,b,c" or a single value.
--emit-graphs DIR writes, per trial, <stem>_g1.txt and <stem>_g2.txt edge lists,
<stem>_seeds.txt and <stem>_truth.txt ("u v" lines), stem = rho<rho>_m<m>_t<trial>.
The default worker count can be set with the SGM_JOBS environment variable.)";

Index parse_index(const std::string& text) {
  Index value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InputError("'" + text + "' is not an integer");
  }
  return value;
}

// Output goes to the file when a path is given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError(path + ": cannot open for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct MatchOptions {
  std::string g1_path;
  std::string g2_path;
  std::string seeds_path;
  int max_iters = 30;
  double tol = 1e-9;
  bool symmetrize = false;
  bool binarize = false;
  std::string out_path;
};

struct SimulateOptions {
  Index c = 150;
  double p = 0.5;
  std::vector<double> rhos;
  std::string m_values;
  int trials = 50;
  std::uint64_t rng_seed = 1;
  int max_iters = 30;
  double tol = 1e-9;
  std::string out_path;
  std::string emit_dir;
  std::optional<unsigned> jobs;
  bool paper_scale = false;
};

Graph preprocess(Graph g, const MatchOptions& opt) {
  if (opt.symmetrize) g = symmetrize(g);
  if (opt.binarize) g = binarize(g);
  return g;
}

int cmd_match(const MatchOptions& opt, std::ostream& out) {
  const Graph g1 = preprocess(load_edge_list_file(opt.g1_path), opt);
  const Graph g2 = preprocess(load_edge_list_file(opt.g2_path), opt);
  const SeedSpec seeds = opt.seeds_path.empty() ? SeedSpec{} : load_seed_list_file(opt.seeds_path);
  if (g1.size() != g2.size()) {
    throw SizeMismatchError(fmt::format("{} has {} vertices but {} has {}", opt.g1_path,
                                        g1.size(), opt.g2_path, g2.size()));
  }
  SolverConfig cfg;
  cfg.max_iters = opt.max_iters;
  cfg.tol_obj = opt.tol;
  const MatchResult result = match(g1, g2, seeds, cfg);
  Sink sink(opt.out_path, out);
  write_match_csv(*sink, result);
  return kOk;
}

void emit_trial(const std::filesystem::path& dir, const TrialArtifacts& t) {
  const auto stem = fmt::format("rho{}_m{}_t{}", t.record.rho, t.record.m, t.record.trial);
  auto open = [&](const char* suffix) {
    const auto path = dir / (stem + suffix);
    std::ofstream file(path);
    if (!file) throw InputError(path.string() + ": cannot open for writing");
    return file;
  };
  {
    auto f = open("_g1.txt");
    write_edge_list(f, t.g1);
  }
  {
    auto f = open("_g2.txt");
    write_edge_list(f, t.g2);
  }
  {
    auto f = open("_seeds.txt");
    write_seed_list(f, t.seeds);
  }
  auto f = open("_truth.txt");
  SeedSpec truth;
  for (const auto& label : t.g1.labels()) truth.pairs.emplace_back(label, t.truth.at(label));
  write_seed_list(f, truth);
}

int cmd_simulate(SimulateOptions opt, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  cfg.c = opt.c;
  cfg.p = opt.p;
  cfg.rhos = opt.rhos.empty() ? std::vector<double>{0.1} : opt.rhos;
  cfg.m_values = parse_index_list(opt.m_values.empty() ? fmt::format("0:{}:10", opt.c)
                                                       : opt.m_values);
  cfg.trials = opt.trials;
  cfg.rng_seed = opt.rng_seed;
  cfg.solver.max_iters = opt.max_iters;
  cfg.solver.tol_obj = opt.tol;
  cfg.validate();

  TrialObserver observer;
  std::filesystem::path emit_dir;
  if (!opt.emit_dir.empty()) {
    emit_dir = opt.emit_dir;
    std::error_code ec;
    std::filesystem::create_directories(emit_dir, ec);
    if (ec) throw InputError(opt.emit_dir + ": " + ec.message());
    observer = [&](const TrialArtifacts& t) { emit_trial(emit_dir, t); };
  }

  Sink sink(opt.out_path, out);
  const unsigned jobs = opt.jobs.value_or(default_jobs());
  const auto start = std::chrono::steady_clock::now();
  const auto records = run_sweep(cfg, jobs, observer);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  write_trial_csv(*sink, records);

  double mean = 0.0;
  for (const auto& r : records) mean += r.match_ratio;
  err << fmt::format("simulate: {} trials on {} worker(s) in {:.1f}s, mean match ratio {:.4f}\n",
                     records.size(), jobs, elapsed.count(),
                     mean / static_cast<double>(records.size()));
  return kOk;
}

}  // namespace

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> values;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (std::size_t pos; (pos = text.find(':', begin)) != std::string::npos; begin = pos + 1) {
      parts.push_back(text.substr(begin, pos - begin));
    }
    parts.push_back(text.substr(begin));
    if (parts.size() != 3) throw InputError("range '" + text + "' must be start:stop:step");
    const Index start = parse_index(parts[0]);
    const Index stop = parse_index(parts[1]);
    const Index step = parse_index(parts[2]);
    if (step <= 0) throw InputError("range step must be positive in '" + text + "'");
    for (Index v = start; v < stop; v += step) values.push_back(v);
    if (values.empty()) throw InputError("range '" + text + "' is empty");
    return values;
  }
  std::size_t begin = 0;
  while (true) {
    const auto pos = text.find(',', begin);
    values.push_back(parse_index(text.substr(begin, pos - begin)));
    if (pos == std::string::npos) break;
    begin = pos + 1;
  }
  return values;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("SGM_JOBS")) {
    unsigned value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seeded graph matching by Frank-Wolfe on the doubly stochastic relaxation", "sgm"};
  app.require_subcommand(1);

  MatchOptions mopt;
  auto* match_cmd = app.add_subcommand("match", "Match two graphs given as edge lists");
  match_cmd->add_option("--g1", mopt.g1_path, "First graph edge list")->required();
  match_cmd->add_option("--g2", mopt.g2_path, "Second graph edge list")->required();
  match_cmd->add_option("--seeds", mopt.seeds_path, "Seed file, lines 'u v' meaning u -> v");
  match_cmd->add_option("--max-iters", mopt.max_iters, "Frank-Wolfe iteration cap")
      ->capture_default_str();
  match_cmd->add_option("--tol", mopt.tol, "Relative objective improvement threshold")
      ->capture_default_str();
  match_cmd->add_flag("--symmetrize", mopt.symmetrize, "Replace each adjacency by max(A, A')");
  match_cmd->add_flag("--binarize", mopt.binarize, "Set nonzero weights to 1, zero the diagonal");
  match_cmd->add_option("--out", mopt.out_path, "Output CSV (default: standard output)");
  match_cmd->footer(kMatchFooter);

  SimulateOptions sopt;
  unsigned jobs = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Correlated Erdos-Renyi seed sweep");
  auto* c_opt = sim_cmd->add_option("--c", sopt.c, "Total vertex count")->capture_default_str();
  sim_cmd->add_option("--p", sopt.p, "Edge probability")->capture_default_str();
  sim_cmd->add_option("--rho", sopt.rhos, "Perturbation parameter, repeatable (default 0.1)");
  sim_cmd->add_option("--m-values", sopt.m_values, "Seed counts (default 0:c:10)");
  auto* trials_opt = sim_cmd->add_option("--trials", sopt.trials, "Trials per (rho, m)")->capture_default_str();
  sim_cmd->add_option("--rng-seed", sopt.rng_seed, "Master random seed")->capture_default_str();
  sim_cmd->add_option("--max-iters", sopt.max_iters, "Frank-Wolfe iteration cap")
      ->capture_default_str();
  sim_cmd->add_option("--tol", sopt.tol, "Relative objective improvement threshold")
      ->capture_default_str();
  sim_cmd->add_option("--out", sopt.out_path, "Output CSV (default: standard output)");
  sim_cmd->add_option("--emit-graphs", sopt.emit_dir, "Directory for per-trial graph files");
  auto* jobs_opt = sim_cmd->add_option("--jobs", jobs, "Worker threads")
                       ->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--paper-scale", sopt.paper_scale,
                    "c = 300, 400 trials, rho = 0, 0.05, ..., 0.5 unless overridden");
  sim_cmd->footer(kSimulateFooter);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*match_cmd) return cmd_match(mopt, out);
    if (jobs_opt->count() > 0) sopt.jobs = jobs;
    if (sopt.paper_scale) {
      if (c_opt->count() == 0) sopt.c = 300;
      if (trials_opt->count() == 0) sopt.trials = 400;
      if (sopt.rhos.empty()) {
        for (int k = 0; k <= 10; ++k) sopt.rhos.push_back(0.05 * k);
      }
    }
    return cmd_simulate(std::move(sopt), out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (...) {
    err << "internal error: unknown exception\n";
    return kInternalError;
  }
}

}  // namespace sgm::cli
