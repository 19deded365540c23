#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgm/simulation.hpp"
#include "sgm/solver.hpp"

namespace sgm {

// Column order of the sweep CSV.
inline constexpr const char* kTrialCsvHeader =
    "rho,m,trial,match_ratio,chance,disagreements,iterations,runtime_ms";

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records);
// Throws ParseError on a malformed header or row.
std::vector<TrialRecord> read_trial_csv(std::istream& in);

// Match output: a mapping table, a blank line, then a metric table.
//
//   label1,label2,is_seed
//   a,x,1
//   ...
//
//   metric,value
//   objective,<relaxed objective>
//   disagreements,<count>
//   iterations,<count>
//   converged,<0|1>
void write_match_csv(std::ostream& out, const MatchResult& result);

struct MatchCsv {
  std::vector<MatchedPair> mapping;
  double objective = 0.0;
  long long disagreements = 0;
  int iterations = 0;
  bool converged = false;
};

MatchCsv read_match_csv(std::istream& in);

}  // namespace sgm
