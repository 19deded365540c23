#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgm/graph.hpp"

namespace sgm::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kUsageError = 2;

// Runs the command line `args` (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "start:stop:step" (stop exclusive), a comma list, or a single integer.
// Throws InputError.
std::vector<Index> parse_index_list(const std::string& text);

// Worker count for simulate when --jobs is absent: $SGM_JOBS if set and
// positive, else the hardware concurrency.
unsigned default_jobs();

}  // namespace sgm::cli
