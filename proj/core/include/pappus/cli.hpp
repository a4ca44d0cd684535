#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pappus::cli {

/// Exit codes: 0 success / true answer, 1 false / infeasible answer,
/// 2 usage or parse error, 3 internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pappus::cli
