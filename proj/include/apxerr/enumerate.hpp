#pragma once

#include "apxerr/cnf.hpp"
#include "apxerr/table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace apxerr {

/// All models of `clauses` over `vars` (ascending), one row per full
/// assignment, count 1. Unit-propagating DPLL with chronological
/// backtracking; variables of `vars` untouched by any clause take both
/// polarities. Throws ResourceError past `rowCap` rows, with `label` naming
/// the offending partition in the diagnostic.
SolutionTable enumerate_models(const std::vector<Clause>& clauses,
                               const std::vector<int>& vars, uint64_t rowCap,
                               const std::string& label = "");

} // namespace apxerr
