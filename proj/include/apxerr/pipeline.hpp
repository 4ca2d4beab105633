#pragma once

#include "apxerr/cnf.hpp"
#include "apxerr/joingraph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace apxerr {

struct RunConfig {
  int clauseLimit = 64;
  uint64_t tableSizeThreshold = 1'000'000;
  int enumerationCap = 40;        // var-count gate for per-partition AllSAT
  uint64_t enumerationRowCap = 0; // 0 = max(tableSizeThreshold, 2^20)
  uint64_t hardRowCap = 100'000'000;
  int threads = 1;
  uint64_t seed = 1;
  int precision = 12;        // significant decimal digits in renderings
  uint64_t queryBudget = 65536; // histogram guard

  uint64_t effective_enum_row_cap() const;
  void check() const;
};

struct PipelineStats {
  size_t partitionCount = 0;
  uint64_t cutVars = 0;
  size_t treeVertices = 0;
  size_t maxTableRows = 0;
};

/// Partition -> per-partition AllSAT tables -> join graph -> join tree, with
/// free-variable metadata attached for conditioned counting. `diag` receives
/// progress/escalation notes.
struct Analysis {
  JoinTree tree;
  PipelineStats stats;
};

Analysis analyze(const CnfSystem& sys, const RunConfig& config, std::ostream* diag = nullptr);

} // namespace apxerr
