#include "apxerr/pipeline.hpp"

#include "apxerr/enumerate.hpp"
#include "apxerr/errors.hpp"

#include <algorithm>
#include <ostream>

namespace apxerr {

uint64_t RunConfig::effective_enum_row_cap() const {
  if (enumerationRowCap) return enumerationRowCap;
  return std::max<uint64_t>(tableSizeThreshold, uint64_t(1) << 20);
}

void RunConfig::check() const {
  if (clauseLimit < 1 || tableSizeThreshold < 1 || enumerationCap < 1 || threads < 1 ||
      precision < 1 || queryBudget < 1 || hardRowCap < 1)
    throw InputError("config: all caps and thread counts must be >= 1");
}

Analysis analyze(const CnfSystem& sys, const RunConfig& config, std::ostream* diag) {
  config.check();
  sys.check();

  Partitioning parts = partition(sys, config.clauseLimit, config.seed);

  uint64_t rowCap = config.effective_enum_row_cap();
  std::vector<SolutionTable> tables;
  tables.reserve(parts.parts.size());
  for (size_t p = 0; p < parts.parts.size(); ++p) {
    const std::vector<int>& vars = parts.varSets[p];
    if (static_cast<int>(vars.size()) > config.enumerationCap && diag)
      *diag << "c partition " << p << ": " << vars.size()
            << " vars above enumeration cap, relying on the row cap\n";
    std::vector<Clause> sub;
    sub.reserve(parts.parts[p].size());
    for (int ci : parts.parts[p]) sub.push_back(sys.clauses[static_cast<size_t>(ci)]);
    tables.push_back(enumerate_models(sub, vars, rowCap, "partition " + std::to_string(p)));
  }

  JoinGraph graph = build_join_graph(parts, std::move(tables), sys.errorVars);

  TreeBuildOptions opts;
  opts.tableSizeThreshold = config.tableSizeThreshold;
  opts.hardRowCap = config.hardRowCap;
  opts.diag = diag;

  Analysis out{reduce_to_tree(std::move(graph), opts), {}};
  out.tree.n = sys.n();

  // variables in no clause at all: free completions the tree cannot see
  std::vector<uint8_t> used(static_cast<size_t>(sys.numVars) + 1, 0);
  for (const Clause& c : sys.clauses)
    for (int lit : c) used[static_cast<size_t>(lit < 0 ? -lit : lit)] = 1;
  uint64_t freeNonError = 0;
  for (int v = 1; v <= sys.numVars; ++v) {
    if (used[static_cast<size_t>(v)]) continue;
    int errIndex = sys.error_index_of(v);
    if (errIndex >= 0)
      out.tree.freeErrorIndices.push_back(errIndex);
    else
      ++freeNonError;
  }
  out.tree.freeNonErrorVars = freeNonError;

  out.stats.partitionCount = parts.parts.size();
  out.stats.cutVars = parts.cutVars.size();
  out.stats.treeVertices = out.tree.vertices.size();
  for (const TreeVertex& v : out.tree.vertices)
    out.stats.maxTableRows = std::max(out.stats.maxTableRows, v.table.size());
  return out;
}

} // namespace apxerr
