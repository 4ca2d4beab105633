#pragma once

#include "apxerr/hypergraph.hpp"
#include "apxerr/table.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace apxerr {

struct JoinVertex {
  std::vector<int> parts; // formula part ids folded into this vertex
  std::vector<int> vars;  // ascending
  SolutionTable table;
  bool alive = true;
};

struct JoinEdge {
  int a = 0, b = 0;            // a < b
  std::vector<int> sharedVars; // label X_ij, never empty
};

/// Vertices carry {F_i, X_i, T(F_i)}; an edge exists iff the variable sets
/// intersect. Error variables are pinned and never marginalized.
class JoinGraph {
 public:
  std::vector<JoinVertex> vertices;
  std::vector<int> errorVars; // ascending

  std::vector<JoinEdge> edges() const;
  size_t alive_count() const;

  /// Sums out every non-error variable that only one alive vertex touches.
  void marginalize_exclusive();

  /// Contracts edge (i, j) into i: vars union, tables factor-multiplied,
  /// neighbors whose variable set became a subset of X_i absorbed too, then
  /// newly exclusive non-error variables are summed out of vertex i.
  void merge(int i, int j, size_t rowCap);
};

JoinGraph build_join_graph(const Partitioning& partitioning,
                           std::vector<SolutionTable> tables,
                           std::vector<int> errorVars);

struct TreeBuildOptions {
  uint64_t tableSizeThreshold = 1'000'000;
  uint64_t hardRowCap = 100'000'000;
  SizeEstimator estimator;
  std::ostream* diag = nullptr; // TS escalations and round logs
};

struct TreeVertex {
  std::vector<int> vars;
  SolutionTable table;
  int parent = -1;
  std::vector<int> children;
  std::vector<int> sharedWithParent;          // edge label toward parent
  std::vector<std::pair<int, int>> errorBits; // (position in vars, error index)

  // Query-compiled layout (JoinTree::finalize): rows flattened word-major.
  // A child's message variables are a subset of this vertex's variables, so
  // joining is a per-row lookup through the projection positions below.
  size_t wordsPerRow = 0;
  std::vector<uint64_t> rowWords;
  std::vector<BigInt> rowCounts;
  std::vector<std::vector<int>> childLabelPos; // per child: label bit positions here
  std::vector<int> parentLabelPos;             // parent label bit positions here
};

/// Rooted forest satisfying the running intersection property. Conditioned
/// counting metadata (n, free variables) is attached by the pipeline.
class JoinTree {
 public:
  std::vector<TreeVertex> vertices;
  std::vector<int> roots; // one per component; roots[0] has the largest table
  std::vector<int> errorVars;

  int n = 0;
  uint64_t freeNonErrorVars = 0;
  std::vector<int> freeErrorIndices; // annotated error bits in no clause

  int m() const { return static_cast<int>(errorVars.size()) - 1; }

  void check_rip() const; // throws InvariantError

  /// Flattens tables and projection maps for the query engine; called by
  /// reduce_to_tree and rerooted.
  void finalize();

  JoinTree rerooted(int newRoot) const;

  std::string dump() const;
};

/// Alg: repeat { estimate candidate edge weights, filter > TS, merge a
/// vertex-disjoint batch smallest-first, rebuild, marginalize } until every
/// component is a tree. Only edges lying on a cycle are candidates; when none
/// passes the filter TS doubles (logged) up to `hardRowCap`.
JoinTree reduce_to_tree(JoinGraph graph, const TreeBuildOptions& options);

} // namespace apxerr
