#pragma once

#include "apxerr/cnf.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace apxerr {

/// Clause-variable incidence view of a CNF: one vertex per clause, one
/// hyperedge per variable occurring in at least one clause.
struct Hypergraph {
  int vertexCount = 0;
  std::vector<std::pair<int, std::vector<int>>> edges; // (var, clause indices), var-ascending
};

Hypergraph build_hypergraph(const CnfSystem& sys);

struct Partitioning {
  std::vector<std::vector<int>> parts;   // clause indices, each ascending
  std::vector<std::vector<int>> varSets; // variables touched per part, ascending
  std::vector<int> cutVars;              // variables in >= 2 parts, ascending
  uint64_t cutBeforeRefine = 0;          // for the never-increases property

  void check(const CnfSystem& sys, int clauseLimit) const;
  std::string dump() const; // "clause <i> -> part <p>" lines
};

/// Deterministic seeded BFS growth over the clause-variable incidence graph
/// into max(1, ceil(C / clauseLimit)) parts, then greedy boundary move/swap
/// refinement that only ever reduces |cutVars| and never breaks the limit.
Partitioning partition(const CnfSystem& sys, int clauseLimit, uint64_t seed);

} // namespace apxerr
