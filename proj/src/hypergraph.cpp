#include "apxerr/hypergraph.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>

namespace apxerr {

namespace {

std::vector<int> clause_vars(const Clause& c) {
  std::vector<int> vars;
  vars.reserve(c.size());
  for (int lit : c) vars.push_back(lit < 0 ? -lit : lit);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

} // namespace

Hypergraph build_hypergraph(const CnfSystem& sys) {
  if (sys.clauses.empty()) throw InputError("hypergraph: empty clause list");
  std::vector<std::vector<int>> byVar(static_cast<size_t>(sys.numVars) + 1);
  for (size_t ci = 0; ci < sys.clauses.size(); ++ci)
    for (int v : clause_vars(sys.clauses[ci]))
      byVar[static_cast<size_t>(v)].push_back(static_cast<int>(ci));

  Hypergraph h;
  h.vertexCount = static_cast<int>(sys.clauses.size());
  for (int v = 1; v <= sys.numVars; ++v)
    if (!byVar[static_cast<size_t>(v)].empty())
      h.edges.emplace_back(v, std::move(byVar[static_cast<size_t>(v)]));
  return h;
}

void Partitioning::check(const CnfSystem& sys, int clauseLimit) const {
  std::vector<uint8_t> covered(sys.clauses.size(), 0);
  for (const auto& part : parts) {
    if (part.empty()) throw InvariantError("partition: empty part");
    if (static_cast<int>(part.size()) > clauseLimit)
      throw InvariantError("partition: clause limit violated");
    for (int ci : part) {
      if (ci < 0 || static_cast<size_t>(ci) >= sys.clauses.size() || covered[static_cast<size_t>(ci)])
        throw InvariantError("partition: parts not a disjoint cover");
      covered[static_cast<size_t>(ci)] = 1;
    }
  }
  for (uint8_t c : covered)
    if (!c) throw InvariantError("partition: clause not covered");
}

std::string Partitioning::dump() const {
  std::vector<int> partOf;
  for (size_t p = 0; p < parts.size(); ++p)
    for (int ci : parts[p]) {
      if (static_cast<size_t>(ci) >= partOf.size()) partOf.resize(static_cast<size_t>(ci) + 1, -1);
      partOf[static_cast<size_t>(ci)] = static_cast<int>(p);
    }
  std::ostringstream os;
  for (size_t ci = 0; ci < partOf.size(); ++ci)
    os << "clause " << ci << " -> part " << partOf[ci] << '\n';
  return os.str();
}

namespace {

struct Refiner {
  int numParts;
  int clauseLimit;
  std::vector<std::vector<int>> vars;      // clause -> sorted vars
  std::vector<std::vector<int>> incidence; // var -> clauses
  std::vector<int> partOf;
  std::vector<int> partSize;
  std::vector<int> cnt;  // [var * numParts + p] clauses of part p containing var
  std::vector<int> span; // var -> #parts with cnt > 0
  int64_t cut = 0;

  int& count(int var, int part) { return cnt[static_cast<size_t>(var) * numParts + part]; }

  void build(int numVars) {
    cnt.assign(static_cast<size_t>(numVars + 1) * numParts, 0);
    span.assign(static_cast<size_t>(numVars) + 1, 0);
    cut = 0;
    for (size_t ci = 0; ci < vars.size(); ++ci)
      for (int v : vars[ci]) {
        if (count(v, partOf[ci])++ == 0) span[static_cast<size_t>(v)]++;
      }
    for (int s : span)
      if (s >= 2) ++cut;
  }

  // Moves clause ci to part `to`; returns the change in |cutVars|.
  int64_t apply_move(int ci, int to) {
    int from = partOf[static_cast<size_t>(ci)];
    int64_t delta = 0;
    for (int v : vars[static_cast<size_t>(ci)]) {
      int before = span[static_cast<size_t>(v)] >= 2;
      if (--count(v, from) == 0) span[static_cast<size_t>(v)]--;
      if (count(v, to)++ == 0) span[static_cast<size_t>(v)]++;
      delta += (span[static_cast<size_t>(v)] >= 2) - before;
    }
    partOf[static_cast<size_t>(ci)] = to;
    partSize[static_cast<size_t>(from)]--;
    partSize[static_cast<size_t>(to)]++;
    cut += delta;
    return delta;
  }

  bool try_move(int ci) {
    int from = partOf[static_cast<size_t>(ci)];
    std::set<int> targets;
    for (int v : vars[static_cast<size_t>(ci)])
      for (int d : incidence[static_cast<size_t>(v)]) targets.insert(partOf[static_cast<size_t>(d)]);
    for (int to : targets) {
      if (to == from || partSize[static_cast<size_t>(to)] >= clauseLimit) continue;
      if (apply_move(ci, to) < 0) return true;
      apply_move(ci, from);
    }
    return false;
  }

  bool try_swaps(int ci) {
    int a = partOf[static_cast<size_t>(ci)];
    for (int v : vars[static_cast<size_t>(ci)]) {
      for (int d : incidence[static_cast<size_t>(v)]) {
        int bPart = partOf[static_cast<size_t>(d)];
        if (d == ci || bPart == a) continue;
        int64_t d1 = apply_move(ci, bPart);
        int64_t d2 = apply_move(d, a);
        if (d1 + d2 < 0) return true;
        apply_move(d, bPart);
        apply_move(ci, a);
      }
    }
    return false;
  }

  void refine() {
    bool improved = true;
    while (improved) {
      improved = false;
      for (size_t ci = 0; ci < vars.size(); ++ci)
        if (try_move(static_cast<int>(ci))) improved = true;
      for (size_t ci = 0; ci < vars.size(); ++ci)
        if (try_swaps(static_cast<int>(ci))) improved = true;
    }
  }
};

} // namespace

Partitioning partition(const CnfSystem& sys, int clauseLimit, uint64_t seed) {
  if (clauseLimit < 1) throw InputError("partition: clauseLimit must be >= 1");
  size_t numClauses = sys.clauses.size();
  if (numClauses == 0) throw InputError("partition: empty clause list");

  int numParts = static_cast<int>((numClauses + static_cast<size_t>(clauseLimit) - 1) /
                                  static_cast<size_t>(clauseLimit));
  if (numParts < 1) numParts = 1;

  Refiner rf;
  rf.numParts = numParts;
  rf.clauseLimit = clauseLimit;
  rf.vars.reserve(numClauses);
  for (const Clause& c : sys.clauses) rf.vars.push_back(clause_vars(c));
  rf.incidence.assign(static_cast<size_t>(sys.numVars) + 1, {});
  for (size_t ci = 0; ci < numClauses; ++ci)
    for (int v : rf.vars[ci]) rf.incidence[static_cast<size_t>(v)].push_back(static_cast<int>(ci));

  // BFS growth into balanced targets
  std::vector<int> target(static_cast<size_t>(numParts), static_cast<int>(numClauses) / numParts);
  for (size_t p = 0; p < numClauses % static_cast<size_t>(numParts); ++p) target[p]++;

  rf.partOf.assign(numClauses, -1);
  rf.partSize.assign(static_cast<size_t>(numParts), 0);

  // Global BFS over the clause-variable incidence graph; slicing the
  // discovery order into consecutive chunks keeps each part a contiguous
  // region of the circuit (small variable boundary). Starting in the middle
  // of a chain would interleave its two wings in the order, so each
  // component is first probed from a seeded clause and then ordered from the
  // farthest clause found (an endpoint).
  std::mt19937_64 rng(seed);
  std::vector<int> order;
  order.reserve(numClauses);
  std::vector<uint8_t> visited(numClauses, 0);

  auto bfs = [&](int start, std::vector<uint8_t>& seen, std::vector<int>& out) {
    size_t head = out.size();
    seen[static_cast<size_t>(start)] = 1;
    out.push_back(start);
    while (head < out.size()) {
      int ci = out[head++];
      for (int v : rf.vars[static_cast<size_t>(ci)])
        for (int d : rf.incidence[static_cast<size_t>(v)])
          if (!seen[static_cast<size_t>(d)]) {
            seen[static_cast<size_t>(d)] = 1;
            out.push_back(d);
          }
    }
  };

  std::vector<int> unvisited(numClauses);
  for (size_t i = 0; i < numClauses; ++i) unvisited[i] = static_cast<int>(i);
  while (order.size() < numClauses) {
    std::erase_if(unvisited, [&](int ci) { return visited[static_cast<size_t>(ci)]; });
    int probeStart = unvisited[rng() % unvisited.size()];
    std::vector<uint8_t> probeSeen = visited;
    std::vector<int> probe;
    bfs(probeStart, probeSeen, probe);
    bfs(probe.back(), visited, order);
  }

  int part = 0;
  for (int ci : order) {
    while (rf.partSize[static_cast<size_t>(part)] >= target[static_cast<size_t>(part)]) ++part;
    rf.partOf[static_cast<size_t>(ci)] = part;
    rf.partSize[static_cast<size_t>(part)]++;
  }

  rf.build(sys.numVars);
  Partitioning out;
  out.cutBeforeRefine = static_cast<uint64_t>(rf.cut);
  rf.refine();

  // collect parts (ascending clause order), dropping emptied ones
  std::vector<std::vector<int>> parts(static_cast<size_t>(numParts));
  for (size_t ci = 0; ci < numClauses; ++ci)
    parts[static_cast<size_t>(rf.partOf[ci])].push_back(static_cast<int>(ci));
  for (auto& part : parts)
    if (!part.empty()) out.parts.push_back(std::move(part));

  out.varSets.resize(out.parts.size());
  std::vector<int> partCount(static_cast<size_t>(sys.numVars) + 1, 0);
  for (size_t p = 0; p < out.parts.size(); ++p) {
    std::set<int> vs;
    for (int ci : out.parts[p])
      for (int v : rf.vars[static_cast<size_t>(ci)]) vs.insert(v);
    out.varSets[p].assign(vs.begin(), vs.end());
    for (int v : out.varSets[p]) partCount[static_cast<size_t>(v)]++;
  }
  for (int v = 1; v <= sys.numVars; ++v)
    if (partCount[static_cast<size_t>(v)] >= 2) out.cutVars.push_back(v);
  return out;
}

} // namespace apxerr
