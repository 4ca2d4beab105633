#include "apxerr/enumerate.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace apxerr {

namespace {

// Literal = 2*pos | sign over local positions.
struct Enumerator {
  std::vector<std::vector<int>> clausesOf; // pos -> clause indices
  std::vector<std::vector<int>> lits;      // clause -> local literals
  std::vector<int8_t> value;               // -1 unassigned / 0 / 1
  std::vector<int> satCount;               // per clause: satisfied literal count
  std::vector<int> freeCount;              // per clause: unassigned literal count
  std::vector<int> trail;
  size_t varCount = 0;
  uint64_t rowCap = 0;
  std::string label;
  SolutionTable* out = nullptr;
  uint64_t produced = 0;

  // Assigns pos=v, updates clause counters; returns false on conflict.
  bool assign(int pos, bool v, std::vector<int>& units) {
    value[static_cast<size_t>(pos)] = v;
    trail.push_back(pos);
    for (int ci : clausesOf[static_cast<size_t>(pos)]) {
      bool satHere = false;
      for (int lit : lits[static_cast<size_t>(ci)]) {
        if ((lit >> 1) == pos) {
          if ((lit & 1) == (v ? 0 : 1)) satHere = true; // sign 0 = positive
        }
      }
      if (satHere) {
        satCount[static_cast<size_t>(ci)]++;
      }
      freeCount[static_cast<size_t>(ci)]--;
      if (satCount[static_cast<size_t>(ci)] == 0) {
        if (freeCount[static_cast<size_t>(ci)] == 0) return false;
        if (freeCount[static_cast<size_t>(ci)] == 1) units.push_back(ci);
      }
    }
    return true;
  }

  void unassign_to(size_t mark) {
    while (trail.size() > mark) {
      int pos = trail.back();
      trail.pop_back();
      bool v = value[static_cast<size_t>(pos)] == 1;
      value[static_cast<size_t>(pos)] = -1;
      for (int ci : clausesOf[static_cast<size_t>(pos)]) {
        bool satHere = false;
        for (int lit : lits[static_cast<size_t>(ci)])
          if ((lit >> 1) == pos && (lit & 1) == (v ? 0 : 1)) satHere = true;
        if (satHere) satCount[static_cast<size_t>(ci)]--;
        freeCount[static_cast<size_t>(ci)]++;
      }
    }
  }

  // Unit propagation from pending unit clauses; false on conflict.
  bool propagate(std::vector<int> units) {
    while (!units.empty()) {
      int ci = units.back();
      units.pop_back();
      if (satCount[static_cast<size_t>(ci)] > 0) continue;
      int unitLit = -1;
      for (int lit : lits[static_cast<size_t>(ci)])
        if (value[static_cast<size_t>(lit >> 1)] < 0) unitLit = lit;
      if (unitLit < 0) continue; // resolved meanwhile
      if (!assign(unitLit >> 1, (unitLit & 1) == 0, units)) return false;
    }
    return true;
  }

  void emit_model() {
    if (++produced > rowCap)
      throw ResourceError("enumerate: model count exceeds cap of " +
                          std::to_string(rowCap) +
                          (label.empty() ? "" : " in " + label) +
                          "; lower --clause-limit");
    Key key(varCount);
    for (size_t i = 0; i < varCount; ++i) key.set_bit(i, value[i] == 1);
    out->add_row(key, 1);
  }

  void search(int firstUnassigned) {
    int pos = -1;
    for (size_t i = static_cast<size_t>(firstUnassigned); i < varCount; ++i)
      if (value[i] < 0) {
        pos = static_cast<int>(i);
        break;
      }
    if (pos < 0) {
      emit_model();
      return;
    }
    for (bool v : {false, true}) {
      size_t mark = trail.size();
      std::vector<int> units;
      if (assign(pos, v, units) && propagate(std::move(units))) search(pos + 1);
      unassign_to(mark);
    }
  }
};

} // namespace

SolutionTable enumerate_models(const std::vector<Clause>& clauses,
                               const std::vector<int>& vars, uint64_t rowCap,
                               const std::string& label) {
  std::vector<int> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::unordered_map<int, int> posOf;
  posOf.reserve(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) posOf[sorted[i]] = static_cast<int>(i);

  Enumerator en;
  en.varCount = sorted.size();
  en.rowCap = rowCap;
  en.label = label;
  en.value.assign(sorted.size(), -1);
  en.clausesOf.resize(sorted.size());

  SolutionTable table{sorted};
  en.out = &table;

  bool emptyClause = false;
  for (const Clause& c : clauses) {
    std::vector<int> local;
    local.reserve(c.size());
    for (int lit : c) {
      int v = lit < 0 ? -lit : lit;
      auto it = posOf.find(v);
      if (it == posOf.end())
        throw InvariantError("enumerate: clause variable outside the given set");
      local.push_back(it->second << 1 | (lit < 0 ? 1 : 0));
    }
    // duplicate literals inflate counters; dedupe, tautologies drop the clause
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    bool taut = false;
    for (size_t i = 0; i + 1 < local.size(); ++i)
      if ((local[i] >> 1) == (local[i + 1] >> 1)) taut = true;
    if (taut) continue;
    if (local.empty()) {
      emptyClause = true;
      continue;
    }
    int ci = static_cast<int>(en.lits.size());
    for (int lit : local) en.clausesOf[static_cast<size_t>(lit >> 1)].push_back(ci);
    en.freeCount.push_back(static_cast<int>(local.size()));
    en.satCount.push_back(0);
    en.lits.push_back(std::move(local));
  }
  if (emptyClause) return table; // unsatisfiable

  // top-level units
  std::vector<int> units;
  for (size_t ci = 0; ci < en.lits.size(); ++ci)
    if (en.lits[ci].size() == 1) units.push_back(static_cast<int>(ci));
  if (!en.propagate(std::move(units))) return table;
  en.search(0);
  return table;
}

} // namespace apxerr
