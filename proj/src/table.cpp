#include "apxerr/table.hpp"

#include "apxerr/errors.hpp"
#include "apxerr/hll.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace apxerr {

SolutionTable::SolutionTable(std::vector<int> vars) : vars_(std::move(vars)) {
  assert(std::is_sorted(vars_.begin(), vars_.end()));
  assert(std::adjacent_find(vars_.begin(), vars_.end()) == vars_.end());
}

void SolutionTable::add_row(const Key& key, const BigInt& count) {
  assert(count > 0);
  auto [it, fresh] = rows_.try_emplace(key, count);
  if (!fresh) it->second += count;
}

BigInt SolutionTable::total_count() const {
  BigInt total = 0;
  for (const auto& [k, c] : rows_) total += c;
  return total;
}

int SolutionTable::position_of(int var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return -1;
  return static_cast<int>(it - vars_.begin());
}

bool SolutionTable::same_rows(const SolutionTable& other) const {
  if (vars_ != other.vars_ || rows_.size() != other.rows_.size()) return false;
  for (const auto& [k, c] : rows_) {
    auto it = other.rows_.find(k);
    if (it == other.rows_.end() || it->second != c) return false;
  }
  return true;
}

namespace {

Key project(const Key& key, const std::vector<int>& positions) {
  Key out(positions.size());
  for (size_t i = 0; i < positions.size(); ++i)
    out.set_bit(i, key.bit(static_cast<size_t>(positions[i])));
  return out;
}

std::vector<int> positions_in(const std::vector<int>& vars, const std::vector<int>& subset) {
  std::vector<int> pos;
  pos.reserve(subset.size());
  for (int v : subset) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    assert(it != vars.end() && *it == v);
    pos.push_back(static_cast<int>(it - vars.begin()));
  }
  return pos;
}

} // namespace

SolutionTable factor_product(const SolutionTable& t1, const SolutionTable& t2,
                             size_t rowCap) {
  std::vector<int> shared;
  std::set_intersection(t1.vars().begin(), t1.vars().end(), t2.vars().begin(),
                        t2.vars().end(), std::back_inserter(shared));
  std::vector<int> unionVars;
  std::set_union(t1.vars().begin(), t1.vars().end(), t2.vars().begin(),
                 t2.vars().end(), std::back_inserter(unionVars));

  const SolutionTable& small = t1.size() <= t2.size() ? t1 : t2;
  const SolutionTable& large = t1.size() <= t2.size() ? t2 : t1;

  std::vector<int> smallShared = positions_in(small.vars(), shared);
  std::vector<int> largeShared = positions_in(large.vars(), shared);
  // scatter maps: source bit position -> result bit position
  std::vector<int> smallScatter = positions_in(unionVars, small.vars());
  std::vector<int> largeScatter = positions_in(unionVars, large.vars());

  // hash index over the smaller side's shared projection
  std::unordered_map<Key, std::vector<const std::pair<const Key, BigInt>*>, KeyHash> index;
  index.reserve(small.size());
  for (const auto& row : small.rows())
    index[project(row.first, smallShared)].push_back(&row);

  SolutionTable out{unionVars};
  size_t produced = 0;
  for (const auto& [lk, lc] : large.rows()) {
    auto it = index.find(project(lk, largeShared));
    if (it == index.end()) continue;
    for (const auto* srow : it->second) {
      if (++produced > rowCap)
        throw ResourceError("factor_product: result exceeds row cap of " +
                            std::to_string(rowCap));
      Key key(unionVars.size());
      for (size_t i = 0; i < largeScatter.size(); ++i)
        key.set_bit(static_cast<size_t>(largeScatter[i]), lk.bit(i));
      for (size_t i = 0; i < smallScatter.size(); ++i)
        key.set_bit(static_cast<size_t>(smallScatter[i]), srow->first.bit(i));
      out.add_row(key, lc * srow->second);
    }
  }
  return out;
}

SolutionTable marginalize(const SolutionTable& t, const std::vector<int>& dropVars) {
  std::vector<int> keep;
  std::set_difference(t.vars().begin(), t.vars().end(), dropVars.begin(),
                      dropVars.end(), std::back_inserter(keep));
  if (keep.size() + dropVars.size() != t.vars().size())
    throw InvariantError("marginalize: dropVars not a subset of table vars");
  return marginalize_onto(t, keep);
}

SolutionTable marginalize_onto(const SolutionTable& t, const std::vector<int>& keepVars) {
  if (keepVars == t.vars()) return t;
  std::vector<int> keepPos = positions_in(t.vars(), keepVars);
  SolutionTable out{keepVars};
  out.reserve(t.size());
  for (const auto& [k, c] : t.rows()) out.add_row(project(k, keepPos), c);
  return out;
}

uint64_t estimate_merge_size(const SolutionTable& t1, const SolutionTable& t2,
                             const SizeEstimator& est) {
  std::vector<int> shared;
  std::set_intersection(t1.vars().begin(), t1.vars().end(), t2.vars().begin(),
                        t2.vars().end(), std::back_inserter(shared));
  uint64_t n1 = t1.size();
  uint64_t n2 = t2.size();
  if (shared.empty() || n1 == 0 || n2 == 0) return n1 * n2;

  auto distinct_shared = [&](const SolutionTable& t) -> double {
    std::vector<int> pos = positions_in(t.vars(), shared);
    if (t.size() <= est.exactThreshold) {
      std::unordered_set<Key, KeyHash> seen;
      seen.reserve(t.size());
      for (const auto& [k, c] : t.rows()) seen.insert(project(k, pos));
      return static_cast<double>(seen.size());
    }
    HyperLogLog hll(est.sketchPrecision);
    for (const auto& [k, c] : t.rows()) hll.add(project(k, pos).hash());
    return hll.estimate();
  };

  double d = std::max({distinct_shared(t1), distinct_shared(t2), 1.0});
  double e = static_cast<double>(n1) * static_cast<double>(n2) / d;
  if (e < 1.0) e = 1.0;
  return static_cast<uint64_t>(e);
}

} // namespace apxerr
