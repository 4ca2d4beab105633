#include "apxerr/engine.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <optional>
#include <thread>

namespace apxerr {

Query::Query(std::initializer_list<std::pair<int, bool>> init) {
  for (const auto& [i, v] : init) set(i, v);
}

void Query::set(int index, bool value) {
  auto it = std::lower_bound(bits.begin(), bits.end(), index,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != bits.end() && it->first == index)
    throw InvariantError("query: error bit assigned twice");
  bits.insert(it, {index, value});
}

const bool* Query::value_of(int index) const {
  auto it = std::lower_bound(bits.begin(), bits.end(), index,
                             [](const auto& p, int i) { return p.first < i; });
  if (it == bits.end() || it->first != index) return nullptr;
  return &it->second;
}

void Query::check(int m) const {
  for (const auto& [i, v] : bits)
    if (i < 0 || i > m) throw InvariantError("query: error bit index out of range");
}

namespace {

// Conditioning masks per key word for one vertex.
struct RowFilter {
  std::vector<std::pair<size_t, std::pair<uint64_t, uint64_t>>> words; // (word, (mask, want))

  bool pass(const Key& k) const {
    for (const auto& [w, mw] : words)
      if ((k.word(w) & mw.first) != mw.second) return false;
    return true;
  }
};

RowFilter make_filter(const TreeVertex& v, const Query& q) {
  RowFilter f;
  std::vector<std::pair<uint64_t, uint64_t>> perWord;
  for (const auto& [pos, errIndex] : v.errorBits) {
    const bool* val = q.value_of(errIndex);
    if (!val) continue;
    size_t w = static_cast<size_t>(pos) >> 6;
    uint64_t mask = 1ull << (pos & 63);
    if (perWord.size() <= w) perWord.resize(w + 1, {0, 0});
    perWord[w].first |= mask;
    if (*val) perWord[w].second |= mask;
  }
  for (size_t w = 0; w < perWord.size(); ++w)
    if (perWord[w].first) f.words.push_back({w, perWord[w]});
  return f;
}

SolutionTable filter_rows(const SolutionTable& t, const RowFilter& f) {
  SolutionTable out{t.vars()};
  for (const auto& [k, c] : t.rows())
    if (f.pass(k)) out.add_row(k, c);
  return out;
}

// Message for `vertex` toward its parent, or the full working table when it
// is a root (empty optional means some table emptied: count is 0).
std::optional<SolutionTable> propagate(const JoinTree& tree, int vertex, const Query& q) {
  const TreeVertex& v = tree.vertices[static_cast<size_t>(vertex)];

  const SolutionTable* working = &v.table;
  SolutionTable owned;

  RowFilter f = make_filter(v, q);
  if (!f.words.empty()) {
    owned = filter_rows(v.table, f);
    working = &owned;
    if (owned.empty()) return std::nullopt;
  }

  for (int child : v.children) {
    std::optional<SolutionTable> msg = propagate(tree, child, q);
    if (!msg) return std::nullopt;
    owned = factor_product(*working, *msg, SIZE_MAX);
    working = &owned;
    if (owned.empty()) return std::nullopt;
  }

  if (v.parent < 0) {
    if (working != &owned) owned = *working;
    return owned;
  }
  return marginalize_onto(*working, v.sharedWithParent);
}

} // namespace

BigInt sat_count(const JoinTree& tree, const Query& q) {
  q.check(tree.m());

  BigInt result = 1;
  for (int root : tree.roots) {
    std::optional<SolutionTable> rootTable = propagate(tree, root, q);
    if (!rootTable) return 0;
    BigInt sum = rootTable->total_count();
    if (sum == 0) return 0;
    result *= sum;
  }

  // variables outside every clause: two completions each unless conditioned
  uint64_t freeDoublings = tree.freeNonErrorVars;
  for (int errIndex : tree.freeErrorIndices)
    if (!q.value_of(errIndex)) ++freeDoublings;
  result <<= freeDoublings;
  return result;
}

std::vector<BigInt> sat_count_batch(const JoinTree& tree, const std::vector<Query>& queries,
                                    int threads) {
  if (threads < 1) throw InputError("sat_count_batch: threads must be >= 1");
  std::vector<BigInt> results(queries.size());
  if (queries.empty()) return results;

  size_t workers = std::min<size_t>(static_cast<size_t>(threads), queries.size());
  if (workers <= 1) {
    for (size_t i = 0; i < queries.size(); ++i) results[i] = sat_count(tree, queries[i]);
    return results;
  }

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= queries.size()) return;
        results[i] = sat_count(tree, queries[i]);
      }
    });
  for (std::thread& t : pool) t.join();
  return results;
}

} // namespace apxerr
