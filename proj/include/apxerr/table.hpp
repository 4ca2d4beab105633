#pragma once

#include "apxerr/bigint.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace apxerr {

/// Compact bit-vector key over a table's variable order (bit i the assignment
/// of vars()[i]). Unused high bits are kept zero so word equality works.
class Key {
 public:
  Key() = default;
  explicit Key(size_t bitCount) : words_((bitCount + 63) / 64, 0) {}

  bool bit(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set_bit(size_t i, bool v) {
    uint64_t mask = 1ull << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  size_t word_count() const { return words_.size(); }
  uint64_t word(size_t i) const { return words_[i]; }

  bool operator==(const Key& o) const { return words_ == o.words_; }

  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ (words_.size() * 0xff51afd7ed558ccdull);
    for (uint64_t w : words_) {
      w *= 0xff51afd7ed558ccdull;
      w ^= w >> 33;
      w *= 0xc4ceb9fe1a85ec53ull;
      h = (h ^ w) * 0x2545f4914f6cdd1dull;
    }
    return h ^ (h >> 29);
  }

 private:
  boost::container::small_vector<uint64_t, 2> words_;
};

struct KeyHash {
  size_t operator()(const Key& k) const { return k.hash(); }
};

/// Estimator configuration for merged-table sizes: exact distinct counting
/// below `exactThreshold` rows, a 2^sketchPrecision-register HyperLogLog
/// sketch above it.
struct SizeEstimator {
  size_t exactThreshold = 4096;
  int sketchPrecision = 14;
};

/// Factor over an ascending variable list: assignment -> positive count.
/// Zero-count rows are never stored.
class SolutionTable {
 public:
  using Rows = std::unordered_map<Key, BigInt, KeyHash>;

  SolutionTable() = default;
  explicit SolutionTable(std::vector<int> vars);

  const std::vector<int>& vars() const { return vars_; }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const Rows& rows() const { return rows_; }

  /// Adds `count` to the row for `key` (inserting it when absent).
  void add_row(const Key& key, const BigInt& count);

  BigInt total_count() const;

  /// Position of `var` in vars(), or -1.
  int position_of(int var) const;

  void reserve(size_t n) { rows_.reserve(n); }

  bool same_rows(const SolutionTable& other) const;

 private:
  std::vector<int> vars_;
  Rows rows_;
};

/// Join on shared variables (counts multiply, partnerless rows drop).
/// Throws ResourceError when the result would exceed `rowCap` rows.
SolutionTable factor_product(const SolutionTable& t1, const SolutionTable& t2,
                             size_t rowCap);

/// Sums counts over the dropped variables; total count is preserved.
SolutionTable marginalize(const SolutionTable& t, const std::vector<int>& dropVars);

/// Complement form: keep exactly `keepVars` (must be a subset of t.vars()).
SolutionTable marginalize_onto(const SolutionTable& t, const std::vector<int>& keepVars);

/// Predicted row count of factor_product(t1, t2): |T1|*|T2| / max(d1, d2)
/// with d_k the distinct count of row projections onto the shared variables
/// (the Cartesian bound when nothing is shared).
uint64_t estimate_merge_size(const SolutionTable& t1, const SolutionTable& t2,
                             const SizeEstimator& est);

} // namespace apxerr
