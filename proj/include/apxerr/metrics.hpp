#pragma once

#include "apxerr/bigint.hpp"
#include "apxerr/engine.hpp"

#include <optional>
#include <vector>

namespace apxerr {

struct QueryStats {
  uint64_t queries = 0;
};

struct WceResult {
  BigInt magnitude;        // >= 0
  int sign = 0;            // +1 / -1 / 0; magnitude 0 <=> sign 0
  BigRational probability; // of the achieving error value
};

struct MetricSelection {
  bool er = false, mae = false, mse = false, wce = false;

  static MetricSelection all() { return {true, true, true, true}; }
  bool any() const { return er || mae || mse || wce; }
};

struct MetricReport {
  int n = 0;
  int m = 0;
  std::optional<BigRational> er, mae, mse;
  std::optional<WceResult> wce;
  uint64_t queryCount = 0;
};

/// 1 - sat-count(all error bits zero) / 2^n.
BigRational error_rate(const JoinTree& tree, int threads, QueryStats* stats = nullptr);

/// (sat-count(e_m) + sum_i 2^i sat-count(e_i xor e_m)) / 2^n, each xor count
/// as the two mixed-polarity pair queries.
BigRational mean_abs_error(const JoinTree& tree, int threads, QueryStats* stats = nullptr);

/// (sum_i 2^(2i) c(e_i) + sum_{i<j<m} 2^(i+j+1) c(e_i & e_j)
///  - sum_{i<m} 2^(i+m+1) c(e_i & e_m)) / 2^n.
BigRational mean_sq_error(const JoinTree& tree, int threads, QueryStats* stats = nullptr);

/// Greedy bitwise feasibility descent, positive (e_m = 0) and negative
/// (e_m = 1, plus one) passes; largest magnitude wins, ties to +.
WceResult worst_case_error(const JoinTree& tree, int threads, QueryStats* stats = nullptr);

/// Probabilities of each error value in [lo, hi] (default: [-WCE-, +WCE+]),
/// zero-probability values omitted. Guarded by `budget` conditioned queries.
std::vector<std::pair<BigInt, BigRational>> error_pdf(
    const JoinTree& tree, std::optional<std::pair<BigInt, BigInt>> range,
    uint64_t budget, int threads, QueryStats* stats = nullptr);

struct MetricTimings {
  double erSec = 0, maeSec = 0, mseSec = 0, wceSec = 0;
};

MetricReport compute_all(const JoinTree& tree, const MetricSelection& selection, int threads,
                         MetricTimings* timings = nullptr);

} // namespace apxerr
