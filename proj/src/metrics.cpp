#include "apxerr/metrics.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

namespace apxerr {

namespace {

void bump(QueryStats* stats, uint64_t by) {
  if (stats) stats->queries += by;
}

BigRational over_2n(const BigInt& num, int n) {
  return BigRational(num, pow2(static_cast<unsigned>(n)));
}

// Full error-bit pattern of the two's-complement value v (m+1 bits).
Query pattern_query(const BigInt& v, int m) {
  BigInt u = v;
  if (u < 0) u += pow2(static_cast<unsigned>(m) + 1);
  Query q;
  for (int i = 0; i <= m; ++i)
    q.set(i, boost::multiprecision::bit_test(u, static_cast<unsigned>(i)));
  return q;
}

struct GreedyPass {
  BigInt magnitude;    // |value| of the extreme feasible error on this side
  BigInt patternCount; // models of its full bit pattern
};

// Fixes the sign bit, then walks bits m-1..0 keeping each bit at the
// magnitude-maximizing polarity whenever the accumulated assignment stays
// satisfiable (infeasible probes pin the opposite polarity, which every
// remaining model already has). nullopt when the sign itself is infeasible.
std::optional<GreedyPass> greedy_extreme(const JoinTree& tree, bool signBit,
                                         QueryStats* stats) {
  int m = tree.m();
  bool prefer = !signBit; // positive side wants 1s, negative side wants 0s
  Query q{{m, signBit}};
  bump(stats, 1);
  BigInt cur = sat_count(tree, q);
  if (cur == 0) return std::nullopt;

  BigInt low = 0;
  for (int i = m - 1; i >= 0; --i) {
    Query probe = q;
    probe.set(i, prefer);
    bump(stats, 1);
    BigInt c = sat_count(tree, probe);
    bool bit;
    if (c > 0) {
      q = std::move(probe);
      cur = std::move(c);
      bit = prefer;
    } else {
      q.set(i, !prefer);
      bit = !prefer;
    }
    if (bit) low += pow2(static_cast<unsigned>(i));
  }
  GreedyPass pass;
  pass.magnitude = signBit ? pow2(static_cast<unsigned>(m)) - low : low;
  pass.patternCount = std::move(cur);
  return pass;
}

} // namespace

BigRational error_rate(const JoinTree& tree, int threads, QueryStats* stats) {
  (void)threads;
  Query zero;
  for (int i = 0; i <= tree.m(); ++i) zero.set(i, false);
  bump(stats, 1);
  return 1 - over_2n(sat_count(tree, zero), tree.n);
}

BigRational mean_abs_error(const JoinTree& tree, int threads, QueryStats* stats) {
  int m = tree.m();
  std::vector<Query> queries;
  queries.push_back(Query{{m, true}});
  for (int i = 0; i < m; ++i) {
    queries.push_back(Query{{i, true}, {m, false}});
    queries.push_back(Query{{i, false}, {m, true}});
  }
  bump(stats, queries.size());
  std::vector<BigInt> counts = sat_count_batch(tree, queries, threads);

  BigInt num = counts[0];
  for (int i = 0; i < m; ++i)
    num += (counts[static_cast<size_t>(2 * i + 1)] + counts[static_cast<size_t>(2 * i + 2)])
           << static_cast<unsigned>(i);
  return over_2n(num, tree.n);
}

BigRational mean_sq_error(const JoinTree& tree, int threads, QueryStats* stats) {
  int m = tree.m();

  std::vector<Query> singles;
  for (int i = 0; i <= m; ++i) singles.push_back(Query{{i, true}});
  bump(stats, singles.size());
  std::vector<BigInt> s = sat_count_batch(tree, singles, threads);

  // a pair count is zero whenever either single is; skip those queries
  std::vector<Query> pairs;
  std::vector<std::pair<int, int>> pairIndex;
  for (int i = 0; i < m; ++i) {
    if (s[static_cast<size_t>(i)] == 0) continue;
    for (int j = i + 1; j <= m; ++j) {
      if (s[static_cast<size_t>(j)] == 0) continue;
      pairs.push_back(Query{{i, true}, {j, true}});
      pairIndex.push_back({i, j});
    }
  }
  bump(stats, pairs.size());
  std::vector<BigInt> p = sat_count_batch(tree, pairs, threads);

  BigInt num = 0;
  for (int i = 0; i <= m; ++i) num += s[static_cast<size_t>(i)] << static_cast<unsigned>(2 * i);
  for (size_t k = 0; k < pairIndex.size(); ++k) {
    auto [i, j] = pairIndex[k];
    if (j < m)
      num += p[k] << static_cast<unsigned>(i + j + 1);
    else
      num -= p[k] << static_cast<unsigned>(i + m + 1);
  }
  if (num < 0) throw InvariantError("mean_sq_error: negative numerator");
  return over_2n(num, tree.n);
}

WceResult worst_case_error(const JoinTree& tree, int threads, QueryStats* stats) {
  (void)threads;
  std::optional<GreedyPass> pos = greedy_extreme(tree, false, stats);
  std::optional<GreedyPass> neg = greedy_extreme(tree, true, stats);

  WceResult out;
  const GreedyPass* winner = nullptr;
  if (pos && (!neg || pos->magnitude >= neg->magnitude)) {
    winner = &*pos;
    out.sign = pos->magnitude > 0 ? +1 : 0;
  } else if (neg) {
    winner = &*neg;
    out.sign = -1; // negative magnitudes are always >= 1
  } else {
    throw InvariantError("worst_case_error: no feasible error sign");
  }
  out.magnitude = winner->magnitude;
  out.probability = over_2n(winner->patternCount, tree.n);
  return out;
}

std::vector<std::pair<BigInt, BigRational>> error_pdf(
    const JoinTree& tree, std::optional<std::pair<BigInt, BigInt>> range,
    uint64_t budget, int threads, QueryStats* stats) {
  int m = tree.m();

  BigInt lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
  } else {
    std::optional<GreedyPass> pos = greedy_extreme(tree, false, stats);
    std::optional<GreedyPass> neg = greedy_extreme(tree, true, stats);
    hi = pos ? pos->magnitude : BigInt(0);
    lo = neg ? -neg->magnitude : BigInt(0);
  }

  // clamp to representable two's-complement values; outside has zero mass
  BigInt minRep = -pow2(static_cast<unsigned>(m));
  BigInt maxRep = pow2(static_cast<unsigned>(m)) - 1;
  if (lo < minRep) lo = minRep;
  if (hi > maxRep) hi = maxRep;

  std::vector<std::pair<BigInt, BigRational>> out;
  if (lo > hi) return out;

  BigInt span = hi - lo + 1;
  if (span > BigInt(budget))
    throw ResourceError("error_pdf: range of " + span.str() +
                        " values exceeds query budget of " + std::to_string(budget) +
                        "; restrict the range");

  std::vector<Query> queries;
  std::vector<BigInt> values;
  for (BigInt v = lo; v <= hi; ++v) {
    queries.push_back(pattern_query(v, m));
    values.push_back(v);
  }
  bump(stats, queries.size());
  std::vector<BigInt> counts = sat_count_batch(tree, queries, threads);
  for (size_t i = 0; i < values.size(); ++i)
    if (counts[i] > 0) out.push_back({values[i], over_2n(counts[i], tree.n)});
  return out;
}

MetricReport compute_all(const JoinTree& tree, const MetricSelection& selection, int threads,
                         MetricTimings* timings) {
  if (!selection.any()) throw InputError("no metrics requested");
  MetricReport report;
  report.n = tree.n;
  report.m = tree.m();
  QueryStats stats;

  auto timed = [&](double* slot, auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    if (timings)
      *slot = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  double sink = 0;
  if (selection.er)
    timed(timings ? &timings->erSec : &sink,
          [&] { report.er = error_rate(tree, threads, &stats); });
  if (selection.mae)
    timed(timings ? &timings->maeSec : &sink,
          [&] { report.mae = mean_abs_error(tree, threads, &stats); });
  if (selection.mse)
    timed(timings ? &timings->mseSec : &sink,
          [&] { report.mse = mean_sq_error(tree, threads, &stats); });
  if (selection.wce)
    timed(timings ? &timings->wceSec : &sink,
          [&] { report.wce = worst_case_error(tree, threads, &stats); });
  report.queryCount = stats.queries;
  return report;
}

} // namespace apxerr
