#pragma once

#include "apxerr/adders.hpp"
#include "apxerr/bigint.hpp"
#include "apxerr/netlist.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace apxerr {

/// Ground-truth metrics from exhaustive input enumeration.
struct OracleReport {
  int n = 0;
  int m = 0;
  BigRational er, mae, mse;
  BigInt wce;
  int wceSign = 0;
  BigRational pWce;
  std::vector<std::pair<BigInt, BigRational>> pdf; // value-ascending, nonzero only
};

/// Derives every metric from a (value, probability) distribution.
OracleReport metrics_from_pdf(std::vector<std::pair<BigInt, BigRational>> pdf, int n, int m);

/// Simulates both netlists on all 2^n inputs (word-parallel) and accumulates
/// the exact error distribution. Throws ResourceError when n > inputCap.
OracleReport exhaustive_metrics(const Netlist& exact, const Netlist& approx,
                                int inputCap = 24);

/// For an EXACT(w) vs LPAA(w, k) pair the upper ripple chain cancels in
/// y - ŷ, so the error distribution equals that of EXACT(k) vs FAMILY(k, k):
/// returns that reduced pair, or nullopt when no reduction applies (GEAR and
/// non-adder shapes).
std::optional<std::pair<AdderSpec, AdderSpec>> localized_reduction(const AdderSpec& exact,
                                                                   const AdderSpec& approx);

/// Oracle for a generated adder pair: uses the localized reduction when it
/// applies (validating it on random full-width vectors first), otherwise
/// full exhaustive enumeration under the cap.
OracleReport adder_oracle(const AdderSpec& exact, const AdderSpec& approx, int inputCap = 24);

} // namespace apxerr
