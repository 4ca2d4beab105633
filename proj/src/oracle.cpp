#include "apxerr/oracle.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace apxerr {

OracleReport metrics_from_pdf(std::vector<std::pair<BigInt, BigRational>> pdf, int n, int m) {
  std::sort(pdf.begin(), pdf.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  OracleReport r;
  r.n = n;
  r.m = m;
  r.er = 1;
  r.mae = 0;
  r.mse = 0;
  r.wce = 0;
  r.wceSign = 0;
  r.pWce = 0;

  BigRational pZero = 0;
  for (const auto& [v, p] : pdf) {
    if (v == 0) pZero = p;
    BigInt mag = v < 0 ? BigInt(-v) : v;
    r.mae += BigRational(mag) * p;
    r.mse += BigRational(mag * mag) * p;
    bool better = mag > r.wce || (mag == r.wce && v > 0 && r.wceSign < 0);
    if (mag > 0 && better) {
      r.wce = mag;
      r.wceSign = v > 0 ? +1 : -1;
      r.pWce = p;
    }
  }
  r.er = 1 - pZero;
  if (r.wce == 0) r.pWce = pZero; // zero worst case: probability of E = 0
  r.pdf = std::move(pdf);
  return r;
}

namespace {

// Lane patterns for the low six input bits of a 64-wide simulation block.
constexpr uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

BigInt word_outputs_value(const std::vector<uint64_t>& words, int lane) {
  BigInt v = 0;
  for (size_t i = 0; i < words.size(); ++i)
    if ((words[i] >> lane) & 1) boost::multiprecision::bit_set(v, static_cast<unsigned>(i));
  return v;
}

} // namespace

OracleReport exhaustive_metrics(const Netlist& exact, const Netlist& approx, int inputCap) {
  if (exact.inputs.size() != approx.inputs.size())
    throw InputError("oracle: input-arity mismatch");
  int n = static_cast<int>(exact.inputs.size());
  if (n > inputCap)
    throw ResourceError("oracle: " + std::to_string(n) + " inputs exceed the exhaustive cap of " +
                        std::to_string(inputCap));

  int m = static_cast<int>(std::max(exact.outputs.size(), approx.outputs.size()));
  uint64_t total = uint64_t(1) << n;
  uint64_t blocks = (total + 63) / 64;

  std::map<BigInt, uint64_t> countOf;
  std::vector<uint64_t> in(static_cast<size_t>(n));
  for (uint64_t b = 0; b < blocks; ++b) {
    for (int i = 0; i < n; ++i)
      in[static_cast<size_t>(i)] =
          i < 6 ? kLanePattern[i] : ((b >> (i - 6)) & 1 ? ~0ull : 0ull);
    std::vector<uint64_t> yw = exact.simulate_words(in);
    std::vector<uint64_t> aw = approx.simulate_words(in);
    int lanes = static_cast<int>(std::min<uint64_t>(64, total - b * 64));
    for (int lane = 0; lane < lanes; ++lane) {
      BigInt e = word_outputs_value(yw, lane) - word_outputs_value(aw, lane);
      countOf[e]++;
    }
  }

  std::vector<std::pair<BigInt, BigRational>> pdf;
  pdf.reserve(countOf.size());
  BigInt den = pow2(static_cast<unsigned>(n));
  for (const auto& [v, c] : countOf) pdf.push_back({v, BigRational(c, den)});
  return metrics_from_pdf(std::move(pdf), n, m);
}

std::optional<std::pair<AdderSpec, AdderSpec>> localized_reduction(const AdderSpec& exact,
                                                                   const AdderSpec& approx) {
  if (exact.family != AdderFamily::kExact) return std::nullopt;
  if (approx.family == AdderFamily::kGear || approx.family == AdderFamily::kExact)
    return std::nullopt;
  if (exact.width != approx.width) return std::nullopt;

  int k = std::max(approx.approxBits, 1);
  AdderSpec ex;
  ex.family = AdderFamily::kExact;
  ex.width = k;
  AdderSpec ap = approx;
  ap.width = k;
  ap.approxBits = std::min(approx.approxBits, k);
  return std::make_pair(ex, ap);
}

OracleReport adder_oracle(const AdderSpec& exact, const AdderSpec& approx, int inputCap) {
  auto reduced = localized_reduction(exact, approx);
  if (!reduced || reduced->first.width >= exact.width)
    return exhaustive_metrics(generate_adder(exact), generate_adder(approx), inputCap);

  Netlist exFull = generate_adder(exact);
  Netlist apFull = generate_adder(approx);
  Netlist exSmall = generate_adder(reduced->first);
  Netlist apSmall = generate_adder(reduced->second);

  // certificate check: on random full-width vectors the error must depend on
  // the low operand bits alone
  std::mt19937_64 rng(0x10caL);
  int w = exact.width;
  int k = reduced->first.width;
  for (int trial = 0; trial < 256; ++trial) {
    std::vector<bool> full(static_cast<size_t>(2 * w));
    for (size_t i = 0; i < full.size(); ++i) full[i] = rng() & 1;
    std::vector<bool> low(full.begin(), full.begin() + 2 * k);

    auto value = [](const std::vector<bool>& bits) {
      BigInt v = 0;
      for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) boost::multiprecision::bit_set(v, static_cast<unsigned>(i));
      return v;
    };
    auto out_value = [&](const Netlist& nl, const std::vector<bool>& bits) {
      return value(nl.simulate(bits));
    };
    BigInt eFull = out_value(exFull, full) - out_value(apFull, full);
    BigInt eSmall = out_value(exSmall, low) - out_value(apSmall, low);
    if (eFull != eSmall)
      throw InvariantError("localized oracle: reduction certificate failed");
  }

  // probabilities of the reduced pair equal the full-width ones exactly;
  // restate the report at full-width shape
  OracleReport small = exhaustive_metrics(exSmall, apSmall, inputCap);
  return metrics_from_pdf(std::move(small.pdf), 2 * w, w + 1);
}

} // namespace apxerr
