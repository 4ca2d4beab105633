#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace apxerr {

/// Textbook HyperLogLog over pre-hashed 64-bit items: top `precision` bits
/// select a register, the rank of the remainder updates it. Good to ~1% at
/// precision 14; only relative ordering of estimates matters here.
class HyperLogLog {
 public:
  explicit HyperLogLog(int precision)
      : precision_(precision), registers_(size_t(1) << precision, 0) {}

  void add(uint64_t hash) {
    size_t idx = hash >> (64 - precision_);
    uint64_t rest = hash << precision_ | (size_t(1) << (precision_ - 1));
    uint8_t rank = static_cast<uint8_t>(__builtin_clzll(rest) + 1);
    if (rank > registers_[idx]) registers_[idx] = rank;
  }

  double estimate() const {
    double m = static_cast<double>(registers_.size());
    double alpha = 0.7213 / (1.0 + 1.079 / m);
    double sum = 0.0;
    size_t zeros = 0;
    for (uint8_t r : registers_) {
      sum += std::pow(2.0, -static_cast<double>(r));
      if (r == 0) ++zeros;
    }
    double e = alpha * m * m / sum;
    if (e <= 2.5 * m && zeros > 0)
      e = m * std::log(m / static_cast<double>(zeros)); // linear counting
    return e;
  }

 private:
  int precision_;
  std::vector<uint8_t> registers_;
};

} // namespace apxerr
