#pragma once

#include "apxerr/metrics.hpp"

#include <string>
#include <vector>

namespace apxerr {

struct SystemShape {
  int n = 0;
  int m = 0;
  int vars = 0;
  size_t clauses = 0;
};

/// Stable-schema JSON: probabilities and counts as exact num/den strings plus
/// a decimal rendering; anything that can exceed 2^53 is a string. By design
/// the report carries no configuration echo or timing, so identical metric
/// values produce byte-identical documents.
std::string render_json(const MetricReport& report, const SystemShape& shape, int precision);

std::string render_csv(const MetricReport& report, int precision);

std::string render_text(const MetricReport& report, const SystemShape& shape, int precision);

/// Rows `value,count,denominator` with count/2^n the exact probability.
std::string render_histogram_csv(const std::vector<std::pair<BigInt, BigRational>>& pdf,
                                 int n);

/// `# value probability` header then decimal columns, plot-ready.
std::string render_histogram_gnuplot(const std::vector<std::pair<BigInt, BigRational>>& pdf,
                                     int precision);

} // namespace apxerr
