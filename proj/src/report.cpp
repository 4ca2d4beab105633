#include "apxerr/report.hpp"

#include <json.hpp>

#include <sstream>

namespace apxerr {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const BigRational& r, int precision) {
  Json j;
  j["num"] = boost::multiprecision::numerator(r).str();
  j["den"] = boost::multiprecision::denominator(r).str();
  j["dec"] = to_decimal(r, precision);
  return j;
}

const char* sign_name(int sign) {
  return sign > 0 ? "+" : sign < 0 ? "-" : "zero";
}

} // namespace

std::string render_json(const MetricReport& report, const SystemShape& shape, int precision) {
  Json j;
  j["system"] = {{"n", shape.n}, {"m", shape.m}, {"vars", shape.vars}, {"clauses", shape.clauses}};
  Json metrics = Json::object();
  if (report.er) metrics["er"] = rational_json(*report.er, precision);
  if (report.mae) metrics["mae"] = rational_json(*report.mae, precision);
  if (report.mse) metrics["mse"] = rational_json(*report.mse, precision);
  if (report.wce) {
    metrics["wce"] = rational_json(BigRational(report.wce->magnitude), precision);
    metrics["wce_sign"] = sign_name(report.wce->sign);
    metrics["p_wce"] = rational_json(report.wce->probability, precision);
  }
  j["metrics"] = std::move(metrics);
  j["queries"] = report.queryCount;
  return j.dump(2) + "\n";
}

std::string render_csv(const MetricReport& report, int precision) {
  std::ostringstream os;
  os << "metric,num,den,dec\n";
  auto row = [&](const char* name, const BigRational& r) {
    os << name << ',' << boost::multiprecision::numerator(r).str() << ','
       << boost::multiprecision::denominator(r).str() << ',' << to_decimal(r, precision)
       << '\n';
  };
  if (report.er) row("er", *report.er);
  if (report.mae) row("mae", *report.mae);
  if (report.mse) row("mse", *report.mse);
  if (report.wce) {
    row("wce", BigRational(report.wce->magnitude));
    os << "wce_sign," << sign_name(report.wce->sign) << ",,\n";
    row("p_wce", report.wce->probability);
  }
  return os.str();
}

std::string render_text(const MetricReport& report, const SystemShape& shape, int precision) {
  std::ostringstream os;
  os << "system: n=" << shape.n << " m=" << shape.m << " vars=" << shape.vars
     << " clauses=" << shape.clauses << '\n';
  auto line = [&](const char* name, const BigRational& r) {
    os << name << " = " << to_decimal(r, precision) << "  ("
       << boost::multiprecision::numerator(r).str() << '/'
       << boost::multiprecision::denominator(r).str() << ")\n";
  };
  if (report.er) line("ER ", *report.er);
  if (report.mae) line("MAE", *report.mae);
  if (report.mse) line("MSE", *report.mse);
  if (report.wce) {
    os << "WCE = " << report.wce->magnitude.str() << "  (sign " << sign_name(report.wce->sign)
       << ")\n";
    line("P(WCE)", report.wce->probability);
  }
  os << "queries = " << report.queryCount << '\n';
  return os.str();
}

std::string render_histogram_csv(const std::vector<std::pair<BigInt, BigRational>>& pdf,
                                 int n) {
  BigInt den = pow2(static_cast<unsigned>(n));
  std::ostringstream os;
  for (const auto& [v, p] : pdf) {
    BigInt count = boost::multiprecision::numerator(p) *
                   (den / boost::multiprecision::denominator(p));
    os << v.str() << ',' << count.str() << ',' << den.str() << '\n';
  }
  return os.str();
}

std::string render_histogram_gnuplot(const std::vector<std::pair<BigInt, BigRational>>& pdf,
                                     int precision) {
  std::ostringstream os;
  os << "# value probability\n";
  for (const auto& [v, p] : pdf) os << v.str() << ' ' << to_decimal(p, precision) << '\n';
  return os.str();
}

} // namespace apxerr
