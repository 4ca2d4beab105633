#include "apxerr/adders.hpp"
#include "apxerr/aig.hpp"
#include "apxerr/engine.hpp"
#include "apxerr/errors.hpp"
#include "apxerr/metrics.hpp"
#include "apxerr/oracle.hpp"
#include "apxerr/pipeline.hpp"
#include "apxerr/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace apxerr;

struct Options {
  std::string exact, approx, genExact, genApprox, system;
  std::string out;
  std::string format = "text";
  std::string metricsList = "all";
  std::string range;
  std::string dumpPartition, dumpTree;
  int oracleCap = 24;
  bool corruptHook = false;
  RunConfig config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& outPath, const std::string& content) {
  if (outPath.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw InputError("cannot write '" + outPath + "'");
  out << content;
}

struct Inputs {
  CnfSystem sys;
  std::optional<Netlist> exact, approx;
  std::optional<AdderSpec> exactSpec, approxSpec;
  bool fromRawDimacs = false;
};

std::pair<Netlist, std::optional<AdderSpec>> resolve_circuit(const std::string& text) {
  if (auto net = make_circuit_from_spec(text)) return {std::move(*net), parse_adder_spec(text)};
  return {parse_aig(read_file(text)), std::nullopt};
}

Inputs resolve_inputs(const Options& opt) {
  std::string exact = !opt.genExact.empty() ? opt.genExact : opt.exact;
  std::string approx = !opt.genApprox.empty() ? opt.genApprox : opt.approx;

  Inputs in;
  if (!opt.system.empty()) {
    if (!exact.empty() || !approx.empty())
      throw InputError("--system replaces --exact/--approx");
    in.sys = read_dimacs(read_file(opt.system));
    in.fromRawDimacs = true;
    return in;
  }
  if (exact.empty() || approx.empty())
    throw InputError("need --exact and --approx (or --system)");

  auto [exNet, exSpec] = resolve_circuit(exact);
  auto [apNet, apSpec] = resolve_circuit(approx);
  in.sys = build_system(exNet, apNet);
  in.exact = std::move(exNet);
  in.approx = std::move(apNet);
  in.exactSpec = exSpec;
  in.approxSpec = apSpec;
  return in;
}

MetricSelection parse_selection(const std::string& list) {
  if (list == "all") return MetricSelection::all();
  MetricSelection sel;
  std::istringstream is(list);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item == "er")
      sel.er = true;
    else if (item == "mae")
      sel.mae = true;
    else if (item == "mse")
      sel.mse = true;
    else if (item == "wce")
      sel.wce = true;
    else if (!item.empty())
      throw InputError("unknown metric '" + item + "'");
  }
  if (!sel.any()) throw InputError("no metrics requested");
  return sel;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Analysis run_pipeline(const Inputs& in, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  if (!opt.dumpPartition.empty()) {
    Partitioning parts = partition(in.sys, opt.config.clauseLimit, opt.config.seed);
    write_output(opt.dumpPartition, parts.dump());
  }
  Analysis analysis = analyze(in.sys, opt.config, &std::cerr);
  std::cerr << "c pipeline: " << analysis.stats.partitionCount << " partitions, "
            << analysis.stats.cutVars << " cut vars, " << analysis.stats.treeVertices
            << " tree vertices, largest table " << analysis.stats.maxTableRows << " rows, "
            << seconds_since(start) << " s\n";
  if (!opt.dumpTree.empty()) write_output(opt.dumpTree, analysis.tree.dump());

  if (!in.fromRawDimacs) {
    BigInt all = sat_count(analysis.tree, Query{});
    if (all != pow2(static_cast<unsigned>(in.sys.n())))
      throw InvariantError("unconditioned sat-count " + all.str() + " != 2^n");
  }
  return analysis;
}

SystemShape shape_of(const Inputs& in) {
  return {in.sys.n(), in.sys.m(), in.sys.numVars, in.sys.clauses.size()};
}

int cmd_metrics(const Options& opt) {
  Inputs in = resolve_inputs(opt);
  Analysis analysis = run_pipeline(in, opt);

  MetricTimings timings;
  MetricReport report =
      compute_all(analysis.tree, parse_selection(opt.metricsList), opt.config.threads, &timings);
  std::cerr << "c metrics: er " << timings.erSec << " s, mae " << timings.maeSec
            << " s, mse " << timings.mseSec << " s, wce " << timings.wceSec << " s, "
            << report.queryCount << " queries\n";

  std::string rendered;
  if (opt.format == "json")
    rendered = render_json(report, shape_of(in), opt.config.precision);
  else if (opt.format == "csv")
    rendered = render_csv(report, opt.config.precision);
  else if (opt.format == "text")
    rendered = render_text(report, shape_of(in), opt.config.precision);
  else
    throw InputError("unknown format '" + opt.format + "'");
  write_output(opt.out, rendered);
  return 0;
}

std::optional<std::pair<BigInt, BigInt>> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  size_t sep = text.find(':');
  if (sep == std::string::npos) throw InputError("--range expects LO:HI");
  try {
    return std::make_pair(BigInt(text.substr(0, sep)), BigInt(text.substr(sep + 1)));
  } catch (const std::exception&) {
    throw InputError("--range expects signed decimal integers");
  }
}

int cmd_histogram(const Options& opt) {
  Inputs in = resolve_inputs(opt);
  Analysis analysis = run_pipeline(in, opt);

  auto range = parse_range(opt.range);
  QueryStats stats;
  auto pdf = error_pdf(analysis.tree, range, opt.config.queryBudget, opt.config.threads, &stats);
  std::cerr << "c histogram: " << pdf.size() << " support points, " << stats.queries
            << " queries\n";
  if (pdf.empty())
    std::cerr << "c warning: no error value in the requested range has nonzero probability\n";

  std::string rendered;
  if (opt.format == "gnuplot")
    rendered = render_histogram_gnuplot(pdf, opt.config.precision);
  else
    rendered = render_histogram_csv(pdf, in.sys.n());
  write_output(opt.out, rendered);
  return 0;
}

int cmd_verify(const Options& opt) {
  Inputs in = resolve_inputs(opt);
  if (!in.exact || !in.approx)
    throw InputError("verify needs circuit inputs, not a raw system");

  OracleReport oracle =
      in.exactSpec && in.approxSpec
          ? adder_oracle(*in.exactSpec, *in.approxSpec, opt.oracleCap)
          : exhaustive_metrics(*in.exact, *in.approx, opt.oracleCap);

  Analysis analysis = run_pipeline(in, opt);
  MetricReport engine = compute_all(analysis.tree, MetricSelection::all(), opt.config.threads);
  QueryStats stats;
  auto enginePdf =
      error_pdf(analysis.tree, std::nullopt, opt.config.queryBudget, opt.config.threads, &stats);

  if (opt.corruptHook && engine.er) // negative-control hook for tests
    engine.er = *engine.er + BigRational(1, pow2(static_cast<unsigned>(in.sys.n())));

  int mismatches = 0;
  auto expect = [&](const char* what, const std::string& got, const std::string& want) {
    if (got == want) {
      std::cout << "ok " << what << " = " << want << "\n";
    } else {
      ++mismatches;
      std::cout << "MISMATCH " << what << ": engine " << got << " vs oracle " << want << "\n";
    }
  };
  auto rat = [](const BigRational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
  };
  expect("er", rat(*engine.er), rat(oracle.er));
  expect("mae", rat(*engine.mae), rat(oracle.mae));
  expect("mse", rat(*engine.mse), rat(oracle.mse));
  expect("wce", engine.wce->magnitude.str(), oracle.wce.str());
  auto signName = [](int s) { return std::string(s > 0 ? "+" : s < 0 ? "-" : "zero"); };
  expect("wce_sign", signName(engine.wce->sign), signName(oracle.wceSign));
  expect("p_wce", rat(engine.wce->probability), rat(oracle.pWce));

  std::string enginePdfText, oraclePdfText;
  for (const auto& [v, p] : enginePdf) enginePdfText += v.str() + ":" + rat(p) + " ";
  for (const auto& [v, p] : oracle.pdf) oraclePdfText += v.str() + ":" + rat(p) + " ";
  expect("pdf", enginePdfText, oraclePdfText);

  if (mismatches) {
    std::cout << mismatches << " field(s) differ\n";
    return 4;
  }
  std::cout << "engine and oracle agree exactly\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact error metrics of approximate circuits via partitioned model counting "
               "and join-tree message passing"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--exact", opt.exact, "exact circuit: spec (adder:8) or .aag path");
    cmd->add_option("--approx", opt.approx, "approximate circuit: spec (loa:8:4) or .aag path");
    cmd->add_option("--gen-exact", opt.genExact, "alias of --exact for generator specs");
    cmd->add_option("--gen-approx", opt.genApprox, "alias of --approx for generator specs");
    cmd->add_option("--system", opt.system, "pre-built annotated DIMACS system");
    cmd->add_option("--out", opt.out, "output file (default stdout)");
    cmd->add_option("--clause-limit", opt.config.clauseLimit, "max clauses per partition");
    cmd->add_option("--ts", opt.config.tableSizeThreshold, "merge table-size threshold (rows)");
    cmd->add_option("--enum-cap", opt.config.enumerationCap, "per-partition variable cap");
    cmd->add_option("--enum-row-cap", opt.config.enumerationRowCap,
                    "per-partition model cap (0 = max(ts, 2^20))");
    cmd->add_option("--threads", opt.config.threads, "query worker threads");
    cmd->add_option("--seed", opt.config.seed, "partitioner seed");
    cmd->add_option("--precision", opt.config.precision, "significant decimal digits");
    cmd->add_option("--budget", opt.config.queryBudget, "histogram query budget");
    cmd->add_option("--dump-partition", opt.dumpPartition, "write clause->part map");
    cmd->add_option("--dump-tree", opt.dumpTree, "write join-tree summary");
  };

  CLI::App* metrics = app.add_subcommand("metrics", "compute error metrics");
  add_common(metrics);
  metrics->add_option("--metrics", opt.metricsList, "all or comma list of er,mae,mse,wce");
  metrics->add_option("--format", opt.format, "json, csv or text");

  CLI::App* histogram = app.add_subcommand("histogram", "full error distribution");
  add_common(histogram);
  histogram->add_option("--range", opt.range, "LO:HI error-value range (default: WCE bounds)");
  histogram->add_option("--format", opt.format, "csv or gnuplot")->default_val("csv");

  CLI::App* verify = app.add_subcommand("verify", "engine vs exhaustive oracle");
  add_common(verify);
  verify->add_option("--oracle-cap", opt.oracleCap, "max inputs for exhaustive enumeration");
  verify->add_flag("--corrupt-count", opt.corruptHook)->group(""); // hidden test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (metrics->parsed()) return cmd_metrics(opt);
    if (histogram->parsed()) return cmd_histogram(opt);
    if (verify->parsed()) return cmd_verify(opt);
    throw InputError("no subcommand");
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
