// Benchmark and verification harness for the tape variants on the coupled
// Burgers test problem: per-variant record/interpret timings, block-size and
// switch sweeps, CSV or aligned-table output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jtape/bench/bench.hpp>
#include <jtape/diagnostics.hpp>

namespace bench = jtape::bench;

namespace {

int findSwitchIndex(const std::string& name) {
  for (std::size_t i = 0; i < jtape::TapeConfig::switchCount; ++i) {
    if (jtape::TapeConfig::switchNames[i] == name) {
      return int(i);
    }
  }
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jtape-bench: tape benchmark on the 2D coupled Burgers problem"};

  std::string variant;
  bench::RunSpec spec;
  std::string sweep;
  std::string format = "csv";
  std::string outPath;
  bool paperScale = false;
  bool noVerify = false;
  std::vector<std::string> switchArgs;
  std::vector<std::size_t> sizes;

  app.add_option("--variant", variant,
                 "variant to run: chunk, chunk-index, unchecked, "
                 "unchecked-index, forward, primal-only (default: all)")
      ->envname("JTAPE_BENCH_VARIANT");
  app.add_option("--nx", spec.nx, "grid points in x")->envname("JTAPE_BENCH_NX");
  app.add_option("--ny", spec.ny, "grid points in y")->envname("JTAPE_BENCH_NY");
  app.add_option("--steps", spec.steps, "time steps")
      ->envname("JTAPE_BENCH_STEPS");
  app.add_option("--repeats", spec.repeats, "timing repetitions")
      ->envname("JTAPE_BENCH_REPEATS");
  app.add_option("--workers", spec.workers,
                 "independent replicas, one tape each")
      ->envname("JTAPE_BENCH_WORKERS");
  app.add_option("--chunk-size", spec.config.chunkCapacity,
                 "entries per chunk for the growing tapes")
      ->envname("JTAPE_BENCH_CHUNK_SIZE");
  app.add_option("--switch", switchArgs,
                 "switch setting <name>=<on|off>; names: check-args, "
                 "ignore-invalid, ignore-zero, check-activity, "
                 "skip-zero-adjoints")
      ->envname("JTAPE_BENCH_SWITCH");
  app.add_option("--sweep", sweep, "run a sweep: block or switches")
      ->envname("JTAPE_BENCH_SWEEP");
  app.add_option("--sizes", sizes,
                 "block sizes for --sweep block (default: the built-in ladder)")
      ->envname("JTAPE_BENCH_SIZES");
  app.add_option("--format", format, "output format: csv or table")
      ->envname("JTAPE_BENCH_FORMAT");
  app.add_option("--out", outPath, "write the report to this file")
      ->envname("JTAPE_BENCH_OUT");
  app.add_flag("--paper-scale", paperScale, "run the 601x601 configuration")
      ->envname("JTAPE_BENCH_PAPER_SCALE");
  app.add_flag("--no-verify", noVerify,
               "skip the finite-difference spot check")
      ->envname("JTAPE_BENCH_NO_VERIFY");

  CLI11_PARSE(app, argc, argv);

  if (paperScale) {
    spec.nx = 601;
    spec.ny = 601;
  }
  spec.verify = !noVerify;
  if (!variant.empty()) {
    const auto parsed = bench::parseVariant(variant);
    if (!parsed) {
      std::cerr << "unknown variant: " << variant << '\n';
      return 2;
    }
    spec.variants = {*parsed};
  }
  for (const auto& arg : switchArgs) {
    const auto eq = arg.find('=');
    const std::string name = arg.substr(0, eq);
    const std::string value = eq == std::string::npos ? "on" : arg.substr(eq + 1);
    const int index = findSwitchIndex(name);
    if (index < 0 || (value != "on" && value != "off")) {
      std::cerr << "bad switch setting: " << arg << '\n';
      return 2;
    }
    spec.config.setSwitchByIndex(std::size_t(index), value == "on");
  }
  if (format != "csv" && format != "table") {
    std::cerr << "unknown format: " << format << '\n';
    return 2;
  }

  std::vector<bench::ResultRow> rows;
  try {
    if (sweep.empty()) {
      rows = bench::runBenchmark(spec);
    } else if (sweep == "block") {
      rows = bench::sweepBlockSize(spec,
                                   sizes.empty() ? bench::defaultBlockSizes()
                                                 : sizes);
    } else if (sweep == "switches") {
      rows = bench::sweepSwitches(spec);
    } else {
      std::cerr << "unknown sweep: " << sweep << '\n';
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "benchmark failed: " << e.what() << '\n';
    return 1;
  }

  // The gradient checksum accompanies every timing report.
  for (const auto& row : rows) {
    std::printf("checksum[%s%s%s]=%.17g\n", row.variant.c_str(),
                row.label.empty() ? "" : ":", row.label.c_str(), row.checksum);
  }

  const std::string report =
      format == "csv" ? bench::emitCsv(rows) : bench::emitTable(rows);
  if (outPath.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(outPath);
    if (!out) {
      std::cerr << "cannot open " << outPath << '\n';
      return 1;
    }
    out << report;
  }

  for (const auto& row : rows) {
    if (!row.verified) {
      std::cerr << "verification failed for " << row.variant << '\n';
      return 1;
    }
  }
  return 0;
}
