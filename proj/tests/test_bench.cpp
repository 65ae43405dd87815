#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <jtape/bench/bench.hpp>

namespace bench = jtape::bench;

namespace {

bench::RunSpec tinySpec() {
  bench::RunSpec spec;
  spec.nx = spec.ny = 15;
  spec.steps = 2;
  spec.repeats = 2;
  spec.verify = false;
  return spec;
}

std::vector<std::string> splitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("csv header is pinned") {
  CHECK(bench::csvHeader() ==
        "variant,nx,ny,steps,repeats,workers,chunk,switchesMask,recordMean,"
        "recordMin,recordMax,interpretMean,interpretMin,interpretMax,"
        "primalMean,slowdownRecord,slowdownInterpret,tapeBytes,adjointSlots,"
        "statements,arguments");
}

TEST_CASE("emit") {
  SUBCASE("no rows give only the header") {
    const auto lines = splitLines(bench::emitCsv({}));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == bench::csvHeader());
  }

  SUBCASE("one row gives two lines") {
    bench::ResultRow row;
    row.variant = "chunk";
    row.nx = row.ny = 5;
    const auto lines = splitLines(bench::emitCsv({row}));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind("chunk,5,5,", 0) == 0);
  }

  SUBCASE("table output is column aligned") {
    bench::ResultRow a;
    a.variant = "chunk";
    a.nx = a.ny = 61;
    a.record = {1.25e-3, 1.0e-3, 1.5e-3};
    bench::ResultRow b;
    b.variant = "unchecked-index";
    b.nx = b.ny = 61;
    b.record = {2.5e-2, 2.0e-2, 3.0e-2};
    const auto lines = splitLines(bench::emitTable({a, b}));
    REQUIRE(lines.size() == 3);
    // Every row starts the second column at the same offset.
    const auto col = lines[0].find("nx");
    CHECK(col != std::string::npos);
    CHECK(lines[1].substr(0, col).find("chunk") != std::string::npos);
    CHECK(lines[2].substr(0, col) == "unchecked-index  ");
    CHECK(lines[1].size() == lines[2].size());
  }
}

TEST_CASE("benchmark rows") {
  auto spec = tinySpec();
  spec.repeats = 3;
  const auto rows = bench::runBenchmark(spec);

  SUBCASE("one row per variant by default") {
    REQUIRE(rows.size() == bench::allVariants().size());
    for (const auto& row : rows) {
      CHECK(row.verified);
    }
  }

  SUBCASE("order statistics hold in every row") {
    for (const auto& row : rows) {
      CAPTURE(row.variant);
      CHECK(row.record.min <= row.record.mean);
      CHECK(row.record.mean <= row.record.max);
      CHECK(row.interpret.min <= row.interpret.mean);
      CHECK(row.interpret.mean <= row.interpret.max);
    }
  }

  SUBCASE("reverse variants share one checksum") {
    double checksum = 0.0;
    int reverseRows = 0;
    for (const auto& row : rows) {
      if (row.variant.rfind("chunk", 0) == 0 ||
          row.variant.rfind("unchecked", 0) == 0) {
        if (reverseRows == 0) {
          checksum = row.checksum;
        }
        CHECK(row.checksum == checksum);
        ++reverseRows;
      }
    }
    CHECK(reverseRows == 4);
  }

  SUBCASE("times are finite and positive for timed variants") {
    for (const auto& row : rows) {
      if (row.variant == "primal-only") {
        continue;
      }
      CHECK(row.record.mean > 0.0);
      CHECK(row.primalMean > 0.0);
      CHECK(row.slowdownRecord > 0.0);
    }
  }
}

TEST_CASE("workers produce per-worker rows plus an aggregate") {
  auto spec = tinySpec();
  spec.workers = 4;
  spec.variants = {bench::Variant::Chunk};
  const auto rows = bench::runBenchmark(spec);
  REQUIRE(rows.size() == 5);
  for (int w = 0; w < 4; ++w) {
    CHECK(rows[w].variant == "chunk#" + std::to_string(w));
    CHECK(rows[w].worker == w);
    CHECK(rows[w].checksum == rows[4].checksum);
  }
  CHECK(rows[4].variant == "chunk");
  CHECK(rows[4].worker == -1);
}

TEST_CASE("block size sweep keeps gradients identical") {
  auto spec = tinySpec();
  const std::vector<std::size_t> sizes = {1024, 2097152};
  const auto rows = bench::sweepBlockSize(spec, sizes);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "1024");
  CHECK(rows[1].label == "2097152");
  CHECK(rows[0].checksum == rows[1].checksum);
  CHECK(rows[0].stats.statements == rows[1].stats.statements);
}

TEST_CASE("a degenerate block size of one entry stays correct") {
  auto spec = tinySpec();
  spec.nx = spec.ny = 9;
  spec.steps = 1;
  const auto rows = bench::sweepBlockSize(spec, {1, 1024});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].checksum == rows[1].checksum);
}

TEST_CASE("switch sweep covers the table layout") {
  auto spec = tinySpec();
  const auto rows = bench::sweepSwitches(spec);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].label == "all-off");
  CHECK(rows[0].switchesMask == 0);
  CHECK(rows[7].label == "all-on");
  CHECK(rows[7].switchesMask == 31);
  for (const auto& row : rows) {
    CHECK(row.checksum == rows[0].checksum);
  }
  // Dropping zero Jacobians can only shrink the argument stream.
  CHECK(rows[3].label == "ignore-zero");
  CHECK(rows[3].stats.argumentBytes <= rows[0].stats.argumentBytes);
}

TEST_CASE("default block size ladder matches the documented sweep") {
  const auto sizes = bench::defaultBlockSizes();
  REQUIRE(sizes.size() == 17);
  CHECK(sizes.front() == 1024);
  CHECK(sizes.back() == 134217728);
}
