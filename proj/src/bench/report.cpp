#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <jtape/bench/bench.hpp>

namespace jtape::bench {

namespace {

std::string formatSeconds(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6e", seconds);
  return buffer;
}

std::string formatFactor(double factor) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", factor);
  return buffer;
}

std::vector<std::string> rowCells(const ResultRow& row) {
  return {
      row.variant,
      std::to_string(row.nx),
      std::to_string(row.ny),
      std::to_string(row.steps),
      std::to_string(row.repeats),
      std::to_string(row.workers),
      std::to_string(row.chunkCapacity),
      std::to_string(row.switchesMask),
      formatSeconds(row.record.mean),
      formatSeconds(row.record.min),
      formatSeconds(row.record.max),
      formatSeconds(row.interpret.mean),
      formatSeconds(row.interpret.min),
      formatSeconds(row.interpret.max),
      formatSeconds(row.primalMean),
      formatFactor(row.slowdownRecord),
      formatFactor(row.slowdownInterpret),
      std::to_string(row.stats.tapeBytes()),
      std::to_string(row.stats.adjointSlots),
      std::to_string(row.stats.statements),
      std::to_string(row.stats.arguments),
  };
}

const char* const kColumns[] = {
    "variant",       "nx",          "ny",
    "steps",         "repeats",     "workers",
    "chunk",         "switchesMask", "recordMean",
    "recordMin",     "recordMax",   "interpretMean",
    "interpretMin",  "interpretMax", "primalMean",
    "slowdownRecord", "slowdownInterpret", "tapeBytes",
    "adjointSlots",  "statements",  "arguments",
};
constexpr std::size_t kColumnCount = sizeof(kColumns) / sizeof(kColumns[0]);

}  // namespace

std::string csvHeader() {
  std::string header;
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    if (c > 0) {
      header += ',';
    }
    header += kColumns[c];
  }
  return header;
}

std::string emitCsv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << csvHeader() << '\n';
  for (const auto& row : rows) {
    const auto cells = rowCells(row);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) {
        out << ',';
      }
      out << cells[c];
    }
    out << '\n';
  }
  return out.str();
}

std::string emitTable(const std::vector<ResultRow>& rows) {
  // Column-aligned layout; sweep rows carry their label in an extra first
  // column.
  bool labeled = false;
  for (const auto& row : rows) {
    if (!row.label.empty()) {
      labeled = true;
    }
  }

  std::vector<std::vector<std::string>> table;
  {
    std::vector<std::string> header;
    if (labeled) {
      header.push_back("label");
    }
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      header.push_back(kColumns[c]);
    }
    table.push_back(std::move(header));
  }
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    if (labeled) {
      cells.push_back(row.label);
    }
    const auto data = rowCells(row);
    cells.insert(cells.end(), data.begin(), data.end());
    table.push_back(std::move(cells));
  }

  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& cells : table) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      widths[c] = std::max(widths[c], cells[c].size());
    }
  }

  std::ostringstream out;
  for (const auto& cells : table) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) {
        out << "  ";
      }
      out << cells[c];
      if (c + 1 < cells.size()) {
        out << std::string(widths[c] - cells[c].size(), ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace jtape::bench
