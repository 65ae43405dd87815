#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../burgers/solver.hpp"
#include "../tape_config.hpp"
#include "../tape_statistics.hpp"

namespace jtape::bench {

enum class Variant {
  Chunk,
  ChunkIndex,
  Unchecked,
  UncheckedIndex,
  Forward,
  PrimalOnly,
};

std::string variantName(Variant variant);
std::optional<Variant> parseVariant(const std::string& name);
std::vector<Variant> allVariants();

struct RunSpec {
  std::vector<Variant> variants = allVariants();
  int nx = 61;
  int ny = 61;
  int steps = 32;
  int repeats = 10;
  int workers = 1;
  TapeConfig config;  // switches and chunk capacity
  bool verify = true;
  int verifySamples = 5;
  std::uint32_t verifySeed = 20160816;

  burgers::BurgersConfig burgersConfig() const {
    burgers::BurgersConfig cfg;
    cfg.nx = nx;
    cfg.ny = ny;
    cfg.steps = steps;
    return cfg;
  }
};

struct PhaseStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  static PhaseStats fromSamples(const std::vector<double>& samples);
};

struct ResultRow {
  std::string variant;
  std::string label;  // sweep row label, empty outside sweeps
  int worker = -1;    // -1: pooled over workers
  int nx = 0;
  int ny = 0;
  int steps = 0;
  int repeats = 0;
  int workers = 1;
  std::size_t chunkCapacity = 0;
  std::uint32_t switchesMask = 0;

  PhaseStats record;
  PhaseStats interpret;
  double primalMean = 0.0;
  double slowdownRecord = 0.0;
  double slowdownInterpret = 0.0;

  TapeStatistics stats;
  double checksum = 0.0;
  bool verified = true;
};

/// Times the record and interpret phases of every requested variant,
/// `repeats` samples each, over `workers` independent replicas. Returns the
/// per-worker rows (workers > 1) followed by a pooled row per variant.
/// Each row carries the gradient checksum; unless disabled, the gradient is
/// spot-checked against central finite differences and failures clear the
/// row's verified flag.
std::vector<ResultRow> runBenchmark(const RunSpec& spec);

/// Block-size sweep on the chunked linear variant. Gradients
/// must be bitwise identical across sizes; a mismatch is fatal.
std::vector<ResultRow> sweepBlockSize(const RunSpec& spec,
                                      const std::vector<std::size_t>& sizes);

/// The default geometric ladder of block sizes.
std::vector<std::size_t> defaultBlockSizes();

/// Switch sweep: all-off, each recording switch alone, all
/// recording switches, the interpretation switch alone, and everything on.
/// Gradient checksums must be bitwise identical across rows.
std::vector<ResultRow> sweepSwitches(const RunSpec& spec);

/// Fixed CSV layout; the header is part of the tool's contract.
std::string csvHeader();
std::string emitCsv(const std::vector<ResultRow>& rows);
std::string emitTable(const std::vector<ResultRow>& rows);

}  // namespace jtape::bench
