#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <thread>

#include <jtape/bench/bench.hpp>
#include <jtape/burgers/gradients.hpp>
#include <jtape/diagnostics.hpp>
#include <jtape/jtape.hpp>

namespace jtape::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsedSeconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

struct VariantMeasurement {
  std::vector<double> recordSamples;
  std::vector<double> interpretSamples;
  std::vector<double> primalSamples;
  TapeStatistics stats;
  double checksum = 0.0;
  std::vector<double> gradient;
};

std::vector<double> timedPrimal(const burgers::BurgersConfig& cfg, int repeats) {
  std::vector<double> samples;
  samples.reserve(repeats);
  double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    sink += burgers::primalObjective(cfg);
    samples.push_back(elapsedSeconds(start, Clock::now()));
  }
  if (!std::isfinite(sink)) {
    fatalError("primal benchmark produced a non-finite objective");
  }
  return samples;
}

template<typename Tape>
VariantMeasurement measureReverse(const burgers::BurgersConfig& cfg,
                                  Tape& tape, int repeats) {
  VariantMeasurement m;
  // Warm-up pass: allocates all chunks and the adjoint vector, so the timed
  // repeats run without allocation.
  auto warm = burgers::gradientReverse(cfg, tape);
  m.gradient = warm.gradient;

  for (int r = 0; r < repeats; ++r) {
    auto result = burgers::gradientReverse(cfg, tape);
    m.recordSamples.push_back(result.recordSeconds);
    m.interpretSamples.push_back(result.interpretSeconds);
    if (r == repeats - 1) {
      m.stats = result.stats;
      m.checksum = result.checksum;
    }
    if (std::memcmp(result.gradient.data(), m.gradient.data(),
                    m.gradient.size() * sizeof(double)) != 0) {
      fatalError("taping is expected to be deterministic across repeats");
    }
  }
  return m;
}

VariantMeasurement measureForward(const burgers::BurgersConfig& cfg,
                                  int repeats, std::uint32_t seed) {
  VariantMeasurement m;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> direction(cfg.inputCount());
  for (auto& d : direction) {
    d = dist(rng);
  }
  double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    sink += burgers::forwardDirectional(cfg, direction);
    m.recordSamples.push_back(elapsedSeconds(start, Clock::now()));
    m.interpretSamples.push_back(0.0);
  }
  m.checksum = sink / repeats;  // the directional derivative itself
  m.stats.variant = "forward";
  return m;
}

VariantMeasurement measureVariant(Variant variant,
                                  const burgers::BurgersConfig& cfg,
                                  const TapeConfig& config, int repeats,
                                  std::uint32_t seed) {
  switch (variant) {
    case Variant::Chunk: {
      ChunkTape tape(config);
      return measureReverse(cfg, tape, repeats);
    }
    case Variant::ChunkIndex: {
      ChunkIndexTape tape(config);
      return measureReverse(cfg, tape, repeats);
    }
    case Variant::Unchecked: {
      const auto census = burgers::tapeCensus(cfg, config, false);
      UncheckedTape tape(config);
      tape.resize(census.statements + 8, census.arguments + 8,
                  census.externalFunctions + 8);
      return measureReverse(cfg, tape, repeats);
    }
    case Variant::UncheckedIndex: {
      const auto census = burgers::tapeCensus(cfg, config, true);
      UncheckedIndexTape tape(config);
      tape.resize(census.statements + 8, census.arguments + 8,
                  census.externalFunctions + 8);
      return measureReverse(cfg, tape, repeats);
    }
    case Variant::Forward:
      return measureForward(cfg, repeats, seed);
    case Variant::PrimalOnly:
      return VariantMeasurement{};
  }
  return VariantMeasurement{};
}

bool verifyGradient(const burgers::BurgersConfig& cfg,
                    const std::vector<double>& gradient, int samples,
                    std::uint32_t seed) {
  if (gradient.empty()) {
    return true;
  }
  const auto inputs = burgers::sampleInputs(cfg, samples, seed);
  const auto fd = burgers::fdGradientSamples(cfg, inputs);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const double a = gradient[inputs[k]];
    const double b = fd[k];
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-30});
    if (std::fabs(a - b) / scale > 1e-5) {
      return false;
    }
  }
  return true;
}

ResultRow makeRow(const RunSpec& spec, Variant variant,
                  const VariantMeasurement& m,
                  const std::vector<double>& primalSamples, int worker) {
  ResultRow row;
  row.variant = variantName(variant);
  row.worker = worker;
  row.nx = spec.nx;
  row.ny = spec.ny;
  row.steps = spec.steps;
  row.repeats = spec.repeats;
  row.workers = spec.workers;
  row.chunkCapacity = spec.config.chunkCapacity;
  row.switchesMask = spec.config.switchesMask();
  row.record = PhaseStats::fromSamples(m.recordSamples);
  row.interpret = PhaseStats::fromSamples(m.interpretSamples);
  row.primalMean = PhaseStats::fromSamples(primalSamples).mean;
  if (row.primalMean > 0.0) {
    row.slowdownRecord = row.record.mean / row.primalMean;
    row.slowdownInterpret = row.interpret.mean / row.primalMean;
  }
  row.stats = m.stats;
  row.checksum = m.checksum;
  return row;
}

}  // namespace

std::string variantName(Variant variant) {
  switch (variant) {
    case Variant::Chunk: return "chunk";
    case Variant::ChunkIndex: return "chunk-index";
    case Variant::Unchecked: return "unchecked";
    case Variant::UncheckedIndex: return "unchecked-index";
    case Variant::Forward: return "forward";
    case Variant::PrimalOnly: return "primal-only";
  }
  return "unknown";
}

std::optional<Variant> parseVariant(const std::string& name) {
  for (Variant v : allVariants()) {
    if (variantName(v) == name) {
      return v;
    }
  }
  return std::nullopt;
}

std::vector<Variant> allVariants() {
  return {Variant::Chunk,          Variant::ChunkIndex, Variant::Unchecked,
          Variant::UncheckedIndex, Variant::Forward,    Variant::PrimalOnly};
}

PhaseStats PhaseStats::fromSamples(const std::vector<double>& samples) {
  PhaseStats stats;
  if (samples.empty()) {
    return stats;
  }
  stats.min = samples.front();
  stats.max = samples.front();
  double sum = 0.0;
  for (double s : samples) {
    sum += s;
    stats.min = std::min(stats.min, s);
    stats.max = std::max(stats.max, s);
  }
  stats.mean = sum / double(samples.size());
  return stats;
}

std::vector<ResultRow> runBenchmark(const RunSpec& spec) {
  require(spec.repeats >= 1, "repeats must be at least 1");
  require(spec.workers >= 1, "workers must be at least 1");
  const auto cfg = spec.burgersConfig();

  struct WorkerOutput {
    std::vector<double> primalSamples;
    std::vector<VariantMeasurement> measurements;
    std::string error;
  };
  std::vector<WorkerOutput> outputs(spec.workers);

  auto workerBody = [&](int workerId) {
    auto& out = outputs[workerId];
    try {
      out.primalSamples = timedPrimal(cfg, spec.repeats);
      for (Variant variant : spec.variants) {
        out.measurements.push_back(
            measureVariant(variant, cfg, spec.config, spec.repeats,
                           spec.verifySeed + std::uint32_t(workerId)));
      }
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  };

  if (spec.workers == 1) {
    workerBody(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(spec.workers);
    for (int w = 0; w < spec.workers; ++w) {
      threads.emplace_back(workerBody, w);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  for (const auto& out : outputs) {
    if (!out.error.empty()) {
      fatalError("worker failed: " + out.error);
    }
  }

  std::vector<ResultRow> rows;
  for (std::size_t v = 0; v < spec.variants.size(); ++v) {
    const Variant variant = spec.variants[v];

    VariantMeasurement pooled;
    std::vector<double> pooledPrimal;
    for (int w = 0; w < spec.workers; ++w) {
      const auto& m = outputs[w].measurements[v];
      if (spec.workers > 1) {
        auto row = makeRow(spec, variant, m, outputs[w].primalSamples, w);
        row.variant += "#" + std::to_string(w);
        rows.push_back(row);
      }
      pooled.recordSamples.insert(pooled.recordSamples.end(),
                                  m.recordSamples.begin(),
                                  m.recordSamples.end());
      pooled.interpretSamples.insert(pooled.interpretSamples.end(),
                                     m.interpretSamples.begin(),
                                     m.interpretSamples.end());
      pooledPrimal.insert(pooledPrimal.end(), outputs[w].primalSamples.begin(),
                          outputs[w].primalSamples.end());
      pooled.stats = m.stats;
      pooled.checksum = m.checksum;
      pooled.gradient = m.gradient;
    }

    auto row = makeRow(spec, variant, pooled, pooledPrimal, -1);
    if (spec.verify && (variant == Variant::Chunk ||
                        variant == Variant::ChunkIndex ||
                        variant == Variant::Unchecked ||
                        variant == Variant::UncheckedIndex)) {
      row.verified = verifyGradient(cfg, pooled.gradient, spec.verifySamples,
                                    spec.verifySeed);
      if (!row.verified) {
        row.variant += "!";
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::size_t> defaultBlockSizes() {
  return {1024,     2048,     4096,     8192,      16384,    32768,
          131072,   262144,   524288,   1048576,   2097152,  4194304,
          8388608,  16777216, 33554432, 67108864,  134217728};
}

std::vector<ResultRow> sweepBlockSize(const RunSpec& spec,
                                      const std::vector<std::size_t>& sizes) {
  const auto cfg = spec.burgersConfig();
  std::vector<ResultRow> rows;
  std::vector<double> reference;

  for (const std::size_t size : sizes) {
    RunSpec sized = spec;
    sized.workers = 1;
    sized.config.chunkCapacity = size;

    ChunkTape tape(sized.config);
    auto m = measureReverse(cfg, tape, sized.repeats);
    const auto primal = timedPrimal(cfg, sized.repeats);
    auto row = makeRow(sized, Variant::Chunk, m, primal, -1);
    row.label = std::to_string(size);

    if (reference.empty()) {
      reference = m.gradient;
    } else if (std::memcmp(reference.data(), m.gradient.data(),
                           reference.size() * sizeof(double)) != 0) {
      fatalError("block size changed the gradient");
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> sweepSwitches(const RunSpec& spec) {
  struct SweepCase {
    const char* label;
    std::uint32_t mask;
  };
  // Layout: no switches, each recording switch alone, all recording
  // switches, the interpretation switch alone, everything.
  const SweepCase cases[] = {
      {"all-off", 0u},
      {"check-args", 1u << 0},
      {"ignore-invalid", 1u << 1},
      {"ignore-zero", 1u << 2},
      {"check-activity", 1u << 3},
      {"record-all-on", 0b01111u},
      {"skip-zero-adjoints", 1u << 4},
      {"all-on", 0b11111u},
  };

  const auto cfg = spec.burgersConfig();
  std::vector<ResultRow> rows;
  std::vector<double> reference;
  std::uint64_t allOffArgBytes = 0;

  for (const auto& swCase : cases) {
    RunSpec cased = spec;
    cased.workers = 1;
    cased.config = TapeConfig::fromMask(swCase.mask, spec.config.chunkCapacity);

    ChunkTape tape(cased.config);
    auto m = measureReverse(cfg, tape, cased.repeats);
    const auto primal = timedPrimal(cfg, cased.repeats);
    auto row = makeRow(cased, Variant::Chunk, m, primal, -1);
    row.label = swCase.label;

    if (reference.empty()) {
      reference = m.gradient;
      allOffArgBytes = m.stats.argumentBytes;
    } else if (std::memcmp(reference.data(), m.gradient.data(),
                           reference.size() * sizeof(double)) != 0) {
      fatalError("a configuration switch changed the gradient");
    }
    if (swCase.mask & (1u << 2)) {
      require(m.stats.argumentBytes <= allOffArgBytes,
              "ignoring zero Jacobians must not grow the argument stream");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jtape::bench
