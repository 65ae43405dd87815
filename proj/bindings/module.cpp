// Python bindings for the main operations: the Burgers benchmark primal,
// reverse and forward gradients, gradient verification and the benchmark
// runner.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include <jtape/bench/bench.hpp>
#include <jtape/burgers/gradients.hpp>
#include <jtape/jtape.hpp>
#include <jtape/operation_catalog.hpp>

namespace py = pybind11;
namespace bench = jtape::bench;
namespace burgers = jtape::burgers;

namespace {

burgers::BurgersConfig makeConfig(int nx, int ny, int steps) {
  burgers::BurgersConfig cfg;
  cfg.nx = nx;
  cfg.ny = ny;
  cfg.steps = steps;
  return cfg;
}

template<typename Tape>
burgers::ReverseGradientResult runVariant(const burgers::BurgersConfig& cfg,
                                          const jtape::TapeConfig& config) {
  Tape tape(config);
  if constexpr (!Tape::IsChunked) {
    const auto census =
        burgers::tapeCensus(cfg, config, !Tape::IsLinear);
    tape.resize(census.statements + 8, census.arguments + 8,
                census.externalFunctions + 8);
  }
  return burgers::gradientReverse(cfg, tape);
}

burgers::ReverseGradientResult dispatchVariant(
    const std::string& variant, const burgers::BurgersConfig& cfg,
    const jtape::TapeConfig& config) {
  if (variant == "chunk") {
    return runVariant<jtape::ChunkTape>(cfg, config);
  }
  if (variant == "chunk-index") {
    return runVariant<jtape::ChunkIndexTape>(cfg, config);
  }
  if (variant == "unchecked") {
    return runVariant<jtape::UncheckedTape>(cfg, config);
  }
  if (variant == "unchecked-index") {
    return runVariant<jtape::UncheckedIndexTape>(cfg, config);
  }
  throw std::invalid_argument("unknown tape variant: " + variant);
}

py::array_t<double> interiorField(const burgers::BurgersConfig& cfg,
                                  const std::vector<double>& gradient,
                                  bool uField) {
  const int interiorX = cfg.nx - 2;
  const int interiorY = cfg.ny - 2;
  py::array_t<double> out({interiorY, interiorX});
  auto view = out.mutable_unchecked<2>();
  const int offset = uField ? 0 : cfg.interiorCount();
  for (int j = 0; j < interiorY; ++j) {
    for (int i = 0; i < interiorX; ++i) {
      view(j, i) = gradient[offset + j * interiorX + i];
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_jtape, m) {
  m.doc() = "Jacobi-taping algorithmic differentiation: tape variants "
            "benchmarked on a 2D coupled Burgers solver";

  m.attr("__version__") = "0.1.0";

  m.def("variants", [] {
    std::vector<std::string> names;
    for (auto v : bench::allVariants()) {
      names.push_back(bench::variantName(v));
    }
    return names;
  });

  m.def("operation_catalog", [] {
    std::vector<std::pair<std::string, int>> ops;
    for (const auto& op : jtape::operationCatalog()) {
      ops.emplace_back(std::string(op.name), op.arity);
    }
    return ops;
  });

  m.def(
      "burgers_objective",
      [](int nx, int ny, int steps) {
        return burgers::primalObjective(makeConfig(nx, ny, steps));
      },
      py::arg("nx") = 61, py::arg("ny") = 61, py::arg("steps") = 32,
      "Primal objective: discrete L2 norm of the final interior solution.");

  m.def(
      "burgers_gradient",
      [](const std::string& variant, int nx, int ny, int steps,
         std::size_t chunkSize, std::uint32_t switches) {
        const auto cfg = makeConfig(nx, ny, steps);
        const auto tapeConfig = jtape::TapeConfig::fromMask(switches, chunkSize);
        const auto result = dispatchVariant(variant, cfg, tapeConfig);
        py::dict out;
        out["variant"] = variant;
        out["objective"] = result.objective;
        out["checksum"] = result.checksum;
        out["du"] = interiorField(cfg, result.gradient, true);
        out["dv"] = interiorField(cfg, result.gradient, false);
        out["statements"] = result.stats.statements;
        out["arguments"] = result.stats.arguments;
        out["tape_bytes"] = result.stats.tapeBytes();
        out["adjoint_slots"] = result.stats.adjointSlots;
        out["record_seconds"] = result.recordSeconds;
        out["interpret_seconds"] = result.interpretSeconds;
        return out;
      },
      py::arg("variant") = "chunk", py::arg("nx") = 61, py::arg("ny") = 61,
      py::arg("steps") = 32,
      py::arg("chunk_size") = jtape::TapeConfig::defaultChunkCapacity,
      py::arg("switches") = 0,
      "Reverse-mode gradient of the objective with respect to the initial "
      "interior fields.");

  m.def(
      "burgers_gradient_forward",
      [](py::array_t<double, py::array::c_style | py::array::forcecast>
             direction,
         int nx, int ny, int steps) {
        const auto cfg = makeConfig(nx, ny, steps);
        if (direction.size() != cfg.inputCount()) {
          throw std::invalid_argument(
              "direction must have 2*(nx-2)*(ny-2) entries");
        }
        std::vector<double> dir(direction.data(),
                                direction.data() + direction.size());
        return burgers::forwardDirectional(cfg, dir);
      },
      py::arg("direction"), py::arg("nx") = 61, py::arg("ny") = 61,
      py::arg("steps") = 32,
      "Directional derivative of the objective along `direction` via one "
      "tangent sweep.");

  m.def(
      "burgers_fd_check",
      [](const std::string& variant, int nx, int ny, int steps, int samples,
         std::uint32_t seed) {
        const auto cfg = makeConfig(nx, ny, steps);
        const auto result =
            dispatchVariant(variant, cfg, jtape::TapeConfig{});
        const auto inputs = burgers::sampleInputs(cfg, samples, seed);
        const auto fd = burgers::fdGradientSamples(cfg, inputs);
        double worst = 0.0;
        for (std::size_t k = 0; k < inputs.size(); ++k) {
          const double a = result.gradient[inputs[k]];
          const double b = fd[k];
          const double scale = std::max({std::fabs(a), std::fabs(b), 1e-30});
          worst = std::max(worst, std::fabs(a - b) / scale);
        }
        return worst;
      },
      py::arg("variant") = "chunk", py::arg("nx") = 21, py::arg("ny") = 21,
      py::arg("steps") = 8, py::arg("samples") = 5, py::arg("seed") = 20160816,
      "Worst relative error of the reverse gradient against central finite "
      "differences at sampled inputs.");

  m.def(
      "benchmark_csv",
      [](int nx, int ny, int steps, int repeats, int workers, bool verify) {
        bench::RunSpec spec;
        spec.nx = nx;
        spec.ny = ny;
        spec.steps = steps;
        spec.repeats = repeats;
        spec.workers = workers;
        spec.verify = verify;
        return bench::emitCsv(bench::runBenchmark(spec));
      },
      py::arg("nx") = 61, py::arg("ny") = 61, py::arg("steps") = 32,
      py::arg("repeats") = 3, py::arg("workers") = 1, py::arg("verify") = true,
      "Run the benchmark over all variants and return the CSV report.");
}
