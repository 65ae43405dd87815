#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "../active_real.hpp"
#include "../forward_tape.hpp"
#include "../jacobi_tape.hpp"
#include "../tape_config.hpp"
#include "../tape_statistics.hpp"
#include "../types.hpp"
#include "solver.hpp"

namespace jtape::burgers {

/// Input layout: the initial interior values, u field first, then v, each in
/// row-major interior order.
inline std::pair<int, int> interiorNode(const BurgersConfig& cfg, int q) {
  const int interiorX = cfg.nx - 2;
  const int cell = q % cfg.interiorCount();
  return {1 + cell % interiorX, 1 + cell / interiorX};
}
inline bool inputIsU(const BurgersConfig& cfg, int q) {
  return q < cfg.interiorCount();
}

struct ReverseGradientResult {
  double objective = 0.0;
  std::vector<double> gradient;  // dJ/d(initial interior u, then v)
  double checksum = 0.0;         // sum of all input adjoints
  TapeStatistics stats;
  double recordSeconds = 0.0;
  double interpretSeconds = 0.0;
};

namespace detail {

inline double seconds(std::chrono::steady_clock::time_point a,
                      std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace detail

/// Records the benchmark computation once and interprets it `evaluations`
/// times (re-seeded each time); gradient and timings come from the last pass.
/// The tape must be constructed (and, for the preallocated variants, sized)
/// by the caller; it is reset, bound and driven here.
template<typename Tape>
ReverseGradientResult gradientReverse(const BurgersConfig& cfg, Tape& tape,
                                      int evaluations = 1) {
  using S = ActiveReal<Tape>;
  using Clock = std::chrono::steady_clock;
  ReverseGradientResult result;

  tape.reset();
  tape.bindToCurrentThread();

  const auto recordStart = Clock::now();
  tape.setActive();
  std::vector<typename Tape::Index> inputIndices;
  typename Tape::Index outputIndex;
  {
    BurgersSim<S> sim(cfg);
    sim.init();
    inputIndices.reserve(cfg.inputCount());
    for (int q = 0; q < cfg.inputCount(); ++q) {
      const auto [i, j] = interiorNode(cfg, q);
      S& value = inputIsU(cfg, q) ? sim.u(i, j) : sim.v(i, j);
      tape.registerInput(value);
      inputIndices.push_back(value.gradientData());
    }
    sim.runSteps();
    S objective = sim.objective();
    tape.registerOutput(objective);
    outputIndex = objective.gradientData();
    result.objective = objective.value();
    tape.setPassive();
  }
  const auto recordEnd = Clock::now();
  result.recordSeconds = detail::seconds(recordStart, recordEnd);

  const auto interpretStart = Clock::now();
  for (int pass = 0; pass < evaluations; ++pass) {
    tape.clearAdjoints();
    tape.setGradient(outputIndex, 1.0);
    tape.evaluateFull();
  }
  const auto interpretEnd = Clock::now();
  result.interpretSeconds =
      detail::seconds(interpretStart, interpretEnd) / evaluations;

  result.gradient.reserve(inputIndices.size());
  for (const auto index : inputIndices) {
    const double adjoint = tape.getGradient(index);
    result.gradient.push_back(adjoint);
    result.checksum += adjoint;
  }
  result.stats = tape.statistics();
  Tape::setCurrent(nullptr);
  return result;
}

/// Record/interpret census used to size the preallocated tape variants
/// before any timed run.
inline TapeStatistics tapeCensus(const BurgersConfig& cfg,
                                 const TapeConfig& tapeConfig, bool reuse) {
  if (reuse) {
    ChunkIndexTape tape(tapeConfig);
    return gradientReverse(cfg, tape).stats;
  }
  ChunkTape tape(tapeConfig);
  return gradientReverse(cfg, tape).stats;
}

/// Directional derivative dJ/d(inputs) . direction via one tangent sweep.
inline double forwardDirectional(const BurgersConfig& cfg,
                                 const std::vector<double>& direction,
                                 double* objectiveOut = nullptr) {
  using S = ForwardReal;
  BurgersSim<S> sim(cfg);
  sim.init();
  for (int q = 0; q < cfg.inputCount(); ++q) {
    const auto [i, j] = interiorNode(cfg, q);
    S& value = inputIsU(cfg, q) ? sim.u(i, j) : sim.v(i, j);
    value.setGradient(direction[q]);
  }
  sim.runSteps();
  S objective = sim.objective();
  if (objectiveOut != nullptr) {
    *objectiveOut = objective.value();
  }
  return objective.getGradient();
}

/// Primal objective with one initial interior value perturbed.
inline double perturbedObjective(const BurgersConfig& cfg, int input,
                                 double delta) {
  BurgersSim<double> sim(cfg);
  sim.init();
  const auto [i, j] = interiorNode(cfg, input);
  if (inputIsU(cfg, input)) {
    sim.u(i, j) += delta;
  } else {
    sim.v(i, j) += delta;
  }
  sim.runSteps();
  return sim.objective();
}

/// Central finite differences of the objective for selected inputs. The
/// default step balances truncation against cancellation for this objective:
/// the error curve over the step size is V-shaped and h = 1e-6 already sits
/// on the cancellation arm for small gradient entries.
inline std::vector<double> fdGradientSamples(const BurgersConfig& cfg,
                                             const std::vector<int>& inputs,
                                             double h = 1e-5) {
  std::vector<double> result;
  result.reserve(inputs.size());
  for (const int q : inputs) {
    const double plus = perturbedObjective(cfg, q, h);
    const double minus = perturbedObjective(cfg, q, -h);
    result.push_back((plus - minus) / (2.0 * h));
  }
  return result;
}

/// Deterministic sample of input positions for gradient verification.
inline std::vector<int> sampleInputs(const BurgersConfig& cfg, int count,
                                     std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<int> samples;
  samples.reserve(count);
  for (int k = 0; k < count; ++k) {
    samples.push_back(int(rng() % std::uint32_t(cfg.inputCount())));
  }
  return samples;
}

}  // namespace jtape::burgers
