#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "../diagnostics.hpp"

namespace jtape::burgers {

/// 2D coupled Burgers system on the unit square, first-order upwind
/// convection with central diffusion and explicit Euler time stepping.
struct BurgersConfig {
  int nx = 61;
  int ny = 61;
  int steps = 32;
  double reynolds = 100.0;
  double dtSafety = 0.8;

  double dx() const { return 1.0 / (nx - 1); }
  double dy() const { return 1.0 / (ny - 1); }
  int interiorCount() const { return (nx - 2) * (ny - 2); }
  int inputCount() const { return 2 * interiorCount(); }

  /// Time step: a safety factor under the combined explicit
  /// advection-diffusion bound
  ///   dt <= 1 / (umax/dx + vmax/dy + 2 nu (1/dx^2 + 1/dy^2)),
  /// with the maximum velocities taken from the initial conditions
  /// (|u| <= 2, |v| <= 1 on the unit square). Taking the minimum of the two
  /// separate bounds is not sufficient: with both limits active their
  /// fractions add up, and the 61x61, 32-step case blows up under it.
  double dt() const {
    const double nu = 1.0 / reynolds;
    const double umax = 2.0;
    const double vmax = 1.0;
    const double denominator = umax / dx() + vmax / dy() +
                               2.0 * nu * (1.0 / (dx() * dx()) +
                                           1.0 / (dy() * dy()));
    return dtSafety / denominator;
  }
};

/// Closed-form reference solution used for the boundary values at t > 0.
inline double exactU(double x, double y, double t) {
  return (x + y - 2.0 * x * t) / (1.0 - 2.0 * t * t);
}

/// The printed reference expression for v coincides with the one for u; it
/// serves as a deterministic boundary condition, not as the solution of the
/// v initial condition.
inline double exactV(double x, double y, double t) {
  return (x + y - 2.0 * x * t) / (1.0 - 2.0 * t * t);
}

namespace detail {

template<typename S>
void setPrimal(S& target, double value) {
  if constexpr (std::is_arithmetic_v<S>) {
    target = value;
  } else {
    target.valueRef() = value;
  }
}

}  // namespace detail

template<typename S>
class BurgersSim {
public:
  explicit BurgersSim(const BurgersConfig& config) : cfg_(config) {
    require(cfg_.nx >= 3 && cfg_.ny >= 3, "grid must be at least 3x3");
    const std::size_t total = std::size_t(cfg_.nx) * cfg_.ny;
    u_.resize(total);
    v_.resize(total);
    uNext_.resize(total);
    vNext_.resize(total);
  }

  const BurgersConfig& config() const { return cfg_; }

  std::size_t index(int i, int j) const {
    return std::size_t(j) * cfg_.nx + i;
  }

  S& u(int i, int j) { return u_[index(i, j)]; }
  S& v(int i, int j) { return v_[index(i, j)]; }
  const S& u(int i, int j) const { return u_[index(i, j)]; }
  const S& v(int i, int j) const { return v_[index(i, j)]; }

  /// Initial conditions u = x + y, v = x - y on the whole grid, written as
  /// raw values: initialization is not part of the differentiated
  /// computation.
  void init() {
    for (int j = 0; j < cfg_.ny; ++j) {
      const double y = j * cfg_.dy();
      for (int i = 0; i < cfg_.nx; ++i) {
        const double x = i * cfg_.dx();
        detail::setPrimal(u_[index(i, j)], x + y);
        detail::setPrimal(v_[index(i, j)], x - y);
      }
    }
  }

  /// Advances from t_n to t_{n+1}: donor-cell upwind convection with the
  /// direction chosen by the sign of the local convecting velocity, central
  /// second-order diffusion, explicit Euler in time. Boundary values are
  /// refreshed from the reference solution at the new time level.
  void step(int stepIndex) {
    const double dt = cfg_.dt();
    const double dx = cfg_.dx();
    const double dy = cfg_.dy();
    const double dx2 = dx * dx;
    const double dy2 = dy * dy;
    const double nuDt = dt / cfg_.reynolds;
    const double tNext = (stepIndex + 1) * dt;

    for (int j = 1; j < cfg_.ny - 1; ++j) {
      for (int i = 1; i < cfg_.nx - 1; ++i) {
        const S& uC = u_[index(i, j)];
        const S& uW = u_[index(i - 1, j)];
        const S& uE = u_[index(i + 1, j)];
        const S& uS = u_[index(i, j - 1)];
        const S& uN = u_[index(i, j + 1)];
        const S& vC = v_[index(i, j)];
        const S& vW = v_[index(i - 1, j)];
        const S& vE = v_[index(i + 1, j)];
        const S& vS = v_[index(i, j - 1)];
        const S& vN = v_[index(i, j + 1)];

        const bool windX = uC > 0.0;
        const bool windY = vC > 0.0;

        uNext_[index(i, j)] =
            uC - dt * uC * ((windX ? (uC - uW) : (uE - uC)) / dx) -
            dt * vC * ((windY ? (uC - uS) : (uN - uC)) / dy) +
            nuDt * ((uE - 2.0 * uC + uW) / dx2 + (uN - 2.0 * uC + uS) / dy2);
        vNext_[index(i, j)] =
            vC - dt * uC * ((windX ? (vC - vW) : (vE - vC)) / dx) -
            dt * vC * ((windY ? (vC - vS) : (vN - vC)) / dy) +
            nuDt * ((vE - 2.0 * vC + vW) / dx2 + (vN - 2.0 * vC + vS) / dy2);
      }
    }

    for (int i = 0; i < cfg_.nx; ++i) {
      const double x = i * cfg_.dx();
      uNext_[index(i, 0)] = exactU(x, 0.0, tNext);
      vNext_[index(i, 0)] = exactV(x, 0.0, tNext);
      uNext_[index(i, cfg_.ny - 1)] = exactU(x, 1.0, tNext);
      vNext_[index(i, cfg_.ny - 1)] = exactV(x, 1.0, tNext);
    }
    for (int j = 1; j < cfg_.ny - 1; ++j) {
      const double y = j * cfg_.dy();
      uNext_[index(0, j)] = exactU(0.0, y, tNext);
      vNext_[index(0, j)] = exactV(0.0, y, tNext);
      uNext_[index(cfg_.nx - 1, j)] = exactU(1.0, y, tNext);
      vNext_[index(cfg_.nx - 1, j)] = exactV(1.0, y, tNext);
    }

    u_.swap(uNext_);
    v_.swap(vNext_);
  }

  void runSteps() {
    for (int n = 0; n < cfg_.steps; ++n) {
      step(n);
    }
  }

  /// Discrete L2 norm of the interior solution; the single transcendental
  /// operation of the whole benchmark.
  S objective() const {
    using std::sqrt;
    S accumulator(0.0);
    for (int j = 1; j < cfg_.ny - 1; ++j) {
      for (int i = 1; i < cfg_.nx - 1; ++i) {
        const S& uC = u_[index(i, j)];
        const S& vC = v_[index(i, j)];
        accumulator += uC * uC + vC * vC;
      }
    }
    return sqrt(accumulator);
  }

private:
  BurgersConfig cfg_;
  std::vector<S> u_;
  std::vector<S> v_;
  std::vector<S> uNext_;
  std::vector<S> vNext_;
};

/// Primal objective on plain values.
inline double primalObjective(const BurgersConfig& config) {
  BurgersSim<double> sim(config);
  sim.init();
  sim.runSteps();
  return sim.objective();
}

}  // namespace jtape::burgers
