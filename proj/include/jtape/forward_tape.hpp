#pragma once

#include "expression.hpp"
#include "real_traits.hpp"

namespace jtape {

/// Tapeless tangent propagation: the gradient datum of an active value is its
/// tangent, and every assignment folds the directional derivative of the
/// right-hand side into it on the spot. Nothing is recorded, so the whole
/// tape consists of static methods and one per-thread guard flag.
template<typename T_Real>
class ForwardTape {
public:
  using Real = T_Real;
  using PassiveReal = PassiveRealType<Real>;
  using GradientData = Real;  // the tangent

  static constexpr bool RequiresDestructor = false;
  static constexpr bool GradientInTape = false;

  /// Guard against non-finite local Jacobians, mirroring the reverse tapes'
  /// invalid-Jacobian switch. On by default; per thread so concurrent
  /// benchmarks stay independent.
  static bool& checkInvalidTangents() {
    thread_local bool enabled = true;
    return enabled;
  }

  template<typename Rhs>
  static void storeExpression(Real& lhsPrimal, Real& lhsTangent,
                              const Expression<Real, Rhs>& rhsBase) {
    const Rhs& rhs = rhsBase.cast();
    Real gradient{};
    rhs.calcGradient(gradient);
    const Real value = rhs.value();
    lhsTangent = gradient;
    lhsPrimal = value;
  }

  static void storePassiveAssign(Real& lhsPrimal, Real& lhsTangent,
                                 const PassiveReal& value) {
    lhsTangent = Real();
    lhsPrimal = value;
  }

  template<typename Data>
  static void propagateJacobi(Data& accumulator, const Real& jacobian,
                              const Real& /*value*/, const GradientData& tangent) {
    if (!checkInvalidTangents() || RealTraits<Real>::isTotallyFinite(jacobian)) {
      accumulator += jacobian * tangent;
    }
  }

  template<typename Data>
  static void propagateJacobiUnit(Data& accumulator, const Real& /*value*/,
                                  const GradientData& tangent) {
    accumulator += tangent;
  }

  static void initGradientData(Real& tangent) { tangent = Real(); }
  static void destroyGradientData(Real&) {}
};

}  // namespace jtape
