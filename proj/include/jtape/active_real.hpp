#pragma once

#include <ostream>

#include "expression.hpp"
#include "real_traits.hpp"

namespace jtape {

/// The calculation type handed to user code. It holds the primal value and
/// the tape-specific gradient datum (an index for the reverse tapes, the
/// tangent for the forward tape) and contains no AD logic of its own: every
/// action is forwarded to the tape. It terminates the expression recursion.
///
/// Copy construction and copy assignment record a copy statement on reverse
/// tapes; moves only relocate the gradient datum and record nothing.
/// Values bound to an index-reuse tape release their index on destruction
/// and therefore must not outlive their tape binding.
template<typename T_Tape>
class ActiveReal
    : public Expression<typename T_Tape::Real, ActiveReal<T_Tape>> {
public:
  using Tape = T_Tape;
  using Real = typename Tape::Real;
  using PassiveReal = PassiveRealType<Real>;
  using GradientData = typename Tape::GradientData;

  static constexpr std::size_t ActiveLeafCount = 1;
  static constexpr bool StoreAsReference = true;

  ActiveReal() { Tape::initGradientData(gradientData_); }

  ActiveReal(const PassiveReal& value) : primal_(value) {
    Tape::initGradientData(gradientData_);
  }

  ActiveReal(const ActiveReal& other) {
    Tape::initGradientData(gradientData_);
    Tape::storeExpression(primal_, gradientData_, other);
  }

  template<typename Rhs>
  ActiveReal(const Expression<Real, Rhs>& rhs) {
    Tape::initGradientData(gradientData_);
    Tape::storeExpression(primal_, gradientData_, rhs);
  }

  ActiveReal(ActiveReal&& other) noexcept
      : primal_(other.primal_), gradientData_(other.gradientData_) {
    Tape::initGradientData(other.gradientData_);
  }

  ~ActiveReal() { Tape::destroyGradientData(gradientData_); }

  ActiveReal& operator=(const PassiveReal& value) {
    Tape::storePassiveAssign(primal_, gradientData_, value);
    return *this;
  }

  ActiveReal& operator=(const ActiveReal& other) {
    Tape::storeExpression(primal_, gradientData_, other);
    return *this;
  }

  template<typename Rhs>
  ActiveReal& operator=(const Expression<Real, Rhs>& rhs) {
    Tape::storeExpression(primal_, gradientData_, rhs);
    return *this;
  }

  ActiveReal& operator=(ActiveReal&& other) noexcept {
    if (this != &other) {
      Tape::destroyGradientData(gradientData_);
      primal_ = other.primal_;
      gradientData_ = other.gradientData_;
      Tape::initGradientData(other.gradientData_);
    }
    return *this;
  }

  template<typename Rhs>
  ActiveReal& operator+=(const Expression<Real, Rhs>& rhs) {
    return *this = *this + rhs;
  }
  template<typename Rhs>
  ActiveReal& operator-=(const Expression<Real, Rhs>& rhs) {
    return *this = *this - rhs;
  }
  template<typename Rhs>
  ActiveReal& operator*=(const Expression<Real, Rhs>& rhs) {
    return *this = *this * rhs;
  }
  template<typename Rhs>
  ActiveReal& operator/=(const Expression<Real, Rhs>& rhs) {
    return *this = *this / rhs;
  }
  ActiveReal& operator+=(const PassiveReal& rhs) { return *this = *this + rhs; }
  ActiveReal& operator-=(const PassiveReal& rhs) { return *this = *this - rhs; }
  ActiveReal& operator*=(const PassiveReal& rhs) { return *this = *this * rhs; }
  ActiveReal& operator/=(const PassiveReal& rhs) { return *this = *this / rhs; }

  // Expression interface.
  Real value() const { return primal_; }

  template<typename Data>
  void calcGradient(Data& data) const {
    Tape::propagateJacobiUnit(data, primal_, gradientData_);
  }
  template<typename Data>
  void calcGradient(Data& data, const Real& multiplier) const {
    Tape::propagateJacobi(data, multiplier, primal_, gradientData_);
  }

  // Tape plumbing.
  Real& valueRef() { return primal_; }
  GradientData& gradientData() { return gradientData_; }
  const GradientData& gradientData() const { return gradientData_; }

  /// Convenience gradient access: the adjoint slot on reverse tapes, the
  /// tangent on the forward tape.
  Real getGradient() const {
    if constexpr (Tape::GradientInTape) {
      return Tape::current().getGradient(gradientData_);
    } else {
      return gradientData_;
    }
  }
  void setGradient(const Real& gradient) {
    if constexpr (Tape::GradientInTape) {
      Tape::current().setGradient(gradientData_, gradient);
    } else {
      gradientData_ = gradient;
    }
  }

  friend std::ostream& operator<<(std::ostream& out, const ActiveReal& v) {
    return out << v.value();
  }

private:
  Real primal_{};
  GradientData gradientData_{};
};

template<typename Tape>
struct RealTraits<ActiveReal<Tape>> {
  using Real = typename Tape::Real;
  using PassiveReal = PassiveRealType<Real>;

  static PassiveReal passiveValue(const ActiveReal<Tape>& v) {
    return RealTraits<Real>::passiveValue(v.value());
  }
  static bool isTotallyFinite(const ActiveReal<Tape>& v) {
    return RealTraits<Real>::isTotallyFinite(v.value());
  }
};

}  // namespace jtape
