#pragma once

#include <cstddef>
#include <type_traits>

#include "real_traits.hpp"

namespace jtape {

/// Static interface for the expression templates. Every node of a right-hand
/// side derives from this class with itself as the Impl argument, so a whole
/// statement is one composite type and the compiler can flatten the complete
/// evaluation and gradient propagation without virtual calls.
///
/// calcGradient comes in two flavours: a multiplier-free one for the common
/// seed of 1.0 and one that carries the partial derivative accumulated so
/// far. The recursion terminates in the active leaf types, which hand the
/// final partials to the tape.
template<typename R, typename Impl>
struct Expression {
  using Real = R;
  using PassiveReal = PassiveRealType<R>;

  const Impl& cast() const { return static_cast<const Impl&>(*this); }

  R value() const { return cast().value(); }

  template<typename Data>
  void calcGradient(Data& data) const {
    cast().calcGradient(data);
  }

  template<typename Data>
  void calcGradient(Data& data, const R& multiplier) const {
    cast().calcGradient(data, multiplier);
  }

  Expression() = default;
  Expression(const Expression&) = default;

private:
  Expression& operator=(const Expression&) = delete;
};

/// Compile-time upper bound on the number of active leaves of an expression
/// type. The tape reserves this many argument slots before it propagates, so
/// pushing the realized arguments never needs a bounds check.
template<typename E>
inline constexpr std::size_t activeLeafCount = E::ActiveLeafCount;

/// How a node stores its children: active leaves by reference (they are
/// lvalues owned by the program), composite sub-expressions by value so that
/// a stored expression never refers to a dead temporary.
template<typename E>
using ExpressionStore = std::conditional_t<E::StoreAsReference, const E&, E>;

/// Hook that gives the derivative rules access to the propagation context.
/// The default is a no-op; the reverse tapes opt in so that the
/// "check expression arguments" switch can reach the rule evaluations.
template<typename Data>
struct PropagationTraits {
  static bool checkArguments(const Data&) { return false; }
  static void reportDomainViolation(Data&, const char*) {}
};

template<typename Data>
inline void checkArgumentDomain(Data& data, bool valid,
                                const char* operation) {
  if (PropagationTraits<Data>::checkArguments(data) && !valid) {
    PropagationTraits<Data>::reportDomainViolation(data, operation);
  }
}

}  // namespace jtape
