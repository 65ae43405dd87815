#pragma once

#include <cmath>
#include <type_traits>

#include "expression.hpp"
#include "real_traits.hpp"

namespace jtape {

// Each binary operation supplies a primal function and the six derivative
// rule variants: both arguments active, first passive, second passive, each
// with and without an incoming multiplier. The multiplier-free variants exist
// so that seeding a statement never multiplies by 1.0. Constant-sided
// variants propagate into exactly one child.

struct AddOp {
  static constexpr const char* name = "add";

  template<typename A, typename B>
  static auto primal(const A& a, const B& b) {
    return a + b;
  }

  template<typename Data, typename R, typename A, typename B>
  static void derv11(Data& data, const A& a, const B& b, const R&) {
    a.calcGradient(data);
    b.calcGradient(data);
  }
  template<typename Data, typename R, typename A, typename B>
  static void derv11M(Data& data, const A& a, const B& b, const R&,
                      const R& multiplier) {
    a.calcGradient(data, multiplier);
    b.calcGradient(data, multiplier);
  }
  template<typename Data, typename R, typename A>
  static void derv10(Data& data, const A& a, const PassiveRealType<R>&,
                     const R&) {
    a.calcGradient(data);
  }
  template<typename Data, typename R, typename A>
  static void derv10M(Data& data, const A& a, const PassiveRealType<R>&,
                      const R&, const R& multiplier) {
    a.calcGradient(data, multiplier);
  }
  template<typename Data, typename R, typename B>
  static void derv01(Data& data, const PassiveRealType<R>&, const B& b,
                     const R&) {
    b.calcGradient(data);
  }
  template<typename Data, typename R, typename B>
  static void derv01M(Data& data, const PassiveRealType<R>&, const B& b,
                      const R&, const R& multiplier) {
    b.calcGradient(data, multiplier);
  }
};

struct SubtractOp {
  static constexpr const char* name = "sub";

  template<typename A, typename B>
  static auto primal(const A& a, const B& b) {
    return a - b;
  }

  template<typename Data, typename R, typename A, typename B>
  static void derv11(Data& data, const A& a, const B& b, const R&) {
    a.calcGradient(data);
    b.calcGradient(data, R(-1.0));
  }
  template<typename Data, typename R, typename A, typename B>
  static void derv11M(Data& data, const A& a, const B& b, const R&,
                      const R& multiplier) {
    a.calcGradient(data, multiplier);
    b.calcGradient(data, -multiplier);
  }
  template<typename Data, typename R, typename A>
  static void derv10(Data& data, const A& a, const PassiveRealType<R>&,
                     const R&) {
    a.calcGradient(data);
  }
  template<typename Data, typename R, typename A>
  static void derv10M(Data& data, const A& a, const PassiveRealType<R>&,
                      const R&, const R& multiplier) {
    a.calcGradient(data, multiplier);
  }
  template<typename Data, typename R, typename B>
  static void derv01(Data& data, const PassiveRealType<R>&, const B& b,
                     const R&) {
    b.calcGradient(data, R(-1.0));
  }
  template<typename Data, typename R, typename B>
  static void derv01M(Data& data, const PassiveRealType<R>&, const B& b,
                      const R&, const R& multiplier) {
    b.calcGradient(data, -multiplier);
  }
};

struct MultiplyOp {
  static constexpr const char* name = "mul";

  template<typename A, typename B>
  static auto primal(const A& a, const B& b) {
    return a * b;
  }

  template<typename Data, typename R, typename A, typename B>
  static void derv11(Data& data, const A& a, const B& b, const R&) {
    a.calcGradient(data, b.value());
    b.calcGradient(data, a.value());
  }
  template<typename Data, typename R, typename A, typename B>
  static void derv11M(Data& data, const A& a, const B& b, const R&,
                      const R& multiplier) {
    a.calcGradient(data, b.value() * multiplier);
    b.calcGradient(data, a.value() * multiplier);
  }
  template<typename Data, typename R, typename A>
  static void derv10(Data& data, const A& a, const PassiveRealType<R>& b,
                     const R&) {
    a.calcGradient(data, R(b));
  }
  template<typename Data, typename R, typename A>
  static void derv10M(Data& data, const A& a, const PassiveRealType<R>& b,
                      const R&, const R& multiplier) {
    a.calcGradient(data, b * multiplier);
  }
  template<typename Data, typename R, typename B>
  static void derv01(Data& data, const PassiveRealType<R>& a, const B& b,
                     const R&) {
    b.calcGradient(data, R(a));
  }
  template<typename Data, typename R, typename B>
  static void derv01M(Data& data, const PassiveRealType<R>& a, const B& b,
                      const R&, const R& multiplier) {
    b.calcGradient(data, a * multiplier);
  }
};

struct DivideOp {
  static constexpr const char* name = "div";

  template<typename A, typename B>
  static auto primal(const A& a, const B& b) {
    return a / b;
  }

  template<typename Data, typename R, typename A, typename B>
  static void derv11(Data& data, const A& a, const B& b, const R& result) {
    checkArgumentDomain(data, b.value() != 0.0, name);
    const R inv = R(1.0) / b.value();
    a.calcGradient(data, inv);
    b.calcGradient(data, -result * inv);
  }
  template<typename Data, typename R, typename A, typename B>
  static void derv11M(Data& data, const A& a, const B& b, const R& result,
                      const R& multiplier) {
    checkArgumentDomain(data, b.value() != 0.0, name);
    const R inv = R(1.0) / b.value();
    a.calcGradient(data, inv * multiplier);
    b.calcGradient(data, -result * inv * multiplier);
  }
  template<typename Data, typename R, typename A>
  static void derv10(Data& data, const A& a, const PassiveRealType<R>& b,
                     const R&) {
    checkArgumentDomain(data, b != 0.0, name);
    a.calcGradient(data, R(1.0) / b);
  }
  template<typename Data, typename R, typename A>
  static void derv10M(Data& data, const A& a, const PassiveRealType<R>& b,
                      const R&, const R& multiplier) {
    checkArgumentDomain(data, b != 0.0, name);
    a.calcGradient(data, multiplier / b);
  }
  template<typename Data, typename R, typename B>
  static void derv01(Data& data, const PassiveRealType<R>&, const B& b,
                     const R& result) {
    checkArgumentDomain(data, b.value() != 0.0, name);
    b.calcGradient(data, -result / b.value());
  }
  template<typename Data, typename R, typename B>
  static void derv01M(Data& data, const PassiveRealType<R>&, const B& b,
                      const R& result, const R& multiplier) {
    checkArgumentDomain(data, b.value() != 0.0, name);
    b.calcGradient(data, -result / b.value() * multiplier);
  }
};

struct PowOp {
  static constexpr const char* name = "pow";

  template<typename A, typename B>
  static auto primal(const A& a, const B& b) {
    using std::pow;
    return pow(a, b);
  }

  // The partial with respect to the base may be non-finite at base 0 with
  // exponents below one; the rule reports it as computed and leaves any
  // filtering to the tape.
  template<typename R>
  static R baseGradient(const R& a, const R& b) {
    using std::pow;
    return b * pow(a, b - R(1.0));
  }
  template<typename R>
  static R exponentGradient(const R& a, const R& result) {
    using std::log;
    return result * log(a);
  }

  template<typename Data, typename R, typename A, typename B>
  static void derv11(Data& data, const A& a, const B& b, const R& result) {
    checkArgumentDomain(data, a.value() > 0.0, name);
    a.calcGradient(data, baseGradient(a.value(), b.value()));
    b.calcGradient(data, exponentGradient(a.value(), result));
  }
  template<typename Data, typename R, typename A, typename B>
  static void derv11M(Data& data, const A& a, const B& b, const R& result,
                      const R& multiplier) {
    checkArgumentDomain(data, a.value() > 0.0, name);
    a.calcGradient(data, baseGradient(a.value(), b.value()) * multiplier);
    b.calcGradient(data, exponentGradient(a.value(), result) * multiplier);
  }
  template<typename Data, typename R, typename A>
  static void derv10(Data& data, const A& a, const PassiveRealType<R>& b,
                     const R&) {
    checkArgumentDomain(data, a.value() > 0.0 || b >= 1.0, name);
    a.calcGradient(data, baseGradient(a.value(), R(b)));
  }
  template<typename Data, typename R, typename A>
  static void derv10M(Data& data, const A& a, const PassiveRealType<R>& b,
                      const R&, const R& multiplier) {
    checkArgumentDomain(data, a.value() > 0.0 || b >= 1.0, name);
    a.calcGradient(data, baseGradient(a.value(), R(b)) * multiplier);
  }
  template<typename Data, typename R, typename B>
  static void derv01(Data& data, const PassiveRealType<R>& a, const B& b,
                     const R& result) {
    checkArgumentDomain(data, a > 0.0, name);
    b.calcGradient(data, exponentGradient(R(a), result));
  }
  template<typename Data, typename R, typename B>
  static void derv01M(Data& data, const PassiveRealType<R>& a, const B& b,
                      const R& result, const R& multiplier) {
    checkArgumentDomain(data, a > 0.0, name);
    b.calcGradient(data, exponentGradient(R(a), result) * multiplier);
  }
};

/// Both arguments are active expressions.
template<typename R, typename A, typename B, typename Op>
struct BinaryExpr11 : Expression<R, BinaryExpr11<R, A, B, Op>> {
  static constexpr std::size_t ActiveLeafCount =
      A::ActiveLeafCount + B::ActiveLeafCount;
  static constexpr bool StoreAsReference = false;

  BinaryExpr11(const Expression<R, A>& a, const Expression<R, B>& b)
      : a_(a.cast()), b_(b.cast()), result_(Op::primal(a_.value(), b_.value())) {}

  R value() const { return result_; }

  template<typename Data>
  void calcGradient(Data& data) const {
    Op::derv11(data, a_, b_, result_);
  }
  template<typename Data>
  void calcGradient(Data& data, const R& multiplier) const {
    Op::derv11M(data, a_, b_, result_, multiplier);
  }

private:
  ExpressionStore<A> a_;
  ExpressionStore<B> b_;
  R result_;
};

/// First argument active, second a passive constant.
template<typename R, typename A, typename Op>
struct BinaryExpr10 : Expression<R, BinaryExpr10<R, A, Op>> {
  static constexpr std::size_t ActiveLeafCount = A::ActiveLeafCount;
  static constexpr bool StoreAsReference = false;
  using PassiveReal = PassiveRealType<R>;

  BinaryExpr10(const Expression<R, A>& a, const PassiveReal& b)
      : a_(a.cast()), b_(b), result_(Op::primal(a_.value(), b_)) {}

  R value() const { return result_; }

  template<typename Data>
  void calcGradient(Data& data) const {
    Op::template derv10<Data, R>(data, a_, b_, result_);
  }
  template<typename Data>
  void calcGradient(Data& data, const R& multiplier) const {
    Op::template derv10M<Data, R>(data, a_, b_, result_, multiplier);
  }

private:
  ExpressionStore<A> a_;
  PassiveReal b_;
  R result_;
};

/// First argument a passive constant, second active.
template<typename R, typename B, typename Op>
struct BinaryExpr01 : Expression<R, BinaryExpr01<R, B, Op>> {
  static constexpr std::size_t ActiveLeafCount = B::ActiveLeafCount;
  static constexpr bool StoreAsReference = false;
  using PassiveReal = PassiveRealType<R>;

  BinaryExpr01(const PassiveReal& a, const Expression<R, B>& b)
      : a_(a), b_(b.cast()), result_(Op::primal(a_, b_.value())) {}

  R value() const { return result_; }

  template<typename Data>
  void calcGradient(Data& data) const {
    Op::template derv01<Data, R>(data, a_, b_, result_);
  }
  template<typename Data>
  void calcGradient(Data& data, const R& multiplier) const {
    Op::template derv01M<Data, R>(data, a_, b_, result_, multiplier);
  }

private:
  PassiveReal a_;
  ExpressionStore<B> b_;
  R result_;
};

#define JTAPE_DEFINE_BINARY_OPERATOR(OPERATOR, OP_TYPE)                       \
  template<typename R, typename A, typename B>                                \
  BinaryExpr11<R, A, B, OP_TYPE> OPERATOR(const Expression<R, A>& a,          \
                                          const Expression<R, B>& b) {        \
    return BinaryExpr11<R, A, B, OP_TYPE>(a, b);                              \
  }                                                                           \
  template<typename R, typename A>                                            \
  BinaryExpr10<R, A, OP_TYPE> OPERATOR(const Expression<R, A>& a,             \
                                       const PassiveRealType<R>& b) {         \
    return BinaryExpr10<R, A, OP_TYPE>(a, b);                                 \
  }                                                                           \
  template<typename R, typename B>                                            \
  BinaryExpr01<R, B, OP_TYPE> OPERATOR(const PassiveRealType<R>& a,           \
                                       const Expression<R, B>& b) {           \
    return BinaryExpr01<R, B, OP_TYPE>(a, b);                                 \
  }

JTAPE_DEFINE_BINARY_OPERATOR(operator+, AddOp)
JTAPE_DEFINE_BINARY_OPERATOR(operator-, SubtractOp)
JTAPE_DEFINE_BINARY_OPERATOR(operator*, MultiplyOp)
JTAPE_DEFINE_BINARY_OPERATOR(operator/, DivideOp)
JTAPE_DEFINE_BINARY_OPERATOR(pow, PowOp)

#undef JTAPE_DEFINE_BINARY_OPERATOR

// Comparisons act on the primal values; they drive control flow in generic
// code and are not differentiated.
#define JTAPE_DEFINE_COMPARISON(NAME, SYMBOL)                                 \
  template<typename R, typename A, typename B>                                \
  bool NAME(const Expression<R, A>& a, const Expression<R, B>& b) {           \
    return a.value() SYMBOL b.value();                                        \
  }                                                                           \
  template<typename R, typename A>                                            \
  bool NAME(const Expression<R, A>& a, const PassiveRealType<R>& b) {         \
    return a.value() SYMBOL b;                                                \
  }                                                                           \
  template<typename R, typename B>                                            \
  bool NAME(const PassiveRealType<R>& a, const Expression<R, B>& b) {         \
    return a SYMBOL b.value();                                                \
  }

JTAPE_DEFINE_COMPARISON(operator<, <)
JTAPE_DEFINE_COMPARISON(operator>, >)
JTAPE_DEFINE_COMPARISON(operator<=, <=)
JTAPE_DEFINE_COMPARISON(operator>=, >=)
JTAPE_DEFINE_COMPARISON(operator==, ==)
JTAPE_DEFINE_COMPARISON(operator!=, !=)

#undef JTAPE_DEFINE_COMPARISON

}  // namespace jtape
