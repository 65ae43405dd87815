#pragma once

#include <cmath>

#include "expression.hpp"
#include "real_traits.hpp"

namespace jtape {

// A unary operation is a primal function plus one gradient function of the
// argument and the already computed result.

struct NegateOp {
  static constexpr const char* name = "neg";
  template<typename R>
  static R primal(const R& a) {
    return -a;
  }
  template<typename Data, typename R>
  static R gradient(Data&, const R&, const R&) {
    return R(-1.0);
  }
};

struct SinOp {
  static constexpr const char* name = "sin";
  template<typename R>
  static R primal(const R& a) {
    using std::sin;
    return sin(a);
  }
  template<typename Data, typename R>
  static R gradient(Data&, const R& a, const R&) {
    using std::cos;
    return cos(a);
  }
};

struct CosOp {
  static constexpr const char* name = "cos";
  template<typename R>
  static R primal(const R& a) {
    using std::cos;
    return cos(a);
  }
  template<typename Data, typename R>
  static R gradient(Data&, const R& a, const R&) {
    using std::sin;
    return -sin(a);
  }
};

struct ExpOp {
  static constexpr const char* name = "exp";
  template<typename R>
  static R primal(const R& a) {
    using std::exp;
    return exp(a);
  }
  template<typename Data, typename R>
  static R gradient(Data&, const R&, const R& result) {
    return result;
  }
};

struct LogOp {
  static constexpr const char* name = "log";
  template<typename R>
  static R primal(const R& a) {
    using std::log;
    return log(a);
  }
  template<typename Data, typename R>
  static R gradient(Data& data, const R& a, const R&) {
    checkArgumentDomain(data, a > 0.0, name);
    return R(1.0) / a;
  }
};

struct SqrtOp {
  static constexpr const char* name = "sqrt";
  template<typename R>
  static R primal(const R& a) {
    using std::sqrt;
    return sqrt(a);
  }
  template<typename Data, typename R>
  static R gradient(Data& data, const R& a, const R& result) {
    checkArgumentDomain(data, a > 0.0, name);
    return R(1.0) / (R(2.0) * result);
  }
};

struct AbsOp {
  static constexpr const char* name = "abs";
  template<typename R>
  static R primal(const R& a) {
    using std::abs;
    return abs(a);
  }
  // The subgradient at 0 is fixed to 0 so results stay deterministic.
  template<typename Data, typename R>
  static R gradient(Data&, const R& a, const R&) {
    if (a > 0.0) {
      return R(1.0);
    }
    if (a < 0.0) {
      return R(-1.0);
    }
    return R(0.0);
  }
};

template<typename R, typename A, typename Op>
struct UnaryExpr : Expression<R, UnaryExpr<R, A, Op>> {
  static constexpr std::size_t ActiveLeafCount = A::ActiveLeafCount;
  static constexpr bool StoreAsReference = false;

  explicit UnaryExpr(const Expression<R, A>& arg)
      : arg_(arg.cast()), result_(Op::primal(arg_.value())) {}

  R value() const { return result_; }

  template<typename Data>
  void calcGradient(Data& data) const {
    arg_.calcGradient(data, Op::gradient(data, arg_.value(), result_));
  }
  template<typename Data>
  void calcGradient(Data& data, const R& multiplier) const {
    arg_.calcGradient(data,
                      Op::gradient(data, arg_.value(), result_) * multiplier);
  }

private:
  ExpressionStore<A> arg_;
  R result_;
};

#define JTAPE_DEFINE_UNARY_FUNCTION(FUNCTION, OP_TYPE)                        \
  template<typename R, typename A>                                            \
  UnaryExpr<R, A, OP_TYPE> FUNCTION(const Expression<R, A>& arg) {            \
    return UnaryExpr<R, A, OP_TYPE>(arg);                                     \
  }

JTAPE_DEFINE_UNARY_FUNCTION(operator-, NegateOp)
JTAPE_DEFINE_UNARY_FUNCTION(sin, SinOp)
JTAPE_DEFINE_UNARY_FUNCTION(cos, CosOp)
JTAPE_DEFINE_UNARY_FUNCTION(exp, ExpOp)
JTAPE_DEFINE_UNARY_FUNCTION(log, LogOp)
JTAPE_DEFINE_UNARY_FUNCTION(sqrt, SqrtOp)
JTAPE_DEFINE_UNARY_FUNCTION(abs, AbsOp)
JTAPE_DEFINE_UNARY_FUNCTION(fabs, AbsOp)

#undef JTAPE_DEFINE_UNARY_FUNCTION

}  // namespace jtape
