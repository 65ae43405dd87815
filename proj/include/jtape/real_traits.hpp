#pragma once

#include <cmath>

namespace jtape {

/// Maps a computation value type onto the plain floating point type that
/// passive constants use. The default covers the builtin types; active types
/// specialize this so that nested first-over-first instantiations keep
/// resolving to the innermost passive type.
template<typename Real>
struct RealTraits {
  using PassiveReal = Real;

  static PassiveReal passiveValue(const Real& v) { return v; }
  static bool isTotallyFinite(const Real& v) {
    using std::isfinite;
    return isfinite(v);
  }
};

template<typename Real>
using PassiveRealType = typename RealTraits<Real>::PassiveReal;

template<typename Real>
PassiveRealType<Real> passiveValue(const Real& v) {
  return RealTraits<Real>::passiveValue(v);
}

}  // namespace jtape
