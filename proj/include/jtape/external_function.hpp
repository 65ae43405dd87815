#pragma once

#include <cstddef>

namespace jtape {

/// User callback recorded on the tape. The callback fires during the reverse
/// sweep when interpretation crosses the position it was recorded at and may
/// read and write the adjoint vector. The deleter runs exactly once, when the
/// record is discarded by a tape reset or the tape's destruction.
///
/// Stored in plain chunk arrays, so the record is a trivially copyable
/// triple of pointers.
template<typename Real>
struct ExternalFunctionRecord {
  using Callback = void (*)(void* payload, Real* adjoints,
                            std::size_t adjointCount);
  using Deleter = void (*)(void* payload);

  Callback callback = nullptr;
  void* payload = nullptr;
  Deleter deleter = nullptr;

  void invoke(Real* adjoints, std::size_t adjointCount) const {
    if (callback != nullptr) {
      callback(payload, adjoints, adjointCount);
    }
  }

  void destroyPayload() const {
    if (deleter != nullptr) {
      deleter(payload);
    }
  }
};

}  // namespace jtape
