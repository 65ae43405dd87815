#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "diagnostics.hpp"

#ifndef NDEBUG
#include <unordered_set>
#endif

namespace jtape {

struct IndexManagerStats {
  std::uint64_t issued = 0;     // total number of assignments served
  std::uint64_t freeDepth = 0;  // indices currently on the free stack
  std::uint64_t maxLive = 0;    // historical maximum of simultaneously live
};

/// Monotone counter indexing: indices are issued as 1, 2, 3, ... and never
/// freed. Because every recorded statement consumes exactly one index, the
/// left-hand-side index of a statement can be reconstructed by decrementing a
/// counter during the reverse sweep and does not have to be stored.
///
/// The manager doubles as the terminal node of the tape's stream chain, so
/// resetting the tape rewinds the counter.
template<typename T_Index = std::uint32_t>
class LinearIndexManager {
public:
  using Index = T_Index;
  using Position = std::uint64_t;

  static constexpr bool IsLinear = true;
  static constexpr Index PassiveIndex = 0;

  Index assign() {
    ++counter_;
    ++issued_;
    if (counter_ > std::numeric_limits<Index>::max()) {
      fatalError("linear index space exhausted");
    }
    return static_cast<Index>(counter_);
  }

  // Linear indices are never freed; passive zero is ignored.
  void free(Index) {}

  std::uint64_t largestIndex() const { return counter_; }

  // Terminal stream-node interface.
  Position position() const { return counter_; }
  void resetTo(const Position& pos) {
    require(pos <= counter_, "counter reset beyond recorded position");
    counter_ = pos;
  }
  void resetAll() { counter_ = 0; }

  IndexManagerStats stats() const {
    return IndexManagerStats{issued_, 0, counter_};
  }

private:
  std::uint64_t counter_ = 0;
  std::uint64_t issued_ = 0;
};

/// Recycling indexing: freed indices go onto a plain stack and are handed out
/// again before the counter grows. Every live value holds a distinct index,
/// which keeps the adjoint vector as small as the maximum number of values
/// alive at any one time. The stack is deliberately unsorted; anything
/// smarter would run on every statement.
template<typename T_Index = std::uint32_t>
class ReuseIndexManager {
public:
  using Index = T_Index;

  static constexpr bool IsLinear = false;
  static constexpr Index PassiveIndex = 0;

  Index assign() {
    ++issued_;
    Index result;
    if (!freeStack_.empty()) {
      result = freeStack_.back();
      freeStack_.pop_back();
    } else {
      ++counter_;
      if (counter_ > std::numeric_limits<Index>::max()) {
        fatalError("reuse index space exhausted");
      }
      result = static_cast<Index>(counter_);
    }
    ++live_;
    if (live_ > maxLive_) {
      maxLive_ = live_;
    }
#ifndef NDEBUG
    liveSet_.insert(result);
#endif
    return result;
  }

  void free(Index index) {
    if (index == PassiveIndex) {
      return;
    }
#ifndef NDEBUG
    JTAPE_ASSERT(liveSet_.erase(index) == 1, "double free of an index");
#endif
    freeStack_.push_back(index);
    --live_;
  }

  std::uint64_t largestIndex() const { return counter_; }
  std::uint64_t maxLive() const { return maxLive_; }
  std::uint64_t liveCount() const { return live_; }

  IndexManagerStats stats() const {
    return IndexManagerStats{issued_, freeStack_.size(), maxLive_};
  }

private:
  std::uint64_t counter_ = 0;
  std::uint64_t issued_ = 0;
  std::uint64_t live_ = 0;
  std::uint64_t maxLive_ = 0;
  std::vector<Index> freeStack_;
#ifndef NDEBUG
  std::unordered_set<Index> liveSet_;
#endif
};

}  // namespace jtape
