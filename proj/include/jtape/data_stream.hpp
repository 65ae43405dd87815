#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "chunk.hpp"
#include "diagnostics.hpp"

namespace jtape {

/// Composite position of a stream: the location inside this stream plus,
/// recursively, the position of the child stream at the same instant.
/// Ordering is lexicographic.
template<typename NestedPos>
struct StreamPosition {
  std::uint64_t chunk = 0;
  std::uint64_t offset = 0;
  NestedPos inner{};

  friend bool operator==(const StreamPosition&,
                         const StreamPosition&) = default;
  friend auto operator<=>(const StreamPosition& a, const StreamPosition& b) {
    if (auto c = a.chunk <=> b.chunk; c != 0) {
      return c;
    }
    if (auto c = a.offset <=> b.offset; c != 0) {
      return c;
    }
    return a.inner <=> b.inner;
  }
};

struct StreamStats {
  std::size_t chunkCount = 0;
  std::size_t usedEntries = 0;
  std::size_t usedBytes = 0;
  std::size_t allocatedBytes = 0;
};

/// Terminal node of a stream chain: a bare counter with no associated data
/// array. Its position is the counter value, so resetting the chain rewinds
/// the counter together with all stream contents.
class StatementCounter {
public:
  using Position = std::uint64_t;

  Position position() const { return count_; }
  std::uint64_t value() const { return count_; }

  void advance() { ++count_; }

  void resetTo(const Position& pos) {
    require(pos <= count_, "counter reset beyond recorded position");
    count_ = pos;
  }
  void resetAll() { count_ = 0; }

private:
  std::uint64_t count_ = 0;
};

namespace detail {

// Shared reverse-iteration logic: visits the chunk segments of [to, from) in
// reverse order. chunkStartInner(i) must return the child position captured
// when chunk i became the current chunk.
template<typename Stream, typename Fn>
void forEachReverseImpl(Stream& stream, const typename Stream::Position& from,
                        const typename Stream::Position& to, Fn&& fn) {
  require(to <= from, "reverse iteration range is inverted");
  require(from <= stream.position(), "iteration range beyond recorded data");

  if (from == to) {
    return;
  }
  for (std::uint64_t chunk = from.chunk;; --chunk) {
    if (chunk < to.chunk) {
      break;
    }
    const std::uint64_t end =
        (chunk == from.chunk) ? from.offset : stream.chunkUsed(chunk);
    const std::uint64_t begin = (chunk == to.chunk) ? to.offset : 0;
    const auto innerFrom =
        (chunk == from.chunk) ? from.inner : stream.chunkStartInner(chunk + 1);
    const auto innerTo =
        (chunk == to.chunk) ? to.inner : stream.chunkStartInner(chunk);
    if (begin != end || innerTo != innerFrom || chunk == to.chunk) {
      fn(stream.chunkAt(chunk), static_cast<std::size_t>(begin),
         static_cast<std::size_t>(end), innerFrom, innerTo);
    }
    if (chunk == 0) {
      break;
    }
  }
}

}  // namespace detail

/// Growing chunked stream. Reservations check the current chunk and move on
/// to a fresh one (allocating it on first use) when the requested group of
/// entries does not fit, so a group never spans a chunk boundary. Chunks are
/// retained across resets.
template<typename ChunkT, typename Nested>
class ChunkedStream {
public:
  using ChunkType = ChunkT;
  using NestedStream = Nested;
  using NestedPosition = typename Nested::Position;
  using Position = StreamPosition<NestedPosition>;

  static constexpr std::size_t EntryBytes = ChunkT::EntryBytes;
  static constexpr bool Checked = true;

  explicit ChunkedStream(std::size_t chunkCapacity)
      : chunkCapacity_(chunkCapacity) {
    require(chunkCapacity_ > 0, "chunk capacity must be positive");
    chunks_.emplace_back(chunkCapacity_);
    chunkStartInner_.push_back(NestedPosition{});
  }
  template<typename... NestedArgs>
  ChunkedStream(std::size_t chunkCapacity, NestedArgs&&... nestedArgs)
      : nested_(std::forward<NestedArgs>(nestedArgs)...),
        chunkCapacity_(chunkCapacity) {
    require(chunkCapacity_ > 0, "chunk capacity must be positive");
    chunks_.emplace_back(chunkCapacity_);
    chunkStartInner_.push_back(NestedPosition{});
  }

  Nested& nested() { return nested_; }
  const Nested& nested() const { return nested_; }

  std::size_t chunkCapacity() const { return chunkCapacity_; }

  /// Guarantees that the next `items` pushes land in the current chunk.
  void reserve(std::size_t items) {
    require(items <= chunkCapacity_,
            "reservation larger than the chunk capacity");
    if (chunks_[currentChunk_].remaining() < items) {
      ++currentChunk_;
      if (currentChunk_ == chunks_.size()) {
        chunks_.emplace_back(chunkCapacity_);
        chunkStartInner_.push_back(nested_.position());
      } else {
        chunks_[currentChunk_].setUsed(0);
        chunkStartInner_[currentChunk_] = nested_.position();
      }
    }
  }

  template<typename... Values>
  void push(const Values&... values) {
    chunks_[currentChunk_].push(values...);
    ++totalUsed_;
  }

  Position position() const {
    return Position{currentChunk_, chunks_[currentChunk_].used(),
                    nested_.position()};
  }

  void resetTo(const Position& pos) {
    require(pos <= position(), "stream reset beyond recorded position");
    JTAPE_ASSERT(pos.chunk < chunks_.size(), "position chunk out of range");
    totalUsed_ = 0;
    for (std::uint64_t c = 0; c < pos.chunk; ++c) {
      totalUsed_ += chunks_[c].used();
    }
    totalUsed_ += pos.offset;
    currentChunk_ = pos.chunk;
    chunks_[currentChunk_].setUsed(pos.offset);
    nested_.resetTo(pos.inner);
  }

  void resetAll() {
    currentChunk_ = 0;
    totalUsed_ = 0;
    chunks_[0].setUsed(0);
    chunkStartInner_[0] = NestedPosition{};
    nested_.resetAll();
  }

  /// Visits the chunk segments of [to, from) in reverse order. The visitor
  /// receives the chunk, the [begin, end) entry range inside it and the
  /// child-stream positions bounding that segment.
  template<typename Fn>
  void forEachReverse(const Position& from, const Position& to, Fn&& fn) {
    detail::forEachReverseImpl(*this, from, to, fn);
  }

  ChunkT& chunkAt(std::uint64_t index) { return chunks_[index]; }
  const ChunkT& chunkAt(std::uint64_t index) const { return chunks_[index]; }
  std::uint64_t chunkUsed(std::uint64_t index) const {
    return chunks_[index].used();
  }
  NestedPosition chunkStartInner(std::uint64_t index) const {
    JTAPE_ASSERT(index < chunkStartInner_.size(),
                 "chunk boundary index out of range");
    return chunkStartInner_[index];
  }

  std::size_t usedTotal() const { return totalUsed_; }

  /// Logical entry count of a boundary expressed as (chunk, offset); used by
  /// debug checks to compare the two representations of a chunk-edge
  /// boundary.
  std::uint64_t entriesBefore(std::uint64_t chunk, std::uint64_t offset) const {
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < chunk; ++c) {
      total += chunks_[c].used();
    }
    return total + offset;
  }

  StreamStats stats() const {
    StreamStats s;
    s.chunkCount = chunks_.size();
    s.usedEntries = totalUsed_;
    s.usedBytes = totalUsed_ * EntryBytes;
    s.allocatedBytes = chunks_.size() * chunkCapacity_ * EntryBytes;
    return s;
  }

private:
  Nested nested_{};
  std::vector<ChunkT> chunks_;
  std::vector<NestedPosition> chunkStartInner_;
  std::size_t chunkCapacity_;
  std::uint64_t currentChunk_ = 0;
  std::uint64_t totalUsed_ = 0;
};

/// Preallocated stream: one contiguous block sized up front, reservations
/// compile away to a debug assertion. Running out of preallocated space is a
/// programming error on the caller's side.
template<typename ChunkT, typename Nested>
class PreallocatedStream {
public:
  using ChunkType = ChunkT;
  using NestedStream = Nested;
  using NestedPosition = typename Nested::Position;
  using Position = StreamPosition<NestedPosition>;

  static constexpr std::size_t EntryBytes = ChunkT::EntryBytes;
  static constexpr bool Checked = false;

  explicit PreallocatedStream(std::size_t totalCapacity)
      : chunk_(totalCapacity > 0 ? totalCapacity : 1) {}
  template<typename... NestedArgs>
  PreallocatedStream(std::size_t totalCapacity, NestedArgs&&... nestedArgs)
      : nested_(std::forward<NestedArgs>(nestedArgs)...),
        chunk_(totalCapacity > 0 ? totalCapacity : 1) {}

  Nested& nested() { return nested_; }
  const Nested& nested() const { return nested_; }

  void resize(std::size_t totalCapacity) {
    require(chunk_.used() == 0, "resize of a non-empty stream");
    chunk_.allocate(totalCapacity > 0 ? totalCapacity : 1);
  }

  void reserve(std::size_t items) {
    JTAPE_ASSERT(chunk_.remaining() >= items,
                 "preallocated stream out of space");
    static_cast<void>(items);
  }

  template<typename... Values>
  void push(const Values&... values) {
    chunk_.push(values...);
  }

  Position position() const {
    return Position{0, chunk_.used(), nested_.position()};
  }

  void resetTo(const Position& pos) {
    require(pos <= position(), "stream reset beyond recorded position");
    chunk_.setUsed(pos.offset);
    nested_.resetTo(pos.inner);
  }

  void resetAll() {
    chunk_.setUsed(0);
    nested_.resetAll();
  }

  template<typename Fn>
  void forEachReverse(const Position& from, const Position& to, Fn&& fn) {
    detail::forEachReverseImpl(*this, from, to, fn);
  }

  ChunkT& chunkAt(std::uint64_t) { return chunk_; }
  const ChunkT& chunkAt(std::uint64_t) const { return chunk_; }
  std::uint64_t chunkUsed(std::uint64_t) const { return chunk_.used(); }
  NestedPosition chunkStartInner(std::uint64_t) const {
    return NestedPosition{};
  }

  std::size_t usedTotal() const { return chunk_.used(); }

  std::uint64_t entriesBefore(std::uint64_t, std::uint64_t offset) const {
    return offset;
  }

  StreamStats stats() const {
    StreamStats s;
    s.chunkCount = 1;
    s.usedEntries = chunk_.used();
    s.usedBytes = chunk_.used() * EntryBytes;
    s.allocatedBytes = chunk_.capacity() * EntryBytes;
    return s;
  }

private:
  Nested nested_{};
  ChunkT chunk_;
};

}  // namespace jtape
