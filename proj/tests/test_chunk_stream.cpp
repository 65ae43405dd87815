#include <doctest.h>

#include <cstdint>
#include <tuple>
#include <vector>

#include <jtape/chunk.hpp>
#include <jtape/data_stream.hpp>
#include <jtape/diagnostics.hpp>

using jtape::Chunk1;
using jtape::Chunk2;
using jtape::ChunkedStream;
using jtape::PreallocatedStream;
using jtape::StatementCounter;

namespace {

using Leaf = ChunkedStream<Chunk2<double, std::uint32_t>, StatementCounter>;
using TwoLane = ChunkedStream<Chunk1<std::uint8_t>, Leaf>;
using ThreeLane = ChunkedStream<Chunk1<int>, TwoLane>;

// Forward dump of all recorded leaf entries; the independent oracle for
// record/reset/record equivalence.
std::vector<std::pair<double, std::uint32_t>> dumpLeaf(Leaf& stream) {
  std::vector<std::pair<double, std::uint32_t>> entries;
  stream.forEachReverse(
      stream.position(), Leaf::Position{},
      [&](auto& chunk, std::size_t begin, std::size_t end, const auto&,
          const auto&) {
        for (std::size_t i = end; i-- > begin;) {
          entries.emplace_back(chunk.template array<0>()[i],
                               chunk.template array<1>()[i]);
        }
      });
  std::reverse(entries.begin(), entries.end());
  return entries;
}

}  // namespace

TEST_CASE("reserve and push manage chunk boundaries") {
  Leaf stream(2);

  SUBCASE("reserve appends a chunk when the current one is full") {
    stream.reserve(2);
    stream.push(1.0, 1);
    stream.push(2.0, 2);
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 2);

    stream.reserve(1);
    auto advanced = stream.position();
    CHECK(advanced.chunk == 1);
    CHECK(advanced.offset == 0);
  }

  SUBCASE("reserve(0) is a no-op") {
    auto before = stream.position();
    stream.reserve(0);
    CHECK(stream.position() == before);
  }

  SUBCASE("reserve within remaining capacity does not advance") {
    stream.reserve(1);
    stream.push(1.0, 1);
    stream.reserve(1);
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 1);
    CHECK(stream.stats().chunkCount == 1);
  }

  SUBCASE("a reservation larger than the chunk capacity is fatal") {
    CHECK_THROWS_AS(stream.reserve(3), jtape::FatalError);
  }
}

TEST_CASE("push sequences and positions") {
  Leaf stream(2);

  SUBCASE("three entries at capacity two") {
    for (std::uint32_t i = 1; i <= 3; ++i) {
      stream.reserve(1);
      stream.push(1.5 * i, i);
    }
    auto pos = stream.position();
    CHECK(pos.chunk == 1);
    CHECK(pos.offset == 1);
    CHECK(stream.chunkAt(0).used() == 2);
    CHECK(stream.chunkAt(1).used() == 1);
    CHECK(stream.usedTotal() == 3);
  }

  SUBCASE("no pushes leave the zero position") {
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 0);
  }

  SUBCASE("filling a chunk exactly advances on the next reserve") {
    stream.reserve(2);
    stream.push(1.0, 1);
    stream.push(2.0, 2);
    stream.reserve(1);
    auto pos = stream.position();
    CHECK(pos.chunk == 1);
    CHECK(pos.offset == 0);
    // The boundary round-trips through reset.
    stream.push(3.0, 3);
    auto after = stream.position();
    stream.resetTo(after);
    CHECK(stream.position() == after);
  }
}

TEST_CASE("positions compose across the stream chain") {
  TwoLane stream(4, 4);

  SUBCASE("fresh stream has the all-zero nested position") {
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 0);
    CHECK(pos.inner.chunk == 0);
    CHECK(pos.inner.offset == 0);
    CHECK(pos.inner.inner == 0);
  }

  SUBCASE("pushes to the child advance only the child position") {
    for (int i = 0; i < 3; ++i) {
      stream.nested().reserve(1);
      stream.nested().push(0.5, 9);
    }
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 0);
    CHECK(pos.inner.offset == 3);
  }

  SUBCASE("reset to the current position is a no-op") {
    stream.reserve(1);
    stream.push(7);
    stream.nested().reserve(1);
    stream.nested().push(1.0, 1);
    auto pos = stream.position();
    stream.resetTo(pos);
    CHECK(stream.position() == pos);
    CHECK(stream.usedTotal() == 1);
    CHECK(stream.nested().usedTotal() == 1);
  }
}

TEST_CASE("reset restores the recorded state recursively") {
  Leaf stream(2);

  SUBCASE("reset to zero empties the stream") {
    for (std::uint32_t i = 1; i <= 5; ++i) {
      stream.reserve(1);
      stream.push(double(i), i);
    }
    stream.resetTo(Leaf::Position{});
    CHECK(stream.usedTotal() == 0);
    stream.reserve(1);
    stream.push(42.0, 42);
    auto pos = stream.position();
    CHECK(pos.chunk == 0);
    CHECK(pos.offset == 1);
  }

  SUBCASE("record, reset, re-record matches straight-line recording") {
    auto record = [](Leaf& s, std::uint32_t from, std::uint32_t to) {
      for (std::uint32_t i = from; i < to; ++i) {
        s.reserve(1);
        s.push(0.25 * i, i);
      }
    };

    Leaf straight(2);
    record(straight, 0, 9);

    record(stream, 0, 4);
    auto snapshot = stream.position();
    record(stream, 100, 107);  // diverging suffix
    stream.resetTo(snapshot);
    record(stream, 4, 9);  // same suffix as the straight-line recording

    CHECK(dumpLeaf(stream) == dumpLeaf(straight));
    CHECK(stream.position() == straight.position());
  }

  SUBCASE("reset beyond the recorded position is fatal") {
    stream.reserve(1);
    stream.push(1.0, 1);
    auto pos = stream.position();
    pos.offset += 1;
    CHECK_THROWS_AS(stream.resetTo(pos), jtape::FatalError);
  }
}

TEST_CASE("reverse iteration visits every entry exactly once in reverse") {
  for (std::size_t capacity : {std::size_t(1), std::size_t(2), std::size_t(1024)}) {
    CAPTURE(capacity);
    Leaf stream(capacity);
    const std::uint32_t n = 47;
    for (std::uint32_t i = 1; i <= n; ++i) {
      stream.reserve(1);
      stream.push(double(i), i);
    }
    std::vector<std::uint32_t> seen;
    stream.forEachReverse(stream.position(), Leaf::Position{},
                          [&](auto& chunk, std::size_t begin, std::size_t end,
                              const auto&, const auto&) {
                            for (std::size_t i = end; i-- > begin;) {
                              seen.push_back(chunk.template array<1>()[i]);
                            }
                          });
    REQUIRE(seen.size() == n);
    for (std::uint32_t i = 0; i < n; ++i) {
      CHECK(seen[i] == n - i);
    }
  }
}

TEST_CASE("reverse iteration segments") {
  SUBCASE("two chunks give two segment visits") {
    Leaf stream(2);
    for (std::uint32_t i = 1; i <= 3; ++i) {
      stream.reserve(1);
      stream.push(double(i), i);
    }
    // position is (1,1); expect chunk1[0..1) then chunk0[0..2).
    std::vector<std::tuple<std::size_t, std::size_t>> segments;
    stream.forEachReverse(stream.position(), Leaf::Position{},
                          [&](auto&, std::size_t begin, std::size_t end,
                              const auto&, const auto&) {
                            segments.emplace_back(begin, end);
                          });
    REQUIRE(segments.size() == 2);
    CHECK(segments[0] == std::tuple<std::size_t, std::size_t>{0, 1});
    CHECK(segments[1] == std::tuple<std::size_t, std::size_t>{0, 2});
  }

  SUBCASE("empty range gives zero visits") {
    Leaf stream(2);
    stream.reserve(1);
    stream.push(1.0, 1);
    auto pos = stream.position();
    int visits = 0;
    stream.forEachReverse(pos, pos,
                          [&](auto&, std::size_t, std::size_t, const auto&,
                              const auto&) { ++visits; });
    CHECK(visits == 0);
  }

  SUBCASE("crossing six boundaries in one lane takes seven visits") {
    // Three-lane stream; only the leaf lane records, so the whole
    // interpretation region crosses six chunk boundaries and is covered by
    // seven segment visits over all lanes combined.
    ThreeLane stream(4, 4, 2);
    Leaf& leaf = stream.nested().nested();
    auto from = stream.position();
    for (std::uint32_t i = 1; i <= 13; ++i) {  // 7 chunks at capacity 2
      leaf.reserve(1);
      leaf.push(double(i), i);
    }
    auto to = from;
    from = stream.position();
    CHECK(from.inner.inner.chunk == 6);

    int visits = 0;
    std::vector<std::uint32_t> seen;
    stream.forEachReverse(
        from, to,
        [&](auto&, std::size_t b0, std::size_t e0, const auto& innerFrom,
            const auto& innerTo) {
          CHECK(b0 == e0);  // no entries in the top lane
          stream.nested().forEachReverse(
              innerFrom, innerTo,
              [&](auto&, std::size_t b1, std::size_t e1, const auto& leafFrom,
                  const auto& leafTo) {
                CHECK(b1 == e1);  // none in the middle lane either
                leaf.forEachReverse(
                    leafFrom, leafTo,
                    [&](auto& chunk, std::size_t b2, std::size_t e2,
                        const auto&, const auto&) {
                      ++visits;
                      for (std::size_t i = e2; i-- > b2;) {
                        seen.push_back(chunk.template array<1>()[i]);
                      }
                    });
              });
        });
    CHECK(visits == 7);
    CHECK(seen.size() == 13);
    CHECK(seen.front() == 13);
    CHECK(seen.back() == 1);
  }
}

TEST_CASE("an extra lane on top changes nothing below") {
  TwoLane plain(4, 2);
  ThreeLane wrapped(4, 4, 2);
  TwoLane& inner = wrapped.nested();

  auto record = [](TwoLane& s) {
    for (std::uint32_t i = 1; i <= 5; ++i) {
      s.reserve(1);
      s.push(std::uint8_t(i));
      s.nested().reserve(2);
      s.nested().push(double(i), i);
      s.nested().push(double(i) * 0.5, i + 100);
    }
  };
  record(plain);
  record(inner);

  CHECK(inner.position() == plain.position());
  CHECK(dumpLeaf(inner.nested()) == dumpLeaf(plain.nested()));
  CHECK(inner.stats().usedEntries == plain.stats().usedEntries);
  CHECK(wrapped.position().chunk == 0);
  CHECK(wrapped.position().offset == 0);
}

TEST_CASE("stream statistics") {
  Leaf stream(2);
  auto empty = stream.stats();
  CHECK(empty.usedEntries == 0);
  CHECK(empty.usedBytes == 0);
  CHECK(empty.chunkCount == 1);
  CHECK(empty.allocatedBytes == 2 * 12);

  for (std::uint32_t i = 1; i <= 3; ++i) {
    stream.reserve(1);
    stream.push(double(i), i);
  }
  auto stats = stream.stats();
  CHECK(stats.usedEntries == 3);
  CHECK(stats.usedBytes == 3 * 12);  // 8-byte value + 4-byte index per entry
  CHECK(stats.chunkCount == 2);
  CHECK(stats.allocatedBytes == 2 * 2 * 12);
}

TEST_CASE("preallocated stream behaves like a single-chunk stream") {
  PreallocatedStream<Chunk2<double, std::uint32_t>, StatementCounter> stream(8);

  for (std::uint32_t i = 1; i <= 5; ++i) {
    stream.reserve(1);
    stream.push(double(i), i);
  }
  auto pos = stream.position();
  CHECK(pos.chunk == 0);
  CHECK(pos.offset == 5);

  std::vector<std::uint32_t> seen;
  stream.forEachReverse(pos, {},
                        [&](auto& chunk, std::size_t begin, std::size_t end,
                            const auto&, const auto&) {
                          for (std::size_t i = end; i-- > begin;) {
                            seen.push_back(chunk.template array<1>()[i]);
                          }
                        });
  CHECK(seen == std::vector<std::uint32_t>{5, 4, 3, 2, 1});

  auto snapshot = stream.position();
  stream.push(6.0, 6);
  stream.resetTo(snapshot);
  CHECK(stream.position() == snapshot);
  CHECK(stream.stats().allocatedBytes == 8 * 12);
}
