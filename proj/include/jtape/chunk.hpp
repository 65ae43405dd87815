#pragma once

#include <cstddef>
#include <memory>
#include <tuple>

#include "diagnostics.hpp"

namespace jtape {

/// Fixed-capacity block of entries where every entry field lives in its own
/// contiguous array. No array of structures is used, so iteration over one
/// field never loads the other fields' bytes and no padding is generated.
template<typename... Fields>
class Chunk {
public:
  static constexpr std::size_t FieldCount = sizeof...(Fields);
  /// Logical bytes per entry: the sum of the field sizes, independent of any
  /// allocator or padding overhead.
  static constexpr std::size_t EntryBytes = (sizeof(Fields) + ... + 0);

  Chunk() = default;
  explicit Chunk(std::size_t capacity) { allocate(capacity); }

  void allocate(std::size_t capacity) {
    capacity_ = capacity;
    used_ = 0;
    std::apply(
        [capacity](auto&... arrays) {
          ((arrays = std::make_unique<
                typename std::decay_t<decltype(arrays)>::element_type[]>(
                capacity)),
           ...);
        },
        data_);
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return capacity_ - used_; }
  void setUsed(std::size_t used) {
    JTAPE_ASSERT(used <= capacity_, "chunk usage beyond capacity");
    used_ = used;
  }

  void push(const Fields&... values) {
    JTAPE_ASSERT(used_ < capacity_, "chunk push without reserved space");
    pushAt(used_, values..., std::index_sequence_for<Fields...>{});
    ++used_;
  }

  template<std::size_t I>
  auto* array() {
    return std::get<I>(data_).get();
  }
  template<std::size_t I>
  const auto* array() const {
    return std::get<I>(data_).get();
  }

private:
  template<std::size_t... Is>
  void pushAt(std::size_t pos, const Fields&... values,
              std::index_sequence<Is...>) {
    ((std::get<Is>(data_)[pos] = values), ...);
  }

  std::tuple<std::unique_ptr<Fields[]>...> data_;
  std::size_t capacity_ = 0;
  std::size_t used_ = 0;
};

template<typename A>
using Chunk1 = Chunk<A>;
template<typename A, typename B>
using Chunk2 = Chunk<A, B>;

}  // namespace jtape
