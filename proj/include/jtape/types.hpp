#pragma once

#include "active_real.hpp"
#include "data_stream.hpp"
#include "forward_tape.hpp"
#include "index_managers.hpp"
#include "jacobi_tape.hpp"

namespace jtape {

// The four reverse tape variants: growing chunked storage with bounds checks
// versus fully preallocated storage, each with linear or reuse indexing.
using ChunkTape = JacobiTape<double, ChunkedStream, LinearIndexManager<std::uint32_t>>;
using ChunkIndexTape = JacobiTape<double, ChunkedStream, ReuseIndexManager<std::uint32_t>>;
using UncheckedTape = JacobiTape<double, PreallocatedStream, LinearIndexManager<std::uint32_t>>;
using UncheckedIndexTape = JacobiTape<double, PreallocatedStream, ReuseIndexManager<std::uint32_t>>;

using ForwardTapeD = ForwardTape<double>;

// Calculation types.
using ReverseReal = ActiveReal<ChunkTape>;
using ReverseIndexReal = ActiveReal<ChunkIndexTape>;
using ReverseUncheckedReal = ActiveReal<UncheckedTape>;
using ReverseUncheckedIndexReal = ActiveReal<UncheckedIndexTape>;
using ForwardReal = ActiveReal<ForwardTapeD>;

}  // namespace jtape
