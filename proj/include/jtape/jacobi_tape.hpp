#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "chunk.hpp"
#include "data_stream.hpp"
#include "diagnostics.hpp"
#include "expression.hpp"
#include "external_function.hpp"
#include "index_managers.hpp"
#include "real_traits.hpp"
#include "tape_config.hpp"
#include "tape_statistics.hpp"

namespace jtape {

/// Reverse-mode tape that stores, per statement, the number of arguments and,
/// per argument, the Jacobian and the argument's index. Right-hand sides
/// arrive as whole expressions, so one record covers an arbitrarily complex
/// statement.
///
/// The recorded data lives in three lanes with a shared composite position:
///
///   external functions -> statements -> arguments -> index counter
///
/// The storage policy decides between on-the-fly chunk allocation with bounds
/// checks and a fully preallocated block without them; the index manager
/// decides between linear indices (left-hand-side index reconstructed by
/// decrement, not stored) and index reuse (stored per statement, adjoint
/// vector shrinks to the maximum number of live values).
template<typename T_Real, template<typename, typename> class T_Stream,
         typename T_IndexManager>
class JacobiTape {
public:
  using Real = T_Real;
  using PassiveReal = PassiveRealType<Real>;
  using IndexManager = T_IndexManager;
  using Index = typename IndexManager::Index;
  using GradientData = Index;

  static constexpr bool IsLinear = IndexManager::IsLinear;
  /// Active values bound to this tape need their destructor to run (to
  /// release indices) exactly when indices are reused.
  static constexpr bool RequiresDestructor = !IsLinear;
  static constexpr bool GradientInTape = true;

  // Stream chain. For linear indexing the index manager itself terminates the
  // chain, so a tape reset rewinds the index counter; for index reuse a bare
  // statement counter terminates it and live indices survive resets.
  using Terminator = std::conditional_t<IsLinear, IndexManager, StatementCounter>;
  using ArgChunk = Chunk2<Real, Index>;
  using ArgStream = T_Stream<ArgChunk, Terminator>;
  using StmtChunk = std::conditional_t<IsLinear, Chunk1<std::uint8_t>,
                                       Chunk2<std::uint8_t, Index>>;
  using StmtStream = T_Stream<StmtChunk, ArgStream>;
  using ExtFunc = ExternalFunctionRecord<Real>;
  using StmtPosition = typename StmtStream::Position;
  using ArgPosition = typename ArgStream::Position;
  using ExtChunk = Chunk2<ExtFunc, StmtPosition>;
  using ExtStream = T_Stream<ExtChunk, StmtStream>;
  using Position = typename ExtStream::Position;

  static constexpr bool IsChunked = ExtStream::Checked;
  static constexpr std::size_t MaxStatementArguments = 255;

  explicit JacobiTape(TapeConfig config = TapeConfig{})
      : config_(config),
        streams_(IsChunked ? extCapacity(config.chunkCapacity) : 1,
                 IsChunked ? config.chunkCapacity : 1,
                 IsChunked ? argCapacity(config.chunkCapacity) : 1) {}

  JacobiTape(const JacobiTape&) = delete;
  JacobiTape& operator=(const JacobiTape&) = delete;

  ~JacobiTape() {
    try {
      destroyExternalPayloads(extStream().position(),
                              typename ExtStream::Position{});
    } catch (...) {
      // Destructors must not throw; a corrupt position is ignored here.
    }
  }

  // ---------------------------------------------------------------------
  // Thread binding. Active values reach their tape through this pointer;
  // each worker thread binds its own tape, so distinct tapes on distinct
  // threads are fully independent.
  // ---------------------------------------------------------------------

  static JacobiTape*& currentPtr() {
    thread_local JacobiTape* current = nullptr;
    return current;
  }
  static JacobiTape& current() {
    JacobiTape* tape = currentPtr();
    if (tape == nullptr) {
      fatalError("no tape bound to the current thread");
    }
    return *tape;
  }
  static void setCurrent(JacobiTape* tape) { currentPtr() = tape; }
  void bindToCurrentThread() { setCurrent(this); }

  // ---------------------------------------------------------------------
  // Configuration and activity.
  // ---------------------------------------------------------------------

  const TapeConfig& config() const { return config_; }
  TapeConfig& config() { return config_; }

  void setActive() { active_ = true; }
  void setPassive() { active_ = false; }
  bool isActive() const { return active_; }

  /// Handler invoked when an elemental function is evaluated outside its
  /// differentiable domain and checkExpressionArguments is on. The violation
  /// counter is maintained regardless of the handler.
  void setDomainViolationHandler(std::function<void(const char*)> handler) {
    domainHandler_ = std::move(handler);
  }
  std::uint64_t domainViolations() const { return domainViolations_; }
  void noteDomainViolation(const char* operation) {
    ++domainViolations_;
    if (domainHandler_) {
      domainHandler_(operation);
    }
  }

  /// Sizing call for the preallocated variants: capacity for the given
  /// number of statements, arguments and external functions. Must be called
  /// before recording; exceeding the sizes afterwards is a programming error
  /// that only debug builds detect.
  void resize(std::uint64_t statements, std::uint64_t arguments,
              std::uint64_t externalFunctions)
    requires(!IsChunked)
  {
    extStream().resize(externalFunctions);
    stmtStream().resize(statements);
    argStream().resize(arguments);
  }

  // ---------------------------------------------------------------------
  // Recording interface, called from the active value type.
  // ---------------------------------------------------------------------

  template<typename Rhs>
  void store(Real& lhsPrimal, Index& lhsIndex,
             const Expression<Real, Rhs>& rhsBase) {
    const Rhs& rhs = rhsBase.cast();
    if (config_.checkTapeActivity && !active_) {
      if constexpr (!IsLinear) {
        indexManager().free(lhsIndex);
      }
      lhsIndex = IndexManager::PassiveIndex;
      lhsPrimal = rhs.value();
      return;
    }

    constexpr std::size_t maxArgs = Rhs::ActiveLeafCount;
    stmtStream().reserve(1);
    argStream().reserve(maxArgs);

    const std::size_t argsBefore = argStream().usedTotal();
    rhs.calcGradient(*this);
    const std::size_t argCount = argStream().usedTotal() - argsBefore;
    if (argCount > MaxStatementArguments) {
      fatalError("statement has more than 255 active arguments; split the "
                 "expression");
    }

    // The right-hand side is fully read before the left-hand side changes, so
    // statements like x = x * x see the old value.
    const Real newPrimal = rhs.value();
    if constexpr (IsLinear) {
      stmtStream().push(static_cast<std::uint8_t>(argCount));
      lhsIndex = indexManager().assign();
    } else {
      indexManager().free(lhsIndex);
      if (argCount == 0) {
        lhsIndex = IndexManager::PassiveIndex;
      } else {
        lhsIndex = indexManager().assign();
        stmtStream().push(static_cast<std::uint8_t>(argCount), lhsIndex);
        terminator().advance();
      }
    }
    lhsPrimal = newPrimal;
  }

  void storePassive(Real& lhsPrimal, Index& lhsIndex, const PassiveReal& value) {
    if (!(config_.checkTapeActivity && !active_)) {
      if constexpr (IsLinear) {
        stmtStream().reserve(1);
        stmtStream().push(0);
        lhsIndex = indexManager().assign();
        lhsPrimal = value;
        return;
      }
    }
    if constexpr (!IsLinear) {
      indexManager().free(lhsIndex);
    }
    lhsIndex = IndexManager::PassiveIndex;
    lhsPrimal = value;
  }

  /// Collects one argument of the statement being stored. Passive arguments
  /// are never stored; the zero/invalid filters follow the configuration.
  void pushJacobi(const Real& jacobian, const Real& /*argValue*/,
                  const Index& argIndex) {
    if (argIndex == IndexManager::PassiveIndex) {
      return;
    }
    if (config_.ignoreZeroJacobians && jacobian == Real()) {
      return;
    }
    if (config_.ignoreInvalidJacobians &&
        !RealTraits<Real>::isTotallyFinite(jacobian)) {
      return;
    }
    argStream().push(jacobian, argIndex);
  }

  // Assignment entry points used by the active value type; they route to the
  // tape bound to the current thread.
  template<typename Rhs>
  static void storeExpression(Real& lhsPrimal, Index& lhsIndex,
                              const Expression<Real, Rhs>& rhs) {
    current().store(lhsPrimal, lhsIndex, rhs);
  }
  static void storePassiveAssign(Real& lhsPrimal, Index& lhsIndex,
                                 const PassiveReal& value) {
    current().storePassive(lhsPrimal, lhsIndex, value);
  }

  // Static propagation entry points used by the active value type; Data is
  // either this tape or any context that provides pushJacobi.
  template<typename Data>
  static void propagateJacobi(Data& data, const Real& jacobian,
                              const Real& value, const Index& index) {
    data.pushJacobi(jacobian, value, index);
  }
  template<typename Data>
  static void propagateJacobiUnit(Data& data, const Real& value,
                                  const Index& index) {
    data.pushJacobi(Real(1.0), value, index);
  }

  static void initGradientData(Index& index) {
    index = IndexManager::PassiveIndex;
  }
  static void destroyGradientData(Index& index) {
    if constexpr (!IsLinear) {
      if (index != IndexManager::PassiveIndex) {
        JacobiTape* tape = currentPtr();
        if (tape != nullptr) {
          tape->indexManager().free(index);
        }
      }
    }
    index = IndexManager::PassiveIndex;
  }

  // ---------------------------------------------------------------------
  // User interface.
  // ---------------------------------------------------------------------

  template<typename ActiveType>
  void registerInput(ActiveType& value) {
    registerInputIndex(value.gradientData());
  }
  void registerInputIndex(Index& index) {
    if constexpr (IsLinear) {
      // Registration consumes a statement slot so that the statement/index
      // correspondence of the linear scheme holds.
      stmtStream().reserve(1);
      stmtStream().push(0);
      index = indexManager().assign();
    } else {
      indexManager().free(index);
      index = indexManager().assign();
    }
  }

  /// Records a copy statement, so the returned index stays valid for seeding
  /// even if the value is overwritten later.
  template<typename ActiveType>
  void registerOutput(ActiveType& value) {
    store(value.valueRef(), value.gradientData(), value);
  }

  Position position() const { return streams_.position(); }
  static Position zeroPosition() { return Position{}; }

  // ---------------------------------------------------------------------
  // Adjoint access.
  // ---------------------------------------------------------------------

  Real getGradient(const Index& index) const {
    if (index == IndexManager::PassiveIndex ||
        static_cast<std::size_t>(index) >= adjoints_.size()) {
      return Real();
    }
    return adjoints_[index];
  }

  void setGradient(const Index& index, const Real& value) {
    if (index == IndexManager::PassiveIndex) {
      fatalError("cannot seed a passive value");
    }
    ensureAdjointStorage();
    require(static_cast<std::size_t>(index) < adjoints_.size(),
            "gradient index beyond the recorded index range");
    adjoints_[index] = value;
  }

  void clearAdjoints() {
    std::fill(adjoints_.begin(), adjoints_.end(), Real());
  }

  std::size_t adjointSlots() const {
    return static_cast<std::size_t>(indexUpperBound()) + 1;
  }

  // ---------------------------------------------------------------------
  // External functions.
  // ---------------------------------------------------------------------

  void pushExternalFunction(typename ExtFunc::Callback callback, void* payload,
                            typename ExtFunc::Deleter deleter) {
    extStream().reserve(1);
    extStream().push(ExtFunc{callback, payload, deleter},
                     stmtStream().position());
  }

  // ---------------------------------------------------------------------
  // Reverse interpretation.
  // ---------------------------------------------------------------------

  void evaluate(const Position& from, const Position& to) {
    require(to <= from, "evaluation range is inverted");
    require(from <= position(), "evaluation range beyond recorded data");
    ensureAdjointStorage();
    Real* adjoints = adjoints_.data();
    const std::size_t adjointCount = adjoints_.size();

    StmtPosition stmtCursor = from.inner;
    extStream().forEachReverse(
        from, to,
        [&](ExtChunk& chunk, std::size_t begin, std::size_t end,
            const StmtPosition&, const StmtPosition&) {
          const ExtFunc* functions = chunk.template array<0>();
          const StmtPosition* positions = chunk.template array<1>();
          for (std::size_t i = end; i-- > begin;) {
            interpretStatements(stmtCursor, positions[i], adjoints);
            functions[i].invoke(adjoints, adjointCount);
            stmtCursor = positions[i];
          }
        });
    interpretStatements(stmtCursor, to.inner, adjoints);
  }

  void evaluateFull() { evaluate(position(), zeroPosition()); }

  // ---------------------------------------------------------------------
  // Reset.
  // ---------------------------------------------------------------------

  void reset() {
    destroyExternalPayloads(extStream().position(),
                            typename ExtStream::Position{});
    streams_.resetAll();
    adjoints_.assign(adjoints_.size(), Real());
  }

  void resetTo(const Position& to) {
    require(to <= position(), "reset beyond current position");
    destroyExternalPayloads(extStream().position(), to);
    streams_.resetTo(to);
    clearAdjoints();
  }

  // ---------------------------------------------------------------------
  // Statistics.
  // ---------------------------------------------------------------------

  static std::string variantName() {
    std::string name = IsChunked ? "chunk" : "unchecked";
    if (!IsLinear) {
      name += "-index";
    }
    return name;
  }

  TapeStatistics statistics() const {
    TapeStatistics stats;
    stats.variant = variantName();
    stats.statements = stmtStream().usedTotal();
    stats.arguments = argStream().usedTotal();
    stats.externalFunctions = extStream().usedTotal();
    stats.statementStream = stmtStream().stats();
    stats.argumentStream = argStream().stats();
    stats.externalFunctionStream = extStream().stats();
    stats.statementBytes = stats.statementStream.usedBytes;
    stats.argumentBytes = stats.argumentStream.usedBytes;
    stats.externalFunctionBytes = stats.externalFunctionStream.usedBytes;
    stats.adjointSlots = adjointSlots();
    stats.indexManager = indexManager().stats();
    stats.domainViolations = domainViolations_;
    return stats;
  }

  IndexManager& indexManager() {
    if constexpr (IsLinear) {
      return argStream().nested();
    } else {
      return reuseManager_;
    }
  }
  const IndexManager& indexManager() const {
    if constexpr (IsLinear) {
      return argStream().nested();
    } else {
      return reuseManager_;
    }
  }

  ExtStream& extStream() { return streams_; }
  const ExtStream& extStream() const { return streams_; }
  StmtStream& stmtStream() { return streams_.nested(); }
  const StmtStream& stmtStream() const { return streams_.nested(); }
  ArgStream& argStream() { return streams_.nested().nested(); }
  const ArgStream& argStream() const { return streams_.nested().nested(); }

private:
  Terminator& terminator() { return argStream().nested(); }

  std::uint64_t indexUpperBound() const { return indexManager().largestIndex(); }

  void ensureAdjointStorage() {
    const std::size_t needed = adjointSlots();
    if (adjoints_.size() < needed) {
      adjoints_.resize(needed, Real());
    }
  }

  // Arguments of one statement never span a chunk boundary, so chunks only
  // have to be switched between statements.
  struct ArgumentCursor {
    ArgStream& stream;
    std::uint64_t chunk;
    std::uint64_t offset;

    template<typename Fn>
    void consume(std::size_t count, Fn&& fn) {
      if (count == 0) {
        return;
      }
      stepIfExhausted();
      JTAPE_ASSERT(offset >= count, "statement arguments span a chunk");
      offset -= count;
      auto& data = stream.chunkAt(chunk);
      fn(data.template array<0>() + offset, data.template array<1>() + offset,
         count);
    }

    void skip(std::size_t count) {
      if (count == 0) {
        return;
      }
      stepIfExhausted();
      JTAPE_ASSERT(offset >= count, "statement arguments span a chunk");
      offset -= count;
    }

    void stepIfExhausted() {
      if (offset == 0) {
        JTAPE_ASSERT(chunk > 0, "argument cursor underflow");
        --chunk;
        offset = stream.chunkUsed(chunk);
      }
    }
  };

  void interpretStatements(const StmtPosition& from, const StmtPosition& to,
                           Real* adjoints) {
    std::uint64_t lhsCounter = from.inner.inner;
    ArgumentCursor cursor{argStream(), from.inner.chunk, from.inner.offset};

    stmtStream().forEachReverse(
        from, to,
        [&](StmtChunk& chunk, std::size_t begin, std::size_t end,
            const ArgPosition&, const ArgPosition&) {
          const std::uint8_t* argCounts = chunk.template array<0>();
          [[maybe_unused]] const Index* lhsIndices = nullptr;
          if constexpr (!IsLinear) {
            lhsIndices = chunk.template array<1>();
          }
          for (std::size_t i = end; i-- > begin;) {
            const std::size_t argCount = argCounts[i];
            Index lhs;
            if constexpr (IsLinear) {
              lhs = static_cast<Index>(lhsCounter);
              --lhsCounter;
            } else {
              lhs = lhsIndices[i];
            }
            if (argCount == 0) {
              // Registrations and passive assignments carry no adjoint
              // update; in particular they must not clear the gradients of
              // registered inputs.
              continue;
            }
            const Real adjoint = adjoints[lhs];
            adjoints[lhs] = Real();
            if (config_.skipZeroAdjoints && adjoint == Real()) {
              cursor.skip(argCount);
              continue;
            }
            cursor.consume(argCount,
                           [&](const Real* jacobians, const Index* indices,
                               std::size_t count) {
                             for (std::size_t j = 0; j < count; ++j) {
                               adjoints[indices[j]] += jacobians[j] * adjoint;
                             }
                           });
          }
        });

    JTAPE_ASSERT(argStream().entriesBefore(cursor.chunk, cursor.offset) ==
                     argStream().entriesBefore(to.inner.chunk, to.inner.offset),
                 "argument cursor out of sync with statement range");
  }

  void destroyExternalPayloads(const typename ExtStream::Position& from,
                               const typename ExtStream::Position& to) {
    extStream().forEachReverse(
        from, to,
        [](ExtChunk& chunk, std::size_t begin, std::size_t end,
           const StmtPosition&, const StmtPosition&) {
          const ExtFunc* functions = chunk.template array<0>();
          for (std::size_t i = end; i-- > begin;) {
            functions[i].destroyPayload();
          }
        });
  }

  static std::size_t argCapacity(std::size_t chunkCapacity) {
    // A statement's arguments must fit into one chunk.
    return chunkCapacity < MaxStatementArguments + 1
               ? MaxStatementArguments + 1
               : chunkCapacity;
  }
  static std::size_t extCapacity(std::size_t chunkCapacity) {
    // External functions are rare; their lane never needs giant chunks.
    constexpr std::size_t cap = 4096;
    return chunkCapacity < cap ? chunkCapacity : cap;
  }

  TapeConfig config_;
  bool active_ = false;
  ExtStream streams_;
  [[no_unique_address]] std::conditional_t<IsLinear, char, IndexManager>
      reuseManager_{};
  std::vector<Real> adjoints_;
  std::uint64_t domainViolations_ = 0;
  std::function<void(const char*)> domainHandler_;
};

/// Ties the expression-argument domain checks to the tape configuration.
template<typename R, template<typename, typename> class S, typename I>
struct PropagationTraits<JacobiTape<R, S, I>> {
  using Tape = JacobiTape<R, S, I>;
  static bool checkArguments(const Tape& tape) {
    return tape.config().checkExpressionArguments;
  }
  static void reportDomainViolation(Tape& tape, const char* operation) {
    tape.noteDomainViolation(operation);
  }
};

}  // namespace jtape
