#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>

#include "data_stream.hpp"
#include "index_managers.hpp"

namespace jtape {

/// Size report of a recorded tape. Byte counts are logical entry bytes
/// (8 per Jacobian, 4 per index, 1 per argument count), so they follow the
/// 12k+1 / 12k+5 per-statement accounting of the two indexing schemes.
struct TapeStatistics {
  std::string variant;

  std::uint64_t statements = 0;
  std::uint64_t arguments = 0;
  std::uint64_t externalFunctions = 0;

  std::uint64_t statementBytes = 0;
  std::uint64_t argumentBytes = 0;
  std::uint64_t externalFunctionBytes = 0;

  StreamStats statementStream;
  StreamStats argumentStream;
  StreamStats externalFunctionStream;

  std::uint64_t adjointSlots = 0;
  IndexManagerStats indexManager;

  std::uint64_t domainViolations = 0;

  std::uint64_t tapeBytes() const {
    return statementBytes + argumentBytes + externalFunctionBytes;
  }

  double bytesPerStatement() const {
    if (statements == 0) {
      return 0.0;
    }
    return static_cast<double>(statementBytes + argumentBytes) /
           static_cast<double>(statements);
  }

  std::string toKeyValueText() const {
    std::ostringstream out;
    out << "variant=" << variant << '\n'
        << "statements=" << statements << '\n'
        << "arguments=" << arguments << '\n'
        << "extFuncs=" << externalFunctions << '\n'
        << "statementBytes=" << statementBytes << '\n'
        << "argumentBytes=" << argumentBytes << '\n'
        << "externalFunctionBytes=" << externalFunctionBytes << '\n'
        << "tapeBytes=" << tapeBytes() << '\n'
        << "allocatedBytes="
        << statementStream.allocatedBytes + argumentStream.allocatedBytes +
               externalFunctionStream.allocatedBytes
        << '\n'
        << "adjointSlots=" << adjointSlots << '\n'
        << "bytesPerStatement=" << bytesPerStatement() << '\n';
    return out.str();
  }

  static std::string csvHeader() {
    return "variant,statements,arguments,extFuncs,tapeBytes,adjointSlots,"
           "bytesPerStatement";
  }

  std::string toCsvRow() const {
    std::ostringstream out;
    out << variant << ',' << statements << ',' << arguments << ','
        << externalFunctions << ',' << tapeBytes() << ',' << adjointSlots
        << ',' << bytesPerStatement();
    return out.str();
  }
};

}  // namespace jtape
