#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace jtape {

/// The five behavioral switches of the reverse tapes plus the chunk size.
/// Switches trade per-statement checks against tape size and interpretation
/// work; none of them may change computed gradients.
struct TapeConfig {
  /// Warn (through the domain handler) when an elemental function is
  /// evaluated outside its differentiable domain.
  bool checkExpressionArguments = false;
  /// Do not record non-finite Jacobians.
  bool ignoreInvalidJacobians = false;
  /// Do not record Jacobians that are exactly zero.
  bool ignoreZeroJacobians = false;
  /// Honor setActive/setPassive; with this off, recording is unconditional.
  bool checkTapeActivity = false;
  /// Skip the argument updates of a statement whose lhs adjoint is exactly
  /// zero during the reverse sweep.
  bool skipZeroAdjoints = false;

  /// Entries per chunk for the growing tape variants.
  std::size_t chunkCapacity = defaultChunkCapacity;

  static constexpr std::size_t defaultChunkCapacity = 2'097'152;

  static constexpr std::size_t switchCount = 5;
  static constexpr std::array<std::string_view, switchCount> switchNames = {
      "check-args", "ignore-invalid", "ignore-zero", "check-activity",
      "skip-zero-adjoints"};

  bool switchByIndex(std::size_t i) const {
    const std::array<const bool*, switchCount> fields = {
        &checkExpressionArguments, &ignoreInvalidJacobians,
        &ignoreZeroJacobians, &checkTapeActivity, &skipZeroAdjoints};
    return *fields[i];
  }

  void setSwitchByIndex(std::size_t i, bool value) {
    const std::array<bool*, switchCount> fields = {
        &checkExpressionArguments, &ignoreInvalidJacobians,
        &ignoreZeroJacobians, &checkTapeActivity, &skipZeroAdjoints};
    *fields[i] = value;
  }

  std::uint32_t switchesMask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < switchCount; ++i) {
      if (switchByIndex(i)) {
        mask |= (1u << i);
      }
    }
    return mask;
  }

  static TapeConfig fromMask(std::uint32_t mask,
                             std::size_t chunkCapacity = defaultChunkCapacity) {
    TapeConfig cfg;
    cfg.chunkCapacity = chunkCapacity;
    for (std::size_t i = 0; i < switchCount; ++i) {
      cfg.setSwitchByIndex(i, (mask >> i) & 1u);
    }
    return cfg;
  }
};

}  // namespace jtape
