#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace cantor {

/// Finite stand-in for the universal partial function J: e converges to
/// `value` at `stage`.
class ToyJumpTable {
 public:
  struct Entry {
    std::uint32_t value = 0;
    std::uint32_t stage = 1;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  ToyJumpTable() = default;
  /// Stages must be positive; one entry per e (InvalidArgument otherwise).
  void set(std::uint32_t e, std::uint32_t value, std::uint32_t stage);

  const std::map<std::uint32_t, Entry>& entries() const noexcept { return entries_; }
  std::optional<Entry> lookup(std::uint32_t e) const;
  /// J_s(e): the value if e has converged by stage s.
  std::optional<std::uint32_t> at_stage(std::uint32_t e, std::uint32_t s) const;

 private:
  std::map<std::uint32_t, Entry> entries_;
};

/// One enumeration event of a toy c.e. set: `index` enters at `stage`.
struct CeEvent {
  std::uint32_t index = 0;
  std::uint32_t stage = 0;
  friend bool operator==(const CeEvent&, const CeEvent&) = default;
};

}  // namespace cantor
