#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/dyadic.hpp"

namespace cantor {

/// Finite binary string of length at most 64.
///
/// Bits are packed so that the first bit is the most significant of the
/// `length()` low bits; `value()` is therefore the string's rank among the
/// strings of its length in lexicographic order. Ordering is lexicographic
/// with a proper prefix before its extensions.
class BitString {
 public:
  static constexpr std::size_t kMaxLength = 64;

  BitString() = default;
  BitString(std::uint64_t value, std::size_t length);

  /// Accepts "0101", and "" or "-" for the empty string.
  static BitString parse(std::string_view text);
  /// All-`bit` string of the given length.
  static BitString repeat(bool bit, std::size_t length);

  /// The n-th string in length-lexicographic order (0 -> "", 1 -> "0", 2 -> "1", 3 -> "00", ...).
  static BitString from_length_lex_rank(std::uint64_t rank);
  std::uint64_t length_lex_rank() const;

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }
  std::uint64_t value() const noexcept { return bits_; }

  bool operator[](std::size_t i) const noexcept { return (bits_ >> (len_ - 1 - i)) & 1U; }

  BitString prefix(std::size_t n) const;
  BitString suffix_from(std::size_t start) const;
  BitString child(bool bit) const;
  BitString parent() const { return prefix(len_ - 1); }
  BitString sibling() const;
  BitString with_bit(std::size_t i, bool bit) const;
  BitString concat(const BitString& tail) const;

  /// Prefix order: *this is an initial segment of `other` (not necessarily proper).
  bool is_prefix_of(const BitString& other) const noexcept;
  bool comparable(const BitString& other) const noexcept { return is_prefix_of(other) || other.is_prefix_of(*this); }

  std::string to_string() const;
  /// Like to_string, but "-" for the empty string so it survives whitespace tokenizing.
  std::string token() const { return len_ == 0 ? std::string("-") : to_string(); }

  friend bool operator==(const BitString& a, const BitString& b) noexcept = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept;

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t len_ = 0;
};

/// Length-first, then lexicographic.
bool length_lex_less(const BitString& a, const BitString& b) noexcept;

/// All strings of the given length in lexicographic order.
std::vector<BitString> strings_of_length(std::size_t length);

std::ostream& operator<<(std::ostream& os, const BitString& s);

/// Finite prefix-free set of strings, kept sorted lexicographically.
class Antichain {
 public:
  Antichain() = default;
  /// Throws InvalidArgument naming a comparable pair if the input is not prefix-free.
  explicit Antichain(std::vector<BitString> strings);

  const std::vector<BitString>& strings() const noexcept { return strings_; }
  std::size_t size() const noexcept { return strings_.size(); }
  bool empty() const noexcept { return strings_.empty(); }
  bool contains(const BitString& s) const;

  /// Lebesgue measure of the generated open set: sum of 2^-|s|.
  Dyadic measure() const;

  friend bool operator==(const Antichain&, const Antichain&) = default;

 private:
  std::vector<BitString> strings_;
};

}  // namespace cantor

template <>
struct std::hash<cantor::BitString> {
  std::size_t operator()(const cantor::BitString& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.value() * 0x9E3779B97F4A7C15ULL ^ s.size());
  }
};
