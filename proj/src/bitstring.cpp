#include "cantor/bitstring.hpp"

#include <algorithm>
#include <ostream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

constexpr std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

}  // namespace

BitString::BitString(std::uint64_t value, std::size_t length) {
  if (length > kMaxLength) fail(ErrorCode::InvalidArgument, "bit string longer than 64 bits");
  if ((value & ~low_mask(length)) != 0) fail(ErrorCode::InvalidArgument, "bit string value exceeds its length");
  bits_ = value;
  len_ = static_cast<std::uint8_t>(length);
}

BitString BitString::parse(std::string_view text) {
  if (text == "-") return {};
  if (text.size() > kMaxLength) fail(ErrorCode::ParseError, "bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorCode::ParseError, "not a bit string: '" + std::string(text) + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(v, text.size());
}

BitString BitString::repeat(bool bit, std::size_t length) { return BitString(bit ? low_mask(length) : 0, length); }

BitString BitString::from_length_lex_rank(std::uint64_t rank) {
  // rank + 1 written in binary is "1" followed by the string.
  const std::uint64_t r = rank + 1;
  if (r == 0) fail(ErrorCode::InvalidArgument, "length-lex rank overflow");
  const std::size_t width = 63 - static_cast<std::size_t>(__builtin_clzll(r));
  return BitString(r & low_mask(width), width);
}

std::uint64_t BitString::length_lex_rank() const {
  if (len_ >= 64) fail(ErrorCode::InvalidArgument, "length-lex rank overflow");
  return ((1ULL << len_) | bits_) - 1;
}

BitString BitString::prefix(std::size_t n) const {
  if (n > len_) fail(ErrorCode::InvalidArgument, "prefix longer than string");
  if (n == 0) return {};
  return BitString(bits_ >> (len_ - n), n);
}

BitString BitString::suffix_from(std::size_t start) const {
  if (start > len_) fail(ErrorCode::InvalidArgument, "suffix start beyond string");
  return BitString(bits_ & low_mask(len_ - start), len_ - start);
}

BitString BitString::child(bool bit) const {
  if (len_ >= kMaxLength) fail(ErrorCode::InvalidArgument, "bit string longer than 64 bits");
  return BitString((bits_ << 1) | static_cast<std::uint64_t>(bit), len_ + 1U);
}

BitString BitString::sibling() const {
  if (len_ == 0) fail(ErrorCode::InvalidArgument, "empty string has no sibling");
  return BitString(bits_ ^ 1ULL, len_);
}

BitString BitString::with_bit(std::size_t i, bool bit) const {
  if (i >= len_) fail(ErrorCode::InvalidArgument, "bit index out of range");
  const std::uint64_t m = 1ULL << (len_ - 1 - i);
  return BitString(bit ? (bits_ | m) : (bits_ & ~m), len_);
}

BitString BitString::concat(const BitString& tail) const {
  const std::size_t n = len_ + tail.len_;
  if (n > kMaxLength) fail(ErrorCode::InvalidArgument, "bit string longer than 64 bits");
  if (len_ == 0) return tail;
  return BitString((tail.len_ >= 64 ? 0 : bits_ << tail.len_) | tail.bits_, n);
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  if (len_ > other.len_) return false;
  if (len_ == 0) return true;
  return (other.bits_ >> (other.len_ - len_)) == bits_;
}

std::string BitString::to_string() const {
  std::string out(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
  const std::size_t m = std::min(a.len_, b.len_);
  const std::uint64_t pa = m == 0 ? 0 : a.bits_ >> (a.len_ - m);
  const std::uint64_t pb = m == 0 ? 0 : b.bits_ >> (b.len_ - m);
  if (pa != pb) return pa <=> pb;
  return a.len_ <=> b.len_;
}

bool length_lex_less(const BitString& a, const BitString& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.value() < b.value();
}

std::vector<BitString> strings_of_length(std::size_t length) {
  if (length >= 32) fail(ErrorCode::InvalidArgument, "refusing to enumerate 2^" + std::to_string(length) + " strings");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << length);
  for (std::uint64_t v = 0; v < (1ULL << length); ++v) out.emplace_back(v, length);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << s.token(); }

Antichain::Antichain(std::vector<BitString> strings) : strings_(std::move(strings)) {
  std::sort(strings_.begin(), strings_.end());
  strings_.erase(std::unique(strings_.begin(), strings_.end()), strings_.end());
  // In lexicographic order an element's extensions immediately follow it.
  for (std::size_t i = 1; i < strings_.size(); ++i) {
    if (strings_[i - 1].is_prefix_of(strings_[i])) {
      fail(ErrorCode::InvalidArgument,
           "not prefix-free: " + strings_[i - 1].token() + " is a prefix of " + strings_[i].token());
    }
  }
}

bool Antichain::contains(const BitString& s) const { return std::binary_search(strings_.begin(), strings_.end(), s); }

Dyadic Antichain::measure() const {
  // Accumulate counts per length, then one exact sum.
  std::vector<std::uint64_t> per_length(BitString::kMaxLength + 1, 0);
  for (const auto& s : strings_) ++per_length[s.size()];
  Dyadic total;
  for (std::size_t n = 0; n < per_length.size(); ++n) {
    if (per_length[n] != 0) total += Dyadic(static_cast<std::int64_t>(per_length[n]), static_cast<std::uint32_t>(n));
  }
  return total;
}

}  // namespace cantor
