#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cantor {

/// Exact dyadic rational numerator / 2^exponent.
///
/// Canonical form: the exponent is zero or the numerator is odd, and zero is
/// 0/2^0. Numerators that fit in 64 bits are kept inline; larger ones spill to
/// a GMP integer, so arithmetic never rounds. Equality is therefore
/// structural.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT(google-explicit-constructor)
  Dyadic(int integer) : num_(integer) {}           // NOLINT(google-explicit-constructor)
  Dyadic(std::int64_t numerator, std::uint32_t exponent);
  Dyadic(const mpz_class& numerator, std::uint32_t exponent);

  Dyadic(const Dyadic& other);
  Dyadic(Dyadic&&) noexcept = default;
  Dyadic& operator=(const Dyadic& other);
  Dyadic& operator=(Dyadic&&) noexcept = default;
  ~Dyadic() = default;

  /// 2^k for any integer k (negative k gives 1/2^-k).
  static Dyadic pow2(std::int64_t k);

  /// Parses "a/2^k", "a/b" with b a power of two, or a plain integer "a".
  static Dyadic parse(std::string_view text);

  mpz_class numerator() const;
  std::uint32_t exponent() const noexcept { return exp_; }

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  int sign() const noexcept;

  /// Multiplies by 2^k exactly.
  Dyadic scaled(std::int64_t k) const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
  friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// Canonical text "numerator/2^exponent".
  std::string to_string() const;
  /// Decimal expansion; exact, since every dyadic has a finite one.
  std::string to_decimal() const;

 private:
  void normalize_big(mpz_class value, std::uint64_t exponent);
  void assign_wide(__int128 value, std::uint64_t exponent);
  mpz_class big_numerator() const;

  std::int64_t num_ = 0;
  std::uint32_t exp_ = 0;
  std::unique_ptr<mpz_class> big_;  // set iff the numerator does not fit in 64 bits
};

Dyadic abs(const Dyadic& x);
const Dyadic& min(const Dyadic& a, const Dyadic& b);
const Dyadic& max(const Dyadic& a, const Dyadic& b);

std::ostream& operator<<(std::ostream& os, const Dyadic& x);

}  // namespace cantor
