#include "cantor/dyadic.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "cantor/error.hpp"

namespace cantor {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeMeasure: return "NegativeMeasure";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotDominating: return "NotDominating";
    case ErrorCode::DepthExhausted: return "DepthExhausted";
    case ErrorCode::NoDnc2String: return "NoDnc2String";
    case ErrorCode::WeightExceeded: return "WeightExceeded";
    case ErrorCode::ReservedExhausted: return "ReservedExhausted";
    case ErrorCode::NoIncompressible: return "NoIncompressible";
    case ErrorCode::NoRoom: return "NoRoom";
    case ErrorCode::LayoutExhausted: return "LayoutExhausted";
    case ErrorCode::FullMeasure: return "FullMeasure";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::RootCapital: return "RootCapital";
    case ErrorCode::GrowthViolation: return "GrowthViolation";
    case ErrorCode::Uncovered: return "Uncovered";
    case ErrorCode::NotFair: return "NotFair";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::uint64_t kMaxExponent = std::numeric_limits<std::uint32_t>::max();
// Aligning two inline numerators by up to this many bits cannot overflow 128 bits.
constexpr std::uint32_t kMaxInlineShift = 62;

int ctz128(u128 v) {
  const auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

mpz_class mpz_from_i128(i128 v) {
  const bool negative = v < 0;
  u128 mag = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

bool fits_int64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, std::uint32_t exponent) { assign_wide(numerator, exponent); }

Dyadic::Dyadic(const mpz_class& numerator, std::uint32_t exponent) { normalize_big(numerator, exponent); }

Dyadic::Dyadic(const Dyadic& other)
    : num_(other.num_), exp_(other.exp_), big_(other.big_ ? std::make_unique<mpz_class>(*other.big_) : nullptr) {}

Dyadic& Dyadic::operator=(const Dyadic& other) {
  if (this != &other) {
    num_ = other.num_;
    exp_ = other.exp_;
    big_ = other.big_ ? std::make_unique<mpz_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Dyadic::assign_wide(i128 value, std::uint64_t exponent) {
  big_.reset();
  if (value == 0) {
    num_ = 0;
    exp_ = 0;
    return;
  }
  const auto strip = std::min<std::uint64_t>(ctz128(value < 0 ? -static_cast<u128>(value) : static_cast<u128>(value)),
                                             exponent);
  value >>= strip;  // arithmetic shift is exact: the low bits are zero
  exponent -= strip;
  if (exponent > kMaxExponent) fail(ErrorCode::InvalidArgument, "dyadic exponent overflow");
  exp_ = static_cast<std::uint32_t>(exponent);
  if (fits_int64(value)) {
    num_ = static_cast<std::int64_t>(value);
  } else {
    num_ = 0;
    big_ = std::make_unique<mpz_class>(mpz_from_i128(value));
  }
}

void Dyadic::normalize_big(mpz_class value, std::uint64_t exponent) {
  big_.reset();
  if (value == 0) {
    num_ = 0;
    exp_ = 0;
    return;
  }
  const auto strip = std::min<std::uint64_t>(mpz_scan1(value.get_mpz_t(), 0), exponent);
  if (strip > 0) mpz_tdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), strip);
  exponent -= strip;
  if (exponent > kMaxExponent) fail(ErrorCode::InvalidArgument, "dyadic exponent overflow");
  exp_ = static_cast<std::uint32_t>(exponent);
  if (mpz_fits_slong_p(value.get_mpz_t())) {
    num_ = value.get_si();
  } else {
    num_ = 0;
    big_ = std::make_unique<mpz_class>(std::move(value));
  }
}

mpz_class Dyadic::big_numerator() const {
  if (big_) return *big_;
  return mpz_class(static_cast<long>(num_));
}

mpz_class Dyadic::numerator() const { return big_numerator(); }

Dyadic Dyadic::pow2(std::int64_t k) {
  if (k >= 0) {
    if (k < 63) return Dyadic(static_cast<std::int64_t>(1) << k);
    mpz_class v = 1;
    v <<= static_cast<unsigned long>(k);
    return Dyadic(v, 0);
  }
  if (-k > static_cast<std::int64_t>(kMaxExponent)) fail(ErrorCode::InvalidArgument, "dyadic exponent overflow");
  return Dyadic(1, static_cast<std::uint32_t>(-k));
}

int Dyadic::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Dyadic Dyadic::scaled(std::int64_t k) const {
  Dyadic out;
  if (k <= 0) {
    const std::uint64_t e = static_cast<std::uint64_t>(exp_) + static_cast<std::uint64_t>(-k);
    if (big_) out.normalize_big(*big_, e);
    else out.assign_wide(num_, e);
    return out;
  }
  const auto shift = static_cast<std::uint64_t>(k);
  if (shift <= exp_) {
    const std::uint64_t e = exp_ - shift;
    if (big_) out.normalize_big(*big_, e);
    else out.assign_wide(num_, e);
    return out;
  }
  mpz_class v = big_numerator();
  v <<= static_cast<unsigned long>(shift - exp_);
  out.normalize_big(std::move(v), 0);
  return out;
}

Dyadic Dyadic::operator-() const {
  Dyadic out;
  if (big_) {
    out.normalize_big(-*big_, exp_);
  } else {
    out.assign_wide(-static_cast<i128>(num_), exp_);
  }
  return out;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (rhs.is_zero()) return *this;
  if (!big_ && !rhs.big_) {
    if (exp_ == rhs.exp_) {
      assign_wide(static_cast<i128>(num_) + rhs.num_, exp_);
      return *this;
    }
    if (exp_ > rhs.exp_ && exp_ - rhs.exp_ <= kMaxInlineShift) {
      assign_wide(static_cast<i128>(num_) + (static_cast<i128>(rhs.num_) << (exp_ - rhs.exp_)), exp_);
      return *this;
    }
    if (rhs.exp_ > exp_ && rhs.exp_ - exp_ <= kMaxInlineShift) {
      assign_wide((static_cast<i128>(num_) << (rhs.exp_ - exp_)) + rhs.num_, rhs.exp_);
      return *this;
    }
  }
  const std::uint32_t e = std::max(exp_, rhs.exp_);
  mpz_class a = big_numerator();
  mpz_class b = rhs.big_numerator();
  a <<= e - exp_;
  b <<= e - rhs.exp_;
  normalize_big(a + b, e);
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  const std::uint64_t e = static_cast<std::uint64_t>(exp_) + rhs.exp_;
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.num_, e);
    return *this;
  }
  normalize_big(big_numerator() * rhs.big_numerator(), e);
  return *this;
}

bool operator==(const Dyadic& a, const Dyadic& b) noexcept {
  if (a.exp_ != b.exp_) return false;
  if (!a.big_ && !b.big_) return a.num_ == b.num_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (!a.big_ && !b.big_) {
    if (a.exp_ == b.exp_) return a.num_ <=> b.num_;
    if (a.exp_ > b.exp_ && a.exp_ - b.exp_ <= kMaxInlineShift) {
      return static_cast<i128>(a.num_) <=> (static_cast<i128>(b.num_) << (a.exp_ - b.exp_));
    }
    if (b.exp_ > a.exp_ && b.exp_ - a.exp_ <= kMaxInlineShift) {
      return (static_cast<i128>(a.num_) << (b.exp_ - a.exp_)) <=> static_cast<i128>(b.num_);
    }
  }
  const std::uint32_t e = std::max(a.exp_, b.exp_);
  mpz_class x = a.big_numerator();
  mpz_class y = b.big_numerator();
  x <<= e - a.exp_;
  y <<= e - b.exp_;
  const int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Dyadic Dyadic::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+') digits.erase(digits.begin());
    const std::size_t start = (!digits.empty() && digits.front() == '-') ? 1 : 0;
    if (digits.size() == start ||
        !std::all_of(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      fail(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
    }
    return mpz_class(digits, 10);
  };

  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_int(text), 0);
  const mpz_class num = parse_int(text.substr(0, slash));
  std::string_view den = trim(text.substr(slash + 1));
  if (den.size() > 2 && den.substr(0, 2) == "2^") {
    const mpz_class e = parse_int(den.substr(2));
    if (e < 0 || e > static_cast<unsigned long>(kMaxExponent)) {
      fail(ErrorCode::ParseError, "exponent out of range: '" + std::string(text) + "'");
    }
    return Dyadic(num, static_cast<std::uint32_t>(e.get_ui()));
  }
  const mpz_class d = parse_int(den);
  if (d <= 0 || mpz_popcount(d.get_mpz_t()) != 1) {
    fail(ErrorCode::ParseError, "denominator is not a power of two: '" + std::string(text) + "'");
  }
  return Dyadic(num, static_cast<std::uint32_t>(mpz_scan1(d.get_mpz_t(), 0)));
}

std::string Dyadic::to_string() const {
  return (big_ ? big_->get_str() : std::to_string(num_)) + "/2^" + std::to_string(exp_);
}

std::string Dyadic::to_decimal() const {
  mpz_class n = big_numerator();
  const bool negative = n < 0;
  if (negative) n = -n;
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, exp_);
  std::string digits = mpz_class(n * five).get_str();
  if (digits.size() <= exp_) digits.insert(0, exp_ + 1 - digits.size(), '0');
  if (exp_ > 0) digits.insert(digits.size() - exp_, ".");
  return negative ? "-" + digits : digits;
}

Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << x.to_string(); }

}  // namespace cantor
