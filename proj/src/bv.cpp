#include "cantor/bv.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "cantor/bitstring.hpp"
#include "cantor/error.hpp"

namespace cantor {

namespace {

void same_grid(const BvSample& a, const BvSample& b) {
  if (a.depth() != b.depth()) {
    fail(ErrorCode::GridMismatch, "depths " + std::to_string(a.depth()) + " and " + std::to_string(b.depth()));
  }
}

std::string grid_point(std::size_t k, std::size_t depth) { return std::to_string(k) + "/2^" + std::to_string(depth); }

}  // namespace

BvSample::BvSample(std::size_t depth, std::vector<Dyadic> values) : depth_(depth), values_(std::move(values)) {
  if (depth > kMaxDepth) fail(ErrorCode::InvalidArgument, "grid depth " + std::to_string(depth) + " too large");
  if (values_.size() != (std::size_t{1} << depth) + 1) {
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string((std::size_t{1} << depth) + 1) +
                                         " grid values, got " + std::to_string(values_.size()));
  }
}

BvSample BvSample::zero(std::size_t depth) {
  if (depth > kMaxDepth) fail(ErrorCode::InvalidArgument, "grid depth too large");
  return BvSample(depth, std::vector<Dyadic>((std::size_t{1} << depth) + 1));
}

BvSample BvSample::identity(std::size_t depth) {
  if (depth > kMaxDepth) fail(ErrorCode::InvalidArgument, "grid depth too large");
  std::vector<Dyadic> v;
  v.reserve((std::size_t{1} << depth) + 1);
  for (std::size_t k = 0; k <= (std::size_t{1} << depth); ++k) {
    v.emplace_back(static_cast<std::int64_t>(k), static_cast<std::uint32_t>(depth));
  }
  return BvSample(depth, std::move(v));
}

std::optional<std::size_t> BvSample::first_descent() const {
  for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
    if (values_[k + 1] < values_[k]) return k;
  }
  return std::nullopt;
}

bool BvSample::is_nondecreasing() const { return !first_descent().has_value(); }

BvSample operator+(const BvSample& a, const BvSample& b) {
  same_grid(a, b);
  BvSample out = a;
  for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] += b.values_[k];
  return out;
}

BvSample operator-(const BvSample& a, const BvSample& b) {
  same_grid(a, b);
  BvSample out = a;
  for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] -= b.values_[k];
  return out;
}

BvSample BvSample::plus_constant(const Dyadic& c) const {
  BvSample out = *this;
  for (auto& v : out.values_) v += c;
  return out;
}

BvSample variation_function(const BvSample& f) {
  std::vector<Dyadic> v;
  v.reserve(f.points());
  Dyadic acc;
  v.push_back(acc);
  for (std::size_t k = 1; k < f.points(); ++k) {
    acc += abs(f.at(k) - f.at(k - 1));
    v.push_back(acc);
  }
  return BvSample(f.depth(), std::move(v));
}

std::pair<BvSample, BvSample> jordan_canonical(const BvSample& f) {
  BvSample g = variation_function(f);
  BvSample h = g - f;
  return {std::move(g), std::move(h)};
}

bool is_jordan_solution(const BvSample& f, const BvSample& g, const BvSample& h) {
  same_grid(f, g);
  same_grid(f, h);
  if (!g.is_nondecreasing() || !h.is_nondecreasing()) return false;
  for (std::size_t k = 0; k < f.points(); ++k) {
    if (f.at(k) != g.at(k) - h.at(k)) return false;
  }
  return true;
}

FiniteSignedMeasure mu_from_bv(const BvSample& f) {
  std::vector<Dyadic> leaves;
  leaves.reserve(f.points() - 1);
  for (std::size_t k = 0; k + 1 < f.points(); ++k) leaves.push_back(f.at(k + 1) - f.at(k));
  return FiniteSignedMeasure(f.depth(), std::move(leaves));
}

// ---- saw-tooth ----

SawtoothInstance::SawtoothInstance(std::vector<SawtoothEvent> events, std::size_t depth)
    : events_(std::move(events)), depth_(depth) {
  if (depth > BvSample::kMaxDepth) fail(ErrorCode::InvalidArgument, "grid depth too large");
  std::sort(events_.begin(), events_.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < events_.size(); ++i) {
    if (events_[i].index == events_[i - 1].index) {
      fail(ErrorCode::InvalidArgument, "index " + std::to_string(events_[i].index) + " enters twice");
    }
  }
}

std::optional<std::uint32_t> SawtoothInstance::stage_of(std::uint32_t index) const {
  auto it = std::lower_bound(events_.begin(), events_.end(), index,
                             [](const SawtoothEvent& e, std::uint32_t n) { return e.index < n; });
  if (it == events_.end() || it->index != index) return std::nullopt;
  return it->stage;
}

Dyadic sawtooth_point(std::uint32_t n, std::uint32_t k) {
  const auto ni = static_cast<std::int64_t>(n);
  const auto ki = static_cast<std::int64_t>(k);
  return Dyadic(1) - Dyadic::pow2(-ni) + Dyadic::pow2(-ni - 1) * (Dyadic(1) - Dyadic::pow2(-ki));
}

Dyadic sawtooth_limit(std::uint32_t n) { return Dyadic(1) - Dyadic::pow2(-static_cast<std::int64_t>(n) - 1); }

std::size_t sawtooth_min_depth(std::uint32_t n, std::uint32_t s) {
  return std::max<std::size_t>(std::size_t{n} + s + 3, 2 * std::size_t{s} + 3);
}

namespace {

// Grid index of a dyadic point, if it lies on the grid of the given depth.
std::optional<std::size_t> grid_index(const Dyadic& x, std::size_t depth) {
  if (x.exponent() > depth) return std::nullopt;
  const Dyadic k = x.scaled(static_cast<std::int64_t>(depth));
  return static_cast<std::size_t>(k.numerator().get_ui());
}

}  // namespace

BvSample sawtooth_encode(const SawtoothInstance& inst) {
  const std::size_t d = inst.depth();
  std::vector<Dyadic> v((std::size_t{1} << d) + 1);
  for (const auto& e : inst.events()) {
    const std::uint32_t n = e.index;
    const std::uint32_t s = e.stage;
    if (d < sawtooth_min_depth(n, s)) {
      fail(ErrorCode::GridTooCoarse, "event (n=" + std::to_string(n) + ", s=" + std::to_string(s) +
                                         ") needs depth " + std::to_string(sawtooth_min_depth(n, s)));
    }
    const std::size_t teeth = s > n ? std::size_t{1} << (s - n) : 1;
    const Dyadic amplitude = Dyadic::pow2(-static_cast<std::int64_t>(std::max(n, s)));
    // I_{n,s} has width 2^-(n+s+2); each half tooth spans `half` grid cells.
    const std::size_t half = (std::size_t{1} << (d - (n + s + 3))) / teeth;
    const std::size_t start = *grid_index(sawtooth_point(n, s), d);
    const Dyadic step = amplitude.scaled(-static_cast<std::int64_t>(std::countr_zero(half)));
    for (std::size_t t = 0; t < teeth; ++t) {
      const std::size_t base = start + 2 * half * t;
      for (std::size_t j = 1; j <= half; ++j) {
        v[base + j] = step * Dyadic(static_cast<std::int64_t>(j));
        v[base + 2 * half - j] = v[base + j];
      }
      v[base + 2 * half] = Dyadic();
    }
  }
  return BvSample(d, std::move(v));
}

namespace {

void check_dominator(const BvSample& g, const BvSample& f) {
  same_grid(g, f);
  if (auto k = g.first_descent()) {
    fail(ErrorCode::NotDominating, "g decreases on [" + grid_point(*k, g.depth()) + ", " +
                                       grid_point(*k + 1, g.depth()) + "]");
  }
  Dyadic prev = g.at(0) - f.at(0);
  for (std::size_t k = 0; k + 1 < g.points(); ++k) {
    Dyadic next = g.at(k + 1) - f.at(k + 1);
    if (next < prev) {
      fail(ErrorCode::NotDominating, "g - f decreases on [" + grid_point(k, g.depth()) + ", " +
                                         grid_point(k + 1, g.depth()) + "]");
    }
    prev = std::move(next);
  }
}

bool decode_one(const BvSample& g, std::uint32_t n, const SawtoothInstance& inst) {
  const std::size_t d = g.depth();
  const auto top = grid_index(sawtooth_limit(n), d);
  if (!top) fail(ErrorCode::GridTooCoarse, "index " + std::to_string(n) + " has no interval on the grid");
  const Dyadic budget = Dyadic::pow2(-static_cast<std::int64_t>(n));
  for (std::uint32_t s = 0;; ++s) {
    const auto at = grid_index(sawtooth_point(n, s), d);
    if (!at) break;
    if (g.at(*top) - g.at(*at) < budget) {
      // No tooth at any stage >= s, so only the enumeration up to stage s matters.
      const auto entered = inst.stage_of(n);
      return entered.has_value() && *entered < s;
    }
  }
  fail(ErrorCode::DepthExhausted, "stage search for index " + std::to_string(n) + " ran off the grid");
}

}  // namespace

bool sawtooth_decode(const BvSample& g, std::uint32_t n, const SawtoothInstance& inst) {
  check_dominator(g, sawtooth_encode(inst));
  return decode_one(g, n, inst);
}

std::vector<bool> sawtooth_decode_all(const BvSample& g, std::uint32_t max_index, const SawtoothInstance& inst) {
  check_dominator(g, sawtooth_encode(inst));
  std::vector<bool> out;
  for (std::uint32_t n = 0; n <= max_index; ++n) out.push_back(decode_one(g, n, inst));
  return out;
}

// ---- rebasing ----

mpq_class to_mpq(const Dyadic& d) {
  mpz_class den = 1;
  den <<= d.exponent();
  mpq_class q(d.numerator(), den);
  q.canonicalize();
  return q;
}

mpq_class stern_brocot_rational(std::size_t index) {
  if (index == 0) return 0;
  if (index == 1) return 1;
  // Breadth-first order of the Stern-Brocot tree below 1/2; the path is a bit string.
  const BitString path = BitString::from_length_lex_rank(index - 2);
  mpz_class ln = 0, ld = 1, rn = 1, rd = 1;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const mpz_class mn = ln + rn, md = ld + rd;
    if (path[i]) {
      ln = mn;
      ld = md;
    } else {
      rn = mn;
      rd = md;
    }
  }
  mpq_class q(ln + rn, ld + rd);
  q.canonicalize();
  return q;
}

Dyadic dyadic_enumeration(std::size_t index) {
  if (index == 0) return Dyadic();
  if (index == 1) return Dyadic(1);
  const BitString path = BitString::from_length_lex_rank(index - 2);
  return Dyadic(static_cast<std::int64_t>(2 * path.value() + 1), static_cast<std::uint32_t>(path.size() + 1));
}

namespace {

// Least-denominator rational strictly between lo and hi (unique).
mpq_class simplest_rational_between(const mpq_class& lo, const mpq_class& hi) {
  mpz_class ln = 0, ld = 1, rn = 1, rd = 1;
  for (;;) {
    mpq_class m(ln + rn, ld + rd);
    m.canonicalize();
    if (m <= lo) {
      ln = m.get_num();
      ld = m.get_den();
    } else if (m >= hi) {
      rn = m.get_num();
      rd = m.get_den();
    } else {
      return m;
    }
  }
}

// Least-exponent dyadic strictly between lo and hi (unique).
Dyadic simplest_dyadic_between(const Dyadic& lo, const Dyadic& hi) {
  Dyadic l, r(1);
  for (;;) {
    const Dyadic m = (l + r).scaled(-1);
    if (m <= lo) l = m;
    else if (m >= hi) r = m;
    else return m;
  }
}

}  // namespace

std::vector<RebasePair> rebase_rationals(RebaseDirection direction, std::size_t stages) {
  // Keyed by rational; order preservation makes the dyadic side sorted too.
  std::map<mpq_class, Dyadic> table;
  std::map<Dyadic, mpq_class, std::less<>> inverse;
  auto add = [&](const mpq_class& q, const Dyadic& d) {
    table.emplace(q, d);
    inverse.emplace(d, q);
  };
  add(mpq_class(0), Dyadic());
  add(mpq_class(1), Dyadic(1));
  std::size_t next_q = 2, next_d = 2;
  for (std::size_t step = 0; step < stages; ++step) {
    const bool forth = (step % 2 == 0) == (direction == RebaseDirection::RationalToDyadic);
    if (forth) {
      mpq_class q;
      do q = stern_brocot_rational(next_q++);
      while (table.count(q) != 0);
      auto hi = table.upper_bound(q);
      auto lo = std::prev(hi);
      add(q, simplest_dyadic_between(lo->second, hi->second));
    } else {
      Dyadic d;
      do d = dyadic_enumeration(next_d++);
      while (inverse.count(d) != 0);
      auto hi = inverse.upper_bound(d);
      auto lo = std::prev(hi);
      add(simplest_rational_between(lo->second, hi->second), d);
    }
  }
  std::vector<RebasePair> out;
  out.reserve(table.size());
  for (const auto& [q, d] : table) out.push_back({q, d});
  return out;
}

}  // namespace cantor
