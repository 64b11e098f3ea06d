#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cantor/dyadic.hpp"
#include "cantor/measures.hpp"

namespace cantor {

/// A function on [0,1] known only at the grid points k/2^depth, 0 <= k <= 2^depth.
class BvSample {
 public:
  static constexpr std::size_t kMaxDepth = 24;

  BvSample() : values_(2) {}
  /// `values.size()` must be 2^depth + 1.
  BvSample(std::size_t depth, std::vector<Dyadic> values);
  static BvSample zero(std::size_t depth);
  static BvSample identity(std::size_t depth);

  std::size_t depth() const noexcept { return depth_; }
  std::size_t points() const noexcept { return values_.size(); }
  const std::vector<Dyadic>& values() const noexcept { return values_; }
  /// f(k / 2^depth).
  const Dyadic& at(std::size_t k) const { return values_.at(k); }

  bool is_nondecreasing() const;
  /// First k with f((k+1)/2^d) < f(k/2^d).
  std::optional<std::size_t> first_descent() const;

  friend BvSample operator+(const BvSample& a, const BvSample& b);
  friend BvSample operator-(const BvSample& a, const BvSample& b);
  BvSample plus_constant(const Dyadic& c) const;

  friend bool operator==(const BvSample&, const BvSample&) = default;

 private:
  std::size_t depth_ = 0;
  std::vector<Dyadic> values_;
};

/// V_f on the grid: cumulative sum of |f(t_{i+1}) - f(t_i)|.
BvSample variation_function(const BvSample& f);

/// (g, h) = (V_f, V_f - f).
std::pair<BvSample, BvSample> jordan_canonical(const BvSample& f);

/// g, h nondecreasing and f = g - h at every grid point. GridMismatch if depths differ.
bool is_jordan_solution(const BvSample& f, const BvSample& g, const BvSample& h);

/// mu^f(sigma) = f(r_sigma) - f(l_sigma).
FiniteSignedMeasure mu_from_bv(const BvSample& f);

/// Toy c.e. set for the saw-tooth encoding: index n enters at stage s.
struct SawtoothEvent {
  std::uint32_t index = 0;
  std::uint32_t stage = 0;
  friend bool operator==(const SawtoothEvent&, const SawtoothEvent&) = default;
};

class SawtoothInstance {
 public:
  /// At most one event per index (InvalidArgument otherwise). Events are kept sorted by index.
  SawtoothInstance(std::vector<SawtoothEvent> events, std::size_t depth);

  const std::vector<SawtoothEvent>& events() const noexcept { return events_; }
  std::size_t depth() const noexcept { return depth_; }
  std::optional<std::uint32_t> stage_of(std::uint32_t index) const;

 private:
  std::vector<SawtoothEvent> events_;
  std::size_t depth_ = 0;
};

/// Layout: I_n = [1 - 2^-n, 1 - 2^-(n+1)), q^n_k = 1 - 2^-n + 2^-(n+1)(1 - 2^-k),
/// I_{n,k} = [q^n_k, q^n_{k+1}], q^n_omega = 1 - 2^-(n+1).
Dyadic sawtooth_point(std::uint32_t n, std::uint32_t k);
Dyadic sawtooth_limit(std::uint32_t n);

/// Smallest grid depth on which the tooth for (n, s) can be drawn.
std::size_t sawtooth_min_depth(std::uint32_t n, std::uint32_t s);

/// Zero off the event intervals; on I_{n,s} a zig-zag of amplitude min(2^-s, 2^-n)
/// whose rises total 2^-n. GridTooCoarse names the first event that does not fit.
BvSample sawtooth_encode(const SawtoothInstance& inst);

/// Recovers membership of n from a dominator g (g and g - f nondecreasing for
/// f = sawtooth_encode(inst)), using only g and the stage search.
/// NotDominating if the precondition fails on the grid.
bool sawtooth_decode(const BvSample& g, std::uint32_t n, const SawtoothInstance& inst);

/// Decodes indices 0..max_index, checking the precondition once.
std::vector<bool> sawtooth_decode_all(const BvSample& g, std::uint32_t max_index, const SawtoothInstance& inst);

/// One step of the back-and-forth between [0,1] n Q and [0,1] n Q_2.
struct RebasePair {
  mpq_class rational;
  Dyadic dyadic;
};

enum class RebaseDirection { RationalToDyadic, DyadicToRational };

/// Order-preserving partial bijection after `stages` back-and-forth steps,
/// sorted by value. Stage 0 is {0 <-> 0, 1 <-> 1}. The direction only decides
/// which side is listed as the key.
std::vector<RebasePair> rebase_rationals(RebaseDirection direction, std::size_t stages);

/// Canonical enumerations used by the rebasing.
mpq_class stern_brocot_rational(std::size_t index);
Dyadic dyadic_enumeration(std::size_t index);

mpq_class to_mpq(const Dyadic& d);

}  // namespace cantor
