#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/dyadic.hpp"

namespace cantor {

class BvSample;

/// Signed measure on Cantor space known through its values on the 2^depth
/// cylinders of one fixed depth. Coarser cylinders are sums of leaves, so
/// additivity holds by construction.
class FiniteSignedMeasure {
 public:
  FiniteSignedMeasure() : leaves_(1) {}
  /// `leaves[i]` is the value on the i-th string of length `depth` in lexicographic order.
  FiniteSignedMeasure(std::size_t depth, std::vector<Dyadic> leaves);

  static FiniteSignedMeasure zero(std::size_t depth);
  /// Lebesgue measure: 2^-depth on every leaf.
  static FiniteSignedMeasure lebesgue(std::size_t depth);
  /// `mass` on the leaf `at`, zero elsewhere.
  static FiniteSignedMeasure point_mass(const BitString& at, const Dyadic& mass);

  std::size_t depth() const noexcept { return depth_; }
  const std::vector<Dyadic>& leaves() const noexcept { return leaves_; }

  /// mu([sigma)) for |sigma| <= depth.
  Dyadic value(const BitString& sigma) const;
  /// Values on all strings of length `level`, in lexicographic order.
  std::vector<Dyadic> level(std::size_t level) const;
  Dyadic total() const;

  bool is_nonnegative() const;
  /// Same measure at a finer depth, each leaf split evenly among its extensions.
  FiniteSignedMeasure refine(std::size_t depth) const;

  FiniteSignedMeasure operator-() const;
  friend FiniteSignedMeasure operator+(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b);
  friend FiniteSignedMeasure operator-(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b);
  FiniteSignedMeasure scaled(const Dyadic& factor) const;

  friend bool operator==(const FiniteSignedMeasure&, const FiniteSignedMeasure&) = default;

 private:
  std::size_t depth_ = 0;
  std::vector<Dyadic> leaves_;
};

/// The coarsest cylinder where `upper(sigma) < lower(sigma)`, if any.
/// Both measures must share a depth (GridMismatch otherwise).
std::optional<BitString> first_domination_failure(const FiniteSignedMeasure& upper, const FiniteSignedMeasure& lower);
inline bool dominates(const FiniteSignedMeasure& upper, const FiniteSignedMeasure& lower) {
  return !first_domination_failure(upper, lower).has_value();
}

/// Martingale on strings of length <= depth: M(s) = (M(s0) + M(s1)) / 2, M >= 0.
class FiniteMartingale {
 public:
  FiniteMartingale() : levels_{{Dyadic()}} {}
  /// Internal values are the averages of the given leaf capitals.
  static FiniteMartingale from_leaves(std::size_t depth, std::vector<Dyadic> leaf_capital);
  /// Full table, level by level; throws NotFair or NegativeMeasure with the offending string.
  static FiniteMartingale from_levels(std::vector<std::vector<Dyadic>> levels);
  static FiniteMartingale constant(std::size_t depth, const Dyadic& capital);

  std::size_t depth() const noexcept { return levels_.size() - 1; }
  const Dyadic& operator()(const BitString& sigma) const;
  const std::vector<Dyadic>& level(std::size_t n) const { return levels_.at(n); }

  friend bool operator==(const FiniteMartingale&, const FiniteMartingale&) = default;

 private:
  std::vector<std::vector<Dyadic>> levels_;
};

/// mu(s) = 2^-|s| M(s).
FiniteSignedMeasure measure_from_martingale(const FiniteMartingale& m);
/// Inverse of measure_from_martingale; NegativeMeasure if some leaf is negative.
FiniteMartingale martingale_from_measure(const FiniteSignedMeasure& mu);

/// |mu|: the sum of |leaf| over the leaves below each cylinder.
FiniteSignedMeasure variation_measure(const FiniteSignedMeasure& mu);

/// Grid function x -> mu([0, x)) at depth(mu).
BvSample cdf(const FiniteSignedMeasure& mu);

/// Largest leaf mass; NegativeMeasure if mu has a negative leaf.
Dyadic atom_bound(const FiniteSignedMeasure& mu);

/// Nondecreasing sequence of non-negative measures of one depth.
class LscPresentation {
 public:
  /// Validates non-negativity and monotonicity on every cylinder
  /// (NotMonotone / NegativeMeasure with the first witness).
  explicit LscPresentation(std::vector<FiniteSignedMeasure> stages);

  const std::vector<FiniteSignedMeasure>& stages() const noexcept { return stages_; }
  std::size_t depth() const noexcept { return stages_.front().depth(); }
  std::size_t size() const noexcept { return stages_.size(); }

 private:
  std::vector<FiniteSignedMeasure> stages_;
};

FiniteSignedMeasure lsc_limit(const LscPresentation& p);

}  // namespace cantor
