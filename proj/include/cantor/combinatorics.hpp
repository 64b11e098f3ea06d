#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/bitstring.hpp"

namespace cantor {

/// Colouring of the k-element subsets of X = {0, ..., size-1}, subsets given as bitmasks.
class KSetColouring {
 public:
  static constexpr std::size_t kMaxGround = 16;
  static constexpr std::uint8_t kUnset = 0xFF;

  KSetColouring(std::size_t ground, std::size_t arity, std::size_t colours);

  std::size_t ground() const noexcept { return ground_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t colours() const noexcept { return colours_; }

  void set(std::uint32_t subset, std::uint8_t colour);
  std::uint8_t operator()(std::uint32_t subset) const;
  /// All k-subsets in increasing mask order.
  const std::vector<std::uint32_t>& subsets() const noexcept { return subsets_; }
  /// Every k-subset has a colour below colours().
  bool is_total() const;

 private:
  std::size_t ground_;
  std::size_t arity_;
  std::size_t colours_;
  std::vector<std::uint8_t> colour_;  // indexed by mask
  std::vector<std::uint32_t> subsets_;
};

/// Every v in X lies in some k-set of colour i.
bool colour_is_universal(const KSetColouring& c, std::uint8_t i);

/// Colour from peeling: while the top colour is not universal, remove the least
/// witness u and recolour the (k-1)-sets by c(Y + u). Returns the least universal
/// colour not above the peeled one, so the answer is the least universal colour.
std::uint8_t dumb_rt_select(const KSetColouring& c);

/// The colour the peeling alone reaches.
std::uint8_t dumb_rt_peel(const KSetColouring& c);

/// X = {0, ..., k}, c(X minus {i}) = i, with k+1 colours; no colour is universal.
KSetColouring dumb_rt_counterexample(std::size_t k);

/// Coordinate-wise minimum of equal-length sequences.
std::vector<std::uint32_t> pointwise_min_merge(const std::vector<std::vector<std::uint32_t>>& q);

/// Injective assignment x -> tau(x) with |tau(x)| <= |sigma(x)| for every sigma in q.
/// Each sigma must be injective (InvalidArgument) and, for k = |q|, use at most 2^L / k
/// strings of each length L (NoRoom otherwise). Strings are handed out by increasing
/// bound, each x taking the length-lex least unused string.
std::vector<BitString> tau_q(const std::vector<std::vector<BitString>>& q);

}  // namespace cantor
