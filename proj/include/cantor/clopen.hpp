#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/dyadic.hpp"

namespace cantor {

/// [l_sigma, r_sigma): l of the empty string is 0, r is 1, and each bit halves.
std::pair<Dyadic, Dyadic> interval_endpoints(const BitString& sigma);

/// Clopen subset of Cantor space, stored as the union of the cylinders of a
/// canonical antichain: no generator extends another and no two generators
/// are siblings. Equal sets therefore have equal generators.
class ClopenSet {
 public:
  ClopenSet() = default;
  /// Any finite set of strings; comparable and sibling generators are merged.
  explicit ClopenSet(std::vector<BitString> generators);
  explicit ClopenSet(const Antichain& generators) : ClopenSet(generators.strings()) {}

  static ClopenSet empty_set() { return {}; }
  static ClopenSet whole_space() { return ClopenSet({BitString()}); }
  static ClopenSet cylinder(const BitString& s) { return ClopenSet({s}); }

  const std::vector<BitString>& generators() const noexcept { return gens_; }
  Antichain antichain() const { return Antichain(gens_); }
  bool is_empty() const noexcept { return gens_.empty(); }
  bool is_whole() const noexcept { return gens_.size() == 1 && gens_.front().empty(); }
  /// Length of the longest generator (0 for empty or whole space).
  std::size_t depth() const noexcept;

  Dyadic measure() const;

  ClopenSet unite(const ClopenSet& other) const;
  ClopenSet intersect(const ClopenSet& other) const;
  ClopenSet complement() const;
  bool is_subset_of(const ClopenSet& other) const;
  /// [s] is contained in this set.
  bool covers(const BitString& s) const;
  /// Some element of this set extends s.
  bool meets(const BitString& s) const;
  /// The set {X : s^X in this set}.
  ClopenSet relativize(const BitString& s) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  std::vector<BitString> gens_;
};

/// Finite prefix-closed set of strings.
class FiniteTree {
 public:
  FiniteTree() = default;
  /// Throws InvalidArgument if some node's parent is missing.
  explicit FiniteTree(std::set<BitString> nodes);
  /// The prefix closure of the given strings.
  static FiniteTree closure_of(const std::vector<BitString>& strings);
  /// All strings of length at most `depth`.
  static FiniteTree full(std::size_t depth);

  const std::set<BitString>& nodes() const noexcept { return nodes_; }
  bool empty() const noexcept { return nodes_.empty(); }
  bool contains(const BitString& s) const { return nodes_.count(s) != 0; }
  std::size_t height() const noexcept;
  std::vector<BitString> leaves() const;

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;

 private:
  std::set<BitString> nodes_;
};

/// Nodes of T comparable with tau.
FiniteTree tree_restrict(const FiniteTree& tree, const BitString& tau);

/// Largest subtree in which every node has an extension of length >= depth.
FiniteTree prune_dead_ends(const FiniteTree& tree, std::size_t depth);

}  // namespace cantor
