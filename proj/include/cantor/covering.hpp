#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/clopen.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/jump.hpp"
#include "cantor/kolmogorov.hpp"
#include "cantor/measures.hpp"

namespace cantor {

using NatString = std::vector<std::uint32_t>;

/// A_0, A_1, ..., A_m with weight sum_n 2^-n |A_n|.
template <class T>
class WeightedSequence {
 public:
  WeightedSequence() = default;
  explicit WeightedSequence(std::vector<std::set<T>> sets) : sets_(std::move(sets)) {}

  std::size_t size() const noexcept { return sets_.size(); }
  const std::vector<std::set<T>>& sets() const noexcept { return sets_; }
  /// A_n, empty past the end.
  const std::set<T>& at(std::size_t n) const {
    static const std::set<T> kEmpty;
    return n < sets_.size() ? sets_[n] : kEmpty;
  }
  void add(std::size_t n, T x) {
    if (sets_.size() <= n) sets_.resize(n + 1);
    sets_[n].insert(std::move(x));
  }

  Dyadic wt() const {
    Dyadic total;
    for (std::size_t n = 0; n < sets_.size(); ++n) {
      if (!sets_[n].empty()) total += Dyadic(static_cast<std::int64_t>(sets_[n].size()), static_cast<std::uint32_t>(n));
    }
    return total;
  }

  /// A_n is a subset of B_n (this = B) for every n.
  bool covers(const WeightedSequence& a) const {
    for (std::size_t n = 0; n < a.size(); ++n) {
      for (const auto& x : a.at(n)) {
        if (at(n).count(x) == 0) return false;
      }
    }
    return true;
  }

  friend bool operator==(const WeightedSequence&, const WeightedSequence&) = default;

 private:
  std::vector<std::set<T>> sets_;
};

using IndexSequence = WeightedSequence<std::uint64_t>;
using StringSequence = WeightedSequence<BitString>;
using NatStringSequence = WeightedSequence<NatString>;

/// A_n = {sigma : K_s(sigma) <= n} for n <= cutoff.
StringSequence universal_discrete_instance(const Machine& m, std::uint32_t stage, std::size_t cutoff);

/// B_n = {sigma : |F(sigma)| <= n + c} for n <= cutoff.
StringSequence cover_from_compression(const CompressionFunction& f, std::uint32_t c, std::size_t cutoff);

/// f(sigma) = shift + least n with sigma in B_n, coded by Kraft-Chaitin. Requires
/// sum 2^-f(sigma) <= 1 (WeightExceeded). Uncovered names the first string of
/// `required` that lies in no B_n.
CompressionFunction compression_from_cover(const StringSequence& b, std::uint32_t shift = 0,
                                           const std::vector<BitString>& required = {});

/// Nondecreasing step function with values >= 2: h(n) = value of the last breakpoint at or before n.
class OrderFunction {
 public:
  struct Breakpoint {
    std::uint32_t from = 0;
    std::uint64_t value = 2;
  };
  /// Breakpoints must start at 0, increase in `from` and not decrease in `value`.
  explicit OrderFunction(std::vector<Breakpoint> breakpoints);
  std::uint64_t operator()(std::uint64_t n) const;

 private:
  std::vector<Breakpoint> bps_;
};

/// The increasing function g of the slow-DNC construction together with h.
struct SdncParameters {
  OrderFunction h;
  std::vector<std::uint32_t> g;  // g(0) < g(1) < ... < g(M); M is the window
  std::size_t threshold = 0;     // h(g(m+1)) > 2 h(g(m)) is required for m >= threshold
};

/// GrowthViolation with the first m past the threshold where h(g(m))/2^m fails to increase;
/// InvalidArgument if g is not increasing.
void validate_sdnc(const SdncParameters& p);

/// For each event (k, s) with s <= M: tau of length g(s) copying J_s wherever it converged
/// below h, 0 elsewhere; tau restricted to g(m) goes into A_{k+m+2} for every m <= s.
NatStringSequence sdnc_build_instance(const std::vector<CeEvent>& w, const ToyJumpTable& j, const SdncParameters& p);

struct SdncCase1 {
  std::vector<std::uint32_t> f;  // f(n) for n < g(M)
  std::size_t threshold = 0;     // f(n) < h(n) from here on before the finite modification
};

struct SdncCase2 {
  std::size_t m = 0;
  std::uint32_t t = 0;
  std::size_t settle() const noexcept { return std::max<std::size_t>(m, t); }
};

using SdncOutcome = std::variant<SdncCase1, SdncCase2>;

/// Case 1 if for every m in the window some tau in B_{k+m+2} of length g(m) agrees with J
/// wherever J is below h; f then avoids all such tau and is patched below its threshold.
/// Otherwise Case 2 with the failing m and the least stage t that already witnesses it.
SdncOutcome sdnc_decode(const NatStringSequence& b, const ToyJumpTable& j, const SdncParameters& p, std::size_t k);

/// Independent clopen sets C_{n,k}: the (n,k) pairs are enumerated by n+k, then n, and
/// each gets its own block of n bits; C_{n,k} says "the block is all ones".
class ClopenFamily {
 public:
  explicit ClopenFamily(std::size_t max_depth = 20);

  std::size_t max_depth() const noexcept { return max_depth_; }
  /// First bit of the block of (n, k); LayoutExhausted if it does not end within max_depth.
  std::size_t offset(std::uint32_t n, std::uint64_t k) const;
  bool fits(std::uint32_t n, std::uint64_t k) const;
  ClopenSet member(std::uint32_t n, std::uint64_t k) const;
  /// All pairs whose block fits, in layout order.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> pairs() const;

 private:
  std::size_t max_depth_;
};

/// U = union of C_{n,k} over k in A_n. A_0 contributes the whole space.
ClopenSet embed_discrete_in_open(const IndexSequence& a, const ClopenFamily& fam);

/// 1 - prod_n (1 - 2^-n)^|A_n|.
Dyadic product_formula(const IndexSequence& a);

/// B_n = {k : C_{n,k} within V} over the pairs of the family. FullMeasure if V is everything.
IndexSequence extract_cover_from_open(const ClopenSet& v, const ClopenFamily& fam);

/// S^0 = {<>}, S^{n+1} = {sigma tau : sigma in S^n, tau in S}.
Antichain power_class(const Antichain& s, std::size_t n);

struct UniversalityHit {
  std::size_t n = 0;
  BitString sigma;
};

/// Least n >= 1 with [S^n] inside W, and the lexicographically least sigma in S^{n-1}
/// with [sigma] not inside W. FullMeasure if W is everything; CapExceeded if no n <= cap works.
UniversalityHit universality_search(const ClopenSet& w, const Antichain& s, std::size_t cap);

/// [Q] for Q the minimal strings with N >= 1. RootCapital if N(<>) >= 1.
ClopenSet martingale_success_set(const FiniteMartingale& n);

}  // namespace cantor
