#include "cantor/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "cantor/error.hpp"

namespace cantor {

KSetColouring::KSetColouring(std::size_t ground, std::size_t arity, std::size_t colours)
    : ground_(ground), arity_(arity), colours_(colours) {
  if (ground > kMaxGround) fail(ErrorCode::InvalidArgument, "ground set larger than 16");
  if (arity == 0 || arity > ground) fail(ErrorCode::InvalidArgument, "need 1 <= k <= |X|");
  if (colours == 0 || colours >= kUnset) fail(ErrorCode::InvalidArgument, "bad colour count");
  colour_.assign(std::size_t{1} << ground, kUnset);
  for (std::uint32_t mask = 0; mask < (1U << ground); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == arity) subsets_.push_back(mask);
  }
}

void KSetColouring::set(std::uint32_t subset, std::uint8_t colour) {
  if (subset >= colour_.size() || static_cast<std::size_t>(std::popcount(subset)) != arity_) {
    fail(ErrorCode::InvalidArgument, "not a k-subset: mask " + std::to_string(subset));
  }
  if (colour >= colours_) fail(ErrorCode::InvalidArgument, "colour " + std::to_string(colour) + " out of range");
  colour_[subset] = colour;
}

std::uint8_t KSetColouring::operator()(std::uint32_t subset) const {
  const std::uint8_t c = colour_.at(subset);
  if (c == kUnset) fail(ErrorCode::InvalidArgument, "uncoloured subset mask " + std::to_string(subset));
  return c;
}

bool KSetColouring::is_total() const {
  return std::all_of(subsets_.begin(), subsets_.end(), [&](std::uint32_t s) { return colour_[s] < colours_; });
}

bool colour_is_universal(const KSetColouring& c, std::uint8_t i) {
  std::uint32_t touched = 0;
  for (auto s : c.subsets()) {
    if (c(s) == i) touched |= s;
  }
  return touched == (1U << c.ground()) - 1;
}

namespace {

// Colouring of the a-subsets Y of `alive` by c(Y + forced).
std::uint8_t peel(const KSetColouring& c, std::uint32_t alive, std::uint32_t forced, std::size_t a) {
  const auto top = static_cast<std::uint8_t>(a - 1);
  if (a == 1) return top;
  std::uint32_t touched = 0;
  for (auto s : c.subsets()) {
    if ((s & forced) == forced && ((s & ~forced) & ~alive) == 0 && c(s) == top) touched |= s & ~forced;
  }
  const std::uint32_t missing = alive & ~touched;
  if (missing == 0) return top;
  const std::uint32_t u = missing & (~missing + 1);  // least witness
  return peel(c, alive & ~u, forced | u, a - 1);
}

}  // namespace

std::uint8_t dumb_rt_peel(const KSetColouring& c) {
  if (!c.is_total()) fail(ErrorCode::InvalidArgument, "colouring is not total");
  if (c.colours() > c.arity()) fail(ErrorCode::InvalidArgument, "more colours than the arity");
  return peel(c, (1U << c.ground()) - 1, 0, c.arity());
}

std::uint8_t dumb_rt_select(const KSetColouring& c) {
  const std::uint8_t bound = dumb_rt_peel(c);
  for (std::uint8_t i = 0; i <= bound; ++i) {
    if (colour_is_universal(c, i)) return i;
  }
  fail(ErrorCode::InvalidArgument, "peeled colour is not universal");  // excluded by the lemma
}

KSetColouring dumb_rt_counterexample(std::size_t k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  KSetColouring c(k + 1, k, k + 1);
  const std::uint32_t all = (1U << (k + 1)) - 1;
  for (std::uint32_t i = 0; i <= k; ++i) c.set(all & ~(1U << i), static_cast<std::uint8_t>(i));
  return c;
}

std::vector<std::uint32_t> pointwise_min_merge(const std::vector<std::vector<std::uint32_t>>& q) {
  if (q.empty()) fail(ErrorCode::InvalidArgument, "nothing to merge");
  std::vector<std::uint32_t> out = q.front();
  for (const auto& s : q) {
    if (s.size() != out.size()) fail(ErrorCode::InvalidArgument, "sequences of different lengths");
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::min(out[i], s[i]);
  }
  return out;
}

std::vector<BitString> tau_q(const std::vector<std::vector<BitString>>& q) {
  if (q.empty()) fail(ErrorCode::InvalidArgument, "Q is empty");
  const std::size_t n = q.front().size();
  const std::size_t k = q.size();
  for (std::size_t m = 0; m < k; ++m) {
    if (q[m].size() != n) fail(ErrorCode::InvalidArgument, "members of Q have different lengths");
    std::set<BitString> seen(q[m].begin(), q[m].end());
    if (seen.size() != n) fail(ErrorCode::InvalidArgument, "member " + std::to_string(m) + " is not injective");
    std::vector<std::size_t> per_length(BitString::kMaxLength + 1, 0);
    for (const auto& s : q[m]) ++per_length[s.size()];
    for (std::size_t len = 0; len < per_length.size(); ++len) {
      if (len < 63 && per_length[len] * k > (std::size_t{1} << len)) {
        fail(ErrorCode::NoRoom, "member " + std::to_string(m) + " uses " + std::to_string(per_length[len]) +
                                    " strings of length " + std::to_string(len) + ", more than 1/" + std::to_string(k));
      }
    }
  }
  std::vector<std::size_t> bound(n);
  for (std::size_t x = 0; x < n; ++x) {
    bound[x] = q.front()[x].size();
    for (const auto& s : q) bound[x] = std::min(bound[x], s[x].size());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] < bound[b]; });
  std::vector<BitString> out(n);
  std::uint64_t next = 0;  // strings are taken in length-lex order, so one cursor suffices
  for (auto x : order) {
    const BitString candidate = BitString::from_length_lex_rank(next);
    if (candidate.size() > bound[x]) fail(ErrorCode::NoRoom, "no unused string of length <= " + std::to_string(bound[x]));
    out[x] = candidate;
    ++next;
  }
  return out;
}

}  // namespace cantor
