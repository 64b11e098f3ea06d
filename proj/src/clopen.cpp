#include "cantor/clopen.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

std::pair<Dyadic, Dyadic> interval_endpoints(const BitString& sigma) {
  const auto n = static_cast<std::uint32_t>(sigma.size());
  const auto v = static_cast<std::int64_t>(sigma.value());
  if (n == 64) {
    // value() may not fit a signed 64-bit numerator.
    const mpz_class big(std::to_string(sigma.value()));
    return {Dyadic(big, n), Dyadic(mpz_class(big + 1), n)};
  }
  return {Dyadic(v, n), Dyadic(v + 1, n)};
}

namespace {

std::vector<BitString> canonicalize(std::vector<BitString> gens) {
  std::sort(gens.begin(), gens.end());
  std::vector<BitString> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    // Sorted order puts a generator's extensions right after it.
    if (!out.empty() && out.back().is_prefix_of(g)) continue;
    out.push_back(g);
    while (out.size() >= 2) {
      const BitString& hi = out[out.size() - 1];
      const BitString& lo = out[out.size() - 2];
      if (hi.empty() || lo.size() != hi.size() || hi.sibling() != lo || !hi[hi.size() - 1]) break;
      const BitString parent = hi.parent();
      out.pop_back();
      out.back() = parent;
    }
  }
  return out;
}

bool has_prefix_in(const std::vector<BitString>& sorted, const BitString& s) {
  for (std::size_t n = 0; n <= s.size(); ++n) {
    if (std::binary_search(sorted.begin(), sorted.end(), s.prefix(n))) return true;
  }
  return false;
}

void complement_into(const std::vector<BitString>& gens, const BitString& p, std::size_t lo, std::size_t hi,
                     std::vector<BitString>& out) {
  if (lo == hi) {
    out.push_back(p);
    return;
  }
  if (gens[lo] == p) return;
  std::size_t mid = lo;
  while (mid < hi && !gens[mid][p.size()]) ++mid;
  complement_into(gens, p.child(false), lo, mid, out);
  complement_into(gens, p.child(true), mid, hi, out);
}

}  // namespace

ClopenSet::ClopenSet(std::vector<BitString> generators) : gens_(canonicalize(std::move(generators))) {}

std::size_t ClopenSet::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& g : gens_) d = std::max(d, g.size());
  return d;
}

Dyadic ClopenSet::measure() const { return Antichain(gens_).measure(); }

ClopenSet ClopenSet::unite(const ClopenSet& other) const {
  std::vector<BitString> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return ClopenSet(std::move(all));
}

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
  std::vector<BitString> out;
  for (const auto& a : gens_) {
    if (has_prefix_in(other.gens_, a)) {
      out.push_back(a);
      continue;
    }
    for (auto it = std::lower_bound(other.gens_.begin(), other.gens_.end(), a);
         it != other.gens_.end() && a.is_prefix_of(*it); ++it) {
      out.push_back(*it);
    }
  }
  return ClopenSet(std::move(out));
}

ClopenSet ClopenSet::complement() const {
  std::vector<BitString> out;
  complement_into(gens_, BitString(), 0, gens_.size(), out);
  return ClopenSet(std::move(out));
}

bool ClopenSet::is_subset_of(const ClopenSet& other) const {
  return std::all_of(gens_.begin(), gens_.end(), [&](const BitString& g) { return other.covers(g); });
}

bool ClopenSet::covers(const BitString& s) const { return has_prefix_in(gens_, s); }

bool ClopenSet::meets(const BitString& s) const {
  if (covers(s)) return true;
  auto it = std::lower_bound(gens_.begin(), gens_.end(), s);
  return it != gens_.end() && s.is_prefix_of(*it);
}

ClopenSet ClopenSet::relativize(const BitString& s) const {
  if (covers(s)) return whole_space();
  std::vector<BitString> out;
  for (auto it = std::lower_bound(gens_.begin(), gens_.end(), s); it != gens_.end() && s.is_prefix_of(*it); ++it) {
    out.push_back(it->suffix_from(s.size()));
  }
  return ClopenSet(std::move(out));
}

FiniteTree::FiniteTree(std::set<BitString> nodes) : nodes_(std::move(nodes)) {
  for (const auto& n : nodes_) {
    if (!n.empty() && nodes_.count(n.parent()) == 0) {
      fail(ErrorCode::InvalidArgument, "tree not prefix-closed: " + n.token() + " has no parent");
    }
  }
}

FiniteTree FiniteTree::closure_of(const std::vector<BitString>& strings) {
  std::set<BitString> nodes;
  for (const auto& s : strings) {
    for (std::size_t n = 0; n <= s.size(); ++n) nodes.insert(s.prefix(n));
  }
  FiniteTree t;
  t.nodes_ = std::move(nodes);
  return t;
}

FiniteTree FiniteTree::full(std::size_t depth) {
  std::vector<BitString> leaves = strings_of_length(depth);
  return closure_of(leaves);
}

std::size_t FiniteTree::height() const noexcept {
  std::size_t h = 0;
  for (const auto& n : nodes_) h = std::max(h, n.size());
  return h;
}

std::vector<BitString> FiniteTree::leaves() const {
  std::vector<BitString> out;
  for (const auto& n : nodes_) {
    if (n.size() == BitString::kMaxLength || (!contains(n.child(false)) && !contains(n.child(true)))) {
      out.push_back(n);
    }
  }
  return out;
}

FiniteTree tree_restrict(const FiniteTree& tree, const BitString& tau) {
  std::set<BitString> kept;
  for (const auto& n : tree.nodes()) {
    if (n.comparable(tau)) kept.insert(n);
  }
  return FiniteTree(std::move(kept));
}

FiniteTree prune_dead_ends(const FiniteTree& tree, std::size_t depth) {
  std::vector<BitString> deep;
  for (const auto& n : tree.nodes()) {
    if (n.size() >= depth) deep.push_back(n);
  }
  // The tree is prefix-closed, so the closure of its deep nodes stays inside it.
  return FiniteTree::closure_of(deep);
}

}  // namespace cantor
