#include "cantor/covering.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

StringSequence universal_discrete_instance(const Machine& m, std::uint32_t stage, std::size_t cutoff) {
  std::vector<std::set<BitString>> sets(cutoff + 1);
  std::set<BitString> outputs;
  for (const auto& e : m.entries()) outputs.insert(e.output);
  for (const auto& x : outputs) {
    const auto k = staged_complexity(m, x, stage);
    if (!k) continue;
    for (std::size_t n = *k; n <= cutoff; ++n) sets[n].insert(x);
  }
  return StringSequence(std::move(sets));
}

StringSequence cover_from_compression(const CompressionFunction& f, std::uint32_t c, std::size_t cutoff) {
  std::vector<std::set<BitString>> sets(cutoff + 1);
  for (const auto& [sigma, image] : f.mapping) {
    const std::size_t from = image.size() > c ? image.size() - c : 0;
    for (std::size_t n = from; n <= cutoff; ++n) sets[n].insert(sigma);
  }
  return StringSequence(std::move(sets));
}

CompressionFunction compression_from_cover(const StringSequence& b, std::uint32_t shift,
                                           const std::vector<BitString>& required) {
  std::map<BitString, std::size_t> least;
  for (std::size_t n = 0; n < b.size(); ++n) {
    for (const auto& sigma : b.at(n)) least.emplace(sigma, n);
  }
  for (const auto& sigma : required) {
    if (least.count(sigma) == 0) fail(ErrorCode::Uncovered, sigma.token() + " lies in no B_n");
  }
  std::vector<std::pair<BitString, std::size_t>> order(least.begin(), least.end());
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return length_lex_less(x.first, y.first); });
  std::vector<KcRequest> requests;
  requests.reserve(order.size());
  for (const auto& [sigma, n] : order) requests.push_back({n + shift, sigma});
  const Machine coded = kraft_chaitin(requests);
  CompressionFunction f;
  f.kind = MachineKind::Prefix;
  for (const auto& e : coded.entries()) f.mapping.emplace(e.output, e.program);
  return f;
}

OrderFunction::OrderFunction(std::vector<Breakpoint> breakpoints) : bps_(std::move(breakpoints)) {
  if (bps_.empty() || bps_.front().from != 0) fail(ErrorCode::InvalidArgument, "order function must start at 0");
  for (std::size_t i = 0; i < bps_.size(); ++i) {
    if (bps_[i].value < 2) fail(ErrorCode::InvalidArgument, "order function values must be >= 2");
    if (i > 0 && (bps_[i].from <= bps_[i - 1].from || bps_[i].value < bps_[i - 1].value)) {
      fail(ErrorCode::InvalidArgument, "order function breakpoint " + std::to_string(i) + " out of order");
    }
  }
}

std::uint64_t OrderFunction::operator()(std::uint64_t n) const {
  auto it = std::upper_bound(bps_.begin(), bps_.end(), n,
                             [](std::uint64_t x, const Breakpoint& b) { return x < b.from; });
  return std::prev(it)->value;
}

void validate_sdnc(const SdncParameters& p) {
  if (p.g.empty()) fail(ErrorCode::InvalidArgument, "g needs at least one value");
  for (std::size_t m = 1; m < p.g.size(); ++m) {
    if (p.g[m] <= p.g[m - 1]) fail(ErrorCode::InvalidArgument, "g not increasing at " + std::to_string(m));
  }
  for (std::size_t m = p.threshold; m + 1 < p.g.size(); ++m) {
    const unsigned __int128 now = p.h(p.g[m]);
    const unsigned __int128 next = p.h(p.g[m + 1]);
    if (next <= 2 * now) {
      fail(ErrorCode::GrowthViolation, "h(g(" + std::to_string(m + 1) + ")) = " + std::to_string(p.h(p.g[m + 1])) +
                                           " is not above 2 h(g(" + std::to_string(m) + "))");
    }
  }
}

NatStringSequence sdnc_build_instance(const std::vector<CeEvent>& w, const ToyJumpTable& j, const SdncParameters& p) {
  validate_sdnc(p);
  const std::size_t window = p.g.size() - 1;
  NatStringSequence a;
  std::set<std::uint32_t> seen;
  for (const auto& ev : w) {
    if (!seen.insert(ev.index).second) fail(ErrorCode::InvalidArgument, "index " + std::to_string(ev.index) + " enters twice");
    if (ev.stage > window) {
      fail(ErrorCode::InvalidArgument, "event stage " + std::to_string(ev.stage) + " beyond window " + std::to_string(window));
    }
    NatString tau(p.g[ev.stage], 0);
    for (std::uint32_t n = 0; n < tau.size(); ++n) {
      const auto v = j.at_stage(n, ev.stage);
      if (v && *v < p.h(n)) tau[n] = *v;
    }
    for (std::size_t m = 0; m <= ev.stage; ++m) {
      a.add(ev.index + m + 2, NatString(tau.begin(), tau.begin() + p.g[m]));
    }
  }
  return a;
}

namespace {

// tau agrees with J (as of `stage`) wherever J converged below h.
bool agrees_with(const NatString& tau, const ToyJumpTable& j, const OrderFunction& h, std::uint32_t stage) {
  for (std::uint32_t n = 0; n < tau.size(); ++n) {
    const auto v = j.at_stage(n, stage);
    if (v && *v < h(n) && tau[n] != *v) return false;
  }
  return true;
}

std::vector<const NatString*> of_length(const NatStringSequence& b, std::size_t index, std::size_t len) {
  std::vector<const NatString*> out;
  for (const auto& tau : b.at(index)) {
    if (tau.size() == len) out.push_back(&tau);
  }
  return out;
}

}  // namespace

SdncOutcome sdnc_decode(const NatStringSequence& b, const ToyJumpTable& j, const SdncParameters& p, std::size_t k) {
  validate_sdnc(p);
  std::uint32_t last_stage = 0;
  for (const auto& [e, entry] : j.entries()) last_stage = std::max(last_stage, entry.stage);

  for (std::size_t m = 0; m < p.g.size(); ++m) {
    const auto cands = of_length(b, k + m + 2, p.g[m]);
    const bool hit = std::any_of(cands.begin(), cands.end(),
                                 [&](const NatString* tau) { return agrees_with(*tau, j, p.h, last_stage); });
    if (hit) continue;
    for (std::uint32_t t = 0;; ++t) {
      const bool all_refuted = std::none_of(cands.begin(), cands.end(),
                                            [&](const NatString* tau) { return agrees_with(*tau, j, p.h, t); });
      if (all_refuted) return SdncCase2{m, t};
      if (t >= last_stage) break;
    }
    fail(ErrorCode::InvalidArgument, "no refuting stage found");  // unreachable: the final stage refutes
  }

  SdncCase1 out;
  out.f.assign(p.g.back(), 0);
  std::size_t lo = 0;
  for (std::size_t m = 0; m < p.g.size(); ++m) {
    const auto cands = of_length(b, k + m + 2, p.g[m]);
    for (std::size_t n = lo; n < p.g[m]; ++n) {
      std::set<std::uint32_t> taken;
      for (const auto* tau : cands) taken.insert((*tau)[n]);
      std::uint32_t v = 0;
      while (taken.count(v) != 0) ++v;
      out.f[n] = v;
    }
    lo = p.g[m];
  }
  out.threshold = out.f.size();
  while (out.threshold > 0 && out.f[out.threshold - 1] < p.h(out.threshold - 1)) --out.threshold;
  // Finite modification below the threshold.
  for (std::size_t n = 0; n < out.threshold; ++n) {
    const auto jn = j.lookup(static_cast<std::uint32_t>(n));
    std::uint32_t v = 0;
    if (jn && jn->value == v) ++v;
    out.f[n] = v;
  }
  return out;
}

ClopenFamily::ClopenFamily(std::size_t max_depth) : max_depth_(max_depth) {
  if (max_depth > 24) fail(ErrorCode::InvalidArgument, "clopen family depth capped at 24");
}

std::size_t ClopenFamily::offset(std::uint32_t n, std::uint64_t k) const {
  if (n == 0) fail(ErrorCode::InvalidArgument, "C_{0,k} has no block");
  std::size_t off = 0;
  for (std::uint64_t d = 1;; ++d) {
    for (std::uint64_t nn = 1; nn <= d; ++nn) {
      if (nn == n && d - nn == k) {
        if (off + n > max_depth_) {
          fail(ErrorCode::LayoutExhausted, "C_{" + std::to_string(n) + "," + std::to_string(k) + "} would end at bit " +
                                               std::to_string(off + n) + " > " + std::to_string(max_depth_));
        }
        return off;
      }
      off += nn;
      if (off > max_depth_) {
        fail(ErrorCode::LayoutExhausted,
             "C_{" + std::to_string(n) + "," + std::to_string(k) + "} lies past depth " + std::to_string(max_depth_));
      }
    }
  }
}

bool ClopenFamily::fits(std::uint32_t n, std::uint64_t k) const {
  if (n == 0) return true;
  try {
    offset(n, k);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

// Bits [off, off + n) all ones, given as generators of length off + n.
std::vector<BitString> block_generators(std::size_t off, std::size_t n) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << off);
  const BitString ones = BitString::repeat(true, n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << off); ++v) out.push_back(BitString(v, off).concat(ones));
  return out;
}

// Is every string with bits [off, off + n) all ones covered? `gens` sorted, [lo, hi) the ones extending p.
bool block_inside(const std::vector<BitString>& gens, const BitString& p, std::size_t lo, std::size_t hi,
                  std::size_t off, std::size_t n) {
  if (lo == hi) return false;
  if (gens[lo] == p) return true;
  if (p.size() >= off + n) return false;
  std::size_t mid = lo;
  while (mid < hi && !gens[mid][p.size()]) ++mid;
  if (p.size() >= off) return block_inside(gens, p.child(true), mid, hi, off, n);
  return block_inside(gens, p.child(false), lo, mid, off, n) && block_inside(gens, p.child(true), mid, hi, off, n);
}

}  // namespace

ClopenSet ClopenFamily::member(std::uint32_t n, std::uint64_t k) const {
  if (n == 0) return ClopenSet::whole_space();
  return ClopenSet(block_generators(offset(n, k), n));
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> ClopenFamily::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  std::size_t off = 0;
  for (std::uint64_t d = 1;; ++d) {
    for (std::uint64_t n = 1; n <= d; ++n) {
      if (off + n > max_depth_) return out;
      out.emplace_back(static_cast<std::uint32_t>(n), d - n);
      off += n;
    }
  }
}

ClopenSet embed_discrete_in_open(const IndexSequence& a, const ClopenFamily& fam) {
  if (!a.at(0).empty()) return ClopenSet::whole_space();
  // Chosen blocks in layout order; a string is in U once some chosen block is all ones.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t n = 1; n < a.size(); ++n) {
    for (auto k : a.at(n)) blocks.emplace_back(fam.offset(static_cast<std::uint32_t>(n), k), n);
  }
  std::sort(blocks.begin(), blocks.end());
  std::vector<BitString> gens;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [off, n] = blocks[b];
    for (const auto& g : block_generators(off, n)) {
      bool earlier = false;
      for (std::size_t e = 0; e < b && !earlier; ++e) {
        const auto [eo, en] = blocks[e];
        earlier = g.prefix(eo + en).suffix_from(eo) == BitString::repeat(true, en);
      }
      if (!earlier) gens.push_back(g);
    }
  }
  return ClopenSet(std::move(gens));
}

Dyadic product_formula(const IndexSequence& a) {
  Dyadic keep(1);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const Dyadic factor = Dyadic(1) - Dyadic::pow2(-static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < a.at(n).size(); ++i) keep *= factor;
  }
  return Dyadic(1) - keep;
}

IndexSequence extract_cover_from_open(const ClopenSet& v, const ClopenFamily& fam) {
  if (v.is_whole()) fail(ErrorCode::FullMeasure, "V is the whole space");
  IndexSequence b;
  for (const auto& [n, k] : fam.pairs()) {
    if (block_inside(v.generators(), BitString(), 0, v.generators().size(), fam.offset(n, k), n)) b.add(n, k);
  }
  return b;
}

Antichain power_class(const Antichain& s, std::size_t n) {
  std::vector<BitString> cur{BitString()};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BitString> next;
    next.reserve(cur.size() * s.size());
    for (const auto& a : cur) {
      for (const auto& t : s.strings()) next.push_back(a.concat(t));
    }
    cur = std::move(next);
  }
  return Antichain(std::move(cur));
}

UniversalityHit universality_search(const ClopenSet& w, const Antichain& s, std::size_t cap) {
  if (w.is_whole()) fail(ErrorCode::FullMeasure, "W is the whole space");
  std::vector<BitString> prev{BitString()};
  for (std::size_t n = 1; n <= cap; ++n) {
    std::vector<BitString> cur;
    cur.reserve(prev.size() * s.size());
    for (const auto& a : prev) {
      for (const auto& t : s.strings()) {
        if (a.size() + t.size() > BitString::kMaxLength) {
          fail(ErrorCode::CapExceeded, "S^" + std::to_string(n) + " outgrows 64-bit strings");
        }
        cur.push_back(a.concat(t));
      }
    }
    if (std::all_of(cur.begin(), cur.end(), [&](const BitString& x) { return w.covers(x); })) {
      std::sort(prev.begin(), prev.end());
      for (const auto& sigma : prev) {
        if (!w.covers(sigma)) return {n, sigma};
      }
    }
    prev = std::move(cur);
  }
  fail(ErrorCode::CapExceeded, "no n <= " + std::to_string(cap) + " with [S^n] inside W");
}

ClopenSet martingale_success_set(const FiniteMartingale& n) {
  if (n(BitString()) >= Dyadic(1)) fail(ErrorCode::RootCapital, "N(<>) = " + n(BitString()).to_string());
  std::vector<BitString> q;
  std::vector<BitString> frontier{BitString()};
  while (!frontier.empty()) {
    const BitString sigma = frontier.back();
    frontier.pop_back();
    if (n(sigma) >= Dyadic(1)) {
      q.push_back(sigma);
    } else if (sigma.size() < n.depth()) {
      frontier.push_back(sigma.child(true));
      frontier.push_back(sigma.child(false));
    }
  }
  return ClopenSet(std::move(q));
}

}  // namespace cantor
