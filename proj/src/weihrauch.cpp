#include "cantor/weihrauch.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

void ToyJumpTable::set(std::uint32_t e, std::uint32_t value, std::uint32_t stage) {
  if (stage == 0) fail(ErrorCode::InvalidArgument, "J stages are positive (e=" + std::to_string(e) + ")");
  if (!entries_.emplace(e, Entry{value, stage}).second) {
    fail(ErrorCode::InvalidArgument, "J(" + std::to_string(e) + ") set twice");
  }
}

std::optional<ToyJumpTable::Entry> ToyJumpTable::lookup(std::uint32_t e) const {
  auto it = entries_.find(e);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> ToyJumpTable::at_stage(std::uint32_t e, std::uint32_t s) const {
  auto it = entries_.find(e);
  if (it == entries_.end() || it->second.stage > s) return std::nullopt;
  return it->second.value;
}

AmdInstance pjd_to_amd_instance(const BvSample& f) {
  const std::size_t d = f.depth();
  const FiniteSignedMeasure mu = mu_from_bv(f);
  std::vector<FiniteSignedMeasure> stages(d + 1);
  stages[d] = variation_measure(mu);
  for (std::size_t l = d; l-- > 0;) {
    // Put |mu(tau)| under each tau of length l, filling leaves up to the next stage.
    const std::vector<Dyadic> target = mu.level(l);
    const std::vector<Dyadic>& cap = stages[l + 1].leaves();
    std::vector<Dyadic> leaves(cap.size());
    const std::size_t width = std::size_t{1} << (d - l);
    for (std::size_t t = 0; t < target.size(); ++t) {
      Dyadic left = abs(target[t]);
      for (std::size_t i = t * width; i < (t + 1) * width && left.sign() > 0; ++i) {
        leaves[i] = min(left, cap[i]);
        left -= leaves[i];
      }
    }
    stages[l] = FiniteSignedMeasure(d, std::move(leaves));
  }
  return AmdInstance(std::move(stages));
}

BvSample pjd_to_amd_solution(const FiniteSignedMeasure& nu, const BvSample& f) {
  const FiniteSignedMeasure target = mu_from_bv(variation_function(f));
  if (nu.depth() != target.depth()) {
    fail(ErrorCode::GridMismatch, "measure depth " + std::to_string(nu.depth()) + ", grid depth " +
                                      std::to_string(target.depth()));
  }
  if (auto w = first_domination_failure(nu, target)) {
    fail(ErrorCode::NotDominating, "at cylinder " + w->token() + ": " + nu.value(*w).to_string() + " < " +
                                       target.value(*w).to_string());
  }
  return cdf(nu);
}

FreerResult freer_construct(const AmdInstance& inst, std::size_t target_depth) {
  const std::size_t big_d = target_depth;
  if (big_d < inst.depth()) fail(ErrorCode::InvalidArgument, "target depth below instance depth");
  if (big_d > BvSample::kMaxDepth) fail(ErrorCode::InvalidArgument, "target depth too large");
  const std::size_t stage_count = inst.size();

  // levels[s][n][i] = nu_s on the i-th string of length n, refined to the target depth.
  std::vector<std::vector<std::vector<Dyadic>>> levels(stage_count);
  for (std::size_t s = 0; s < stage_count; ++s) {
    const FiniteSignedMeasure fine = inst.stages()[s].refine(big_d);
    levels[s].resize(big_d + 1);
    for (std::size_t n = 0; n <= big_d; ++n) levels[s][n] = fine.level(n);
  }
  const Dyadic atoms = atom_bound(inst.stages().back().refine(big_d));

  std::vector<std::vector<Dyadic>> eta(big_d + 1);
  eta[0] = {levels[0][0][0]};

  FreerResult result;
  std::size_t ell = 0;
  for (std::size_t s = 0; s < stage_count; ++s) {
    std::size_t next = big_d;
    if (s + 1 < stage_count) {
      const Dyadic cap = Dyadic::pow2(-static_cast<std::int64_t>(s + 1));
      std::size_t n = ell;
      for (; n <= big_d; ++n) {
        const auto& lv = levels[s + 1][n];
        if (std::all_of(lv.begin(), lv.end(), [&](const Dyadic& x) { return x <= cap; })) break;
      }
      if (n > big_d) {
        fail(ErrorCode::DepthExhausted, "stage " + std::to_string(s + 1) + " needs cylinders of mass <= " +
                                            cap.to_string() + " beyond depth " + std::to_string(big_d));
      }
      next = n;
    }

    FreerStage rec;
    rec.stage = s;
    rec.level_begin = ell;
    rec.level_end = next;
    const auto& nu = levels[s];
    for (std::size_t n = ell + 1; n <= next; ++n) {
      eta[n].assign(std::size_t{1} << n, Dyadic());
      std::size_t slack = 0;
      for (std::size_t t = 0; t < eta[n - 1].size(); ++t) {
        const Dyadic& parent = eta[n - 1][t];
        const std::size_t lo = 2 * t;
        const std::size_t small = nu[n][lo + 1] < nu[n][lo] ? lo + 1 : lo;
        const std::size_t other = small == lo ? lo + 1 : lo;
        // The smaller child is saturated with the parent's sign (zero counts as positive).
        eta[n][small] = parent.sign() < 0 ? -nu[n][small] : nu[n][small];
        eta[n][other] = parent - eta[n][small];
        slack += static_cast<std::size_t>(abs(eta[n][other]) != nu[n][other]);
      }
      rec.max_slack_strings = std::max(rec.max_slack_strings, slack);
    }
    const std::size_t width = std::size_t{1} << (next - ell);
    for (std::size_t i = 0; i < (std::size_t{1} << ell); ++i) {
      Dyadic mass;
      for (std::size_t j = i * width; j < (i + 1) * width; ++j) mass += abs(eta[next][j]);
      rec.discrepancy = max(rec.discrepancy, abs(mass - nu[ell][i]));
    }
    rec.bound = Dyadic::pow2(-static_cast<std::int64_t>(s)) + atoms.scaled(static_cast<std::int64_t>(ell));
    result.stages.push_back(std::move(rec));
    ell = next;
  }
  result.eta = FiniteSignedMeasure(big_d, std::move(eta[big_d]));
  result.g = cdf(result.eta);
  return result;
}

FiniteSignedMeasure amd_to_jd_solution(const BvSample& g, const BvSample& h) {
  if (auto k = g.first_descent()) fail(ErrorCode::NotMonotone, "g decreases after grid point " + std::to_string(*k));
  if (auto k = h.first_descent()) fail(ErrorCode::NotMonotone, "h decreases after grid point " + std::to_string(*k));
  return mu_from_bv(g) + mu_from_bv(h);
}

bool looks_dnc2(const BitString& sigma, const ToyJumpTable& j, std::uint32_t s) {
  for (const auto& [e, entry] : j.entries()) {
    if (e >= s || e >= sigma.size()) break;
    if (entry.stage <= s && entry.value <= 1 && sigma[e] == (entry.value == 1)) return false;
  }
  return true;
}

std::optional<BitString> looks_dnc2_string(const ToyJumpTable& j, std::uint32_t s) {
  if (s > BitString::kMaxLength) fail(ErrorCode::InvalidArgument, "stage beyond string length limit");
  // Every unconstrained bit is 0, and each constrained bit is forced; only a value
  // outside {0, 1} leaves a position free, so the least string always exists.
  BitString sigma = BitString::repeat(false, s);
  for (const auto& [e, entry] : j.entries()) {
    if (e >= s) break;
    if (entry.stage <= s && entry.value == 0) sigma = sigma.with_bit(e, true);
  }
  if (!looks_dnc2(sigma, j, s)) return std::nullopt;
  return sigma;
}

PaMartingale pa_martingale_build(const std::vector<CeEvent>& w, const ToyJumpTable& j, std::size_t depth) {
  std::vector<CeEvent> events = w;
  std::stable_sort(events.begin(), events.end(), [](const CeEvent& a, const CeEvent& b) {
    return a.stage != b.stage ? a.stage < b.stage : a.index < b.index;
  });
  std::vector<Dyadic> leaves(std::size_t{1} << depth);
  PaMartingale out;
  Dyadic root;
  for (const auto& ev : events) {
    if (ev.stage > depth) {
      fail(ErrorCode::InvalidArgument, "event (" + std::to_string(ev.index) + ", " + std::to_string(ev.stage) +
                                           ") beyond depth " + std::to_string(depth));
    }
    auto sigma = looks_dnc2_string(j, ev.stage);
    if (!sigma) fail(ErrorCode::NoDnc2String, "stage " + std::to_string(ev.stage));
    // Below sigma every string gains 2^{|sigma| - n}; averaging gives 2^{|tau| - n} on its prefixes.
    const Dyadic gain = Dyadic::pow2(static_cast<std::int64_t>(ev.stage) - static_cast<std::int64_t>(ev.index));
    const std::size_t width = std::size_t{1} << (depth - ev.stage);
    const std::size_t first = static_cast<std::size_t>(sigma->value()) * width;
    for (std::size_t i = first; i < first + width; ++i) leaves[i] += gain;
    root += Dyadic::pow2(-static_cast<std::int64_t>(ev.index));
    out.trace.push_back({ev, *sigma, root});
  }
  out.martingale = FiniteMartingale::from_leaves(depth, std::move(leaves));
  return out;
}

std::optional<BitString> pa_decode_atom(const FiniteMartingale& n, const Dyadic& threshold) {
  for (std::size_t len = n.depth() + 1; len-- > 0;) {
    const auto& lv = n.level(len);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv[i].scaled(-static_cast<std::int64_t>(len)) >= threshold) return BitString(i, len);
    }
  }
  return std::nullopt;
}

std::uint32_t pa_decode_settling(const FiniteMartingale& n, const ToyJumpTable& j, std::uint32_t index) {
  for (std::uint32_t s = 1; s <= n.depth(); ++s) {
    const Dyadic cap = Dyadic::pow2(static_cast<std::int64_t>(s) - static_cast<std::int64_t>(index));
    const auto& lv = n.level(s);
    bool ok = true;
    for (std::size_t i = 0; i < lv.size() && ok; ++i) {
      if (lv[i] >= cap && looks_dnc2(BitString(i, s), j, s)) ok = false;
    }
    if (ok) return s;
  }
  fail(ErrorCode::DepthExhausted, "no settling stage for index " + std::to_string(index) + " up to depth " +
                                      std::to_string(n.depth()));
}

}  // namespace cantor
