#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/bv.hpp"
#include "cantor/jump.hpp"
#include "cantor/measures.hpp"

namespace cantor {

using AmdInstance = LscPresentation;

/// Stage l (0 <= l <= depth) carries sum_{|tau| = l} |mu^f(tau)| on each cylinder of
/// length l, spread over leaves so the stages increase. The last stage is mu^{V_f}.
AmdInstance pjd_to_amd_instance(const BvSample& f);

/// g = cdf(nu) after checking that nu dominates mu^{V_f} (NotDominating with the cylinder).
BvSample pjd_to_amd_solution(const FiniteSignedMeasure& nu, const BvSample& f);

struct FreerStage {
  std::size_t stage = 0;
  std::size_t level_begin = 0;  // l_s
  std::size_t level_end = 0;    // l_{s+1}, or the target depth for the last stage
  /// sup over |sigma| = l_s of |sum_{tau >= sigma, |tau| = level_end} |eta(tau)| - nu_s(sigma)|.
  Dyadic discrepancy;
  /// 2^-s + 2^{l_s} * atom_bound(final stage at the target depth).
  Dyadic bound;
  /// Largest number of strings on one level in (level_begin, level_end] with |eta| != nu_s.
  std::size_t max_slack_strings = 0;
};

struct FreerResult {
  BvSample g;
  FiniteSignedMeasure eta;  // mu^g at the target depth
  std::vector<FreerStage> stages;
};

/// Builds eta with |eta| <= nu level by level, stage by stage, and returns g = f_eta.
/// The schedule is l_0 = 0 and l_{s+1} the least level >= l_s on which every
/// nu_{s+1} cylinder has mass <= 2^-(s+1). DepthExhausted if it passes target_depth.
FreerResult freer_construct(const AmdInstance& inst, std::size_t target_depth);

/// mu^g + mu^h; NotMonotone if g or h decreases somewhere.
FiniteSignedMeasure amd_to_jd_solution(const BvSample& g, const BvSample& h);

/// Lexicographically least length-s string that looks DNC_2 at stage s: sigma(e) != J_s(e)
/// for every e < s with J converged by s and value in {0, 1}.
std::optional<BitString> looks_dnc2_string(const ToyJumpTable& j, std::uint32_t s);
bool looks_dnc2(const BitString& sigma, const ToyJumpTable& j, std::uint32_t s);

struct PaTraceEntry {
  CeEvent event;
  BitString target;
  Dyadic root_capital_after;
};

struct PaMartingale {
  FiniteMartingale martingale;
  std::vector<PaTraceEntry> trace;
};

/// For each event (n, s), in stage order, adds 2^-n at the root and pushes it to the
/// chosen sigma. NoDnc2String if no length-s string qualifies.
PaMartingale pa_martingale_build(const std::vector<CeEvent>& w, const ToyJumpTable& j, std::size_t depth);

/// Heuristic atom detector: the deepest sigma (lexicographically least on ties)
/// with 2^-|sigma| N(sigma) >= threshold.
std::optional<BitString> pa_decode_atom(const FiniteMartingale& n, const Dyadic& threshold);

/// Least s >= 1 such that N(sigma) < 2^{s-n} for every length-s sigma that looks
/// DNC_2 at stage s. DepthExhausted if no s up to N's depth qualifies.
std::uint32_t pa_decode_settling(const FiniteMartingale& n, const ToyJumpTable& j, std::uint32_t index);

}  // namespace cantor
