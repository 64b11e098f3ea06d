#include "cantor/measures.hpp"

#include <algorithm>

#include "cantor/bv.hpp"
#include "cantor/error.hpp"

namespace cantor {

namespace {

constexpr std::size_t kMaxMeasureDepth = 24;

void check_depth(std::size_t depth) {
  if (depth > kMaxMeasureDepth) {
    fail(ErrorCode::InvalidArgument, "measure depth " + std::to_string(depth) + " exceeds " +
                                         std::to_string(kMaxMeasureDepth));
  }
}

void same_depth(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b) {
  if (a.depth() != b.depth()) {
    fail(ErrorCode::GridMismatch,
         "depths " + std::to_string(a.depth()) + " and " + std::to_string(b.depth()));
  }
}

}  // namespace

FiniteSignedMeasure::FiniteSignedMeasure(std::size_t depth, std::vector<Dyadic> leaves)
    : depth_(depth), leaves_(std::move(leaves)) {
  check_depth(depth);
  if (leaves_.size() != (std::size_t{1} << depth)) {
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(std::size_t{1} << depth) + " leaves, got " +
                                         std::to_string(leaves_.size()));
  }
}

FiniteSignedMeasure FiniteSignedMeasure::zero(std::size_t depth) {
  check_depth(depth);
  return FiniteSignedMeasure(depth, std::vector<Dyadic>(std::size_t{1} << depth));
}

FiniteSignedMeasure FiniteSignedMeasure::lebesgue(std::size_t depth) {
  check_depth(depth);
  return FiniteSignedMeasure(depth, std::vector<Dyadic>(std::size_t{1} << depth, Dyadic::pow2(-static_cast<std::int64_t>(depth))));
}

FiniteSignedMeasure FiniteSignedMeasure::point_mass(const BitString& at, const Dyadic& mass) {
  FiniteSignedMeasure mu = zero(at.size());
  mu.leaves_[at.value()] = mass;
  return mu;
}

Dyadic FiniteSignedMeasure::value(const BitString& sigma) const {
  if (sigma.size() > depth_) {
    // Below the leaf depth mass is spread evenly.
    const BitString leaf = sigma.prefix(depth_);
    return leaves_[leaf.value()].scaled(-static_cast<std::int64_t>(sigma.size() - depth_));
  }
  const std::size_t shift = depth_ - sigma.size();
  const std::size_t first = static_cast<std::size_t>(sigma.value()) << shift;
  Dyadic sum;
  for (std::size_t i = 0; i < (std::size_t{1} << shift); ++i) sum += leaves_[first + i];
  return sum;
}

std::vector<Dyadic> FiniteSignedMeasure::level(std::size_t lvl) const {
  if (lvl > depth_) fail(ErrorCode::InvalidArgument, "level beyond measure depth");
  std::vector<Dyadic> cur = leaves_;
  for (std::size_t d = depth_; d > lvl; --d) {
    std::vector<Dyadic> up(cur.size() / 2);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = cur[2 * i] + cur[2 * i + 1];
    cur = std::move(up);
  }
  return cur;
}

Dyadic FiniteSignedMeasure::total() const { return level(0).front(); }

bool FiniteSignedMeasure::is_nonnegative() const {
  return std::none_of(leaves_.begin(), leaves_.end(), [](const Dyadic& x) { return x.sign() < 0; });
}

FiniteSignedMeasure FiniteSignedMeasure::refine(std::size_t depth) const {
  if (depth < depth_) fail(ErrorCode::InvalidArgument, "refine to a coarser depth");
  check_depth(depth);
  const std::size_t shift = depth - depth_;
  std::vector<Dyadic> out;
  out.reserve(std::size_t{1} << depth);
  for (const auto& leaf : leaves_) {
    const Dyadic part = leaf.scaled(-static_cast<std::int64_t>(shift));
    for (std::size_t i = 0; i < (std::size_t{1} << shift); ++i) out.push_back(part);
  }
  return FiniteSignedMeasure(depth, std::move(out));
}

FiniteSignedMeasure FiniteSignedMeasure::operator-() const {
  FiniteSignedMeasure out = *this;
  for (auto& x : out.leaves_) x = -x;
  return out;
}

FiniteSignedMeasure operator+(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b) {
  same_depth(a, b);
  FiniteSignedMeasure out = a;
  for (std::size_t i = 0; i < out.leaves_.size(); ++i) out.leaves_[i] += b.leaves_[i];
  return out;
}

FiniteSignedMeasure operator-(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b) {
  same_depth(a, b);
  FiniteSignedMeasure out = a;
  for (std::size_t i = 0; i < out.leaves_.size(); ++i) out.leaves_[i] -= b.leaves_[i];
  return out;
}

FiniteSignedMeasure FiniteSignedMeasure::scaled(const Dyadic& factor) const {
  FiniteSignedMeasure out = *this;
  for (auto& x : out.leaves_) x *= factor;
  return out;
}

std::optional<BitString> first_domination_failure(const FiniteSignedMeasure& upper, const FiniteSignedMeasure& lower) {
  same_depth(upper, lower);
  for (std::size_t lvl = 0; lvl <= upper.depth(); ++lvl) {
    const auto u = upper.level(lvl);
    const auto l = lower.level(lvl);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] < l[i]) return BitString(i, lvl);
    }
  }
  return std::nullopt;
}

FiniteMartingale FiniteMartingale::from_leaves(std::size_t depth, std::vector<Dyadic> leaf_capital) {
  check_depth(depth);
  if (leaf_capital.size() != (std::size_t{1} << depth)) {
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(std::size_t{1} << depth) + " leaf capitals");
  }
  for (std::size_t i = 0; i < leaf_capital.size(); ++i) {
    if (leaf_capital[i].sign() < 0) fail(ErrorCode::NegativeMeasure, "capital at " + BitString(i, depth).token());
  }
  FiniteMartingale m;
  m.levels_.assign(depth + 1, {});
  m.levels_[depth] = std::move(leaf_capital);
  for (std::size_t d = depth; d > 0; --d) {
    const auto& below = m.levels_[d];
    auto& up = m.levels_[d - 1];
    up.resize(below.size() / 2);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = (below[2 * i] + below[2 * i + 1]).scaled(-1);
  }
  return m;
}

FiniteMartingale FiniteMartingale::from_levels(std::vector<std::vector<Dyadic>> levels) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "martingale needs at least the root");
  check_depth(levels.size() - 1);
  for (std::size_t d = 0; d < levels.size(); ++d) {
    if (levels[d].size() != (std::size_t{1} << d)) {
      fail(ErrorCode::InvalidArgument, "level " + std::to_string(d) + " has wrong size");
    }
    for (std::size_t i = 0; i < levels[d].size(); ++i) {
      if (levels[d][i].sign() < 0) fail(ErrorCode::NegativeMeasure, "capital at " + BitString(i, d).token());
      if (d + 1 < levels.size() && (levels[d + 1][2 * i] + levels[d + 1][2 * i + 1]).scaled(-1) != levels[d][i]) {
        fail(ErrorCode::NotFair, "at " + BitString(i, d).token());
      }
    }
  }
  FiniteMartingale m;
  m.levels_ = std::move(levels);
  return m;
}

FiniteMartingale FiniteMartingale::constant(std::size_t depth, const Dyadic& capital) {
  check_depth(depth);
  return from_leaves(depth, std::vector<Dyadic>(std::size_t{1} << depth, capital));
}

const Dyadic& FiniteMartingale::operator()(const BitString& sigma) const {
  if (sigma.size() > depth()) fail(ErrorCode::InvalidArgument, "string beyond martingale depth");
  return levels_[sigma.size()][sigma.value()];
}

FiniteSignedMeasure measure_from_martingale(const FiniteMartingale& m) {
  std::vector<Dyadic> leaves = m.level(m.depth());
  for (auto& x : leaves) x = x.scaled(-static_cast<std::int64_t>(m.depth()));
  return FiniteSignedMeasure(m.depth(), std::move(leaves));
}

FiniteMartingale martingale_from_measure(const FiniteSignedMeasure& mu) {
  std::vector<Dyadic> cap = mu.leaves();
  for (std::size_t i = 0; i < cap.size(); ++i) {
    if (cap[i].sign() < 0) fail(ErrorCode::NegativeMeasure, "leaf " + BitString(i, mu.depth()).token());
    cap[i] = cap[i].scaled(static_cast<std::int64_t>(mu.depth()));
  }
  return FiniteMartingale::from_leaves(mu.depth(), std::move(cap));
}

FiniteSignedMeasure variation_measure(const FiniteSignedMeasure& mu) {
  std::vector<Dyadic> leaves = mu.leaves();
  for (auto& x : leaves) x = abs(x);
  return FiniteSignedMeasure(mu.depth(), std::move(leaves));
}

BvSample cdf(const FiniteSignedMeasure& mu) {
  std::vector<Dyadic> values;
  values.reserve(mu.leaves().size() + 1);
  Dyadic acc;
  values.push_back(acc);
  for (const auto& leaf : mu.leaves()) {
    acc += leaf;
    values.push_back(acc);
  }
  return BvSample(mu.depth(), std::move(values));
}

Dyadic atom_bound(const FiniteSignedMeasure& mu) {
  Dyadic best;
  for (std::size_t i = 0; i < mu.leaves().size(); ++i) {
    const Dyadic& x = mu.leaves()[i];
    if (x.sign() < 0) fail(ErrorCode::NegativeMeasure, "leaf " + BitString(i, mu.depth()).token());
    if (best < x) best = x;
  }
  return best;
}

LscPresentation::LscPresentation(std::vector<FiniteSignedMeasure> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) fail(ErrorCode::InvalidArgument, "presentation has no stages");
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    same_depth(stages_.front(), stages_[s]);
    const auto& leaves = stages_[s].leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].sign() < 0) {
        fail(ErrorCode::NegativeMeasure, "stage " + std::to_string(s) + " leaf " + BitString(i, depth()).token());
      }
    }
    if (s > 0) {
      if (auto w = first_domination_failure(stages_[s], stages_[s - 1])) {
        fail(ErrorCode::NotMonotone, "stage " + std::to_string(s) + " at " + w->token());
      }
    }
  }
}

FiniteSignedMeasure lsc_limit(const LscPresentation& p) { return p.stages().back(); }

}  // namespace cantor
