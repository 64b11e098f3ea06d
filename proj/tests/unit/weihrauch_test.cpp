#include <gtest/gtest.h>

#include <functional>

#include "cantor/error.hpp"
#include "cantor/weihrauch.hpp"
#include "support/generators.hpp"

using namespace cantor;
using cantor::testing::Rng;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // no error
}

BvSample abs_half(std::size_t depth) {
  std::vector<Dyadic> v;
  for (std::size_t k = 0; k <= (std::size_t{1} << depth); ++k) {
    v.push_back(abs(Dyadic(static_cast<std::int64_t>(k), static_cast<std::uint32_t>(depth)) - Dyadic(1, 1)));
  }
  return BvSample(depth, v);
}

BvSample monotone(Rng& rng, std::size_t depth) {
  std::vector<Dyadic> v{rng.dyadic()};
  for (std::size_t k = 1; k <= (std::size_t{1} << depth); ++k) v.push_back(v.back() + rng.nonneg_dyadic(8, 4));
  return BvSample(depth, v);
}

// Leaves with no single one heavier than 2^-cap_exp of the total, so the Freer schedule fits.
FiniteSignedMeasure spread_measure(Rng& rng, std::size_t depth) {
  std::vector<Dyadic> leaves(std::size_t{1} << depth);
  for (auto& x : leaves) x = Dyadic(static_cast<std::int64_t>(1 + rng.below(3)), static_cast<std::uint32_t>(depth + 2));
  return FiniteSignedMeasure(depth, leaves);
}

LscPresentation random_presentation(Rng& rng, std::size_t depth, std::size_t stages) {
  std::vector<FiniteSignedMeasure> st{spread_measure(rng, depth).scaled(Dyadic(1, 2))};
  for (std::size_t s = 1; s < stages; ++s) {
    std::vector<Dyadic> leaves = st.back().leaves();
    for (auto& x : leaves) x += Dyadic(static_cast<std::int64_t>(rng.below(2)), static_cast<std::uint32_t>(depth + 3));
    st.emplace_back(depth, leaves);
  }
  return LscPresentation(st);
}

}  // namespace

TEST(PjdInstance, Examples) {
  Rng rng(30);
  const BvSample m = monotone(rng, 4);
  const auto inst = pjd_to_amd_instance(m);
  for (const auto& st : inst.stages()) EXPECT_EQ(st, mu_from_bv(m));
  EXPECT_EQ(lsc_limit(pjd_to_amd_instance(abs_half(3))).total(), Dyadic(1));
  const BvSample c(2, std::vector<Dyadic>(5, Dyadic(3)));
  EXPECT_EQ(lsc_limit(pjd_to_amd_instance(c)), FiniteSignedMeasure::zero(2));
}

TEST(PjdInstance, StagesCarryLevelVariation) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = rng.below(7);
    const BvSample f = rng.bv(d);
    const auto inst = pjd_to_amd_instance(f);
    const auto mu = mu_from_bv(f);
    ASSERT_EQ(inst.size(), d + 1);
    ASSERT_EQ(lsc_limit(inst), variation_measure(mu));
    for (std::size_t l = 0; l <= d; ++l) {
      for (const auto& s : strings_of_length(l)) ASSERT_EQ(inst.stages()[l].value(s), abs(mu.value(s)));
    }
  }
}

TEST(PjdSolution, Examples) {
  const BvSample f = abs_half(3);
  const auto nu = lsc_limit(pjd_to_amd_instance(f));
  EXPECT_EQ(pjd_to_amd_solution(nu, f), variation_function(f));
  const BvSample g = pjd_to_amd_solution(nu + FiniteSignedMeasure::lebesgue(3), f);
  EXPECT_EQ(g, variation_function(f) + BvSample::identity(3));
  EXPECT_TRUE(is_jordan_solution(f, g, g - f));
  std::vector<Dyadic> short_leaf = nu.leaves();
  short_leaf[5] -= Dyadic(1, 4);
  EXPECT_EQ(code_of([&] { pjd_to_amd_solution(FiniteSignedMeasure(3, short_leaf), f); }), ErrorCode::NotDominating);
}

// Any nu above the instance's limit gives a Jordan solution.
TEST(PjdSolution, PipelineSoundness) {
  Rng rng(32);
  for (std::size_t d = 0; d <= 10; ++d) {
    for (int i = 0; i < 20; ++i) {
      const BvSample f = rng.bv(d);
      FiniteSignedMeasure nu = lsc_limit(pjd_to_amd_instance(f));
      if (rng.coin()) nu = nu + rng.measure(d, true);
      const BvSample g = pjd_to_amd_solution(nu, f);
      ASSERT_TRUE(is_jordan_solution(f, g, g - f));
    }
  }
}

TEST(Freer, LebesgueSingleStageIsExact) {
  for (std::size_t d = 0; d <= 8; ++d) {
    const auto leb = FiniteSignedMeasure::lebesgue(d);
    const auto res = freer_construct(LscPresentation({leb}), d);
    for (const auto& x : res.eta.leaves()) ASSERT_EQ(abs(x), Dyadic::pow2(-static_cast<std::int64_t>(d)));
    ASSERT_EQ(variation_measure(mu_from_bv(res.g)), leb);
    ASSERT_EQ(res.stages.size(), 1U);
    ASSERT_EQ(res.stages[0].discrepancy, Dyadic());
  }
}

TEST(Freer, ZeroGivesZero) {
  const auto res = freer_construct(LscPresentation({FiniteSignedMeasure::zero(4), FiniteSignedMeasure::zero(4)}), 5);
  EXPECT_EQ(res.g, BvSample::zero(5));
}

TEST(Freer, StagedLebesgueFractions) {
  constexpr std::size_t kD = 8;
  std::vector<FiniteSignedMeasure> st;
  for (int s = 0; s < 5; ++s) st.push_back(FiniteSignedMeasure::lebesgue(kD).scaled(Dyadic(1) - Dyadic::pow2(-s)));
  const auto res = freer_construct(LscPresentation(st), kD);
  ASSERT_EQ(res.stages.size(), 5U);
  for (const auto& r : res.stages) EXPECT_LE(r.discrepancy, r.bound) << "stage " << r.stage;
  EXPECT_TRUE(dominates(st.back(), variation_measure(res.eta)));
}

TEST(Freer, DepthExhausted) {
  const auto leb = FiniteSignedMeasure::lebesgue(3);
  EXPECT_EQ(code_of([&] { freer_construct(LscPresentation(std::vector<FiniteSignedMeasure>(6, leb)), 3); }),
            ErrorCode::DepthExhausted);
  EXPECT_NO_THROW(freer_construct(LscPresentation(std::vector<FiniteSignedMeasure>(6, leb)), 5));
}

TEST(Freer, InvariantsOnRandomPresentations) {
  Rng rng(33);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 2 + rng.below(5);
    const auto inst = random_presentation(rng, d, 1 + rng.below(4));
    const std::size_t target = d + rng.below(3);
    FreerResult res;
    try {
      res = freer_construct(inst, target);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::DepthExhausted);
      continue;
    }
    const auto final_nu = inst.stages().back().refine(target);
    ASSERT_TRUE(dominates(final_nu, variation_measure(res.eta)));
    ASSERT_EQ(mu_from_bv(res.g), res.eta);
    std::size_t prev_end = 0;
    for (const auto& r : res.stages) {
      ASSERT_EQ(r.level_begin, prev_end);
      prev_end = r.level_end;
      ASSERT_LE(r.discrepancy, r.bound);
      ASSERT_LE(r.max_slack_strings, std::size_t{1} << r.level_begin);
    }
    ASSERT_EQ(prev_end, target);
    // Reverse direction: any Jordan pair of g covers V_{mu^g}.
    const auto [g1, h1] = jordan_canonical(res.g);
    ASSERT_TRUE(dominates(amd_to_jd_solution(g1, h1), variation_measure(res.eta)));
  }
}

TEST(AmdToJd, Examples) {
  Rng rng(34);
  const BvSample f = rng.bv(4);
  const auto [g, h] = jordan_canonical(f);
  const auto sum = amd_to_jd_solution(g, h);
  EXPECT_EQ(sum, mu_from_bv(g) + mu_from_bv(h));
  EXPECT_TRUE(dominates(sum, mu_from_bv(g)));
  EXPECT_EQ(amd_to_jd_solution(BvSample::zero(3), BvSample::zero(3)), FiniteSignedMeasure::zero(3));
  EXPECT_EQ(code_of([&] { amd_to_jd_solution(f, f); }), ErrorCode::NotMonotone);
}

TEST(LooksDnc2, OnlyBinaryConvergedEntriesConstrain) {
  ToyJumpTable j;
  j.set(0, 0, 1);
  j.set(1, 5, 1);  // not in {0,1}: ignored
  j.set(2, 1, 4);  // converges late
  EXPECT_EQ(*looks_dnc2_string(j, 3), bs("100"));
  EXPECT_TRUE(looks_dnc2(bs("101"), j, 3));
  EXPECT_FALSE(looks_dnc2(bs("001"), j, 3));
  EXPECT_EQ(*looks_dnc2_string(j, 4), bs("1000"));
}

TEST(PaMartingale, Examples) {
  ToyJumpTable empty;
  const auto none = pa_martingale_build({}, empty, 4);
  EXPECT_EQ(none.martingale, FiniteMartingale::constant(4, Dyadic()));
  const auto one = pa_martingale_build({{1, 2}}, empty, 4);
  ASSERT_EQ(one.trace.size(), 1U);
  EXPECT_EQ(one.trace[0].target, bs("00"));
  EXPECT_EQ(one.martingale(bs("00")), Dyadic(2));
  EXPECT_EQ(one.martingale(BitString()), Dyadic(1, 1));
  EXPECT_EQ(one.martingale(bs("01")), Dyadic());
}

TEST(PaMartingale, ConservesCapitalAndStaysFair) {
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    ToyJumpTable j;
    for (std::uint32_t e = 0; e < 6; ++e) {
      if (rng.coin()) j.set(e, static_cast<std::uint32_t>(rng.below(3)), static_cast<std::uint32_t>(1 + rng.below(6)));
    }
    std::vector<CeEvent> w;
    Dyadic expected;
    for (std::uint32_t n = 0; n < 6; ++n) {
      if (rng.coin()) {
        w.push_back({n, static_cast<std::uint32_t>(1 + rng.below(6))});
        expected += Dyadic::pow2(-static_cast<std::int64_t>(n));
      }
    }
    // Stacked capital on one path can need up to n + 7 levels before it settles.
    const auto built = pa_martingale_build(w, j, 13);
    const auto& m = built.martingale;
    ASSERT_EQ(m(BitString()), expected);
    for (std::size_t n = 0; n < m.depth(); ++n) {
      for (const auto& s : strings_of_length(n)) ASSERT_EQ(m(s) * Dyadic(2), m(s.child(false)) + m(s.child(true)));
    }
    for (const auto& t : built.trace) ASSERT_TRUE(looks_dnc2(t.target, j, t.event.stage));
    for (const auto& ev : w) {
      const std::uint32_t s = pa_decode_settling(m, j, ev.index);
      ASSERT_GE(s, ev.stage) << "index " << ev.index;
    }
  }
}

TEST(PaDecodeAtom, Examples) {
  const auto point = martingale_from_measure(FiniteSignedMeasure::point_mass(bs("0110"), Dyadic(1)));
  EXPECT_EQ(pa_decode_atom(point, Dyadic(1)), bs("0110"));
  EXPECT_FALSE(pa_decode_atom(FiniteMartingale::constant(4, Dyadic(1)), Dyadic(3, 1)).has_value());
  const auto one = pa_martingale_build({{1, 2}}, ToyJumpTable(), 5);
  EXPECT_EQ(pa_decode_atom(one.martingale, Dyadic(1, 1)), one.trace[0].target);
}

TEST(PaDecodeSettling, Examples) {
  ToyJumpTable empty;
  const auto one = pa_martingale_build({{1, 2}}, empty, 5);
  EXPECT_GT(pa_decode_settling(one.martingale, empty, 1), 2U);
  EXPECT_EQ(pa_decode_settling(FiniteMartingale::constant(4, Dyadic()), empty, 1), 1U);
  // Majorising the built martingale keeps the bound.
  const auto bigger = FiniteMartingale::from_leaves(
      5, [&] {
        std::vector<Dyadic> leaves = one.martingale.level(5);
        for (auto& x : leaves) x += Dyadic(1, 3);
        return leaves;
      }());
  EXPECT_GE(pa_decode_settling(bigger, empty, 1), 2U);
}
