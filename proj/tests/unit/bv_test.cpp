#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <queue>

#include "cantor/bv.hpp"
#include "cantor/clopen.hpp"
#include "cantor/error.hpp"
#include "support/generators.hpp"

using namespace cantor;
using cantor::testing::Rng;

namespace {

BvSample sample(std::size_t depth, std::vector<Dyadic> v) { return BvSample(depth, std::move(v)); }

BvSample abs_half(std::size_t depth) {
  std::vector<Dyadic> v;
  for (std::size_t k = 0; k <= (std::size_t{1} << depth); ++k) {
    v.push_back(abs(Dyadic(static_cast<std::int64_t>(k), static_cast<std::uint32_t>(depth)) - Dyadic(1, 1)));
  }
  return sample(depth, v);
}

Dyadic total_variation(const BvSample& f) {
  Dyadic t;
  for (std::size_t k = 0; k + 1 < f.points(); ++k) t += abs(f.at(k + 1) - f.at(k));
  return t;
}

// A random nondecreasing grid function starting at 0.
BvSample monotone_noise(Rng& rng, std::size_t depth) {
  std::vector<Dyadic> v{Dyadic()};
  for (std::size_t k = 1; k <= (std::size_t{1} << depth); ++k) v.push_back(v.back() + rng.nonneg_dyadic(8, 4));
  return sample(depth, v);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // "no error" sentinel for these tests
}

}  // namespace

TEST(VariationFunction, Examples) {
  const BvSample mono = sample(1, {Dyadic(3), Dyadic(4), Dyadic(9)});
  EXPECT_EQ(variation_function(mono), mono.plus_constant(Dyadic(-3)));
  EXPECT_EQ(variation_function(abs_half(1)).at(2), Dyadic(1));
  EXPECT_EQ(variation_function(sample(2, std::vector<Dyadic>(5, Dyadic(7)))), BvSample::zero(2));
}

TEST(VariationFunction, NondecreasingFromZero) {
  Rng rng(20);
  for (int i = 0; i < 200; ++i) {
    const BvSample f = rng.bv(rng.below(7));
    const BvSample v = variation_function(f);
    ASSERT_EQ(v.at(0), Dyadic());
    ASSERT_TRUE(v.is_nondecreasing());
    ASSERT_EQ(v.at(v.points() - 1), total_variation(f));
  }
}

TEST(JordanCanonical, Examples) {
  const auto [g, h] = jordan_canonical(abs_half(1));
  EXPECT_EQ(g, sample(1, {Dyadic(0), Dyadic(1, 1), Dyadic(1)}));
  // h climbs by 1 on the first half (slope 2) and stays flat after.
  EXPECT_EQ(h, sample(1, {Dyadic(-1, 1), Dyadic(1, 1), Dyadic(1, 1)}));
  const BvSample mono = sample(1, {Dyadic(3), Dyadic(4), Dyadic(9)});
  const auto [gm, hm] = jordan_canonical(mono);
  EXPECT_EQ(gm, mono.plus_constant(Dyadic(-3)));
  EXPECT_EQ(hm, BvSample::zero(1).plus_constant(Dyadic(-3)));
  const BvSample c = sample(1, std::vector<Dyadic>(3, Dyadic(5)));
  const auto [gc, hc] = jordan_canonical(c);
  EXPECT_EQ(gc, BvSample::zero(1));
  EXPECT_EQ(hc, BvSample::zero(1).plus_constant(Dyadic(-5)));
}

TEST(JordanSolution, Checks) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const BvSample f = rng.bv(1 + rng.below(6));
    const auto [g, h] = jordan_canonical(f);
    ASSERT_TRUE(is_jordan_solution(f, g, h));
    const Dyadic c = rng.nonneg_dyadic();
    ASSERT_TRUE(is_jordan_solution(f, g.plus_constant(c), h.plus_constant(c)));
  }
  const BvSample f = sample(1, {Dyadic(0), Dyadic(1), Dyadic(0)});
  const BvSample g = sample(1, {Dyadic(0), Dyadic(1), Dyadic(0)});
  const BvSample h = BvSample::zero(1);
  EXPECT_FALSE(is_jordan_solution(f, g, h));
  EXPECT_EQ(code_of([&] { is_jordan_solution(f, g, BvSample::zero(2)); }), ErrorCode::GridMismatch);
}

TEST(MuFromBv, Examples) {
  EXPECT_EQ(mu_from_bv(BvSample::identity(4)), FiniteSignedMeasure::lebesgue(4));
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = rng.below(7);
    const BvSample f = rng.bv(d);
    const auto mu = mu_from_bv(f);
    for (std::size_t n = 0; n <= d; ++n) {
      for (const auto& s : strings_of_length(n)) {
        const auto [l, r] = interval_endpoints(s);
        const auto idx = [&](const Dyadic& x) {
          return static_cast<std::size_t>(x.scaled(static_cast<std::int64_t>(d)).numerator().get_ui());
        };
        ASSERT_EQ(mu.value(s), f.at(idx(r)) - f.at(idx(l)));
      }
    }
    ASSERT_EQ(cdf(mu), f.plus_constant(-f.at(0)));
    ASSERT_TRUE(mu_from_bv(monotone_noise(rng, d)).is_nonnegative());
  }
}

// mu^{V_f} = V_{mu^f}.
TEST(BvIdentity, VariationCommutesWithMu) {
  Rng rng(23);
  for (std::size_t d = 0; d <= 8; ++d) {
    for (int i = 0; i < 60; ++i) {
      const BvSample f = rng.bv(d);
      ASSERT_EQ(mu_from_bv(variation_function(f)), variation_measure(mu_from_bv(f)));
    }
  }
}

// mu^g + mu^h dominates mu^{V_f} for perturbed Jordan solutions.
TEST(BvIdentity, PerturbedSolutionsDominate) {
  Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 1 + rng.below(6);
    const BvSample f = rng.bv(d);
    const auto [g0, h0] = jordan_canonical(f);
    const BvSample noise = monotone_noise(rng, d);
    const BvSample g = g0 + noise, h = h0 + noise;
    ASSERT_TRUE(is_jordan_solution(f, g, h));
    const auto sum = mu_from_bv(g) + mu_from_bv(h);
    ASSERT_TRUE(dominates(sum, mu_from_bv(variation_function(f))));
  }
}

TEST(Sawtooth, Layout) {
  EXPECT_EQ(sawtooth_point(0, 0), Dyadic(0));
  EXPECT_EQ(sawtooth_limit(0), Dyadic(1, 1));
  EXPECT_EQ(sawtooth_point(1, 0), Dyadic(1, 1));
  EXPECT_EQ(sawtooth_point(1, 1), Dyadic(5, 3));
  EXPECT_EQ(sawtooth_limit(1), Dyadic(3, 2));
  for (std::uint32_t n = 0; n < 6; ++n) {
    for (std::uint32_t k = 0; k < 8; ++k) {
      ASSERT_LT(sawtooth_point(n, k), sawtooth_point(n, k + 1));
      ASSERT_LT(sawtooth_point(n, k), sawtooth_limit(n));
    }
    ASSERT_EQ(sawtooth_limit(n), Dyadic(1) - Dyadic::pow2(-static_cast<std::int64_t>(n) - 1));
  }
}

TEST(Sawtooth, EncodeExamples) {
  EXPECT_EQ(sawtooth_encode(SawtoothInstance({}, 6)), BvSample::zero(6));
  const BvSample f = sawtooth_encode(SawtoothInstance({{2, 3}}, 12));
  EXPECT_EQ(total_variation(f), Dyadic(1, 1));
  Dyadic top;
  std::size_t peaks = 0;
  for (std::size_t k = 0; k < f.points(); ++k) {
    top = max(top, f.at(k));
    if (f.at(k) == Dyadic(1, 3)) ++peaks;
  }
  EXPECT_EQ(top, Dyadic(1, 3));
  EXPECT_EQ(peaks, 2U);
  const BvSample both = sawtooth_encode(SawtoothInstance({{2, 3}, {0, 1}}, 12));
  EXPECT_EQ(total_variation(both), Dyadic(1, 1) + Dyadic(2));
  EXPECT_EQ(code_of([] { sawtooth_encode(SawtoothInstance({{2, 3}}, 8)); }), ErrorCode::GridTooCoarse);
}

TEST(Sawtooth, VanishesOffTheEventIntervals) {
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    std::vector<SawtoothEvent> evs;
    for (std::uint32_t n = 0; n < 5; ++n) {
      if (rng.coin()) evs.push_back({n, static_cast<std::uint32_t>(rng.below(5))});
    }
    const SawtoothInstance inst(evs, 14);
    const BvSample f = sawtooth_encode(inst);
    for (std::size_t k = 0; k < f.points(); ++k) {
      if (f.at(k).is_zero()) continue;
      const Dyadic x(static_cast<std::int64_t>(k), 14);
      bool inside = false;
      for (const auto& e : evs) inside |= sawtooth_point(e.index, e.stage) < x && x < sawtooth_point(e.index, e.stage + 1);
      ASSERT_TRUE(inside) << k;
    }
  }
}

TEST(Sawtooth, DecodeRecoversMembership) {
  Rng rng(26);
  for (int i = 0; i < 60; ++i) {
    std::vector<SawtoothEvent> evs;
    for (std::uint32_t n = 0; n <= 5; ++n) {
      if (rng.coin()) evs.push_back({n, static_cast<std::uint32_t>(rng.below(6))});
    }
    const SawtoothInstance inst(evs, 14);
    const BvSample f = sawtooth_encode(inst);
    const BvSample g = variation_function(f);
    const BvSample drift = g + BvSample::identity(14);
    std::vector<Dyadic> slope;
    for (std::size_t k = 0; k < g.points(); ++k) slope.push_back(Dyadic(static_cast<std::int64_t>(k), 28));
    const BvSample tiny_drift = g + BvSample(14, slope);  // drift c = 2^-14
    for (std::uint32_t n = 0; n <= 6; ++n) {
      const bool truth = inst.stage_of(n).has_value();
      ASSERT_EQ(sawtooth_decode(g, n, inst), truth) << n;
      ASSERT_EQ(sawtooth_decode(drift, n, inst), truth) << n;
      ASSERT_EQ(sawtooth_decode(tiny_drift, n, inst), truth) << n;
    }
  }
}

TEST(Sawtooth, DecodeRejectsNonDominators) {
  const SawtoothInstance inst({{1, 1}}, 8);
  const BvSample f = sawtooth_encode(inst);
  EXPECT_EQ(code_of([&] { sawtooth_decode(f, 1, inst); }), ErrorCode::NotDominating);
  EXPECT_EQ(code_of([&] { sawtooth_decode(BvSample::zero(8), 1, inst); }), ErrorCode::NotDominating);
  EXPECT_FALSE(sawtooth_decode(variation_function(f), 0, inst));
}

namespace {

// Breadth-first Stern-Brocot oracle over (0, 1), built from mediants.
std::vector<mpq_class> stern_brocot_oracle(std::size_t count) {
  std::vector<mpq_class> out{mpq_class(0), mpq_class(1)};
  std::queue<std::pair<mpq_class, mpq_class>> todo;
  todo.push({mpq_class(0), mpq_class(1)});
  while (out.size() < count) {
    auto [l, r] = todo.front();
    todo.pop();
    mpq_class m(l.get_num() + r.get_num(), l.get_den() + r.get_den());
    m.canonicalize();
    out.push_back(m);
    todo.push({l, m});
    todo.push({m, r});
  }
  return out;
}

}  // namespace

TEST(Rebase, Enumerations) {
  const auto oracle = stern_brocot_oracle(200);
  for (std::size_t i = 0; i < oracle.size(); ++i) ASSERT_EQ(stern_brocot_rational(i), oracle[i]) << i;
  EXPECT_EQ(dyadic_enumeration(0), Dyadic(0));
  EXPECT_EQ(dyadic_enumeration(1), Dyadic(1));
  EXPECT_EQ(dyadic_enumeration(2), Dyadic(1, 1));
  EXPECT_EQ(dyadic_enumeration(3), Dyadic(1, 2));
  EXPECT_EQ(dyadic_enumeration(4), Dyadic(3, 2));
  EXPECT_EQ(dyadic_enumeration(5), Dyadic(1, 3));
}

TEST(Rebase, BackAndForthTables) {
  for (auto dir : {RebaseDirection::RationalToDyadic, RebaseDirection::DyadicToRational}) {
    const auto zero = rebase_rationals(dir, 0);
    ASSERT_EQ(zero.size(), 2U);
    EXPECT_EQ(zero[0].rational, 0);
    EXPECT_EQ(zero[0].dyadic, Dyadic(0));
    EXPECT_EQ(zero[1].rational, 1);
    EXPECT_EQ(zero[1].dyadic, Dyadic(1));
    std::vector<RebasePair> prev = zero;
    for (std::size_t s = 1; s <= 40; ++s) {
      const auto t = rebase_rationals(dir, s);
      ASSERT_EQ(t.size(), s + 2);
      std::map<mpq_class, Dyadic> forward;
      std::map<Dyadic, mpq_class> backward;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) {
          ASSERT_LT(t[i - 1].rational, t[i].rational);
          ASSERT_LT(t[i - 1].dyadic, t[i].dyadic);
        }
        forward.emplace(t[i].rational, t[i].dyadic);
        backward.emplace(t[i].dyadic, t[i].rational);
      }
      ASSERT_EQ(forward.size(), t.size());
      ASSERT_EQ(backward.size(), t.size());
      for (const auto& [q, d] : forward) ASSERT_EQ(backward.at(d), q);
      // Each stage extends the previous one.
      for (const auto& p : prev) ASSERT_EQ(forward.at(p.rational), p.dyadic);
      prev = t;
    }
    // After 2k steps the first k+2 rationals and dyadics are both matched.
    const auto t = rebase_rationals(dir, 40);
    std::map<mpq_class, Dyadic> forward;
    std::map<Dyadic, mpq_class> backward;
    for (const auto& p : t) {
      forward.emplace(p.rational, p.dyadic);
      backward.emplace(p.dyadic, p.rational);
    }
    for (std::size_t i = 0; i < 22; ++i) {
      ASSERT_TRUE(forward.count(stern_brocot_rational(i))) << i;
      ASSERT_TRUE(backward.count(dyadic_enumeration(i))) << i;
    }
  }
}
