#pragma once

// Hand-rolled generators for the property tests. Every test draws from an
// Rng seeded by CANTOR_METER_SEED when set, otherwise from a fixed default,
// so a failing seed can be replayed.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/bv.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/kolmogorov.hpp"
#include "cantor/measures.hpp"

namespace cantor::testing {

inline std::uint64_t sweep_seed(std::uint64_t fallback = 20260214) {
  const char* raw = std::getenv("CANTOR_METER_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  return std::strtoull(raw, nullptr, 0);
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : eng_(sweep_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_); }
  bool coin() { return below(2) == 1; }
  std::mt19937_64& engine() { return eng_; }

  Dyadic dyadic(std::int64_t mag = 64, std::uint32_t max_exp = 8) {
    return Dyadic(range(-mag, mag), static_cast<std::uint32_t>(below(max_exp + 1)));
  }
  Dyadic nonneg_dyadic(std::int64_t mag = 64, std::uint32_t max_exp = 8) {
    return Dyadic(range(0, mag), static_cast<std::uint32_t>(below(max_exp + 1)));
  }
  // Occasionally huge, to push through the big-integer path.
  Dyadic wide_dyadic() {
    if (below(4) != 0) return dyadic(1LL << 40, 40);
    Dyadic x = dyadic(1LL << 62, 60);
    return x * Dyadic::pow2(static_cast<std::int64_t>(below(120)));
  }

  BitString bits(std::size_t len) {
    return len == 0 ? BitString() : BitString(len == 64 ? eng_() : eng_() & ((1ULL << len) - 1), len);
  }
  BitString bits_upto(std::size_t max_len) { return bits(below(max_len + 1)); }

  FiniteSignedMeasure measure(std::size_t depth, bool nonneg = false) {
    std::vector<Dyadic> leaves(std::size_t{1} << depth);
    for (auto& x : leaves) x = nonneg ? nonneg_dyadic() : dyadic();
    return FiniteSignedMeasure(depth, std::move(leaves));
  }

  BvSample bv(std::size_t depth) {
    std::vector<Dyadic> v((std::size_t{1} << depth) + 1);
    for (auto& x : v) x = dyadic(256, 8);
    return BvSample(depth, std::move(v));
  }

  // Prefix-free set of programs: leaves of a random binary tree cut at max_len.
  std::vector<BitString> prefix_free(std::size_t max_len, double stop = 0.45) {
    std::vector<BitString> out;
    std::vector<BitString> todo{BitString()};
    while (!todo.empty()) {
      BitString s = todo.back();
      todo.pop_back();
      const bool stop_here = s.size() == max_len || (s.size() > 0 && std::uniform_real_distribution<>(0, 1)(eng_) < stop);
      if (stop_here) {
        if (coin() || s.size() == max_len) out.push_back(s);
        continue;
      }
      todo.push_back(s.child(false));
      todo.push_back(s.child(true));
    }
    return out;
  }

  Machine prefix_machine(std::size_t max_program = 5, std::size_t max_output = 4, std::uint32_t stages = 3) {
    std::vector<MachineEntry> e;
    for (const auto& p : prefix_free(max_program)) {
      if (p.empty()) continue;
      e.push_back({p, bits_upto(max_output), static_cast<std::uint32_t>(1 + below(stages))});
    }
    return Machine(MachineKind::Prefix, std::move(e));
  }

  Machine plain_machine(std::size_t entries, std::size_t max_program = 4, std::size_t max_output = 4,
                        std::uint32_t stages = 3) {
    std::set<BitString> programs;
    while (programs.size() < entries) programs.insert(bits_upto(max_program));
    std::vector<MachineEntry> e;
    for (const auto& p : programs) e.push_back({p, bits_upto(max_output), static_cast<std::uint32_t>(1 + below(stages))});
    return Machine(MachineKind::Plain, std::move(e));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cantor::testing
