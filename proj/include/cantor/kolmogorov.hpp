#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cantor/bitstring.hpp"
#include "cantor/dyadic.hpp"
#include "cantor/jump.hpp"

namespace cantor {

struct MachineEntry {
  BitString program;
  BitString output;
  std::uint32_t stage = 1;
  friend bool operator==(const MachineEntry&, const MachineEntry&) = default;
};

enum class MachineKind { Plain, Prefix };

/// Finite staged program table. Prefix machines additionally have a
/// prefix-free domain of weight at most 1.
class Machine {
 public:
  Machine() = default;
  /// InvalidArgument on a repeated program, a zero stage, or (prefix kind) a comparable
  /// pair of programs; WeightExceeded if the prefix domain weighs more than 1.
  Machine(MachineKind kind, std::vector<MachineEntry> entries);

  MachineKind kind() const noexcept { return kind_; }
  const std::vector<MachineEntry>& entries() const noexcept { return entries_; }
  /// sum of 2^-|p| over the domain.
  Dyadic domain_weight() const;
  std::optional<BitString> run(const BitString& program, std::uint32_t stage) const;

  friend bool operator==(const Machine&, const Machine&) = default;

 private:
  MachineKind kind_ = MachineKind::Plain;
  std::vector<MachineEntry> entries_;  // sorted by program
};

inline Machine plain_machine(std::vector<MachineEntry> e) { return Machine(MachineKind::Plain, std::move(e)); }
inline Machine prefix_machine(std::vector<MachineEntry> e) { return Machine(MachineKind::Prefix, std::move(e)); }

/// C_s(x) or K_s(x): the shortest program for x enumerated by stage s; nullopt is infinity.
std::optional<std::size_t> staged_complexity(const Machine& m, const BitString& x, std::uint32_t stage);

/// Finite injective map standing in for a compression function.
struct CompressionFunction {
  MachineKind kind = MachineKind::Plain;
  std::map<BitString, BitString> mapping;
};

struct Violation {
  BitString sigma;
  std::string reason;
};

/// First problem found: a kind mismatch, a repeated image, comparable images (prefix
/// kind), or some |F(sigma)| exceeding the staged complexity of sigma.
std::optional<Violation> verify_compression(const CompressionFunction& f, const Machine& m, std::uint32_t stage);

/// Plain compression of every string of length <= max_length: the shortest program
/// when there is one, otherwise the least unused string of length >= |sigma|.
CompressionFunction canonical_compression(const Machine& m, std::uint32_t stage, std::size_t max_length);

/// Prefix compression through Kraft-Chaitin: each sigma with finite K_s among the first
/// `cutoff` strings in length-lex order gets a code of length K_s(sigma).
CompressionFunction prefix_compression(const Machine& m, std::uint32_t stage, std::size_t cutoff);

struct KcRequest {
  std::size_t length = 0;
  BitString payload;
};

/// Prefix machine with one program of each requested length, allocated leftmost
/// first from the free block of greatest length <= the request. All programs get
/// stage 1. WeightExceeded names the first request pushing the sum past 1.
Machine kraft_chaitin(const std::vector<KcRequest>& requests);

/// Plain machine with the base embedded under the prefix 00, plus allocation of the
/// remaining (reserved) programs: those not starting with 00.
class UniversalEmbedding {
 public:
  explicit UniversalEmbedding(const Machine& base);

  /// Number of reserved programs of length n: 3 * 2^(n-2) for n >= 2.
  static std::uint64_t reserved_capacity(std::size_t n);

  /// Least free reserved program of length max_length, or failing that of the next
  /// shorter lengths, now printing `output`. ReservedExhausted if none is left.
  BitString allocate(std::size_t max_length, const BitString& output, std::uint32_t stage);

  Machine machine() const;
  const std::vector<MachineEntry>& reserved() const noexcept { return reserved_; }

 private:
  std::vector<MachineEntry> embedded_;
  std::vector<MachineEntry> reserved_;
  std::map<std::size_t, std::uint64_t> next_free_;  // per length, a cursor over reserved strings
};

inline Machine embed_universal(const Machine& base) { return UniversalEmbedding(base).machine(); }

/// Plants psi(sigma) = sigma ^ tau for every sigma of length n with J(n) = tau
/// (tau read as a c-bit string), each with a reserved program of length < n + c.
void plant_psi(UniversalEmbedding& u, const ToyJumpTable& j, std::uint32_t c, std::size_t max_index,
               std::uint32_t stage);

/// g(n) = last c bits of f(n + c), for every n with n + c <= max_length, where f(n) is the
/// length-lex least sigma of length n with |F(sigma)| >= n. Since F is a compression
/// function this gives C_s(f(n)) >= n, which is re-checked. NoIncompressible if f(n)
/// does not exist or fails the check.
std::vector<std::uint32_t> dnc_from_c_compression(const CompressionFunction& f, const Machine& m, std::uint32_t c,
                                                  std::uint32_t stage, std::size_t max_length);

/// A finite string tau with tau(n) <= n.
class IdBoundedString {
 public:
  IdBoundedString() = default;
  explicit IdBoundedString(std::vector<std::uint32_t> entries);

  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// sum of 2^-tau(n).
  Dyadic wt() const;

 private:
  std::vector<std::uint32_t> entries_;
};

/// entries(k) = min(K_s(sigma_k), k) for k < cutoff, sigma_k the k-th string in length-lex order.
IdBoundedString kstar(const Machine& m, std::uint32_t stage, std::size_t cutoff);

/// Finite prefix-closed set of id-bounded strings.
class IdTree {
 public:
  /// InvalidArgument if not prefix-closed or some entry exceeds its position.
  explicit IdTree(std::set<std::vector<std::uint32_t>> nodes);
  const std::set<std::vector<std::uint32_t>>& nodes() const noexcept { return nodes_; }
  std::size_t height() const noexcept;

 private:
  std::set<std::vector<std::uint32_t>> nodes_;
};

/// Least level n <= height(T) at which every node has weight > r; nullopt if none.
std::optional<std::size_t> compactness_search(const IdTree& t, const Dyadic& r);

/// f(e) != J(e) on every converged e in f's domain, and f(e) < k everywhere.
bool is_dnc(const std::vector<std::uint32_t>& f, const ToyJumpTable& j, std::uint32_t k);

}  // namespace cantor
