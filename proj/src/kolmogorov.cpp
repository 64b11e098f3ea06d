#include "cantor/kolmogorov.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

Machine::Machine(MachineKind kind, std::vector<MachineEntry> entries) : kind_(kind), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const MachineEntry& a, const MachineEntry& b) { return a.program < b.program; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].stage == 0) fail(ErrorCode::InvalidArgument, "program " + entries_[i].program.token() + " has stage 0");
    if (i == 0) continue;
    const auto& prev = entries_[i - 1].program;
    const auto& cur = entries_[i].program;
    if (prev == cur) fail(ErrorCode::InvalidArgument, "program " + cur.token() + " listed twice");
    if (kind_ == MachineKind::Prefix && prev.is_prefix_of(cur)) {
      fail(ErrorCode::InvalidArgument, "domain not prefix-free: " + prev.token() + " and " + cur.token());
    }
  }
  if (kind_ == MachineKind::Prefix) {
    const Dyadic w = domain_weight();
    if (w > Dyadic(1)) fail(ErrorCode::WeightExceeded, "domain weight " + w.to_string());
  }
}

Dyadic Machine::domain_weight() const {
  std::vector<std::uint64_t> per_length(BitString::kMaxLength + 1, 0);
  for (const auto& e : entries_) ++per_length[e.program.size()];
  Dyadic total;
  for (std::size_t n = 0; n < per_length.size(); ++n) {
    if (per_length[n] != 0) total += Dyadic(static_cast<std::int64_t>(per_length[n]), static_cast<std::uint32_t>(n));
  }
  return total;
}

std::optional<BitString> Machine::run(const BitString& program, std::uint32_t stage) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), program,
                             [](const MachineEntry& e, const BitString& p) { return e.program < p; });
  if (it == entries_.end() || it->program != program || it->stage > stage) return std::nullopt;
  return it->output;
}

std::optional<std::size_t> staged_complexity(const Machine& m, const BitString& x, std::uint32_t stage) {
  std::optional<std::size_t> best;
  for (const auto& e : m.entries()) {
    if (e.stage <= stage && e.output == x && (!best || e.program.size() < *best)) best = e.program.size();
  }
  return best;
}

namespace {

std::string kind_name(MachineKind k) { return k == MachineKind::Plain ? "plain" : "prefix"; }

// Shortest program for each output enumerated by the stage; ties go to the lexicographically least.
std::map<BitString, BitString> shortest_programs(const Machine& m, std::uint32_t stage) {
  std::map<BitString, BitString> best;
  for (const auto& e : m.entries()) {
    if (e.stage > stage) continue;
    auto [it, fresh] = best.emplace(e.output, e.program);
    if (!fresh && length_lex_less(e.program, it->second)) it->second = e.program;
  }
  return best;
}

}  // namespace

std::optional<Violation> verify_compression(const CompressionFunction& f, const Machine& m, std::uint32_t stage) {
  if (f.kind != m.kind()) {
    fail(ErrorCode::InvalidArgument, kind_name(f.kind) + " compression checked against a " + kind_name(m.kind()) +
                                         " machine");
  }
  std::map<BitString, BitString> preimage;
  for (const auto& [sigma, image] : f.mapping) {
    auto [it, fresh] = preimage.emplace(image, sigma);
    if (!fresh) return Violation{sigma, "image " + image.token() + " already used by " + it->second.token()};
  }
  if (f.kind == MachineKind::Prefix) {
    for (auto it = preimage.begin(); it != preimage.end(); ++it) {
      auto nx = std::next(it);
      if (nx != preimage.end() && it->first.is_prefix_of(nx->first)) {
        return Violation{nx->second, "image " + nx->first.token() + " extends image " + it->first.token()};
      }
    }
  }
  const auto best = shortest_programs(m, stage);
  for (const auto& [sigma, image] : f.mapping) {
    auto it = best.find(sigma);
    if (it != best.end() && image.size() > it->second.size()) {
      return Violation{sigma, "|F| = " + std::to_string(image.size()) + " exceeds complexity " +
                                  std::to_string(it->second.size())};
    }
  }
  return std::nullopt;
}

CompressionFunction canonical_compression(const Machine& m, std::uint32_t stage, std::size_t max_length) {
  if (max_length >= 32) fail(ErrorCode::InvalidArgument, "max_length too large");
  const auto best = shortest_programs(m, stage);
  std::set<BitString> used;
  for (const auto& [out, prog] : best) {
    if (out.size() <= max_length) used.insert(prog);
  }
  CompressionFunction f;
  f.kind = MachineKind::Plain;
  std::uint64_t cursor = 0;
  for (std::uint64_t rank = 0; rank < (std::uint64_t{2} << max_length) - 1; ++rank) {
    const BitString sigma = BitString::from_length_lex_rank(rank);
    if (auto it = best.find(sigma); it != best.end()) {
      f.mapping.emplace(sigma, it->second);
      continue;
    }
    cursor = std::max(cursor, BitString::repeat(false, sigma.size()).length_lex_rank());
    while (used.count(BitString::from_length_lex_rank(cursor)) != 0) ++cursor;
    const BitString image = BitString::from_length_lex_rank(cursor++);
    used.insert(image);
    f.mapping.emplace(sigma, image);
  }
  return f;
}

CompressionFunction prefix_compression(const Machine& m, std::uint32_t stage, std::size_t cutoff) {
  const auto best = shortest_programs(m, stage);
  std::vector<KcRequest> requests;
  for (std::uint64_t k = 0; k < cutoff; ++k) {
    const BitString sigma = BitString::from_length_lex_rank(k);
    if (auto it = best.find(sigma); it != best.end()) requests.push_back({it->second.size(), sigma});
  }
  const Machine coded = kraft_chaitin(requests);
  CompressionFunction f;
  f.kind = MachineKind::Prefix;
  for (const auto& e : coded.entries()) f.mapping.emplace(e.output, e.program);
  return f;
}

Machine kraft_chaitin(const std::vector<KcRequest>& requests) {
  Dyadic sum;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].length > BitString::kMaxLength) {
      fail(ErrorCode::InvalidArgument, "request " + std::to_string(i) + " longer than 64 bits");
    }
    sum += Dyadic::pow2(-static_cast<std::int64_t>(requests[i].length));
    if (sum > Dyadic(1)) {
      fail(ErrorCode::WeightExceeded, "request " + std::to_string(i) + " brings the weight to " + sum.to_string());
    }
  }
  // Free blocks, at most one per length.
  std::map<std::size_t, BitString> free_blocks{{0, BitString()}};
  std::vector<MachineEntry> out;
  out.reserve(requests.size());
  for (const auto& req : requests) {
    auto it = free_blocks.upper_bound(req.length);
    if (it == free_blocks.begin()) fail(ErrorCode::WeightExceeded, "no free block for length " + std::to_string(req.length));
    --it;
    BitString block = it->second;
    free_blocks.erase(it);
    while (block.size() < req.length) {
      free_blocks.emplace(block.size() + 1, block.child(true));
      block = block.child(false);
    }
    out.push_back({block, req.payload, 1});
  }
  return Machine(MachineKind::Prefix, std::move(out));
}

UniversalEmbedding::UniversalEmbedding(const Machine& base) {
  const BitString tag = BitString::parse("00");
  for (const auto& e : base.entries()) embedded_.push_back({tag.concat(e.program), e.output, e.stage});
}

std::uint64_t UniversalEmbedding::reserved_capacity(std::size_t n) {
  if (n == 0) return 1;
  if (n == 1) return 2;
  return std::uint64_t{3} << (n - 2);
}

BitString UniversalEmbedding::allocate(std::size_t max_length, const BitString& output, std::uint32_t stage) {
  for (std::size_t len = max_length + 1; len-- > 0;) {
    if (len >= 63) continue;
    // Reserved strings of length >= 2 are those with value >= 2^(len-2).
    auto [it, fresh] = next_free_.emplace(len, len >= 2 ? std::uint64_t{1} << (len - 2) : 0);
    if (it->second < (std::uint64_t{1} << len)) {
      const BitString program(it->second++, len);
      reserved_.push_back({program, output, stage});
      return program;
    }
  }
  fail(ErrorCode::ReservedExhausted, "no reserved program of length <= " + std::to_string(max_length) + " for " +
                                         output.token());
}

Machine UniversalEmbedding::machine() const {
  std::vector<MachineEntry> all = embedded_;
  all.insert(all.end(), reserved_.begin(), reserved_.end());
  return Machine(MachineKind::Plain, std::move(all));
}

void plant_psi(UniversalEmbedding& u, const ToyJumpTable& j, std::uint32_t c, std::size_t max_index,
               std::uint32_t stage) {
  if (c == 0 || c > 16) fail(ErrorCode::InvalidArgument, "c must be in 1..16");
  for (const auto& [n, entry] : j.entries()) {
    if (n > max_index) break;
    if (entry.value >= (1U << c)) continue;
    const BitString tau(entry.value, c);
    for (const auto& sigma : strings_of_length(n)) u.allocate(n + c - 1, sigma.concat(tau), stage);
  }
}

std::vector<std::uint32_t> dnc_from_c_compression(const CompressionFunction& f, const Machine& m, std::uint32_t c,
                                                  std::uint32_t stage, std::size_t max_length) {
  if (c == 0 || c > 16) fail(ErrorCode::InvalidArgument, "c must be in 1..16");
  std::vector<std::uint32_t> g;
  for (std::size_t n = 0; n + c <= max_length; ++n) {
    const std::size_t len = n + c;
    std::optional<BitString> pick;
    for (const auto& sigma : strings_of_length(len)) {
      auto it = f.mapping.find(sigma);
      if (it != f.mapping.end() && it->second.size() >= len) {
        pick = sigma;
        break;
      }
    }
    if (!pick) fail(ErrorCode::NoIncompressible, "no sigma of length " + std::to_string(len) + " with |F(sigma)| >= " + std::to_string(len));
    const auto cs = staged_complexity(m, *pick, stage);
    if (cs && *cs < len) {
      fail(ErrorCode::NoIncompressible, pick->token() + " has complexity " + std::to_string(*cs) + " < " +
                                            std::to_string(len) + "; F is not a compression function");
    }
    g.push_back(static_cast<std::uint32_t>(pick->suffix_from(n).value()));
  }
  return g;
}

IdBoundedString::IdBoundedString(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {
  for (std::size_t n = 0; n < entries_.size(); ++n) {
    if (entries_[n] > n) {
      fail(ErrorCode::InvalidArgument, "entry " + std::to_string(n) + " is " + std::to_string(entries_[n]) + " > " +
                                           std::to_string(n));
    }
  }
}

Dyadic IdBoundedString::wt() const {
  Dyadic total;
  for (auto v : entries_) total += Dyadic::pow2(-static_cast<std::int64_t>(v));
  return total;
}

IdBoundedString kstar(const Machine& m, std::uint32_t stage, std::size_t cutoff) {
  const auto best = shortest_programs(m, stage);
  std::vector<std::uint32_t> entries(cutoff);
  for (std::uint64_t k = 0; k < cutoff; ++k) {
    entries[k] = static_cast<std::uint32_t>(k);
    auto it = best.find(BitString::from_length_lex_rank(k));
    if (it != best.end() && it->second.size() < k) entries[k] = static_cast<std::uint32_t>(it->second.size());
  }
  return IdBoundedString(std::move(entries));
}

IdTree::IdTree(std::set<std::vector<std::uint32_t>> nodes) : nodes_(std::move(nodes)) {
  for (const auto& node : nodes_) {
    IdBoundedString check(node);
    if (!node.empty() && nodes_.count(std::vector<std::uint32_t>(node.begin(), node.end() - 1)) == 0) {
      fail(ErrorCode::InvalidArgument, "id tree not prefix-closed at length " + std::to_string(node.size()));
    }
  }
}

std::size_t IdTree::height() const noexcept {
  std::size_t h = 0;
  for (const auto& n : nodes_) h = std::max(h, n.size());
  return h;
}

std::optional<std::size_t> compactness_search(const IdTree& t, const Dyadic& r) {
  if (t.nodes().empty()) return std::nullopt;
  for (std::size_t level = 0; level <= t.height(); ++level) {
    bool all_heavy = true;
    for (const auto& node : t.nodes()) {
      if (node.size() == level && IdBoundedString(node).wt() <= r) {
        all_heavy = false;
        break;
      }
    }
    if (all_heavy) return level;
  }
  return std::nullopt;
}

bool is_dnc(const std::vector<std::uint32_t>& f, const ToyJumpTable& j, std::uint32_t k) {
  for (std::size_t e = 0; e < f.size(); ++e) {
    if (f[e] >= k) return false;
    auto entry = j.lookup(static_cast<std::uint32_t>(e));
    if (entry && entry->value == f[e]) return false;
  }
  return true;
}

}  // namespace cantor
