#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/bv.hpp"
#include "cantor/covering.hpp"
#include "cantor/kolmogorov.hpp"
#include "cantor/measures.hpp"
#include "cantor/report.hpp"

namespace cantor {

/// Options shared by all commands. `params` carries the command-specific flags
/// (mode, kind, query, kc-lengths, c, samples) by their long names.
struct CommandOptions {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> stages;
  std::vector<std::string> files;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
};

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

/// Reads the files, dispatches and records the digest of inputs and options.
/// Library errors propagate as cantor::Error.
RunReport run_command(std::string_view name, const CommandOptions& opts);

/// BV file -> staged instance -> dominating measure -> Jordan pair, all checked exactly.
RunReport cmd_jordan_roundtrip(const BvSample& f, std::optional<std::size_t> depth);

/// Staged measure (blocks separated by '@'). A single block is repeated to `stages`+1 stages.
RunReport cmd_freer(const std::vector<FiniteSignedMeasure>& blocks, std::optional<std::size_t> stages,
                    std::optional<std::size_t> depth);

/// Universal instance of a prefix machine, its cover with the wt bound, and the
/// compression function read back from the cover.
RunReport cmd_covering_discrete(const Machine& m, std::optional<std::size_t> stage, std::uint32_t c,
                                std::optional<std::size_t> cutoff);

/// Embeds A into the clopen family, checks the product formula and extracts the cover.
RunReport cmd_covering_continuous(const IndexSequence& a, std::optional<std::size_t> depth);

/// Staged C or K table for the queries, compression verification, and an optional
/// Kraft-Chaitin run on the given lengths.
RunReport cmd_machine(const Machine& m, std::optional<std::size_t> stage, std::vector<BitString> queries,
                      const std::vector<std::uint64_t>& kc_lengths);

/// Events as a sequence `s: n1 n2 ...` (indices entering at stage s).
RunReport cmd_sawtooth(const IndexSequence& events, std::optional<std::size_t> depth);

/// Seeded sweep of random grid functions through the Jordan identities.
RunReport cmd_sweep(std::uint64_t seed, std::size_t depth, std::size_t samples);

}  // namespace cantor
