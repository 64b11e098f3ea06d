#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/bv.hpp"
#include "cantor/covering.hpp"
#include "cantor/kolmogorov.hpp"
#include "cantor/measures.hpp"

namespace cantor {

// Line-oriented formats. '#' starts a comment, blank lines are ignored and the
// empty bitstring is written "-". Errors are ParseError with "line N: ...".

/// `<bitstring> <num>/2^<exp>` per leaf; all leaves share one length (the depth),
/// missing leaves are zero. A line `@` on its own starts the next stage of a staged file.
FiniteSignedMeasure parse_measure(std::string_view text);
std::vector<FiniteSignedMeasure> parse_staged_measure(std::string_view text);
std::string format_measure(const FiniteSignedMeasure& mu);

/// `k/2^d <value>`, one line per grid point, every point exactly once.
BvSample parse_bv(std::string_view text);
std::string format_bv(const BvSample& f);

/// `<program> <output> @<stage>`.
std::vector<MachineEntry> parse_machine(std::string_view text);
std::string format_machine(const Machine& m);

/// `n: e1 e2 ...`; repeated n lines accumulate.
IndexSequence parse_index_sequence(std::string_view text);
StringSequence parse_string_sequence(std::string_view text);
std::string format_sequence(const IndexSequence& a);
std::string format_sequence(const StringSequence& a);

/// Comma or space separated list of naturals, as used on the command line.
std::vector<std::uint64_t> parse_number_list(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace cantor
