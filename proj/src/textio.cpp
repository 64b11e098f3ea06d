#include "cantor/textio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) parsed.fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!parsed.fields.empty()) out.push_back(std::move(parsed));
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

// Re-tags library errors raised while reading a field with the line number.
template <class F>
auto at_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::string_view what = e.what();
    const std::string_view tag = error_code_name(e.code());
    if (what.substr(0, tag.size()) == tag) what.remove_prefix(std::min(what.size(), tag.size() + 2));
    parse_fail(line, std::string(what));
  }
}

BitString bits(std::size_t line, std::string_view token) {
  if (token == "-") return {};
  return at_line(line, [&] { return BitString::parse(token); });
}

std::uint64_t natural(std::size_t line, std::string_view token) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) parse_fail(line, "not a natural number: '" + std::string(token) + "'");
  return v;
}

FiniteSignedMeasure measure_from_lines(const std::vector<Line>& lines) {
  if (lines.empty()) return FiniteSignedMeasure::zero(0);
  std::size_t depth = 0;
  std::map<BitString, Dyadic> leaves;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.fields.size() != 2) parse_fail(l.number, "expected '<bitstring> <num>/2^<exp>'");
    const BitString s = bits(l.number, l.fields[0]);
    if (i == 0) depth = s.size();
    if (s.size() != depth) parse_fail(l.number, "leaf length " + std::to_string(s.size()) + " differs from depth " + std::to_string(depth));
    if (depth > BvSample::kMaxDepth) parse_fail(l.number, "depth beyond " + std::to_string(BvSample::kMaxDepth));
    const Dyadic v = at_line(l.number, [&] { return Dyadic::parse(l.fields[1]); });
    if (!leaves.emplace(s, v).second) parse_fail(l.number, "repeated leaf " + s.token());
  }
  std::vector<Dyadic> values(std::size_t{1} << depth);
  for (const auto& [s, v] : leaves) values[s.value()] = v;
  return FiniteSignedMeasure(depth, std::move(values));
}

template <class T, class ParseElem>
WeightedSequence<T> sequence_from_text(std::string_view text, ParseElem elem) {
  std::vector<std::set<T>> sets;
  for (const Line& l : split_lines(text)) {
    // "n:" may be glued to the first element.
    const std::string_view first = l.fields[0];
    const auto colon = first.find(':');
    if (colon == std::string_view::npos) parse_fail(l.number, "expected 'n: e1 e2 ...'");
    const std::uint64_t n = natural(l.number, first.substr(0, colon));
    if (n > 4096) parse_fail(l.number, "index " + std::to_string(n) + " too large");
    if (sets.size() <= n) sets.resize(n + 1);
    std::vector<std::string_view> items(l.fields.begin() + 1, l.fields.end());
    if (colon + 1 < first.size()) items.insert(items.begin(), first.substr(colon + 1));
    for (auto item : items) sets[n].insert(elem(l.number, item));
  }
  return WeightedSequence<T>(std::move(sets));
}

template <class T, class Show>
std::string sequence_to_text(const WeightedSequence<T>& a, Show show) {
  std::ostringstream os;
  for (std::size_t n = 0; n < a.size(); ++n) {
    os << n << ':';
    for (const auto& x : a.at(n)) os << ' ' << show(x);
    os << '\n';
  }
  return os.str();
}

}  // namespace

FiniteSignedMeasure parse_measure(std::string_view text) {
  auto stages = parse_staged_measure(text);
  if (stages.size() != 1) fail(ErrorCode::ParseError, "expected a single measure, found " + std::to_string(stages.size()) + " stages");
  return stages.front();
}

std::vector<FiniteSignedMeasure> parse_staged_measure(std::string_view text) {
  std::vector<std::vector<Line>> blocks(1);
  for (Line& l : split_lines(text)) {
    if (l.fields.size() == 1 && l.fields[0] == "@") {
      blocks.emplace_back();
    } else {
      blocks.back().push_back(std::move(l));
    }
  }
  std::vector<FiniteSignedMeasure> out;
  for (const auto& b : blocks) out.push_back(measure_from_lines(b));
  return out;
}

std::string format_measure(const FiniteSignedMeasure& mu) {
  std::ostringstream os;
  for (std::size_t i = 0; i < mu.leaves().size(); ++i) {
    const Dyadic& v = mu.leaves()[i];
    os << BitString(i, mu.depth()).token() << ' ' << v.numerator().get_str() << "/2^" << v.exponent() << '\n';
  }
  return os.str();
}

BvSample parse_bv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) fail(ErrorCode::ParseError, "line 1: empty BV file");
  std::optional<std::size_t> depth;
  std::vector<std::optional<Dyadic>> values;
  for (const Line& l : lines) {
    if (l.fields.size() != 2) parse_fail(l.number, "expected 'k/2^d <value>'");
    const std::string_view point = l.fields[0];
    const auto slash = point.find("/2^");
    if (slash == std::string_view::npos) parse_fail(l.number, "grid point must read k/2^d");
    const std::uint64_t k = natural(l.number, point.substr(0, slash));
    const std::uint64_t d = natural(l.number, point.substr(slash + 3));
    if (d > BvSample::kMaxDepth) parse_fail(l.number, "depth beyond " + std::to_string(BvSample::kMaxDepth));
    if (!depth) {
      depth = d;
      values.assign((std::size_t{1} << d) + 1, std::nullopt);
    }
    if (d != *depth) parse_fail(l.number, "grid depth " + std::to_string(d) + " differs from " + std::to_string(*depth));
    if (k >= values.size()) parse_fail(l.number, "grid index " + std::to_string(k) + " beyond 2^" + std::to_string(d));
    if (values[k]) parse_fail(l.number, "grid point " + std::to_string(k) + " repeated");
    values[k] = at_line(l.number, [&] { return Dyadic::parse(l.fields[1]); });
  }
  std::vector<Dyadic> out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!values[k]) parse_fail(lines.back().number, "grid point " + std::to_string(k) + "/2^" + std::to_string(*depth) + " missing");
    out.push_back(*values[k]);
  }
  return BvSample(*depth, std::move(out));
}

std::string format_bv(const BvSample& f) {
  std::ostringstream os;
  for (std::size_t k = 0; k < f.points(); ++k) {
    const Dyadic& v = f.at(k);
    os << k << "/2^" << f.depth() << ' ' << v.numerator().get_str() << "/2^" << v.exponent() << '\n';
  }
  return os.str();
}

std::vector<MachineEntry> parse_machine(std::string_view text) {
  std::vector<MachineEntry> out;
  for (const Line& l : split_lines(text)) {
    if (l.fields.size() != 3 || l.fields[2].front() != '@') parse_fail(l.number, "expected '<program> <output> @<stage>'");
    MachineEntry e;
    e.program = bits(l.number, l.fields[0]);
    e.output = bits(l.number, l.fields[1]);
    const std::uint64_t stage = natural(l.number, l.fields[2].substr(1));
    if (stage == 0 || stage > UINT32_MAX) parse_fail(l.number, "stage must be positive");
    e.stage = static_cast<std::uint32_t>(stage);
    out.push_back(e);
  }
  return out;
}

std::string format_machine(const Machine& m) {
  std::ostringstream os;
  for (const auto& e : m.entries()) os << e.program.token() << ' ' << e.output.token() << " @" << e.stage << '\n';
  return os.str();
}

IndexSequence parse_index_sequence(std::string_view text) {
  return sequence_from_text<std::uint64_t>(text, natural);
}

StringSequence parse_string_sequence(std::string_view text) {
  return sequence_from_text<BitString>(text, bits);
}

std::string format_sequence(const IndexSequence& a) {
  return sequence_to_text(a, [](std::uint64_t x) { return std::to_string(x); });
}

std::string format_sequence(const StringSequence& a) {
  return sequence_to_text(a, [](const BitString& x) { return x.token(); });
}

std::vector<std::uint64_t> parse_number_list(std::string_view text) {
  std::string spaced(text);
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::vector<std::uint64_t> out;
  for (const Line& l : split_lines(spaced)) {
    for (auto f : l.fields) out.push_back(natural(l.number, f));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace cantor
