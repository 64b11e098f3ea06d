#include "cantor/commands.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "cantor/clopen.hpp"
#include "cantor/error.hpp"
#include "cantor/textio.hpp"
#include "cantor/weihrauch.hpp"

namespace cantor {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string grid_point(std::size_t k, std::size_t depth) { return std::to_string(k) + "/2^" + std::to_string(depth); }

std::string complexity(const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : "inf"; }

std::string bool_word(bool b) { return b ? "yes" : "no"; }

// Grid rows shown in tables; larger grids are summarised by their endpoints and every stride-th point.
std::vector<std::size_t> sample_rows(std::size_t points) {
  std::vector<std::size_t> rows;
  const std::size_t stride = std::max<std::size_t>(1, (points - 1) / 16);
  for (std::size_t k = 0; k < points; k += stride) rows.push_back(k);
  if (rows.back() != points - 1) rows.push_back(points - 1);
  return rows;
}

std::uint32_t max_stage(const Machine& m) {
  std::uint32_t s = 1;
  for (const auto& e : m.entries()) s = std::max(s, e.stage);
  return s;
}

std::optional<std::string> first_cylinder_mismatch(const FiniteSignedMeasure& a, const FiniteSignedMeasure& b) {
  if (a.depth() != b.depth()) return "depths " + std::to_string(a.depth()) + " and " + std::to_string(b.depth());
  for (std::size_t n = 0; n <= a.depth(); ++n) {
    const auto la = a.level(n);
    const auto lb = b.level(n);
    for (std::size_t i = 0; i < la.size(); ++i) {
      if (la[i] != lb[i]) {
        return "cylinder " + BitString(i, n).token() + ": " + la[i].to_string() + " vs " + lb[i].to_string();
      }
    }
  }
  return std::nullopt;
}

void check_equal(RunReport& r, std::string name, const FiniteSignedMeasure& a, const FiniteSignedMeasure& b) {
  const auto w = first_cylinder_mismatch(a, b);
  r.check(std::move(name), !w.has_value(), w.value_or(""));
}

void check_dominates(RunReport& r, std::string name, const FiniteSignedMeasure& upper, const FiniteSignedMeasure& lower) {
  const auto w = first_domination_failure(upper, lower);
  r.check(std::move(name), !w.has_value(),
          w ? "cylinder " + w->token() + ": " + upper.value(*w).to_string() + " < " + lower.value(*w).to_string() : "");
}

std::optional<std::size_t> parse_opt_size(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  const auto v = parse_number_list(it->second);
  if (v.size() != 1) fail(ErrorCode::InvalidArgument, "--" + key + " takes one number");
  return static_cast<std::size_t>(v.front());
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"jordan", "freer", "covering", "machine", "sawtooth", "sweep"};
  return names;
}

RunReport cmd_jordan_roundtrip(const BvSample& f, std::optional<std::size_t> depth) {
  if (depth && *depth != f.depth()) {
    fail(ErrorCode::GridMismatch, "file has depth " + std::to_string(f.depth()) + ", --depth asks for " + std::to_string(*depth));
  }
  RunReport r("jordan");
  Stopwatch clock;
  r.note("depth", std::to_string(f.depth()));

  const FiniteSignedMeasure mu_f = mu_from_bv(f);
  const BvSample v_f = variation_function(f);
  const FiniteSignedMeasure mu_v = mu_from_bv(v_f);
  check_equal(r, "variation of mu^f equals mu^{V_f}", variation_measure(mu_f), mu_v);

  const AmdInstance inst = pjd_to_amd_instance(f);
  r.time("instance", clock.lap());
  r.note("instance stages", std::to_string(inst.size()));
  const FiniteSignedMeasure nu = lsc_limit(inst);
  check_equal(r, "instance converges to mu^{V_f}", nu, mu_v);

  const BvSample g = pjd_to_amd_solution(nu, f);
  const BvSample h = g - f;
  r.time("solution", clock.lap());
  {
    const bool ok = is_jordan_solution(f, g, h);
    std::string w;
    if (!ok) {
      if (auto k = g.first_descent()) w = "g decreases after " + grid_point(*k, f.depth());
      else if (auto k2 = h.first_descent()) w = "h decreases after " + grid_point(*k2, f.depth());
      else w = "f != g - h";
    }
    r.check("g, h nondecreasing with f = g - h", ok, w);
  }
  {
    std::optional<std::size_t> bad;
    for (std::size_t k = 0; k < g.points() && !bad; ++k) {
      if (g.at(k) != v_f.at(k)) bad = k;
    }
    r.check("g equals V_f", !bad, bad ? "at " + grid_point(*bad, f.depth()) : "");
  }
  check_dominates(r, "mu^g + mu^h dominates mu^{V_f}", amd_to_jd_solution(g, h), mu_v);
  r.time("checks", clock.lap());

  auto& t = r.table("grid", {"x", "f", "V_f", "g", "h"});
  for (auto k : sample_rows(f.points())) {
    t.rows.push_back({grid_point(k, f.depth()), f.at(k).to_string(), v_f.at(k).to_string(), g.at(k).to_string(),
                      h.at(k).to_string()});
  }
  return r;
}

RunReport cmd_freer(const std::vector<FiniteSignedMeasure>& blocks, std::optional<std::size_t> stages,
                    std::optional<std::size_t> depth) {
  if (blocks.empty()) fail(ErrorCode::InvalidArgument, "no stages given");
  std::size_t inst_depth = 0;
  for (const auto& b : blocks) inst_depth = std::max(inst_depth, b.depth());
  std::vector<FiniteSignedMeasure> staged;
  if (blocks.size() == 1) {
    staged.assign(stages.value_or(0) + 1, blocks.front().refine(inst_depth));
  } else {
    const std::size_t count = stages ? *stages + 1 : blocks.size();
    if (count > blocks.size()) {
      fail(ErrorCode::InvalidArgument, "--stages " + std::to_string(*stages) + " but the file has " +
                                           std::to_string(blocks.size()) + " stages");
    }
    for (std::size_t s = 0; s < count; ++s) staged.push_back(blocks[s].refine(inst_depth));
  }
  const std::size_t target = depth.value_or(inst_depth);

  RunReport r("freer");
  Stopwatch clock;
  const AmdInstance inst(staged);
  const FreerResult res = freer_construct(inst, target);
  r.time("construct", clock.lap());
  r.note("instance depth", std::to_string(inst_depth));
  r.note("target depth", std::to_string(target));
  r.note("stages", std::to_string(inst.size()));

  auto& t = r.table("stages", {"s", "l_s", "l_s+1", "discrepancy", "bound", "slack strings"});
  std::optional<std::size_t> over;
  for (const auto& st : res.stages) {
    t.rows.push_back({std::to_string(st.stage), std::to_string(st.level_begin), std::to_string(st.level_end),
                      st.discrepancy.to_string(), st.bound.to_string(), std::to_string(st.max_slack_strings)});
    if (st.discrepancy > st.bound && !over) over = st.stage;
  }
  r.check("per-stage discrepancy within 2^-s + 2^{l_s} atom bound", !over,
          over ? "stage " + std::to_string(*over) + ": " + res.stages[*over].discrepancy.to_string() + " > " +
                     res.stages[*over].bound.to_string()
               : "");
  const FiniteSignedMeasure final_nu = inst.stages().back().refine(target);
  const FiniteSignedMeasure var_eta = variation_measure(res.eta);
  check_dominates(r, "|mu^g| below the final stage", final_nu, var_eta);
  check_equal(r, "mu^g is the constructed measure", mu_from_bv(res.g), res.eta);
  if (inst.size() == 1) check_equal(r, "single stage: V_{mu^g} equals nu", var_eta, final_nu);
  r.time("checks", clock.lap());
  return r;
}

RunReport cmd_covering_discrete(const Machine& m, std::optional<std::size_t> stage, std::uint32_t c,
                                std::optional<std::size_t> cutoff) {
  if (m.kind() != MachineKind::Prefix) fail(ErrorCode::InvalidArgument, "discrete covering needs a prefix machine");
  const auto s = static_cast<std::uint32_t>(stage.value_or(max_stage(m)));
  std::size_t longest_program = 0, longest_output = 0;
  for (const auto& e : m.entries()) {
    longest_program = std::max(longest_program, e.program.size());
    longest_output = std::max(longest_output, e.output.size());
  }
  const std::size_t n_cut = cutoff.value_or(longest_program);
  if (longest_output >= 20) fail(ErrorCode::InvalidArgument, "outputs longer than 19 bits");
  const std::size_t string_cut = (std::size_t{1} << (longest_output + 1)) - 1;

  RunReport r("covering");
  r.note("mode", "discrete");
  r.note("stage", std::to_string(s));
  r.note("c", std::to_string(c));
  Stopwatch clock;
  const StringSequence a = universal_discrete_instance(m, s, n_cut);
  const CompressionFunction f = prefix_compression(m, s, string_cut);
  const StringSequence b = cover_from_compression(f, c, n_cut);
  r.time("cover", clock.lap());

  auto& t = r.table("sequences", {"n", "|A_n|", "|B_n|"});
  for (std::size_t n = 0; n <= n_cut; ++n) {
    t.rows.push_back({std::to_string(n), std::to_string(a.at(n).size()), std::to_string(b.at(n).size())});
  }
  const Dyadic bound = Dyadic::pow2(static_cast<std::int64_t>(c) + 1);
  r.note("wt(A)", a.wt().to_string());
  r.note("wt(B)", b.wt().to_string());
  r.note("bound 2^{c+1}", bound.to_string());

  {
    std::string w;
    for (std::size_t n = 0; n < a.size() && w.empty(); ++n) {
      for (const auto& x : a.at(n)) {
        if (b.at(n).count(x) == 0) {
          w = x.token() + " in A_" + std::to_string(n);
          break;
        }
      }
    }
    r.check("B covers A", w.empty(), w);
  }
  r.check("wt(B) <= 2^{c+1}", b.wt() <= bound, "wt(B) = " + b.wt().to_string());

  std::vector<BitString> required;
  for (const auto& x : a.at(n_cut)) required.push_back(x);
  const CompressionFunction back = compression_from_cover(b, c, required);
  const auto v = verify_compression(back, m, s);
  r.check("compression read back from B verifies", !v, v ? v->sigma.token() + ": " + v->reason : "");
  r.time("checks", clock.lap());
  return r;
}

RunReport cmd_covering_continuous(const IndexSequence& a, std::optional<std::size_t> depth) {
  const ClopenFamily fam(depth.value_or(20));
  RunReport r("covering");
  r.note("mode", "continuous");
  r.note("family depth", std::to_string(fam.max_depth()));
  Stopwatch clock;
  const ClopenSet u = embed_discrete_in_open(a, fam);
  const Dyadic product = product_formula(a);
  r.time("embed", clock.lap());
  r.note("wt(A)", a.wt().to_string());
  r.note("measure of U", u.measure().to_string());
  r.note("1 - prod (1 - 2^-n)^|A_n|", product.to_string());
  r.check("measure of U matches the product formula", u.measure() == product,
          u.measure().to_string() + " vs " + product.to_string());

  const IndexSequence b = extract_cover_from_open(u, fam);
  r.time("extract", clock.lap());
  auto& t = r.table("sequences", {"n", "|A_n|", "|B_n|"});
  for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) {
    t.rows.push_back({std::to_string(n), std::to_string(a.at(n).size()), std::to_string(b.at(n).size())});
  }
  r.note("wt(B)", b.wt().to_string());
  {
    std::string w;
    for (std::size_t n = 0; n < a.size() && w.empty(); ++n) {
      for (auto k : a.at(n)) {
        if (b.at(n).count(k) == 0) {
          w = "k = " + std::to_string(k) + " in A_" + std::to_string(n);
          break;
        }
      }
    }
    r.check("B covers A", w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t n = 0; n < b.size() && w.empty(); ++n) {
      for (auto k : b.at(n)) {
        if (a.at(n).count(k) == 0) {
          w = "C_{" + std::to_string(n) + "," + std::to_string(k) + "} inside U but k not in A_" + std::to_string(n);
          break;
        }
      }
    }
    r.check("B recovers exactly A", w.empty(), w);
  }
  return r;
}

RunReport cmd_machine(const Machine& m, std::optional<std::size_t> stage, std::vector<BitString> queries,
                      const std::vector<std::uint64_t>& kc_lengths) {
  const auto s = static_cast<std::uint32_t>(stage.value_or(max_stage(m)));
  if (s == 0) fail(ErrorCode::InvalidArgument, "stage must be positive");
  const bool prefix = m.kind() == MachineKind::Prefix;
  RunReport r("machine");
  r.note("kind", prefix ? "prefix" : "plain");
  r.note("entries", std::to_string(m.entries().size()));
  r.note("domain weight", m.domain_weight().to_string());
  Stopwatch clock;

  if (queries.empty()) {
    std::set<BitString> outs;
    for (const auto& e : m.entries()) outs.insert(e.output);
    queries.assign(outs.begin(), outs.end());
    std::sort(queries.begin(), queries.end(), length_lex_less);
  }
  std::vector<std::string> cols{"x"};
  for (std::uint32_t t = 1; t <= s; ++t) cols.push_back((prefix ? "K_" : "C_") + std::to_string(t));
  auto& table = r.table("staged complexity", cols);
  std::string not_monotone;
  for (const auto& x : queries) {
    std::vector<std::string> row{x.token()};
    std::optional<std::size_t> prev;
    for (std::uint32_t t = 1; t <= s; ++t) {
      const auto k = staged_complexity(m, x, t);
      row.push_back(complexity(k));
      if (prev && (!k || *k > *prev) && not_monotone.empty()) not_monotone = x.token() + " at stage " + std::to_string(t);
      prev = k;
    }
    table.rows.push_back(std::move(row));
  }
  r.check("staged complexity never increases", not_monotone.empty(), not_monotone);

  std::size_t longest = 0;
  for (const auto& e : m.entries()) longest = std::max(longest, e.output.size());
  for (const auto& x : queries) longest = std::max(longest, x.size());
  longest = std::min<std::size_t>(longest, 12);
  const CompressionFunction f = prefix ? prefix_compression(m, s, (std::size_t{1} << (longest + 1)) - 1)
                                       : canonical_compression(m, s, longest);
  const auto v = verify_compression(f, m, s);
  r.note("compressed strings", std::to_string(f.mapping.size()));
  r.check(prefix ? "prefix compression verifies" : "canonical compression verifies", !v,
          v ? v->sigma.token() + ": " + v->reason : "");
  r.time("complexity", clock.lap());

  if (!kc_lengths.empty()) {
    std::vector<KcRequest> reqs;
    for (std::size_t i = 0; i < kc_lengths.size(); ++i) {
      if (kc_lengths[i] > BitString::kMaxLength) fail(ErrorCode::InvalidArgument, "request length beyond 64");
      reqs.push_back({static_cast<std::size_t>(kc_lengths[i]), BitString::from_length_lex_rank(i)});
    }
    const Machine kc = kraft_chaitin(reqs);
    auto& kt = r.table("kraft-chaitin", {"request", "length", "program"});
    std::map<BitString, BitString> program_of;
    for (const auto& e : kc.entries()) program_of.emplace(e.output, e.program);
    std::string bad;
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      const BitString& p = program_of.at(reqs[i].payload);
      kt.rows.push_back({std::to_string(i), std::to_string(reqs[i].length), p.token()});
      if (p.size() != reqs[i].length && bad.empty()) bad = "request " + std::to_string(i) + " got length " + std::to_string(p.size());
    }
    r.check("kraft-chaitin programs have the requested lengths", bad.empty(), bad);
    // The Machine constructor already rejects comparable programs; this re-checks directly.
    std::string clash;
    for (std::size_t i = 0; i < kc.entries().size() && clash.empty(); ++i) {
      for (std::size_t j = i + 1; j < kc.entries().size(); ++j) {
        if (kc.entries()[i].program.comparable(kc.entries()[j].program)) {
          clash = kc.entries()[i].program.token() + " and " + kc.entries()[j].program.token();
          break;
        }
      }
    }
    r.check("kraft-chaitin programs are prefix-free", clash.empty(), clash);
    r.time("kraft-chaitin", clock.lap());
  }
  return r;
}

RunReport cmd_sawtooth(const IndexSequence& events, std::optional<std::size_t> depth) {
  std::vector<SawtoothEvent> evs;
  std::uint32_t top_index = 0;
  std::size_t need = 3;
  for (std::size_t s = 0; s < events.size(); ++s) {
    for (auto n : events.at(s)) {
      if (n > 30) fail(ErrorCode::InvalidArgument, "index " + std::to_string(n) + " too large");
      evs.push_back({static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(s)});
      top_index = std::max(top_index, static_cast<std::uint32_t>(n));
      need = std::max(need, sawtooth_min_depth(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(s)));
    }
  }
  const std::size_t d = depth.value_or(need);
  if (d > BvSample::kMaxDepth) fail(ErrorCode::GridTooCoarse, "needs depth " + std::to_string(d) + " beyond the grid limit");
  const SawtoothInstance inst(evs, d);
  const std::uint32_t max_index = std::min<std::uint32_t>(top_index + 1, static_cast<std::uint32_t>(d) - 1);

  RunReport r("sawtooth");
  r.note("depth", std::to_string(d));
  r.note("events", std::to_string(evs.size()));
  Stopwatch clock;
  const BvSample f = sawtooth_encode(inst);
  const BvSample g = variation_function(f);
  const BvSample drifted = g + BvSample::identity(d);
  r.time("encode", clock.lap());
  const auto plain = sawtooth_decode_all(g, max_index, inst);
  const auto drift = sawtooth_decode_all(drifted, max_index, inst);
  r.time("decode", clock.lap());

  auto& t = r.table("round trip", {"n", "enters at", "decoded (V_f)", "decoded (V_f + x)"});
  std::string wrong;
  for (std::uint32_t n = 0; n <= max_index; ++n) {
    const auto st = inst.stage_of(n);
    t.rows.push_back({std::to_string(n), st ? std::to_string(*st) : "-", bool_word(plain[n]), bool_word(drift[n])});
    if ((plain[n] != st.has_value() || drift[n] != st.has_value()) && wrong.empty()) wrong = "index " + std::to_string(n);
  }
  r.check("decoded set equals the enumerated set", wrong.empty(), wrong);
  Dyadic total;
  for (std::size_t k = 0; k + 1 < f.points(); ++k) total += abs(f.at(k + 1) - f.at(k));
  Dyadic expected;
  for (const auto& e : evs) expected += Dyadic::pow2(1 - static_cast<std::int64_t>(e.index));
  r.check("total variation is sum of 2^{1-n} over events", total == expected, total.to_string() + " vs " + expected.to_string());
  return r;
}

RunReport cmd_sweep(std::uint64_t seed, std::size_t depth, std::size_t samples) {
  if (depth == 0 || depth > 12) fail(ErrorCode::InvalidArgument, "sweep depth must be in 1..12");
  RunReport r("sweep");
  r.note("seed", std::to_string(seed));
  r.note("depth", std::to_string(depth));
  r.note("samples", std::to_string(samples));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> num(-256, 256);
  std::uniform_int_distribution<std::uint32_t> ex(0, 8);
  Stopwatch clock;
  std::string identity_fail, jordan_fail;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Dyadic> v((std::size_t{1} << depth) + 1);
    for (auto& x : v) x = Dyadic(num(rng), ex(rng));
    const BvSample f(depth, std::move(v));
    const auto mu_v = mu_from_bv(variation_function(f));
    if (identity_fail.empty() && first_cylinder_mismatch(variation_measure(mu_from_bv(f)), mu_v)) {
      identity_fail = "sample " + std::to_string(i);
    }
    const auto [g, h] = jordan_canonical(f);
    if (jordan_fail.empty() && (!is_jordan_solution(f, g, h) || !dominates(amd_to_jd_solution(g, h), mu_v))) {
      jordan_fail = "sample " + std::to_string(i);
    }
  }
  r.check("variation of mu^f equals mu^{V_f}", identity_fail.empty(), identity_fail);
  r.check("canonical pair solves and dominates mu^{V_f}", jordan_fail.empty(), jordan_fail);
  r.time("sweep", clock.lap());
  return r;
}

RunReport run_command(std::string_view name, const CommandOptions& opts) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    fail(ErrorCode::InvalidArgument, "unknown command '" + std::string(name) + "'");
  }
  std::vector<std::string> contents;
  for (const auto& path : opts.files) contents.push_back(read_file(path));
  auto one_file = [&]() -> const std::string& {
    if (contents.size() != 1) fail(ErrorCode::InvalidArgument, std::string(name) + " takes exactly one file");
    return contents.front();
  };
  auto param = [&](const std::string& key, const std::string& fallback) {
    auto it = opts.params.find(key);
    return it == opts.params.end() ? fallback : it->second;
  };
  auto kind = [&](const std::string& fallback) {
    const std::string k = param("kind", fallback);
    if (k != "plain" && k != "prefix") fail(ErrorCode::InvalidArgument, "--kind must be plain or prefix");
    return k == "prefix" ? MachineKind::Prefix : MachineKind::Plain;
  };

  RunReport r;
  if (name == "jordan") {
    r = cmd_jordan_roundtrip(parse_bv(one_file()), opts.depth);
  } else if (name == "freer") {
    r = cmd_freer(parse_staged_measure(one_file()), opts.stages, opts.depth);
  } else if (name == "covering") {
    const std::string mode = param("mode", "discrete");
    if (mode == "discrete") {
      const auto c = parse_opt_size(opts.params, "c").value_or(1);
      r = cmd_covering_discrete(Machine(kind("prefix"), parse_machine(one_file())), opts.stages,
                                static_cast<std::uint32_t>(c), opts.depth);
    } else if (mode == "continuous") {
      r = cmd_covering_continuous(parse_index_sequence(one_file()), opts.depth);
    } else {
      fail(ErrorCode::InvalidArgument, "--mode must be discrete or continuous");
    }
  } else if (name == "machine") {
    std::vector<BitString> queries;
    std::string q = param("query", "");
    for (char& ch : q) {
      if (ch == ',') ch = ' ';
    }
    std::size_t i = 0;
    while (i < q.size()) {
      while (i < q.size() && q[i] == ' ') ++i;
      std::size_t j = i;
      while (j < q.size() && q[j] != ' ') ++j;
      if (j > i) {
        const std::string tok = q.substr(i, j - i);
        queries.push_back(tok == "-" ? BitString() : BitString::parse(tok));
      }
      i = j;
    }
    r = cmd_machine(Machine(kind("plain"), parse_machine(one_file())), opts.stages, std::move(queries),
                    parse_number_list(param("kc-lengths", "")));
  } else if (name == "sawtooth") {
    r = cmd_sawtooth(parse_index_sequence(one_file()), opts.depth);
  } else {
    if (!contents.empty()) fail(ErrorCode::InvalidArgument, "sweep takes no files");
    r = cmd_sweep(opts.seed, opts.depth.value_or(6), parse_opt_size(opts.params, "samples").value_or(200));
  }

  std::string canon(name);
  for (const auto& c : contents) canon += '\x1f' + c;
  canon += "\x1e" + (opts.depth ? std::to_string(*opts.depth) : "") + "\x1e" + (opts.stages ? std::to_string(*opts.stages) : "");
  for (const auto& [k, v] : opts.params) canon += "\x1e" + k + "=" + v;
  if (name == "sweep") canon += "\x1e" + std::to_string(opts.seed);
  r.absorb(canon);
  return r;
}

}  // namespace cantor
