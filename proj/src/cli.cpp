#include "ncperm/cli.hpp"

#include "ncperm/abp.hpp"
#include "ncperm/circuit.hpp"
#include "ncperm/generators.hpp"
#include "ncperm/gentry.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/io.hpp"
#include "ncperm/nisan.hpp"
#include "ncperm/sym.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace ncperm {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string involution;
  int complete = 0;
  int hard = 0;
  std::string abp;
  std::string abp_a;
  std::string abp_b;
  std::string circuit;
  std::string cnf;
  std::string word;
  std::string ys;
  std::string cuts;
  std::string method = "brute";
  std::string mode = "hadamard";
  std::string variant = "nc";
  int n = 0;
  int d = 0;
  int cap = 6;
  int samples = 200;
  int degree = 0;
  std::optional<std::uint64_t> seed;
  bool is_signed = false;
  bool selftest = false;
  bool naive = false;
  bool check = false;
};

// Inputs read during the invocation, hashed into the report digest.
class Inputs {
 public:
  std::string file(const std::string& path) {
    std::string text = read_file(path);
    hashed_ += path + "\n" + text + "\n";
    return text;
  }
  void literal(const std::string& what, const std::string& value) { hashed_ += what + "=" + value + "\n"; }
  const std::string& hashed() const { return hashed_; }

 private:
  std::string hashed_;
};

struct Outcome {
  Json results = Json::object();
  bool passed = true;
};

using Verb = std::function<Outcome(const Options&, Inputs&, std::ostream&)>;
using Selftest = std::function<void(std::vector<std::string>& failures, std::size_t& cases)>;

void expect(bool ok, const std::string& what, std::vector<std::string>& failures, std::size_t& cases) {
  ++cases;
  if (!ok) failures.push_back(what);
}

// --- input helpers ---------------------------------------------------------

Involution load_involution(const Options& o, Inputs& in) {
  if (o.hard > 0) {
    in.literal("hard", std::to_string(o.hard));
    return hard_involution(o.hard);
  }
  if (o.involution.empty()) throw UsageError("an involution is required (--involution or --hard)");
  if (std::filesystem::is_regular_file(o.involution)) return parse_involution(in.file(o.involution), o.involution);
  in.literal("involution", o.involution);
  return parse_involution(o.involution, "--involution");
}

LabeledDigraph load_graph(const Options& o, Inputs& in) {
  if (!o.graph.empty()) return parse_graph(in.file(o.graph), o.graph);
  if (o.complete > 0) {
    in.literal("complete", std::to_string(o.complete));
    return complete_graph(o.complete);
  }
  if (!o.involution.empty() || o.hard > 0) return involution_graph(load_involution(o, in));
  throw UsageError("a graph is required (--graph, --involution, --hard or --complete)");
}

Json parse_json_file(Inputs& in, const std::string& path) {
  const std::string text = in.file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, 0, std::string("valid JSON (") + e.what() + ")");
  }
}

Abp load_abp(Inputs& in, const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("an ABP file is required (") + flag + ")");
  return abp_from_json(parse_json_file(in, path), path);
}

Circuit load_circuit(const Options& o, Inputs& in) {
  if (o.circuit.empty()) throw UsageError("a circuit file is required (--circuit)");
  return circuit_from_json(parse_json_file(in, o.circuit), o.circuit);
}

Cnf load_cnf(const Options& o, Inputs& in) {
  if (o.cnf.empty()) throw UsageError("a DIMACS file is required (--cnf)");
  return parse_dimacs(in.file(o.cnf), o.cnf);
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream ss(cleaned);
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError(what + ": expected non-negative integers, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Json integer_json(const Integer& z) { return z.fits_slong_p() ? Json(z.get_si()) : Json(z.get_str()); }

Json ranks_json(const std::vector<std::size_t>& ranks) { return Json(ranks); }

Json poly_report(const NcPoly& p) { return Json{{"terms", p.size()}, {"polynomial", poly_to_json(p)}}; }

// --- verbs -----------------------------------------------------------------

Outcome verb_cperm(const Options& o, Inputs& in, bool determinant) {
  const LabeledDigraph g = load_graph(o, in);
  Outcome out;
  out.results["n"] = g.n();
  NcPoly p;
  if (o.method == "brute") {
    p = cperm_brute(g, determinant);
  } else if (o.method == "abp") {
    CpermAbpStats stats;
    const Abp abp = build_cperm_abp(g, determinant, o.cap, &stats);
    p = expand_abp(abp);
    out.results["abp_size"] = abp.size();
    out.results["size_bound"] = stats.bound;
  } else {
    throw UsageError("--method must be brute or abp");
  }
  out.results.update(poly_report(p));
  if (o.check) {
    const bool equal = p == (o.method == "brute" ? expand_abp(build_cperm_abp(g, determinant, o.cap)) : cperm_brute(g, determinant));
    out.results["equal"] = equal;
    out.passed = equal;
  }
  return out;
}

Outcome verb_abp_build(const Options& o, Inputs& in) {
  const LabeledDigraph g = load_graph(o, in);
  CpermAbpStats stats;
  const Abp abp = build_cperm_abp(g, o.is_signed, o.cap, &stats);
  Outcome out;
  out.results["n"] = g.n();
  out.results["near"] = stats.near;
  out.results["nodes"] = stats.nodes;
  out.results["max_pending"] = stats.max_pending;
  out.results["size_bound"] = stats.bound;
  out.results["abp"] = abp_to_json(abp);
  out.passed = stats.nodes <= stats.bound;
  if (o.check) {
    const bool equal = expand_abp(abp) == cperm_brute(g, o.is_signed);
    out.results["equal"] = equal;
    out.passed = out.passed && equal;
  }
  return out;
}

Outcome verb_abp_expand(const Options& o, Inputs& in) {
  const Abp abp = load_abp(in, o.abp, "--abp");
  Outcome out;
  out.results["size"] = abp.size();
  out.results["length"] = abp.length();
  out.results.update(poly_report(expand_abp(abp)));
  return out;
}

Outcome verb_abp_expsum(const Options& o, Inputs& in) {
  const Abp abp = load_abp(in, o.abp, "--abp");
  if (o.ys.empty()) throw UsageError("the Y-variables are required (--y)");
  in.literal("y", o.ys);
  const Word ys = parse_word(o.ys);
  ReadOnceCertificate cert;
  if (!o.cuts.empty()) {
    in.literal("cuts", o.cuts);
    cert.cuts = parse_sizes(o.cuts, "--cuts");
    cert.block_vars = ys;
  } else {
    const auto inferred = infer_certificate(abp, std::set<VarId>(ys.begin(), ys.end()));
    if (!inferred) throw UsageError("the Y-variables are not read in disjoint consecutive blocks; pass --cuts");
    cert = *inferred;
  }
  validate_certificate(abp, cert);
  const Abp q = exp_sum_readonce(abp, cert);
  Outcome out;
  out.results["cuts"] = cert.cuts;
  Json order = Json::array();
  for (VarId y : cert.block_vars) order.push_back(var_name(y));
  out.results["block_vars"] = order;
  out.results["input_size"] = abp.size();
  out.results["result_size"] = q.size();
  const bool size_ok = q.size() <= 2 * abp.size();
  out.results["size_ok"] = size_ok;
  const NcPoly p = expand_abp(q);
  out.results.update(poly_report(p));
  out.results["abp"] = abp_to_json(q);
  out.passed = size_ok;
  if (o.check) {
    const bool equal = p == exp_sum_brute(expand_abp(abp), cert.block_vars);
    out.results["equal"] = equal;
    out.passed = out.passed && equal;
  }
  return out;
}

Outcome verb_abp_hadamard(const Options& o, Inputs& in) {
  const Abp a = load_abp(in, o.abp_a, "--a");
  const Abp b = load_abp(in, o.abp_b, "--b");
  const Abp h = hadamard_abp(a, b);
  Outcome out;
  out.results["size_a"] = a.size();
  out.results["size_b"] = b.size();
  out.results["result_size"] = h.size();
  const bool size_ok = h.size() <= a.size() * b.size();
  out.results["size_ok"] = size_ok;
  const NcPoly p = expand_abp(h);
  out.results.update(poly_report(p));
  out.results["abp"] = abp_to_json(h);
  out.passed = size_ok;
  if (o.check) {
    const bool equal = p == hadamard_poly(expand_abp(a), expand_abp(b));
    out.results["equal"] = equal;
    out.passed = out.passed && equal;
  }
  return out;
}

Word load_word(const Options& o, Inputs& in) {
  in.literal("word", o.word);
  return parse_word(o.word);
}

Outcome verb_mcoeff(const Options& o, Inputs& in) {
  const Circuit c = load_circuit(o, in);
  const Word m = load_word(o, in);
  const McoeffResult r = mcoeff(c, m);
  Outcome out;
  out.results["word"] = Json::array();
  for (VarId v : m) out.results["word"].push_back(var_name(v));
  out.results["coeff"] = format_rational(r.value);
  out.results["ops"] = r.ops;
  const auto d = static_cast<std::uint64_t>(std::max<std::size_t>(m.size(), 1));
  const std::uint64_t bound = 64 * d * d * d * c.size();
  out.results["ops_bound"] = bound;
  out.passed = r.ops <= bound;
  if (o.check) {
    const bool equal = expand_circuit(c, c.degree()).coeff(m) == r.value;
    out.results["equal"] = equal;
    out.passed = out.passed && equal;
  }
  return out;
}

Outcome verb_pcoeff(const Options& o, Inputs& in) {
  const Circuit c = load_circuit(o, in);
  const Word m = load_word(o, in);
  const Circuit q = pcoeff_circuit(c, m);
  Outcome out;
  out.results["input_size"] = c.size();
  out.results["result_size"] = q.size();
  const NcPoly p = expand_circuit(q, std::max(q.degree(), 0));
  out.results.update(poly_report(p));
  out.results["circuit"] = circuit_to_json(q);
  if (o.check) {
    const bool equal = p == prefix_quotient(expand_circuit(c, c.degree()), m);
    out.results["equal"] = equal;
    out.passed = equal;
  }
  return out;
}

Outcome verb_pc_check(const Options& o, Inputs& in) {
  const Circuit c = load_circuit(o, in);
  const int d = o.degree > 0 ? o.degree : std::max(c.degree(), 1);
  in.literal("degree", std::to_string(d));
  const std::set<VarId> vars = c.variables();
  const std::vector<VarId> alphabet(vars.begin(), vars.end());
  const double words = std::pow(static_cast<double>(std::max<std::size_t>(alphabet.size(), 1)), d);
  if (words > 200000) throw UsageError("too many query words; lower --degree");
  const Circuit pc = pc_circuit(c, d, alphabet);
  std::size_t checked = 0;
  Json mismatches = Json::array();
  for (const Word& w : all_words(alphabet, 1, d)) {
    ++checked;
    const Rational via_pc =
        eval_circuit<Rational>(pc, IndicatorEncoding::of_word(w, static_cast<std::size_t>(d), alphabet).assignment(), 1);
    const Rational direct = mcoeff(c, w).value;
    if (via_pc != direct) {
      Json names = Json::array();
      for (VarId v : w) names.push_back(var_name(v));
      mismatches.push_back(Json{{"word", names}, {"pc", format_rational(via_pc)}, {"mcoeff", format_rational(direct)}});
    }
  }
  Outcome out;
  out.results["degree"] = d;
  out.results["alphabet_size"] = alphabet.size();
  out.results["pc_size"] = pc.size();
  const std::uint64_t bound = 64ULL * static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d) * c.size();
  out.results["size_bound"] = bound;
  out.results["words_checked"] = checked;
  out.results["mismatches"] = mismatches;
  out.passed = mismatches.empty() && pc.size() <= bound;
  return out;
}

Outcome verb_nisan(const Options& o, Inputs& in) {
  Outcome out;
  if (!o.graph.empty() || o.complete > 0) {
    const LabeledDigraph g = load_graph(o, in);
    const NcPoly f = cperm_brute(g, false);
    const auto ranks = nisan_ranks(f);
    const std::size_t b = abp_complexity(f);
    out.results["n"] = g.n();
    out.results["cut"] = nullptr;
    out.results["near"] = near(g);
    out.results["ranks"] = ranks_json(ranks);
    out.results["B"] = b;
    out.results["log2_B"] = std::log2(static_cast<double>(b));
    return out;
  }
  const Involution pi = load_involution(o, in);
  const NisanReport r = nisan_report(pi);
  out.results["n"] = r.n;
  out.results["cut"] = r.cut;
  out.results["near"] = r.near;
  out.results["ranks"] = ranks_json(r.ranks);
  out.results["B"] = r.complexity;
  out.results["log2_B"] = r.log2_complexity;
  if (o.check) {
    const Abp abp = build_cperm_abp(involution_graph(pi), false, 2);
    const bool lower = std::log2(static_cast<double>(r.complexity)) >= r.cut;
    const bool upper = r.complexity <= abp.size();
    out.results["abp_nodes"] = abp.size();
    out.results["sandwich"] = lower && upper;
    out.passed = lower && upper;
  }
  return out;
}

Outcome verb_cut(const Options& o, Inputs& in) {
  const Involution pi = load_involution(o, in);
  Outcome out;
  out.results["n"] = pi.n();
  out.results["cut"] = cut(pi);
  out.results["interval_edges"] = interval_edges(pi);
  out.results["near"] = near(involution_graph(pi));
  return out;
}

Outcome verb_near(const Options& o, Inputs& in) {
  const LabeledDigraph g = load_graph(o, in);
  Outcome out;
  out.results["n"] = g.n();
  out.results["near"] = near(g);
  out.results["components"] = scc_sorted(g);
  return out;
}

Outcome verb_hard_involution(const Options& o, Inputs& in) {
  if (o.n <= 0) throw UsageError("--n is required");
  in.literal("n", std::to_string(o.n));
  const Involution pi = hard_involution(o.n);
  Outcome out;
  out.results["n"] = o.n;
  out.results["images"] = pi.images();
  out.results["cut"] = cut(pi);
  return out;
}

Outcome verb_involution_experiment(const Options& o, Inputs& in, std::ostream& err) {
  if (!o.seed) throw UsageError("involution-experiment is randomized and requires --seed");
  const int n = o.n > 0 ? o.n : 400;
  if (n % 2 != 0) throw UsageError("--n must be even");
  in.literal("n", std::to_string(n));
  in.literal("samples", std::to_string(o.samples));
  in.literal("seed", std::to_string(*o.seed));
  const double threshold = n / 3.0 - std::pow(static_cast<double>(n), 0.75);
  std::mt19937_64 seeder(*o.seed);
  int hits = 0;
  int lemma_failures = 0;
  int min_cut = n;
  int max_cut = 0;
  for (int s = 0; s < o.samples; ++s) {
    const Involution pi = random_involution(n, seeder());
    const int c = cut(pi);
    if (c >= threshold) ++hits;
    if (c > near(involution_graph(pi)) || static_cast<long long>(c) * n < interval_edges(pi)) ++lemma_failures;
    min_cut = std::min(min_cut, c);
    max_cut = std::max(max_cut, c);
  }
  const double fraction = o.samples > 0 ? static_cast<double>(hits) / o.samples : 0.0;
  err << "n=" << n << " samples=" << o.samples << " threshold=" << threshold << " fraction=" << fraction
      << " cut range=[" << min_cut << "," << max_cut << "]\n";
  Outcome out;
  out.results["n"] = n;
  out.results["samples"] = o.samples;
  out.results["threshold"] = threshold;
  out.results["hits"] = hits;
  out.results["fraction"] = fraction;
  out.results["min_cut"] = min_cut;
  out.results["max_cut"] = max_cut;
  out.results["lemma_failures"] = lemma_failures;
  out.passed = fraction >= 0.9 && lemma_failures == 0;
  return out;
}

Outcome verb_satcount(const Options& o, Inputs& in) {
  const Cnf cnf = load_cnf(o, in);
  const SatCountReport r = count_sat(cnf);
  Outcome out;
  out.results["count"] = integer_json(r.count);
  out.results["program_length"] = r.program_length;
  out.results["block_order"] = r.block_order;
  out.results["max_cycle_len"] = r.max_cycle_len;
  if (o.naive) {
    const Integer naive = naive_count(cnf);
    out.results["naive_count"] = integer_json(naive);
    out.results["equal"] = naive == r.count;
    out.passed = naive == r.count;
  }
  return out;
}

Outcome verb_sym_check(const Options& o, Inputs& in) {
  if (o.n <= 0) throw UsageError("--n is required");
  in.literal("n", std::to_string(o.n));
  Outcome out;
  out.results["n"] = o.n;
  out.results["mode"] = o.mode;
  NcPoly lhs;
  NcPoly rhs;
  if (o.mode == "hadamard") {
    const HadamardPipeline h = perm_via_hadamard(o.n, o.is_signed);
    lhs = h.result;
    rhs = cperm_brute(complete_graph(o.n), o.is_signed);
    out.results["signed"] = o.is_signed;
    out.results["product_size"] = h.product_size;
  } else if (o.mode == "rank-one") {
    const RankOneCheck r = rank_one_cperm(o.n);
    lhs = r.cperm;
    rhs = r.sym;
    out.results["max_rank"] = r.max_rank;
  } else if (o.mode == "gen") {
    const SymVariant v = parse_sym_variant(o.variant);
    const int d = o.d > 0 ? o.d : o.n;
    lhs = gen_sym(v, o.n, d);
    rhs = lhs;
    out.results["variant"] = std::string(to_string(v));
    out.results["d"] = d;
  } else {
    throw UsageError("--mode must be hadamard, rank-one or gen");
  }
  out.results["lhs"] = poly_to_json(lhs);
  out.results["rhs"] = poly_to_json(rhs);
  out.results["equal"] = lhs == rhs;
  out.passed = lhs == rhs;
  return out;
}

// --- self-tests ------------------------------------------------------------

NcPoly two_cycle_poly(bool sign) {
  const NcPoly a = NcPoly::monomial({edge_var(1, 1), edge_var(2, 2)});
  const NcPoly b = NcPoly::monomial({edge_var(1, 2), edge_var(2, 1)});
  return sign ? a - b : a + b;
}

void selftest_cperm(bool sign, std::vector<std::string>& f, std::size_t& n) {
  const auto g = involution_graph(Involution::from_pairs(2, {{1, 2}}));
  expect(cperm_brute(g, sign) == two_cycle_poly(sign), "2-cycle formula", f, n);
  for (int k = 1; k <= 3; ++k) {
    const auto gk = complete_graph(k);
    expect(expand_abp(build_cperm_abp(gk, sign)) == cperm_brute(gk, sign), "complete graph " + std::to_string(k), f, n);
  }
  InstanceGen gen(1);
  for (int t = 0; t < 10; ++t) {
    const auto g2 = gen.component_graph(gen.uniform(1, 7), 3);
    expect(expand_abp(build_cperm_abp(g2, sign, 3)) == cperm_brute(g2, sign), "random graph " + std::to_string(t), f, n);
  }
}

void selftest_abp_build(std::vector<std::string>& f, std::size_t& n) {
  for (int size : {2, 4, 6}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto g = involution_graph(random_involution(size, seed));
      for (bool sign : {false, true}) {
        CpermAbpStats stats;
        const Abp abp = build_cperm_abp(g, sign, 6, &stats);
        expect(expand_abp(abp) == cperm_brute(g, sign) && stats.nodes <= stats.bound,
               "involution n=" + std::to_string(size) + " seed=" + std::to_string(seed), f, n);
      }
    }
  }
}

void selftest_abp_expand(std::vector<std::string>& f, std::size_t& n) {
  InstanceGen gen(2);
  const std::vector<VarId> xs{var("x1"), var("x2"), var("x3")};
  for (int t = 0; t < 20; ++t) {
    const Abp abp = gen.abp(gen.uniform(1, 5), 3, xs);
    std::map<VarId, Rational> point;
    for (VarId v : xs) point[v] = gen.small_rational();
    expect(substitute(expand_abp(abp), point).coeff({}) == eval_abp<Rational>(abp, point, 1),
           "expand vs eval " + std::to_string(t), f, n);
    expect(expand_abp(abp_from_json(abp_to_json(abp))) == expand_abp(abp), "JSON round trip " + std::to_string(t), f, n);
  }
}

void selftest_abp_expsum(std::vector<std::string>& f, std::size_t& n) {
  InstanceGen gen(3);
  const std::vector<VarId> xs{var("x1"), var("x2")};
  const std::vector<VarId> ys{var("y1"), var("y2"), var("y3"), var("y4"), var("y5"), var("y6")};
  for (int t = 0; t < 30; ++t) {
    const auto [abp, cert] = gen.certified_abp(gen.uniform(1, 6), xs, ys);
    const Abp q = exp_sum_readonce(abp, cert);
    expect(q.size() <= 2 * abp.size() && expand_abp(q) == exp_sum_brute(expand_abp(abp), cert.block_vars),
           "certified ABP " + std::to_string(t), f, n);
  }
}

void selftest_abp_hadamard(std::vector<std::string>& f, std::size_t& n) {
  InstanceGen gen(4);
  const std::vector<VarId> xs{var("x1"), var("x2")};
  for (int t = 0; t < 30; ++t) {
    const Abp a = gen.abp(gen.uniform(1, 5), 3, xs);
    const Abp b = gen.abp(gen.uniform(1, 5), 3, xs);
    const Abp h = hadamard_abp(a, b);
    expect(h.size() <= a.size() * b.size() && expand_abp(h) == hadamard_poly(expand_abp(a), expand_abp(b)),
           "random pair " + std::to_string(t), f, n);
  }
}

void selftest_circuits(int which, std::vector<std::string>& f, std::size_t& n) {
  InstanceGen gen(5);
  const std::vector<VarId> alphabet{var("x1"), var("x2")};
  for (int t = 0; t < 20; ++t) {
    const int d = gen.uniform(1, 4);
    const Circuit c = gen.circuit(gen.uniform(3, 25), d, alphabet);
    const NcPoly p = expand_circuit(c, d);
    const Circuit pc = which == 2 ? pc_circuit(c, d, alphabet) : Circuit{};
    bool ok = true;
    for (const Word& w : all_words(alphabet, which == 2 ? 1 : 0, d)) {
      if (which == 0) ok = ok && mcoeff(c, w).value == p.coeff(w);
      if (which == 1 && w.size() <= 2) ok = ok && expand_circuit(pcoeff_circuit(c, w), d) == prefix_quotient(p, w);
      if (which == 2) {
        ok = ok && eval_circuit<Rational>(pc, IndicatorEncoding::of_word(w, static_cast<std::size_t>(d), alphabet).assignment(), 1) ==
                       p.coeff(w);
      }
    }
    expect(ok, "random circuit " + std::to_string(t), f, n);
  }
}

void selftest_nisan(std::vector<std::string>& f, std::size_t& n) {
  const NisanReport r = nisan_report(Involution::from_images({2, 1}));
  expect(r.ranks == std::vector<std::size_t>{1, 2, 1} && r.complexity == 4, "single 2-cycle", f, n);
  for (int size : {4, 6, 8}) {
    const auto ranks = nisan_ranks(cperm_brute(involution_graph(hard_involution(size)), false));
    expect(ranks[static_cast<std::size_t>(size / 2)] == (std::size_t{1} << (size / 2)), "hard involution n=" + std::to_string(size), f, n);
  }
  expect(abp_complexity(NcPoly::monomial({var("x1"), var("x2")})) == 3, "single monomial", f, n);
}

void selftest_cut_near(std::vector<std::string>& f, std::size_t& n) {
  expect(cut(Involution::from_pairs(4, {{1, 2}, {3, 4}})) == 1, "adjacent cut", f, n);
  expect(cut(Involution::from_pairs(4, {{1, 3}, {2, 4}})) == 2, "interleaved cut", f, n);
  expect(near(involution_graph(hard_involution(8))) == 4, "hard near", f, n);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int size = 2 * static_cast<int>(1 + seed % 20);
    const Involution pi = random_involution(size, seed);
    const int c = cut(pi);
    expect(c <= near(involution_graph(pi)) && static_cast<long long>(c) * size >= interval_edges(pi),
           "lemmas seed " + std::to_string(seed), f, n);
  }
}

void selftest_hard(std::vector<std::string>& f, std::size_t& n) {
  for (int size = 2; size <= 20; size += 2) expect(cut(hard_involution(size)) == size / 2, "n=" + std::to_string(size), f, n);
}

void selftest_experiment(std::vector<std::string>& f, std::size_t& n) {
  expect(random_involution(100, 7).images() == random_involution(100, 7).images(), "determinism", f, n);
  int hits = 0;
  for (std::uint64_t s = 0; s < 50; ++s) hits += cut(random_involution(400, s)) >= 400 / 3.0 - std::pow(400.0, 0.75);
  expect(hits >= 45, "threshold fraction", f, n);
}

void selftest_satcount(std::vector<std::string>& f, std::size_t& n) {
  expect(count_sat(Cnf{2, {{Literal{1, true}, Literal{2, true}}}}).count == 3, "(x1 or x2)", f, n);
  expect(count_sat(Cnf{1, {{Literal{1, true}}, {Literal{1, false}}}}).count == 0, "contradiction", f, n);
  for (int m = 1; m <= 2; ++m) {
    for (int k = 0; k <= 2; ++k) {
      for (const Cnf& cnf : all_two_cnfs(m, k)) {
        expect(count_sat(cnf).count == naive_count(cnf), "exhaustive m=" + std::to_string(m) + " k=" + std::to_string(k), f, n);
      }
    }
  }
  expect(s3::r() * s3::r() * s3::r() == s3::identity() && s3::t() * s3::r() * s3::t() == RatMatrix::zero(2, 2), "S3 relations", f, n);
}

void selftest_sym(std::vector<std::string>& f, std::size_t& n) {
  for (int size : {2, 3}) {
    for (bool sign : {false, true}) {
      expect(perm_via_hadamard(size, sign).result == cperm_brute(complete_graph(size), sign),
             "hadamard n=" + std::to_string(size) + (sign ? " signed" : ""), f, n);
    }
  }
  for (int size = 1; size <= 3; ++size) {
    const RankOneCheck r = rank_one_cperm(size);
    expect(r.cperm == r.sym && r.max_rank <= 1, "rank one n=" + std::to_string(size), f, n);
  }
}

// --- dispatch --------------------------------------------------------------

struct VerbSpec {
  std::string name;
  std::string description;
  std::vector<std::string> options;
  Verb run;
  Selftest selftest;
};

void add_options(CLI::App* sub, Options& o, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    if (name == "graph") sub->add_option("--graph", o.graph, "graph text file");
    else if (name == "involution") sub->add_option("--involution", o.involution, "involution images, e.g. \"2 1\", or a file");
    else if (name == "hard") sub->add_option("--hard", o.hard, "use pi(i) = i + n/2 on n points");
    else if (name == "complete") sub->add_option("--complete", o.complete, "complete graph on n vertices");
    else if (name == "abp") sub->add_option("--abp", o.abp, "ABP JSON file");
    else if (name == "ab") {
      sub->add_option("--a", o.abp_a, "first ABP JSON file");
      sub->add_option("--b", o.abp_b, "second ABP JSON file");
    } else if (name == "circuit") sub->add_option("--circuit", o.circuit, "circuit JSON file");
    else if (name == "word") sub->add_option("--word", o.word, "query word, names separated by spaces or commas");
    else if (name == "y") {
      sub->add_option("--y", o.ys, "Y-variables, in block order when --cuts is given");
      sub->add_option("--cuts", o.cuts, "block boundaries 0,i1,...,im");
    } else if (name == "cnf") sub->add_option("--cnf", o.cnf, "DIMACS CNF file");
    else if (name == "method") sub->add_option("--method", o.method, "brute or abp");
    else if (name == "cap") sub->add_option("--cap", o.cap, "largest allowed component size");
    else if (name == "signed") sub->add_flag("--signed", o.is_signed, "signed (determinant) variant");
    else if (name == "n") sub->add_option("--n", o.n, "size parameter");
    else if (name == "d") sub->add_option("--d", o.d, "degree for --mode gen");
    else if (name == "degree") sub->add_option("--degree", o.degree, "degree bound d");
    else if (name == "samples") sub->add_option("--samples", o.samples, "number of samples");
    else if (name == "seed") sub->add_option("--seed", o.seed, "random seed (required)");
    else if (name == "naive") sub->add_flag("--naive", o.naive, "also run the naive counter and compare");
    else if (name == "check") sub->add_flag("--check", o.check, "compare against the brute-force oracle");
    else if (name == "mode") sub->add_option("--mode", o.mode, "hadamard, rank-one or gen");
    else if (name == "variant") sub->add_option("--variant", o.variant, "cayley, nc or snc");
  }
  sub->add_flag("--selftest", o.selftest, "run this verb's oracle corpus");
}

std::vector<VerbSpec> verbs() {
  const std::vector<std::string> graph_in{"graph", "involution", "hard", "complete"};
  auto with = [](std::vector<std::string> base, std::initializer_list<std::string> more) {
    base.insert(base.end(), more);
    return base;
  };
  return {
      {"cperm", "Cayley permanent of a labelled graph", with(graph_in, {"method", "cap", "check"}),
       [](const Options& o, Inputs& in, std::ostream&) { return verb_cperm(o, in, false); },
       [](auto& f, auto& n) { selftest_cperm(false, f, n); }},
      {"cdet", "Cayley determinant of a labelled graph", with(graph_in, {"method", "cap", "check"}),
       [](const Options& o, Inputs& in, std::ostream&) { return verb_cperm(o, in, true); },
       [](auto& f, auto& n) { selftest_cperm(true, f, n); }},
      {"abp-build", "bounded-component ABP for the Cayley permanent", with(graph_in, {"signed", "cap", "check"}),
       [](const Options& o, Inputs& in, std::ostream&) { return verb_abp_build(o, in); }, selftest_abp_build},
      {"abp-expand", "expand an ABP into a polynomial", {"abp"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_abp_expand(o, in); }, selftest_abp_expand},
      {"abp-expsum", "read-once exponential sum over the Y-variables", {"abp", "y", "check"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_abp_expsum(o, in); }, selftest_abp_expsum},
      {"abp-hadamard", "Hadamard product of two ABPs", {"ab", "check"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_abp_hadamard(o, in); }, selftest_abp_hadamard},
      {"mcoeff", "coefficient of a word in a circuit", {"circuit", "word", "check"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_mcoeff(o, in); },
       [](auto& f, auto& n) { selftest_circuits(0, f, n); }},
      {"pcoeff", "prefix-quotient circuit", {"circuit", "word", "check"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_pcoeff(o, in); },
       [](auto& f, auto& n) { selftest_circuits(1, f, n); }},
      {"pc-check", "coefficient-polynomial circuit against mcoeff", {"circuit", "degree"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_pc_check(o, in); },
       [](auto& f, auto& n) { selftest_circuits(2, f, n); }},
      {"nisan", "Nisan ranks of the Cayley permanent", with(graph_in, {"check"}),
       [](const Options& o, Inputs& in, std::ostream&) { return verb_nisan(o, in); }, selftest_nisan},
      {"cut", "cut parameter of an involution", {"involution", "hard"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_cut(o, in); }, selftest_cut_near},
      {"near", "near parameter of a graph", graph_in,
       [](const Options& o, Inputs& in, std::ostream&) { return verb_near(o, in); }, selftest_cut_near},
      {"hard-involution", "the involution i -> i + n/2", {"n"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_hard_involution(o, in); }, selftest_hard},
      {"involution-experiment", "cut statistics of random involutions", {"n", "samples", "seed"},
       [](const Options& o, Inputs& in, std::ostream& err) { return verb_involution_experiment(o, in, err); },
       selftest_experiment},
      {"satcount", "#SAT through the block Cayley permanent", {"cnf", "naive"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_satcount(o, in); }, selftest_satcount},
      {"sym-check", "symmetric-family identities", {"n", "d", "signed", "mode", "variant"},
       [](const Options& o, Inputs& in, std::ostream&) { return verb_sym_check(o, in); }, selftest_sym},
  };
}

Json params_json(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto results = opt->results();
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    if (opt->get_expected_min() == 0) {
      params[name] = true;
    } else {
      params[name] = results.size() == 1 ? Json(results.front()) : Json(results);
    }
  }
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-commutative permanent toolkit"};
  app.require_subcommand(1);
  Options opts;
  const auto specs = verbs();
  std::vector<CLI::App*> subs;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    add_options(sub, opts, spec.options);
    subs.push_back(sub);
  }

  std::vector<std::string> argv_store{"ncperm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::size_t which = 0;
  while (which < subs.size() && !subs[which]->parsed()) ++which;
  const VerbSpec& spec = specs[which];

  Json report;
  report["verb"] = spec.name;
  report["params"] = params_json(subs[which]);
  int code = 0;
  try {
    if (opts.selftest) {
      std::vector<std::string> failures;
      std::size_t cases = 0;
      spec.selftest(failures, cases);
      report["input_digest"] = sha256_hex(spec.name + " selftest");
      report["selftest"] = true;
      report["cases"] = cases;
      report["failures"] = failures;
      report["passed"] = failures.empty();
      code = failures.empty() ? 0 : 1;
      for (const auto& f : failures) err << spec.name << " selftest failed: " << f << '\n';
    } else {
      Inputs inputs;
      Outcome outcome = spec.run(opts, inputs, err);
      report["input_digest"] = sha256_hex(spec.name + "\n" + inputs.hashed());
      report.update(outcome.results);
      report["passed"] = outcome.passed;
      code = outcome.passed ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << spec.name << ": " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << spec.name << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << spec.name << ": " << e.what() << '\n';
    return 2;
  }
  out << report.dump(2) << '\n';
  return code;
}

}  // namespace ncperm
