#include "ncperm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace ncperm {

ParseError::ParseError(std::string source, std::size_t line, const std::string& expectation)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": expected " + expectation),
      source_(std::move(source)),
      line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::vector<std::string> word_names(const Word& w) {
  std::vector<std::string> names;
  names.reserve(w.size());
  for (VarId v : w) names.push_back(var_name(v));
  return names;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text, char comment) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    ++number;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == comment) continue;
    out.emplace_back(number, line);
    if (end == text.size()) break;
  }
  return out;
}

bool parse_int(const std::string& tok, long long& out) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

const Json& field(const Json& j, const char* key, const std::string& source, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(source, 0, "field '" + std::string(key) + "' in " + where);
  return j.at(key);
}

std::size_t as_index(const Json& j, const std::string& source, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(source, 0, "non-negative integer for " + what);
  return j.get<std::size_t>();
}

Rational as_rational(const Json& j, const std::string& source, const std::string& what) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(source, 0, "rational \"num/den\" for " + what);
}

std::string as_name(const Json& j, const std::string& source, const std::string& what) {
  if (!j.is_string() || j.get<std::string>().empty()) throw ParseError(source, 0, "variable name for " + what);
  return j.get<std::string>();
}

}  // namespace

Json poly_to_json(const NcPoly& p) {
  std::vector<std::pair<std::vector<std::string>, Rational>> rows;
  rows.reserve(p.size());
  for (const auto& [w, c] : p.terms()) rows.emplace_back(word_names(w), c);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json out = Json::array();
  for (const auto& [names, c] : rows) out.push_back(Json{{"word", names}, {"coeff", format_rational(c)}});
  return out;
}

NcPoly poly_from_json(const Json& j, const std::string& source) {
  if (!j.is_array()) throw ParseError(source, 0, "a JSON array of terms");
  NcPoly p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "term " + std::to_string(i + 1);
    const Json& word = field(j[i], "word", source, where);
    if (!word.is_array()) throw ParseError(source, 0, "array of names in " + where);
    Word w;
    for (const auto& name : word) w.push_back(var(as_name(name, source, where)));
    p.add_term(w, as_rational(field(j[i], "coeff", source, where), source, where));
  }
  return p;
}

Json abp_to_json(const Abp& abp) {
  Json layers = Json::array();
  for (const auto& layer : abp.layers()) layers.push_back(layer);
  Json edges = Json::array();
  for (const auto& e : abp.edges()) {
    Json v = e.label.var ? Json(var_name(*e.label.var)) : Json(nullptr);
    edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"coeff", format_rational(e.label.coeff)}, {"var", v}});
  }
  return Json{{"layers", layers}, {"edges", edges}, {"source", abp.source()}, {"sink", abp.sink()}};
}

Abp abp_from_json(const Json& j, const std::string& source) {
  const Json& jl = field(j, "layers", source, "ABP");
  if (!jl.is_array()) throw ParseError(source, 0, "array of layers");
  std::vector<std::vector<NodeId>> layers;
  for (const auto& layer : jl) {
    if (!layer.is_array()) throw ParseError(source, 0, "array of node ids per layer");
    std::vector<NodeId> ids;
    for (const auto& id : layer) ids.push_back(as_index(id, source, "node id"));
    layers.push_back(std::move(ids));
  }
  const Json& je = field(j, "edges", source, "ABP");
  if (!je.is_array()) throw ParseError(source, 0, "array of edges");
  std::vector<AbpEdge> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string where = "edge " + std::to_string(i + 1);
    AbpEdge e;
    e.from = as_index(field(je[i], "from", source, where), source, where);
    e.to = as_index(field(je[i], "to", source, where), source, where);
    e.label.coeff = je[i].contains("coeff") ? as_rational(je[i]["coeff"], source, where) : Rational(1);
    if (je[i].contains("var") && !je[i]["var"].is_null()) e.label.var = var(as_name(je[i]["var"], source, where));
    edges.push_back(std::move(e));
  }
  const NodeId s = as_index(field(j, "source", source, "ABP"), source, "source");
  const NodeId t = as_index(field(j, "sink", source, "ABP"), source, "sink");
  try {
    return make_abp(std::move(layers), std::move(edges), s, t);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, std::string("a valid layered ABP (") + e.what() + ")");
  } catch (const std::out_of_range& e) {
    throw ParseError(source, 0, std::string("a valid layered ABP (") + e.what() + ")");
  }
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    Json jg{{"id", g}};
    switch (gate.kind) {
      case GateKind::Var:
        jg["kind"] = "var";
        jg["var"] = var_name(gate.var);
        if (gate.coeff != 1) jg["coeff"] = format_rational(gate.coeff);
        break;
      case GateKind::Const:
        jg["kind"] = "const";
        jg["value"] = format_rational(gate.coeff);
        break;
      case GateKind::Add:
      case GateKind::Mul:
        jg["kind"] = gate.kind == GateKind::Add ? "add" : "mul";
        jg["left"] = gate.left;
        jg["right"] = gate.right;
        break;
    }
    gates.push_back(std::move(jg));
  }
  return Json{{"gates", gates}, {"output", c.output()}};
}

Circuit circuit_from_json(const Json& j, const std::string& source) {
  const Json& jg = field(j, "gates", source, "circuit");
  if (!jg.is_array() || jg.empty()) throw ParseError(source, 0, "non-empty array of gates");
  std::vector<std::optional<Gate>> slots(jg.size());
  for (std::size_t i = 0; i < jg.size(); ++i) {
    const std::string where = "gate " + std::to_string(i + 1);
    const std::size_t id = as_index(field(jg[i], "id", source, where), source, where);
    if (id >= jg.size() || slots[id]) throw ParseError(source, 0, "unique gate ids in 0.." + std::to_string(jg.size() - 1));
    const Json& kind = field(jg[i], "kind", source, where);
    Gate g;
    if (kind == "var") {
      g.kind = GateKind::Var;
      g.var = var(as_name(field(jg[i], "var", source, where), source, where));
      if (jg[i].contains("coeff")) g.coeff = as_rational(jg[i]["coeff"], source, where);
    } else if (kind == "const") {
      g.kind = GateKind::Const;
      g.coeff = as_rational(field(jg[i], "value", source, where), source, where);
    } else if (kind == "add" || kind == "mul") {
      g.kind = kind == "add" ? GateKind::Add : GateKind::Mul;
      g.left = as_index(field(jg[i], "left", source, where), source, where);
      g.right = as_index(field(jg[i], "right", source, where), source, where);
    } else {
      throw ParseError(source, 0, "kind var, const, add or mul in " + where);
    }
    slots[id] = g;
  }
  std::vector<Gate> gates;
  for (auto& g : slots) gates.push_back(*g);
  const GateId out = as_index(field(j, "output", source, "circuit"), source, "output");
  try {
    return make_circuit(gates, out);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, std::string("an acyclic circuit (") + e.what() + ")");
  }
}

LabeledDigraph parse_graph(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, '#');
  if (lines.empty()) throw ParseError(source, 1, "vertex count n");
  long long n = 0;
  {
    const auto toks = split_ws(lines[0].second);
    if (toks.size() != 1 || !parse_int(toks[0], n) || n < 1 || n > 100000) {
      throw ParseError(source, lines[0].first, "a single positive vertex count n");
    }
  }
  LabeledDigraph g(static_cast<int>(n));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, line] = lines[k];
    const auto toks = split_ws(line);
    long long i = 0;
    long long jv = 0;
    if (toks.size() < 3 || !parse_int(toks[0], i) || !parse_int(toks[1], jv) || i < 1 || jv < 1 || i > n || jv > n) {
      throw ParseError(source, number, "\"i j NAME\" or \"i j = num/den\" with 1 <= i, j <= " + std::to_string(n));
    }
    EdgeLabel label;
    if (toks[2] == "=") {
      if (toks.size() != 4) throw ParseError(source, number, "a rational after '='");
      try {
        label = parse_rational(toks[3]);
      } catch (const std::invalid_argument&) {
        throw ParseError(source, number, "a rational num/den after '='");
      }
    } else {
      if (toks.size() != 3) throw ParseError(source, number, "exactly one variable name");
      label = var(toks[2]);
    }
    if (g.has_edge(static_cast<int>(i), static_cast<int>(jv))) {
      throw ParseError(source, number, "no duplicate edge " + toks[0] + " " + toks[1]);
    }
    g.add_edge(static_cast<int>(i), static_cast<int>(jv), label);
  }
  return g;
}

std::string format_graph(const LabeledDigraph& g) {
  std::ostringstream out;
  out << g.n() << '\n';
  for (const auto& [ij, label] : g.edges()) {
    out << ij.first << ' ' << ij.second << ' ';
    if (const auto* v = std::get_if<VarId>(&label)) {
      out << var_name(*v);
    } else {
      out << "= " << format_rational(std::get<Rational>(label));
    }
    out << '\n';
  }
  return out.str();
}

Involution parse_involution(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, '#');
  if (lines.size() != 1) throw ParseError(source, lines.empty() ? 1 : lines[1].first, "exactly one line of images");
  std::vector<int> images;
  for (const auto& tok : split_ws(lines[0].second)) {
    long long v = 0;
    if (!parse_int(tok, v) || v < 1 || v > 1000000) throw ParseError(source, lines[0].first, "positive integers");
    images.push_back(static_cast<int>(v));
  }
  try {
    return Involution::from_images(images);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, lines[0].first, std::string("a fixed-point-free involution (") + e.what() + ")");
  }
}

Cnf parse_dimacs(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, 'c');
  if (lines.empty()) throw ParseError(source, 1, "header \"p cnf m k\"");
  const auto header = split_ws(lines[0].second);
  long long m = 0;
  long long k = 0;
  if (header.size() != 4 || header[0] != "p" || header[1] != "cnf" || !parse_int(header[2], m) ||
      !parse_int(header[3], k) || m < 0 || k < 0) {
    throw ParseError(source, lines[0].first, "header \"p cnf m k\"");
  }
  Cnf cnf;
  cnf.num_vars = static_cast<int>(m);
  Clause current;
  std::size_t last_line = lines[0].first;
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const auto& [number, line] = lines[idx];
    last_line = number;
    if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] == '%') break;
    for (const auto& tok : split_ws(line)) {
      long long lit = 0;
      if (!parse_int(tok, lit)) throw ParseError(source, number, "integer literal, got '" + tok + "'");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long long v = lit < 0 ? -lit : lit;
      if (v > m) throw ParseError(source, number, "variable index <= " + std::to_string(m) + ", got " + tok);
      current.push_back(Literal{static_cast<int>(v), lit > 0});
    }
  }
  if (!current.empty()) throw ParseError(source, last_line, "clause terminated by 0");
  if (static_cast<long long>(cnf.clauses.size()) != k) {
    throw ParseError(source, last_line, std::to_string(k) + " clauses as declared, found " + std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

std::string format_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (const auto& lit : clause) out << (lit.positive ? lit.var : -lit.var) << ' ';
    out << "0\n";
  }
  return out.str();
}

Word parse_word(std::string_view text) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  Word w;
  for (const auto& tok : split_ws(cleaned)) w.push_back(var(tok));
  return w;
}

}  // namespace ncperm
