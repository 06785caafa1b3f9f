#include "ncperm/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ncperm {

int InstanceGen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool InstanceGen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational InstanceGen::small_rational(int num_range, int max_den) {
  Rational q(uniform(-num_range, num_range), uniform(1, max_den));
  q.canonicalize();
  return q;
}

RatMatrix InstanceGen::matrix(std::size_t rows, std::size_t cols, int lo, int hi) {
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(lo, hi);
  }
  return m;
}

NcPoly InstanceGen::poly(const std::vector<VarId>& vars, int terms, int max_degree) {
  NcPoly p;
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int len = uniform(0, max_degree);
    for (int i = 0; i < len; ++i) w.push_back(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]);
    p.add_term(w, small_rational());
  }
  return p;
}

LabeledDigraph InstanceGen::component_graph(int n, int max_comp) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng_);
  std::vector<std::vector<int>> groups;
  for (std::size_t pos = 0; pos < perm.size();) {
    const auto size = static_cast<std::size_t>(uniform(1, max_comp));
    groups.emplace_back(perm.begin() + static_cast<long>(pos),
                        perm.begin() + static_cast<long>(std::min(perm.size(), pos + size)));
    pos += size;
  }
  LabeledDigraph g(n);
  auto label = [&](int i, int j) -> EdgeLabel {
    if (coin(0.1)) {
      Rational q = small_rational();
      if (q == 0) q = 1;
      return q;
    }
    return edge_var(i, j);
  };
  for (const auto& group : groups) {
    for (int i : group) {
      for (int j : group) {
        if (coin(i == j ? 0.8 : 0.7)) g.add_edge(i, j, label(i, j));
      }
    }
  }
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      for (int i : groups[a]) {
        for (int j : groups[b]) {
          if (coin(0.15)) g.add_edge(i, j, label(i, j));
        }
      }
    }
  }
  return g;
}

namespace {

// Connects consecutive layers so every node has an in- and an out-edge.
void wire_layers(Abp& abp, const std::vector<std::vector<NodeId>>& layers, InstanceGen& gen,
                 const std::function<Label(std::size_t)>& label_for_layer) {
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    const auto& cur = layers[l];
    const auto& next = layers[l + 1];
    for (NodeId u : cur) {
      abp.add_edge(u, next[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(next.size()) - 1))],
                   label_for_layer(l));
    }
    for (NodeId v : next) abp.add_edge(cur[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(cur.size()) - 1))], v, label_for_layer(l));
    for (NodeId u : cur) {
      for (NodeId v : next) {
        if (gen.coin(0.3)) abp.add_edge(u, v, label_for_layer(l));
      }
    }
  }
}

std::vector<std::vector<NodeId>> make_layers(Abp& abp, std::size_t length, int max_width, InstanceGen& gen) {
  std::vector<std::vector<NodeId>> layers(length + 1);
  layers[0] = {abp.source()};
  layers[length] = {abp.sink()};
  for (std::size_t l = 1; l < length; ++l) {
    const int width = gen.uniform(1, max_width);
    for (int k = 0; k < width; ++k) layers[l].push_back(abp.add_node(l));
  }
  return layers;
}

}  // namespace

Abp InstanceGen::abp(int length, int max_width, const std::vector<VarId>& vars) {
  if (length < 1) throw std::invalid_argument("abp length must be >= 1");
  Abp out(static_cast<std::size_t>(length));
  const auto layers = make_layers(out, static_cast<std::size_t>(length), max_width, *this);
  wire_layers(out, layers, *this, [&](std::size_t) {
    Rational c = small_rational();
    if (c == 0) c = 1;
    if (coin(0.15)) return Label{c, std::nullopt};
    return Label{c, vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]};
  });
  return out;
}

InstanceGen::Certified InstanceGen::certified_abp(int m, const std::vector<VarId>& xs, const std::vector<VarId>& ys) {
  if (m < 1 || static_cast<std::size_t>(m) > ys.size()) throw std::invalid_argument("bad Y count");
  std::vector<VarId> order(ys.begin(), ys.begin() + m);
  std::shuffle(order.begin(), order.end(), rng_);
  std::vector<std::size_t> cuts{0};
  std::vector<int> block_len;
  for (int j = 0; j < m; ++j) {
    block_len.push_back(uniform(1, 2));
    cuts.push_back(cuts.back() + static_cast<std::size_t>(block_len.back()));
  }
  const std::size_t length = cuts.back() + static_cast<std::size_t>(uniform(0, 1));
  Abp out(length);
  const auto layers = make_layers(out, length, 3, *this);
  wire_layers(out, layers, *this, [&](std::size_t l) {
    Rational c = small_rational();
    if (c == 0) c = 1;
    std::size_t block = 0;
    while (block < static_cast<std::size_t>(m) && l >= cuts[block + 1]) ++block;
    if (block < static_cast<std::size_t>(m) && coin(0.4)) return Label{c, order[block]};
    if (coin(0.15)) return Label{c, std::nullopt};
    return Label{c, xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))]};
  });
  return Certified{std::move(out), ReadOnceCertificate{cuts, order}};
}

Circuit InstanceGen::circuit(int size, int max_degree, const std::vector<VarId>& vars) {
  if (size < 1) throw std::invalid_argument("circuit size must be >= 1");
  Circuit c;
  for (int g = 0; g < size; ++g) {
    const auto existing = static_cast<int>(c.size());
    const bool leaf = existing < 2 || coin(existing < 4 ? 0.6 : 0.25);
    if (leaf) {
      if (coin(0.15)) {
        c.add_const(small_rational());
      } else {
        Rational coeff = coin(0.7) ? Rational(1) : small_rational();
        if (coeff == 0) coeff = 1;
        c.add_var(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))], coeff);
      }
      continue;
    }
    // Bias children toward recent gates so the output depends on most of them.
    auto pick = [&] {
      const int lo = std::max(0, existing - 6);
      return static_cast<GateId>(coin(0.7) ? uniform(lo, existing - 1) : uniform(0, existing - 1));
    };
    const GateId a = pick();
    const GateId b = pick();
    const auto& deg = c.formal_degrees();
    if (coin(0.5) && deg[a] + deg[b] <= max_degree) {
      c.add_mul(a, b);
    } else {
      c.add_add(a, b);
    }
  }
  return c;
}

Cnf InstanceGen::two_cnf(int max_vars, int max_clauses, int max_occ) {
  Cnf cnf;
  cnf.num_vars = uniform(1, max_vars);
  const int clauses = uniform(1, max_clauses);
  std::vector<int> occ(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> avail;
    for (int v = 1; v <= cnf.num_vars; ++v) {
      if (occ[static_cast<std::size_t>(v)] < max_occ) avail.push_back(v);
    }
    if (avail.empty()) break;
    std::shuffle(avail.begin(), avail.end(), rng_);
    const int width = std::min<int>(static_cast<int>(avail.size()), coin(0.8) ? 2 : 1);
    Clause clause;
    for (int k = 0; k < width; ++k) {
      const int v = avail[static_cast<std::size_t>(k)];
      ++occ[static_cast<std::size_t>(v)];
      clause.push_back(Literal{v, coin()});
    }
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

NcPoly exp_sum_brute(const NcPoly& p, const std::vector<VarId>& ys) {
  if (ys.size() > 20) throw std::length_error("exp_sum_brute limited to 20 variables");
  NcPoly total;
  for (std::uint32_t e = 0; e < (std::uint32_t{1} << ys.size()); ++e) {
    std::map<VarId, Rational> values;
    for (std::size_t j = 0; j < ys.size(); ++j) values[ys[j]] = (e >> j) & 1U;
    total += substitute(p, values);
  }
  return total;
}

std::vector<Word> all_words(const std::vector<VarId>& alphabet, int lo, int hi) {
  std::vector<Word> out;
  std::vector<Word> level{Word{}};
  for (int len = 0; len <= hi; ++len) {
    if (len >= lo) out.insert(out.end(), level.begin(), level.end());
    if (len == hi) break;
    std::vector<Word> next;
    for (const auto& w : level) {
      for (VarId v : alphabet) {
        Word x = w;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    }
    level = std::move(next);
  }
  return out;
}

NcPoly prefix_quotient(const NcPoly& f, const Word& m) {
  NcPoly out;
  for (const auto& [w, c] : f.terms()) {
    if (w.size() >= m.size() && std::equal(m.begin(), m.end(), w.begin())) {
      out.add_term(Word(w.begin() + static_cast<long>(m.size()), w.end()), c);
    }
  }
  return out;
}

std::vector<Cnf> all_two_cnfs(int m, int k) {
  std::vector<Clause> clauses;
  for (int a = 1; a <= m; ++a) {
    for (int pa = 0; pa < 2; ++pa) {
      clauses.push_back({Literal{a, pa == 1}});
      for (int b = a + 1; b <= m; ++b) {
        for (int pb = 0; pb < 2; ++pb) clauses.push_back({Literal{a, pa == 1}, Literal{b, pb == 1}});
      }
    }
  }
  std::vector<Cnf> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    Cnf cnf;
    cnf.num_vars = m;
    for (std::size_t i : idx) cnf.clauses.push_back(clauses[i]);
    out.push_back(std::move(cnf));
    // Next non-decreasing index sequence: clause order does not change the count.
    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] + 1 == clauses.size()) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < idx.size(); ++q) idx[q] = idx[pos - 1];
  }
  return out;
}

}  // namespace ncperm
