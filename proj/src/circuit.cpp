#include "ncperm/circuit.hpp"

#include <algorithm>
#include <string>

namespace ncperm {

GateId Circuit::push(Gate g, int degree) {
  gates_.push_back(std::move(g));
  degree_.push_back(degree);
  return gates_.size() - 1;
}

GateId Circuit::add_var(VarId v, const Rational& coeff) {
  return push(Gate{GateKind::Var, v, coeff, 0, 0}, 1);
}

GateId Circuit::add_const(const Rational& value) { return push(Gate{GateKind::Const, {}, value, 0, 0}, 0); }

GateId Circuit::add_add(GateId left, GateId right) {
  if (left >= size() || right >= size()) throw std::out_of_range("gate child out of range");
  return push(Gate{GateKind::Add, {}, 1, left, right}, std::max(degree_[left], degree_[right]));
}

GateId Circuit::add_mul(GateId left, GateId right) {
  if (left >= size() || right >= size()) throw std::out_of_range("gate child out of range");
  return push(Gate{GateKind::Mul, {}, 1, left, right}, degree_[left] + degree_[right]);
}

void Circuit::set_output(GateId g) {
  if (g >= size()) throw std::out_of_range("output gate out of range");
  output_ = g;
}

GateId Circuit::output() const {
  if (output_) return *output_;
  if (gates_.empty()) throw std::logic_error("empty circuit has no output");
  return gates_.size() - 1;
}

std::set<VarId> Circuit::variables() const {
  std::set<VarId> vars;
  for (const auto& g : gates_) {
    if (g.kind == GateKind::Var) vars.insert(g.var);
  }
  return vars;
}

Circuit Circuit::pruned() const {
  const GateId out = output();
  std::vector<char> live(size(), 0);
  live[out] = 1;
  for (GateId g = size(); g-- > 0;) {
    if (!live[g]) continue;
    const Gate& gate = gates_[g];
    if (gate.kind == GateKind::Add || gate.kind == GateKind::Mul) live[gate.left] = live[gate.right] = 1;
  }
  Circuit c;
  std::vector<GateId> remap(size());
  for (GateId g = 0; g < size(); ++g) {
    if (!live[g]) continue;
    const Gate& gate = gates_[g];
    switch (gate.kind) {
      case GateKind::Var: remap[g] = c.add_var(gate.var, gate.coeff); break;
      case GateKind::Const: remap[g] = c.add_const(gate.coeff); break;
      case GateKind::Add: remap[g] = c.add_add(remap[gate.left], remap[gate.right]); break;
      case GateKind::Mul: remap[g] = c.add_mul(remap[gate.left], remap[gate.right]); break;
    }
  }
  c.set_output(remap[out]);
  return c;
}

Circuit make_circuit(const std::vector<Gate>& gates, GateId output) {
  const std::size_t n = gates.size();
  if (output >= n) throw std::invalid_argument("output gate " + std::to_string(output) + " does not exist");
  for (std::size_t i = 0; i < n; ++i) {
    const Gate& g = gates[i];
    if ((g.kind == GateKind::Add || g.kind == GateKind::Mul) && (g.left >= n || g.right >= n)) {
      throw std::invalid_argument("gate " + std::to_string(i) + " has a dangling child");
    }
  }
  // Iterative post-order DFS; state 1 = on stack, 2 = emitted.
  std::vector<int> state(n, 0);
  std::vector<GateId> remap(n);
  Circuit c;
  for (std::size_t root = 0; root < n; ++root) {
    if (state[root]) continue;
    std::vector<std::pair<GateId, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [g, expanded] = stack.back();
      stack.pop_back();
      const Gate& gate = gates[g];
      const bool internal = gate.kind == GateKind::Add || gate.kind == GateKind::Mul;
      if (expanded) {
        state[g] = 2;
        switch (gate.kind) {
          case GateKind::Var: remap[g] = c.add_var(gate.var, gate.coeff); break;
          case GateKind::Const: remap[g] = c.add_const(gate.coeff); break;
          case GateKind::Add: remap[g] = c.add_add(remap[gate.left], remap[gate.right]); break;
          case GateKind::Mul: remap[g] = c.add_mul(remap[gate.left], remap[gate.right]); break;
        }
        continue;
      }
      if (state[g] == 2) continue;
      if (state[g] == 1) throw std::invalid_argument("circuit has a cycle through gate " + std::to_string(g));
      state[g] = 1;
      stack.push_back({g, true});
      if (internal) {
        for (GateId child : {gate.right, gate.left}) {
          if (state[child] == 1) throw std::invalid_argument("circuit has a cycle through gate " + std::to_string(child));
          if (state[child] == 0) stack.push_back({child, false});
        }
      }
    }
  }
  c.set_output(remap[output]);
  return c;
}

NcPoly expand_circuit(const Circuit& c, int cap) {
  if (c.degree() > cap) {
    throw std::invalid_argument("circuit formal degree " + std::to_string(c.degree()) + " exceeds cap " +
                                std::to_string(cap));
  }
  std::vector<NcPoly> value(c.size());
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    switch (gate.kind) {
      case GateKind::Var: value[g] = NcPoly::monomial({gate.var}, gate.coeff); break;
      case GateKind::Const: value[g] = NcPoly(gate.coeff); break;
      case GateKind::Add: value[g] = value[gate.left] + value[gate.right]; break;
      case GateKind::Mul: value[g] = poly_mul(value[gate.left], value[gate.right]); break;
    }
  }
  return value[c.output()];
}

namespace {

/// Per-gate table of coefficients of the subwords m[l..k), 0 <= l <= k <= d.
class SubwordTable {
 public:
  explicit SubwordTable(std::size_t d) : d_(d), cells_((d + 1) * (d + 1)) {}
  Rational& operator()(std::size_t l, std::size_t k) { return cells_[l * (d_ + 1) + k]; }
  const Rational& operator()(std::size_t l, std::size_t k) const { return cells_[l * (d_ + 1) + k]; }

 private:
  std::size_t d_;
  std::vector<Rational> cells_;
};

std::vector<SubwordTable> subword_tables(const Circuit& c, const Word& m, std::uint64_t& ops) {
  const std::size_t d = m.size();
  std::vector<SubwordTable> table(c.size(), SubwordTable(d));
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    auto& t = table[g];
    switch (gate.kind) {
      case GateKind::Var:
        for (std::size_t l = 0; l < d; ++l) {
          if (m[l] == gate.var) t(l, l + 1) = gate.coeff;
        }
        break;
      case GateKind::Const:
        for (std::size_t l = 0; l <= d; ++l) t(l, l) = gate.coeff;
        break;
      case GateKind::Add:
        for (std::size_t l = 0; l <= d; ++l) {
          for (std::size_t k = l; k <= d; ++k) {
            t(l, k) = table[gate.left](l, k) + table[gate.right](l, k);
            ++ops;
          }
        }
        break;
      case GateKind::Mul:
        for (std::size_t l = 0; l <= d; ++l) {
          for (std::size_t k = l; k <= d; ++k) {
            Rational sum = 0;
            for (std::size_t j = l; j <= k; ++j) {
              sum += table[gate.left](l, j) * table[gate.right](j, k);
              ops += 2;
            }
            t(l, k) = std::move(sum);
          }
        }
        break;
    }
  }
  return table;
}

/// Circuit builder where std::nullopt stands for the zero polynomial.
class ZeroAwareBuilder {
 public:
  using Node = std::optional<GateId>;

  Node constant(const Rational& value) {
    if (value == 0) return std::nullopt;
    auto [it, inserted] = consts_.try_emplace(value, 0);
    if (inserted) it->second = c_.add_const(value);
    return it->second;
  }
  Node var(VarId v, const Rational& coeff = 1) {
    if (coeff == 0) return std::nullopt;
    return c_.add_var(v, coeff);
  }
  Node add(Node a, Node b) {
    if (!a) return b;
    if (!b) return a;
    return c_.add_add(*a, *b);
  }
  Node mul(Node a, Node b) {
    if (!a || !b) return std::nullopt;
    return c_.add_mul(*a, *b);
  }
  Node scale(const Rational& s, Node a) {
    if (!a || s == 0) return std::nullopt;
    if (s == 1) return a;
    return mul(constant(s), a);
  }
  Circuit finish(Node out) {
    if (!out) out = c_.add_const(0);
    c_.set_output(*out);
    return c_.pruned();
  }

 private:
  Circuit c_;
  std::map<Rational, GateId> consts_;
};

}  // namespace

McoeffResult mcoeff(const Circuit& c, const Word& m) {
  McoeffResult result;
  const auto table = subword_tables(c, m, result.ops);
  result.value = table[c.output()](0, m.size());
  return result;
}

Circuit pcoeff_circuit(const Circuit& c, const Word& m) {
  std::uint64_t ops = 0;
  const auto mc = subword_tables(c, m, ops);
  const std::size_t d = m.size();
  ZeroAwareBuilder b;
  // suffix[g][i]: circuit for pcoeff(p_g, m[i..d)); i = d is p_g itself.
  std::vector<std::vector<ZeroAwareBuilder::Node>> suffix(c.size(), std::vector<ZeroAwareBuilder::Node>(d + 1));
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    auto& s = suffix[g];
    switch (gate.kind) {
      case GateKind::Var:
        s[d] = b.var(gate.var, gate.coeff);
        if (d >= 1 && m[d - 1] == gate.var) s[d - 1] = b.constant(gate.coeff);
        break;
      case GateKind::Const:
        s[d] = b.constant(gate.coeff);
        break;
      case GateKind::Add:
        for (std::size_t i = 0; i <= d; ++i) s[i] = b.add(suffix[gate.left][i], suffix[gate.right][i]);
        break;
      case GateKind::Mul: {
        const auto& left = suffix[gate.left];
        const auto& right = suffix[gate.right];
        for (std::size_t i = 0; i <= d; ++i) {
          ZeroAwareBuilder::Node acc = b.mul(left[i], right[d]);
          for (std::size_t j = i; j < d; ++j) acc = b.add(acc, b.scale(mc[gate.left](i, j), right[j]));
          s[i] = acc;
        }
        break;
      }
    }
  }
  return b.finish(suffix[c.output()][0]);
}

IndicatorEncoding::IndicatorEncoding(std::size_t d, std::vector<VarId> alphabet)
    : d_(d), alphabet_(std::move(alphabet)), grid_(d_ * alphabet_.size(), 0) {}

IndicatorEncoding IndicatorEncoding::of_word(const Word& w, std::size_t d, std::vector<VarId> alphabet) {
  if (w.size() > d) throw std::invalid_argument("word longer than the degree bound");
  IndicatorEncoding enc(d, std::move(alphabet));
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    auto it = std::find(enc.alphabet_.begin(), enc.alphabet_.end(), w[pos]);
    if (it == enc.alphabet_.end()) throw std::invalid_argument("letter " + var_name(w[pos]) + " not in alphabet");
    enc.set(pos, static_cast<std::size_t>(it - enc.alphabet_.begin()), 1);
  }
  return enc;
}

void IndicatorEncoding::set(std::size_t pos, std::size_t letter, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("indicator entries are 0 or 1");
  grid_.at(pos * alphabet_.size() + letter) = bit;
}

std::optional<Word> IndicatorEncoding::decode() const {
  Word w;
  bool ended = false;
  for (std::size_t pos = 0; pos < d_; ++pos) {
    int ones = 0;
    std::size_t letter = 0;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      if (get(pos, i)) {
        ++ones;
        letter = i;
      }
    }
    if (ones > 1 || (ended && ones == 1)) return std::nullopt;
    if (ones == 0) {
      ended = true;
    } else {
      w.push_back(alphabet_[letter]);
    }
  }
  return w;
}

std::map<VarId, Rational> IndicatorEncoding::assignment() const {
  std::map<VarId, Rational> a;
  for (std::size_t pos = 0; pos < d_; ++pos) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) a[indicator_var(pos, i)] = get(pos, i);
  }
  return a;
}

VarId indicator_var(std::size_t pos, std::size_t letter) {
  return var("Y_" + std::to_string(pos + 1) + "_" + std::to_string(letter + 1));
}

Circuit pc_circuit(const Circuit& c, int d, std::vector<VarId> alphabet) {
  if (d < 1) throw std::invalid_argument("degree bound must be at least 1");
  if (c.degree() > d) {
    throw std::invalid_argument("circuit formal degree " + std::to_string(c.degree()) + " exceeds bound " +
                                std::to_string(d));
  }
  if (alphabet.empty()) {
    const auto vars = c.variables();
    alphabet.assign(vars.begin(), vars.end());
  }
  const auto D = static_cast<std::size_t>(d);
  const std::size_t n = alphabet.size();
  using Node = ZeroAwareBuilder::Node;
  ZeroAwareBuilder b;

  // Position guards: one-hot indicator for (pos, letter) and the all-zero test.
  std::vector<std::vector<Node>> indicator(D, std::vector<Node>(n));
  std::vector<Node> zero_row(D);
  const Node minus_one = b.constant(-1);
  const Node one = b.constant(1);
  for (std::size_t pos = 0; pos < D; ++pos) {
    std::vector<Node> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b.var(indicator_var(pos, i));
    Node guard = std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Node factor = b.add(one, b.mul(minus_one, b.mul(y[j], y[k])));
        guard = guard ? b.mul(guard, factor) : factor;
      }
    }
    for (std::size_t i = 0; i < n; ++i) indicator[pos][i] = guard ? b.mul(y[i], guard) : y[i];
    Node zr = std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      Node factor = b.add(one, b.mul(minus_one, y[i]));
      zr = zr ? b.mul(zr, factor) : factor;
    }
    zero_row[pos] = zr ? zr : one;
  }

  // comp[g][a][j]: degree-j component of pc_{p_g} read on positions a..a+j-1.
  const auto& degree = c.formal_degrees();
  std::vector<std::vector<std::vector<Node>>> comp(c.size());
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    auto& t = comp[g];
    t.assign(D + 1, std::vector<Node>(D + 1));
    const auto max_j = static_cast<std::size_t>(std::min(degree[g], d));
    switch (gate.kind) {
      case GateKind::Var: {
        auto it = std::find(alphabet.begin(), alphabet.end(), gate.var);
        if (it == alphabet.end()) break;
        const auto letter = static_cast<std::size_t>(it - alphabet.begin());
        for (std::size_t a = 0; a < D; ++a) t[a][1] = b.scale(gate.coeff, indicator[a][letter]);
        break;
      }
      case GateKind::Const:
        for (std::size_t a = 0; a <= D; ++a) t[a][0] = b.constant(gate.coeff);
        break;
      case GateKind::Add:
        for (std::size_t a = 0; a <= D; ++a) {
          for (std::size_t j = 0; j <= max_j && a + j <= D; ++j) {
            t[a][j] = b.add(comp[gate.left][a][j], comp[gate.right][a][j]);
          }
        }
        break;
      case GateKind::Mul:
        for (std::size_t a = 0; a <= D; ++a) {
          for (std::size_t j = 0; j <= max_j && a + j <= D; ++j) {
            Node acc = std::nullopt;
            for (std::size_t s = 0; s <= j; ++s) {
              acc = b.add(acc, b.mul(comp[gate.left][a][s], comp[gate.right][a + s][j - s]));
            }
            t[a][j] = acc;
          }
        }
        break;
    }
  }

  // Rows D..d-1 must be empty for a degree-D word: suffix products of zero_row.
  std::vector<Node> tail_zero(D + 1);
  tail_zero[D] = one;
  for (std::size_t pos = D; pos-- > 0;) tail_zero[pos] = b.mul(zero_row[pos], tail_zero[pos + 1]);

  Node out = std::nullopt;
  const auto top = static_cast<std::size_t>(std::min(c.degree(), d));
  for (std::size_t len = 1; len <= top; ++len) out = b.add(out, b.mul(comp[c.output()][0][len], tail_zero[len]));
  return b.finish(out);
}

}  // namespace ncperm
