#include "ncperm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace ncperm {

namespace {

void check_vertex(int n, int v) {
  if (v < 1 || v > n) throw std::out_of_range("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

/// (-1)^(size - #cycles) for a permutation given as successor indices.
int permutation_sign(const std::vector<int>& succ_index) {
  std::vector<char> seen(succ_index.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < succ_index.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(succ_index[j])) seen[j] = 1;
  }
  return (succ_index.size() - cycles) % 2 == 0 ? 1 : -1;
}

std::string format_component(const std::vector<int>& comp) {
  std::string s = "{";
  for (std::size_t i = 0; i < comp.size(); ++i) s += (i ? "," : "") + std::to_string(comp[i]);
  return s + "}";
}

}  // namespace

LabeledDigraph::LabeledDigraph(int n) : n_(n), succ_(static_cast<std::size_t>(n) + 1) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
}

void LabeledDigraph::add_edge(int i, int j, EdgeLabel label) {
  check_vertex(n_, i);
  check_vertex(n_, j);
  auto [it, inserted] = edges_.try_emplace({i, j}, std::move(label));
  if (!inserted) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  auto& s = succ_[static_cast<std::size_t>(i)];
  s.insert(std::upper_bound(s.begin(), s.end(), j), j);
}

const EdgeLabel& LabeledDigraph::label(int i, int j) const {
  auto it = edges_.find({i, j});
  if (it == edges_.end()) throw std::out_of_range("no edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

bool LabeledDigraph::has_distinct_labels() const {
  std::set<VarId> seen;
  for (const auto& [e, label] : edges_) {
    if (const auto* v = std::get_if<VarId>(&label); v && !seen.insert(*v).second) return false;
  }
  return true;
}

Involution Involution::from_images(const std::vector<int>& images) {
  const int n = static_cast<int>(images.size());
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("involution needs an even, positive number of points");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i) {
    const int j = images[static_cast<std::size_t>(i - 1)];
    if (j < 1 || j > n) throw std::invalid_argument("image " + std::to_string(j) + " outside 1.." + std::to_string(n));
    if (j == i) throw std::invalid_argument("involution has fixed point " + std::to_string(i));
    if (images[static_cast<std::size_t>(j - 1)] != i) {
      throw std::invalid_argument("not an involution: pi(pi(" + std::to_string(i) + ")) != " + std::to_string(i));
    }
    if (i < j) pairs.emplace_back(i, j);
  }
  return from_pairs(n, std::move(pairs));
}

Involution Involution::from_pairs(int n, std::vector<std::pair<int, int>> pairs) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("involution needs an even, positive number of points");
  Involution pi;
  pi.n_ = n;
  pi.image_.assign(static_cast<std::size_t>(n), 0);
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    check_vertex(n, a);
    check_vertex(n, b);
    if (a == b || pi.image_[static_cast<std::size_t>(a - 1)] || pi.image_[static_cast<std::size_t>(b - 1)]) {
      throw std::invalid_argument("transpositions must be disjoint and non-trivial");
    }
    pi.image_[static_cast<std::size_t>(a - 1)] = b;
    pi.image_[static_cast<std::size_t>(b - 1)] = a;
  }
  if (std::find(pi.image_.begin(), pi.image_.end(), 0) != pi.image_.end()) {
    throw std::invalid_argument("transpositions do not cover 1.." + std::to_string(n));
  }
  std::sort(pairs.begin(), pairs.end());
  pi.pairs_ = std::move(pairs);
  return pi;
}

LabeledDigraph involution_graph(const Involution& pi) {
  LabeledDigraph g(pi.n());
  for (int v = 1; v <= pi.n(); ++v) g.add_var_edge(v, v);
  for (const auto& [a, b] : pi.pairs()) {
    g.add_var_edge(a, b);
    g.add_var_edge(b, a);
  }
  return g;
}

LabeledDigraph complete_graph(int n) {
  LabeledDigraph g(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) g.add_var_edge(i, j);
  }
  return g;
}

std::vector<std::vector<int>> scc_sorted(const LabeledDigraph& g) {
  // Iterative Tarjan.
  const int n = g.n();
  std::vector<int> index(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> low(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  for (int root = 1; root <= n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto& succ = g.successors(v);
      if (next < succ.size()) {
        const int w = succ[next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

int near(const LabeledDigraph& g) {
  int best = 0;
  for (const auto& comp : scc_sorted(g)) best = std::max(best, comp.back() - comp.front());
  return best;
}

int cut(const Involution& pi) {
  std::vector<int> delta(static_cast<std::size_t>(pi.n()) + 2, 0);
  for (const auto& [a, b] : pi.pairs()) {
    ++delta[static_cast<std::size_t>(a)];
    --delta[static_cast<std::size_t>(b) + 1];
  }
  int best = 0;
  int running = 0;
  for (int k = 1; k <= pi.n(); ++k) {
    running += delta[static_cast<std::size_t>(k)];
    best = std::max(best, running);
  }
  return best;
}

long long interval_edges(const Involution& pi) {
  const auto& p = pi.pairs();
  long long count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (std::max(p[i].first, p[j].first) <= std::min(p[i].second, p[j].second)) ++count;
    }
  }
  return count;
}

NcPoly cperm_brute(const LabeledDigraph& g, bool sign) {
  const int n = g.n();
  NcPoly result;
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> succ(static_cast<std::size_t>(n), 0);
  Word word;
  std::vector<Rational> coeff{Rational(1)};

  std::function<void(int)> extend = [&](int row) {
    if (row > n) {
      Rational c = coeff.back();
      if (sign) {
        std::vector<int> idx(succ.size());
        for (std::size_t i = 0; i < succ.size(); ++i) idx[i] = succ[i] - 1;
        c *= permutation_sign(idx);
      }
      result.add_term(word, c);
      return;
    }
    for (int j : g.successors(row)) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const EdgeLabel& label = g.label(row, j);
      const bool is_var = std::holds_alternative<VarId>(label);
      const Rational next = is_var ? coeff.back() : coeff.back() * std::get<Rational>(label);
      if (next == 0) continue;
      used[static_cast<std::size_t>(j)] = 1;
      succ[static_cast<std::size_t>(row - 1)] = j;
      if (is_var) word.push_back(std::get<VarId>(label));
      coeff.push_back(next);
      extend(row + 1);
      coeff.pop_back();
      if (is_var) word.pop_back();
      used[static_cast<std::size_t>(j)] = 0;
    }
  };
  extend(1);
  return result;
}

std::vector<ComponentCover> component_covers(const LabeledDigraph& g, const std::vector<int>& vertices) {
  const std::size_t k = vertices.size();
  std::vector<ComponentCover> covers;
  std::vector<int> choice(k, 0);
  std::vector<char> used(k, 0);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) {
      covers.push_back(ComponentCover{choice, permutation_sign(choice)});
      return;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || !g.has_edge(vertices[i], vertices[j])) continue;
      used[j] = 1;
      choice[i] = static_cast<int>(j);
      extend(i + 1);
      used[j] = 0;
    }
  };
  extend(0);
  return covers;
}

Abp build_cperm_abp(const LabeledDigraph& g, bool sign, int cap, CpermAbpStats* stats) {
  const int n = g.n();
  const auto comps = scc_sorted(g);
  for (const auto& comp : comps) {
    if (static_cast<int>(comp.size()) > cap) {
      throw std::invalid_argument("component " + format_component(comp) + " has " + std::to_string(comp.size()) +
                                  " vertices, more than the cap " + std::to_string(cap));
    }
  }
  if (cap > 255) throw std::invalid_argument("component cap must be at most 255");

  std::vector<std::size_t> comp_of(static_cast<std::size_t>(n) + 1);
  std::vector<int> comp_starting_at(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = c;
    comp_starting_at[static_cast<std::size_t>(comps[c].front())] = static_cast<int>(c);
  }
  std::vector<std::vector<ComponentCover>> covers(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) covers[c] = component_covers(g, comps[c]);

  // pending[p]: vertices >= p+1 of components guessed before position p+1,
  // in component order then ascending. This fixes the meaning of a state.
  std::vector<std::vector<int>> pending(static_cast<std::size_t>(n) + 1);
  {
    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
      pending[static_cast<std::size_t>(p)] = current;
      const int pos = p + 1;
      if (const int c = comp_starting_at[static_cast<std::size_t>(pos)]; c >= 0) {
        current.insert(current.end(), comps[static_cast<std::size_t>(c)].begin(), comps[static_cast<std::size_t>(c)].end());
      }
      current.erase(std::find(current.begin(), current.end(), pos));
    }
    pending[static_cast<std::size_t>(n)] = current;
  }

  using State = std::vector<std::uint8_t>;
  Abp abp(static_cast<std::size_t>(n));
  std::map<State, NodeId> layer{{State{}, abp.source()}};
  std::size_t max_pending = 0;

  for (int p = 0; p < n; ++p) {
    const int pos = p + 1;
    const bool last = p + 1 == n;
    std::map<State, NodeId> next;
    auto node_for = [&](const State& s) -> NodeId {
      if (last) return abp.sink();  // only the empty state survives at layer n
      auto [it, inserted] = next.try_emplace(s, 0);
      if (inserted) it->second = abp.add_node(static_cast<std::size_t>(p) + 1);
      return it->second;
    };
    auto emit = [&](NodeId from, const State& expanded, std::size_t slot, int sgn) {
      const std::size_t c = comp_of[static_cast<std::size_t>(pos)];
      const int succ = comps[c][expanded[slot]];
      State rest = expanded;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(slot));
      if (last && !rest.empty()) return;
      max_pending = std::max(max_pending, expanded.size());
      const EdgeLabel& label = g.label(pos, succ);
      const NodeId to = node_for(rest);
      if (const auto* v = std::get_if<VarId>(&label)) {
        abp.add_edge(from, to, *v, Rational(sgn));
      } else {
        abp.add_constant_edge(from, to, std::get<Rational>(label) * sgn);
      }
    };

    const auto& before = pending[static_cast<std::size_t>(p)];
    for (const auto& [state, from] : layer) {
      if (const int c = comp_starting_at[static_cast<std::size_t>(pos)]; c >= 0) {
        // Guess a cycle cover of the component whose smallest vertex is pos;
        // pos is its first vertex, so its slot follows the old pending list.
        for (const auto& cover : covers[static_cast<std::size_t>(c)]) {
          State expanded = state;
          for (int s : cover.successor) expanded.push_back(static_cast<std::uint8_t>(s));
          emit(from, expanded, before.size(), sign ? cover.sign : 1);
        }
      } else {
        const auto slot = static_cast<std::size_t>(std::find(before.begin(), before.end(), pos) - before.begin());
        emit(from, state, slot, 1);
      }
    }
    layer = std::move(next);
  }

  Abp result = abp.pruned();
  if (stats) {
    stats->nodes = result.size();
    stats->max_pending = max_pending;
    stats->near = near(g);
    const long double base = static_cast<long double>(cap) + 1;
    const long double bound = (static_cast<long double>(n) + 1) * std::pow(base, stats->near + cap);
    stats->bound = bound >= static_cast<long double>(std::numeric_limits<std::size_t>::max())
                       ? std::numeric_limits<std::size_t>::max()
                       : static_cast<std::size_t>(bound);
  }
  return result;
}

}  // namespace ncperm
