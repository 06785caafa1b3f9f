#include "ncperm/abp.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace ncperm {

Abp::Abp(std::size_t length) {
  if (length == 0) throw std::invalid_argument("an ABP needs at least one layer boundary");
  layers_.resize(length + 1);
  source_ = add_node(0);
  sink_ = add_node(length);
}

NodeId Abp::add_node(std::size_t layer) {
  if (layer >= layers_.size()) throw std::out_of_range("layer " + std::to_string(layer) + " out of range");
  const NodeId id = layer_of_.size();
  layer_of_.push_back(layer);
  layers_[layer].push_back(id);
  return id;
}

void Abp::add_edge(NodeId from, NodeId to, Label label) {
  if (from >= size() || to >= size()) throw std::out_of_range("edge endpoint out of range");
  if (layer_of_[to] != layer_of_[from] + 1) {
    throw std::invalid_argument("edge " + std::to_string(from) + "->" + std::to_string(to) +
                                " does not cross exactly one layer boundary");
  }
  if (label.coeff == 0) return;
  edges_.push_back(AbpEdge{from, to, std::move(label)});
}

std::set<VarId> Abp::variables() const {
  std::set<VarId> vars;
  for (const auto& e : edges_) {
    if (e.label.var) vars.insert(*e.label.var);
  }
  return vars;
}

std::vector<std::vector<std::size_t>> Abp::edges_by_layer() const {
  std::vector<std::vector<std::size_t>> by_layer(length());
  for (std::size_t i = 0; i < edges_.size(); ++i) by_layer[layer_of_[edges_[i].from]].push_back(i);
  return by_layer;
}

Abp Abp::pruned() const {
  std::vector<char> fwd(size(), 0);
  std::vector<char> bwd(size(), 0);
  fwd[source_] = 1;
  bwd[sink_] = 1;
  const auto by_layer = edges_by_layer();
  for (const auto& layer : by_layer) {
    for (std::size_t idx : layer) {
      if (fwd[edges_[idx].from]) fwd[edges_[idx].to] = 1;
    }
  }
  for (auto it = by_layer.rbegin(); it != by_layer.rend(); ++it) {
    for (std::size_t idx : *it) {
      if (bwd[edges_[idx].to]) bwd[edges_[idx].from] = 1;
    }
  }

  Abp out(length());
  std::vector<NodeId> remap(size(), static_cast<NodeId>(-1));
  remap[source_] = out.source();
  remap[sink_] = out.sink();
  for (std::size_t layer = 0; layer < layers_.size(); ++layer) {
    for (NodeId v : layers_[layer]) {
      if (v == source_ || v == sink_ || !fwd[v] || !bwd[v]) continue;
      remap[v] = out.add_node(layer);
    }
  }
  for (const auto& e : edges_) {
    if (fwd[e.from] && bwd[e.from] && fwd[e.to] && bwd[e.to]) out.add_edge(remap[e.from], remap[e.to], e.label);
  }
  return out;
}

Abp make_abp(std::vector<std::vector<NodeId>> layers, std::vector<AbpEdge> edges, NodeId source, NodeId sink) {
  if (layers.size() < 2) throw std::invalid_argument("an ABP needs at least two layers");
  std::size_t count = 0;
  for (const auto& l : layers) count += l.size();
  std::vector<std::size_t> layer_of(count, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (NodeId v : layers[i]) {
      if (v >= count) throw std::invalid_argument("node id " + std::to_string(v) + " is not in 0..N-1");
      if (layer_of[v] != static_cast<std::size_t>(-1)) {
        throw std::invalid_argument("node " + std::to_string(v) + " listed twice");
      }
      layer_of[v] = i;
    }
  }
  if (source >= count || layer_of[source] != 0) throw std::invalid_argument("source must be in layer 0");
  if (sink >= count || layer_of[sink] != layers.size() - 1) throw std::invalid_argument("sink must be in the last layer");

  Abp abp;
  abp.layers_ = std::move(layers);
  abp.layer_of_ = std::move(layer_of);
  abp.source_ = source;
  abp.sink_ = sink;
  for (auto& e : edges) abp.add_edge(e.from, e.to, std::move(e.label));
  return abp;
}

Abp layer_dag(std::size_t num_nodes, const std::vector<AbpEdge>& edges, NodeId source, NodeId sink) {
  if (source >= num_nodes || sink >= num_nodes) throw std::invalid_argument("source or sink out of range");
  if (source == sink) throw std::invalid_argument("source and sink must differ");
  std::vector<std::vector<std::size_t>> out(num_nodes);
  std::vector<std::size_t> indeg(num_nodes, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from >= num_nodes || edges[i].to >= num_nodes) throw std::invalid_argument("edge endpoint out of range");
    out[edges[i].from].push_back(i);
    ++indeg[edges[i].to];
  }
  std::vector<NodeId> order;
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < num_nodes; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (std::size_t idx : out[v]) {
      if (--indeg[edges[idx].to] == 0) ready.push_back(edges[idx].to);
    }
  }
  if (order.size() != num_nodes) throw std::invalid_argument("graph has a cycle");

  // Restrict to nodes on some s-t path, then layer by longest distance.
  std::vector<char> fwd(num_nodes, 0);
  std::vector<char> bwd(num_nodes, 0);
  fwd[source] = 1;
  bwd[sink] = 1;
  for (NodeId v : order) {
    if (!fwd[v]) continue;
    for (std::size_t idx : out[v]) fwd[edges[idx].to] = 1;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t idx : out[*it]) {
      if (bwd[edges[idx].to]) bwd[*it] = 1;
    }
  }
  auto live = [&](NodeId v) { return fwd[v] && bwd[v]; };
  if (!live(source)) {
    Abp empty(1);
    return empty;
  }

  std::vector<std::size_t> dist(num_nodes, 0);
  for (NodeId v : order) {
    if (!live(v)) continue;
    for (std::size_t idx : out[v]) {
      if (live(edges[idx].to)) dist[edges[idx].to] = std::max(dist[edges[idx].to], dist[v] + 1);
    }
  }

  Abp abp(dist[sink]);
  std::vector<NodeId> remap(num_nodes, static_cast<NodeId>(-1));
  remap[source] = abp.source();
  remap[sink] = abp.sink();
  for (NodeId v : order) {
    if (live(v) && v != source && v != sink) remap[v] = abp.add_node(dist[v]);
  }
  for (const auto& e : edges) {
    if (!live(e.from) || !live(e.to)) continue;
    NodeId from = remap[e.from];
    Label label = e.label;
    for (std::size_t layer = dist[e.from] + 1; layer < dist[e.to]; ++layer) {
      NodeId pass = abp.add_node(layer);
      abp.add_edge(from, pass, label);
      label = Label{1, std::nullopt};
      from = pass;
    }
    abp.add_edge(from, remap[e.to], label);
  }
  return abp;
}

NcPoly expand_abp(const Abp& abp, std::size_t max_terms) {
  std::vector<std::optional<NcPoly>> value(abp.size());
  value[abp.source()] = NcPoly(Rational(1));
  for (const auto& layer_edges : abp.edges_by_layer()) {
    for (std::size_t idx : layer_edges) {
      const AbpEdge& e = abp.edges()[idx];
      if (!value[e.from]) continue;
      NcPoly w = *value[e.from] * e.label.coeff;
      if (e.label.var) w = w * NcPoly::variable(*e.label.var);
      if (value[e.to]) {
        *value[e.to] += w;
      } else {
        value[e.to] = std::move(w);
      }
      if (value[e.to]->size() > max_terms) {
        throw std::length_error("ABP expansion exceeds " + std::to_string(max_terms) + " terms");
      }
    }
    // Layer values are no longer needed once their out-edges are consumed.
    if (!layer_edges.empty()) {
      const std::size_t layer = abp.layer_of(abp.edges()[layer_edges.front()].from);
      for (NodeId v : abp.layers()[layer]) {
        if (v != abp.sink()) value[v].reset();
      }
    }
  }
  return value[abp.sink()] ? *value[abp.sink()] : NcPoly();
}

Abp substitute(const Abp& abp, const std::map<VarId, Rational>& values) {
  Abp out(abp.length());
  std::vector<NodeId> remap(abp.size());
  remap[abp.source()] = out.source();
  remap[abp.sink()] = out.sink();
  for (std::size_t layer = 0; layer < abp.layers().size(); ++layer) {
    for (NodeId v : abp.layers()[layer]) {
      if (v != abp.source() && v != abp.sink()) remap[v] = out.add_node(layer);
    }
  }
  for (const auto& e : abp.edges()) {
    Label label = e.label;
    if (label.var) {
      if (auto it = values.find(*label.var); it != values.end()) {
        label = Label{label.coeff * it->second, std::nullopt};
      }
    }
    out.add_edge(remap[e.from], remap[e.to], std::move(label));
  }
  return out;
}

void validate_certificate(const Abp& abp, const ReadOnceCertificate& cert) {
  const auto& cuts = cert.cuts;
  if (cuts.empty() || cuts.front() != 0) throw std::invalid_argument("certificate cuts must start at 0");
  if (cert.block_vars.size() + 1 != cuts.size()) {
    throw std::invalid_argument("certificate needs one Y-variable per block");
  }
  for (std::size_t j = 1; j < cuts.size(); ++j) {
    if (cuts[j] <= cuts[j - 1]) throw std::invalid_argument("certificate cuts must be strictly increasing");
  }
  if (cuts.back() > abp.length()) throw std::invalid_argument("last certificate cut exceeds the ABP length");
  const std::set<VarId> ys(cert.block_vars.begin(), cert.block_vars.end());
  if (ys.size() != cert.block_vars.size()) throw std::invalid_argument("certificate assigns a Y-variable twice");

  for (const auto& e : abp.edges()) {
    if (!e.label.var || !ys.contains(*e.label.var)) continue;
    const std::size_t layer = abp.layer_of(e.from);
    const auto block = static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), layer) - cuts.begin());
    if (block >= cuts.size()) {
      throw std::invalid_argument("Y-variable " + var_name(*e.label.var) + " read at layer " + std::to_string(layer) +
                                  " after the last block");
    }
    if (cert.block_vars[block - 1] != *e.label.var) {
      throw std::invalid_argument("block " + std::to_string(block) + " (layer " + std::to_string(layer) +
                                  ") reads foreign Y-variable " + var_name(*e.label.var) + ", expected " +
                                  var_name(cert.block_vars[block - 1]));
    }
  }
}

std::optional<ReadOnceCertificate> infer_certificate(const Abp& abp, const std::set<VarId>& ys) {
  std::vector<std::set<VarId>> per_layer(abp.length());
  for (const auto& e : abp.edges()) {
    if (e.label.var && ys.contains(*e.label.var)) per_layer[abp.layer_of(e.from)].insert(*e.label.var);
  }
  ReadOnceCertificate cert{{0}, {}};
  std::set<VarId> closed;
  std::optional<VarId> current;
  std::size_t last_seen = 0;
  for (std::size_t layer = 0; layer < per_layer.size(); ++layer) {
    if (per_layer[layer].empty()) continue;
    if (per_layer[layer].size() > 1) return std::nullopt;
    const VarId y = *per_layer[layer].begin();
    if (current && *current == y) {
      last_seen = layer;
      continue;
    }
    if (closed.contains(y)) return std::nullopt;
    if (current) {
      cert.cuts.push_back(layer);
      closed.insert(*current);
    }
    current = y;
    cert.block_vars.push_back(y);
    last_seen = layer;
  }
  if (current) cert.cuts.push_back(last_seen + 1);
  if (cert.block_vars.size() != ys.size()) return std::nullopt;
  return cert;
}

Abp exp_sum_readonce(const Abp& abp, const ReadOnceCertificate& cert) {
  validate_certificate(abp, cert);
  const auto& cuts = cert.cuts;
  const std::size_t last_cut = cuts.back();
  auto is_interior = [&](std::size_t layer) {
    return layer < last_cut && !std::binary_search(cuts.begin(), cuts.end(), layer);
  };
  auto block_of = [&](std::size_t layer) {
    return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), layer) - cuts.begin()) - 1;
  };

  Abp out(abp.length());
  std::vector<std::array<NodeId, 2>> copy(abp.size());
  copy[abp.source()] = {out.source(), out.source()};
  copy[abp.sink()] = {out.sink(), out.sink()};
  for (std::size_t layer = 0; layer < abp.layers().size(); ++layer) {
    for (NodeId v : abp.layers()[layer]) {
      if (v == abp.source() || v == abp.sink()) continue;
      const NodeId first = out.add_node(layer);
      copy[v] = {first, is_interior(layer) ? out.add_node(layer) : first};
    }
  }

  for (const auto& e : abp.edges()) {
    const std::size_t layer = abp.layer_of(e.from);
    if (layer >= last_cut) {
      out.add_edge(copy[e.from][0], copy[e.to][0], e.label);
      continue;
    }
    const VarId y = cert.block_vars[block_of(layer)];
    for (int b = 0; b < 2; ++b) {
      Label label = e.label;
      if (label.var && *label.var == y) {
        if (b == 0) continue;
        label.var.reset();
      }
      out.add_edge(copy[e.from][b], copy[e.to][b], std::move(label));
    }
  }
  return out;
}

namespace {

/// Weighted-automaton view of an ABP with constant edges eliminated.
struct Automaton {
  std::map<NodeId, Rational> initial;
  std::vector<std::map<NodeId, Rational>> final_weight;  // singleton map {sink: w} or empty
  std::vector<std::map<std::pair<VarId, NodeId>, Rational>> step;
};

Automaton to_automaton(const Abp& abp) {
  const std::size_t n = abp.size();
  const auto by_layer = abp.edges_by_layer();

  // closure[v][w]: total weight of constant-only paths v -> w (empty path = 1).
  std::vector<std::map<NodeId, Rational>> closure(n);
  for (std::size_t layer = abp.layers().size(); layer-- > 0;) {
    for (NodeId v : abp.layers()[layer]) {
      auto& cv = closure[v];
      cv[v] = 1;
      if (layer == abp.length()) continue;
      for (std::size_t idx : by_layer[layer]) {
        const AbpEdge& e = abp.edges()[idx];
        if (e.from != v || e.label.var) continue;
        for (const auto& [w, c] : closure[e.to]) cv[w] += e.label.coeff * c;
      }
    }
  }

  // A state is the node reached by the last letter; constant paths are
  // absorbed at the start of the next step or into the final weight.
  Automaton a;
  a.final_weight.resize(n);
  a.step.resize(n);
  a.initial[abp.source()] = 1;
  for (NodeId u = 0; u < n; ++u) {
    auto it = closure[u].find(abp.sink());
    if (it != closure[u].end() && it->second != 0) a.final_weight[u][abp.sink()] = it->second;
  }
  std::vector<std::vector<std::size_t>> var_out(n);
  for (std::size_t idx = 0; idx < abp.edges().size(); ++idx) {
    if (abp.edges()[idx].label.var) var_out[abp.edges()[idx].from].push_back(idx);
  }
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& [w, c] : closure[u]) {
      if (c == 0) continue;
      for (std::size_t idx : var_out[w]) {
        const AbpEdge& e = abp.edges()[idx];
        a.step[u][{*e.label.var, e.to}] += c * e.label.coeff;
      }
    }
  }
  for (auto& s : a.step) std::erase_if(s, [](const auto& kv) { return kv.second == 0; });
  return a;
}

}  // namespace

Abp hadamard_abp(const Abp& a, const Abp& b) {
  const Automaton aut = to_automaton(b);
  const std::size_t length = a.length();
  const auto by_layer = a.edges_by_layer();

  Abp out(length);
  std::map<std::pair<NodeId, NodeId>, NodeId> node_of;
  // Edge accumulator keyed by (from, to, var) so parallel contributions merge.
  std::map<std::tuple<NodeId, NodeId, std::optional<VarId>>, Rational> pending;

  auto target = [&](NodeId a_node, NodeId b_node) -> std::optional<NodeId> {
    if (a_node == a.sink()) return out.sink();
    if (a.layer_of(a_node) == length) return std::nullopt;
    auto [it, inserted] = node_of.try_emplace({a_node, b_node}, 0);
    if (inserted) it->second = out.add_node(a.layer_of(a_node));
    return it->second;
  };

  auto emit = [&](NodeId from, NodeId a_to, NodeId b_to, const std::optional<VarId>& x, const Rational& w) {
    if (w == 0) return;
    Rational weight = w;
    if (a_to == a.sink()) {
      const auto& fw = aut.final_weight[b_to];
      if (fw.empty()) return;
      weight *= fw.begin()->second;
    }
    auto to = target(a_to, b_to);
    if (!to) return;
    pending[{from, *to, x}] += weight;
  };

  // Active product states per layer: (a-node, b-node or initial marker) -> out node.
  for (std::size_t layer = 0; layer < length; ++layer) {
    pending.clear();
    for (std::size_t idx : by_layer[layer]) {
      const AbpEdge& e = a.edges()[idx];
      if (layer == 0) {
        if (e.from != a.source()) continue;
        for (const auto& [bv, init] : aut.initial) {
          if (e.label.var) {
            for (const auto& [key, w] : aut.step[bv]) {
              if (key.first == *e.label.var) emit(out.source(), e.to, key.second, e.label.var, e.label.coeff * init * w);
            }
          } else {
            emit(out.source(), e.to, bv, std::nullopt, e.label.coeff * init);
          }
        }
        continue;
      }
      for (auto it = node_of.lower_bound({e.from, 0}); it != node_of.end() && it->first.first == e.from; ++it) {
        const NodeId bv = it->first.second;
        const NodeId from = it->second;
        if (e.label.var) {
          for (const auto& [key, w] : aut.step[bv]) {
            if (key.first == *e.label.var) emit(from, e.to, key.second, e.label.var, e.label.coeff * w);
          }
        } else {
          emit(from, e.to, bv, std::nullopt, e.label.coeff);
        }
      }
    }
    for (const auto& [key, w] : pending) {
      const auto& [from, to, x] = key;
      out.add_edge(from, to, Label{w, x});
    }
  }
  return out.pruned();
}

}  // namespace ncperm
