#pragma once

#include "ncperm/nc_poly.hpp"
#include "ncperm/rational.hpp"
#include "ncperm/ring.hpp"
#include "ncperm/variables.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncperm {

using NodeId = std::size_t;

/// Edge weight: coefficient times either a variable or the constant 1.
struct Label {
  Rational coeff = 1;
  std::optional<VarId> var;

  bool is_constant() const { return !var.has_value(); }
  friend bool operator==(const Label&, const Label&) = default;
};

struct AbpEdge {
  NodeId from = 0;
  NodeId to = 0;
  Label label;
};

/// Layered algebraic branching program. Every edge goes from layer i to
/// layer i + 1, so the graph is acyclic by construction. The source lives
/// in layer 0 and the sink in the last layer.
class Abp {
 public:
  /// Creates an ABP with layers 0..length, a source in layer 0 and a sink
  /// in layer `length`. Requires length >= 1.
  explicit Abp(std::size_t length);

  NodeId add_node(std::size_t layer);
  /// Adds an edge between consecutive layers. Edges with a zero
  /// coefficient are dropped.
  void add_edge(NodeId from, NodeId to, Label label);
  void add_edge(NodeId from, NodeId to, VarId v, const Rational& coeff = 1) { add_edge(from, to, Label{coeff, v}); }
  void add_constant_edge(NodeId from, NodeId to, const Rational& coeff = 1) { add_edge(from, to, Label{coeff, std::nullopt}); }

  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  std::size_t length() const { return layers_.size() - 1; }
  std::size_t size() const { return layer_of_.size(); }
  std::size_t layer_of(NodeId v) const { return layer_of_.at(v); }
  const std::vector<std::vector<NodeId>>& layers() const { return layers_; }
  const std::vector<AbpEdge>& edges() const { return edges_; }
  std::set<VarId> variables() const;

  /// Edges grouped by the layer of their tail.
  std::vector<std::vector<std::size_t>> edges_by_layer() const;

  /// Drops nodes that are not on any source-to-sink path and renumbers the
  /// rest. Source and sink are always kept.
  Abp pruned() const;

 private:
  Abp() = default;
  friend Abp make_abp(std::vector<std::vector<NodeId>> layers, std::vector<AbpEdge> edges, NodeId source, NodeId sink);

  std::vector<std::vector<NodeId>> layers_;
  std::vector<std::size_t> layer_of_;
  std::vector<AbpEdge> edges_;
  NodeId source_ = 0;
  NodeId sink_ = 0;
};

/// Builds an ABP from explicit layers (node ids must be exactly 0..N-1,
/// each listed once). Throws std::invalid_argument for edges that do not
/// cross exactly one layer boundary or a misplaced source/sink.
Abp make_abp(std::vector<std::vector<NodeId>> layers, std::vector<AbpEdge> edges, NodeId source, NodeId sink);

/// Layers a general s-t DAG by longest distance from the source, inserting
/// constant pass-through edges where an edge skips layers. The sink is put
/// alone on the last layer. Throws on cycles or nodes unreachable from s
/// that carry edges.
Abp layer_dag(std::size_t num_nodes, const std::vector<AbpEdge>& edges, NodeId source, NodeId sink);

/// Sum over s-t paths of the left-to-right product of edge values, computed
/// layer by layer. `one` is the multiplicative identity of the target ring
/// (carrying the matrix dimension when T is a matrix type).
template <RingElement T>
T eval_abp(const Abp& abp, const std::map<VarId, T>& assignment, const T& one);

/// Symbolic expansion p_P. Throws std::length_error when some node's
/// partial polynomial exceeds `max_terms` terms.
NcPoly expand_abp(const Abp& abp, std::size_t max_terms = std::size_t{1} << 20);

/// Substitutes rational values for variables: value 0 deletes the edge,
/// any other value turns it into a constant edge with scaled coefficient.
Abp substitute(const Abp& abp, const std::map<VarId, Rational>& values);

/// Witness that the Y-variables are read in disjoint consecutive layer
/// blocks: block j spans the edges leaving layers cuts[j-1] .. cuts[j]-1
/// (cuts[0] = 0) and may only use Y-variable block_vars[j-1].
struct ReadOnceCertificate {
  std::vector<std::size_t> cuts;
  std::vector<VarId> block_vars;
};

/// Throws std::invalid_argument citing the block and layer when the
/// certificate does not hold for `abp`.
void validate_certificate(const Abp& abp, const ReadOnceCertificate& cert);

/// Greedy certificate inference for the given Y-variables. Returns nullopt
/// when the variables are not read in disjoint consecutive blocks, or some
/// Y-variable never appears.
std::optional<ReadOnceCertificate> infer_certificate(const Abp& abp, const std::set<VarId>& ys);

/// Read-once exponential sum: an ABP for sum over e in {0,1}^m of p_P(X, e).
/// Each block is duplicated with y := 0 and y := 1 and the copies are glued
/// at the block boundaries, so the result has at most twice the nodes.
Abp exp_sum_readonce(const Abp& abp, const ReadOnceCertificate& cert);

/// ABP whose polynomial is the Hadamard product of the inputs. B is run as a
/// weighted automaton alongside A: nodes are pairs (a, b) layered like A,
/// with B's constant edges folded into closure weights.
Abp hadamard_abp(const Abp& a, const Abp& b);

// -- implementation ----------------------------------------------------------

template <RingElement T>
T eval_abp(const Abp& abp, const std::map<VarId, T>& assignment, const T& one) {
  const T zero = zero_like(one);
  std::vector<std::optional<T>> value(abp.size());
  value[abp.source()] = one;
  for (const auto& layer_edges : abp.edges_by_layer()) {
    for (std::size_t idx : layer_edges) {
      const AbpEdge& e = abp.edges()[idx];
      if (!value[e.from]) continue;
      T w = *value[e.from] * e.label.coeff;
      if (e.label.var) {
        auto it = assignment.find(*e.label.var);
        if (it == assignment.end()) throw std::invalid_argument("unassigned variable " + var_name(*e.label.var));
        w = w * it->second;
      }
      if (value[e.to]) {
        value[e.to] = *value[e.to] + w;
      } else {
        value[e.to] = std::move(w);
      }
    }
  }
  return value[abp.sink()] ? *value[abp.sink()] : zero;
}

}  // namespace ncperm
