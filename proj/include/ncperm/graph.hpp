#pragma once

#include "ncperm/abp.hpp"
#include "ncperm/nc_poly.hpp"
#include "ncperm/rational.hpp"
#include "ncperm/variables.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <variant>
#include <vector>

namespace ncperm {

/// Edge weight: a variable or a rational constant.
using EdgeLabel = std::variant<VarId, Rational>;

/// Directed graph on vertices 1..n with at most one labeled edge per
/// ordered pair. Self-loops are ordinary edges.
class LabeledDigraph {
 public:
  explicit LabeledDigraph(int n);

  int n() const { return n_; }
  void add_edge(int i, int j, EdgeLabel label);
  /// Edge labeled by the variable x_{i,j} ("x_i_j").
  void add_var_edge(int i, int j) { add_edge(i, j, edge_var(i, j)); }
  bool has_edge(int i, int j) const { return edges_.contains({i, j}); }
  const EdgeLabel& label(int i, int j) const;
  const std::map<std::pair<int, int>, EdgeLabel>& edges() const { return edges_; }
  /// Out-neighbours of i in ascending order.
  const std::vector<int>& successors(int i) const { return succ_.at(static_cast<std::size_t>(i)); }
  /// True when no variable labels two different edges.
  bool has_distinct_labels() const;

 private:
  int n_;
  std::map<std::pair<int, int>, EdgeLabel> edges_;
  std::vector<std::vector<int>> succ_;
};

/// Fixed-point-free involution on 1..n stored as transpositions (a, b) with
/// a < b, sorted by a.
class Involution {
 public:
  /// `images[i-1]` is pi(i). Throws std::invalid_argument unless pi is a
  /// fixed-point-free involution.
  static Involution from_images(const std::vector<int>& images);
  static Involution from_pairs(int n, std::vector<std::pair<int, int>> pairs);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int operator()(int i) const { return image_.at(static_cast<std::size_t>(i - 1)); }
  std::vector<int> images() const { return image_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> image_;
};

/// G_pi: the 2-cycles of pi plus a self-loop at every vertex, each edge (i, j)
/// labeled x_{i,j}.
LabeledDigraph involution_graph(const Involution& pi);

/// Complete digraph with self-loops, edge (i, j) labeled x_{i,j}.
LabeledDigraph complete_graph(int n);

/// Strongly connected components, each sorted ascending, ordered by their
/// smallest vertex.
std::vector<std::vector<int>> scc_sorted(const LabeledDigraph& g);

/// Maximum |i - j| over pairs of vertices sharing a component.
int near(const LabeledDigraph& g);

/// Maximum over k of the number of transpositions (a, b) with a <= k <= b.
int cut(const Involution& pi);

/// Number of intersecting pairs among the intervals [a, b].
long long interval_edges(const Involution& pi);

/// Cayley permanent (or determinant when `sign` is set) as a sum over cycle
/// covers; factors appear in row order 1..n.
NcPoly cperm_brute(const LabeledDigraph& g, bool sign);

/// Cycle cover of a vertex set: successor[k] is the successor of vertices[k].
struct ComponentCover {
  std::vector<int> successor;
  int sign = 1;
};

/// All cycle covers of the subgraph induced by `vertices` (ascending).
std::vector<ComponentCover> component_covers(const LabeledDigraph& g, const std::vector<int>& vertices);

struct CpermAbpStats {
  std::size_t nodes = 0;
  std::size_t max_pending = 0;
  int near = 0;
  std::size_t bound = 0;  // (n+1) * (c+1)^(near+c), saturating
};

/// Layered ABP for the Cayley permanent/determinant of a graph whose
/// strongly connected components have at most `cap` vertices. Layer p holds
/// the states after emitting x_{1,s(1)} ... x_{p,s(p)}: the successor
/// choices still pending for already-guessed vertices >= p+1. A component
/// is guessed when the position reaches its smallest vertex, so each edge
/// emits exactly one variable. Throws std::invalid_argument naming the
/// first component larger than `cap`.
Abp build_cperm_abp(const LabeledDigraph& g, bool sign, int cap = 6, CpermAbpStats* stats = nullptr);

}  // namespace ncperm
