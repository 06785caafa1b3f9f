#pragma once

#include "ncperm/abp.hpp"
#include "ncperm/circuit.hpp"
#include "ncperm/gentry.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/nc_poly.hpp"
#include "ncperm/rat_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ncperm {

/// Seeded instance generators shared by the tests, the acceptance runner
/// and the CLI self-tests.
class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);
  bool coin(double p = 0.5);
  std::mt19937_64& rng() { return rng_; }

  Rational small_rational(int num_range = 3, int max_den = 2);
  RatMatrix matrix(std::size_t rows, std::size_t cols, int lo, int hi);

  /// Random NcPoly over `vars` with up to `terms` words of length <= max_degree.
  NcPoly poly(const std::vector<VarId>& vars, int terms, int max_degree);

  /// n vertices split into randomly placed groups of size <= max_comp.
  /// Edges inside a group are x_{i,j} (occasionally a rational constant);
  /// edges between groups only go forward in group order.
  LabeledDigraph component_graph(int n, int max_comp);

  /// Layered ABP with `length` layers of width <= max_width over `vars`.
  Abp abp(int length, int max_width, const std::vector<VarId>& vars);

  struct Certified {
    Abp abp;
    ReadOnceCertificate cert;
  };
  /// ABP reading y_1..y_m (in a random block order) in disjoint blocks.
  Certified certified_abp(int m, const std::vector<VarId>& xs, const std::vector<VarId>& ys);

  /// Circuit with exactly `size` gates and formal degree <= max_degree.
  Circuit circuit(int size, int max_degree, const std::vector<VarId>& vars);

  /// 2-CNF (clauses of width 1 or 2) where every variable occurs in at most
  /// `max_occ` clauses.
  Cnf two_cnf(int max_vars, int max_clauses, int max_occ);

 private:
  std::mt19937_64 rng_;
};

/// Sum over e in {0,1}^m of p with ys[j] := e_j, computed term by term.
NcPoly exp_sum_brute(const NcPoly& p, const std::vector<VarId>& ys);

/// All words of length lo..hi over `alphabet`.
std::vector<Word> all_words(const std::vector<VarId>& alphabet, int lo, int hi);

/// The prefix quotient: sum of c_{m m''} m'' over the support.
NcPoly prefix_quotient(const NcPoly& f, const Word& m);

/// Every multiset of k clauses of width 1 or 2 over m variables, polarities
/// included.
std::vector<Cnf> all_two_cnfs(int m, int k);

}  // namespace ncperm
