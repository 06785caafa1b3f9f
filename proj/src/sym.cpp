#include "ncperm/sym.hpp"

#include "ncperm/graph.hpp"
#include "ncperm/rat_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncperm {

SymVariant parse_sym_variant(std::string_view text) {
  if (text == "cayley") return SymVariant::cayley;
  if (text == "nc") return SymVariant::nc;
  if (text == "snc") return SymVariant::snc;
  throw std::invalid_argument("unknown sym variant '" + std::string(text) + "' (expected cayley, nc or snc)");
}

std::string_view to_string(SymVariant v) {
  switch (v) {
    case SymVariant::cayley: return "cayley";
    case SymVariant::nc: return "nc";
    case SymVariant::snc: return "snc";
  }
  return "?";
}

VarId sym_var(int i) { return var("x_" + std::to_string(i)); }
VarId marker_var(int j) { return var("y_" + std::to_string(j)); }

namespace {

int inversion_sign(const std::vector<int>& seq) {
  int sign = 1;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) {
      if (seq[a] > seq[b]) sign = -sign;
    }
  }
  return sign;
}

Word to_word(const std::vector<int>& seq) {
  Word w;
  w.reserve(seq.size());
  for (int i : seq) w.push_back(sym_var(i));
  return w;
}

}  // namespace

NcPoly gen_sym(SymVariant variant, int n, int d) {
  if (d < 1 || d > n) throw std::invalid_argument("gen_sym needs 1 <= d <= n");
  if (variant == SymVariant::snc && d != n) throw std::invalid_argument("snc variant is defined only for d = n");
  if (n > 12) throw std::length_error("gen_sym limited to n <= 12");

  NcPoly out;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + d, true);
  do {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) subset.push_back(i + 1);
    }
    if (variant == SymVariant::cayley) {
      out.add_term(to_word(subset), 1);
      continue;
    }
    do {
      out.add_term(to_word(subset), variant == SymVariant::snc ? inversion_sign(subset) : 1);
    } while (std::next_permutation(subset.begin(), subset.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

Abp hammon_abp(int n) {
  if (n < 1) throw std::invalid_argument("hammon_abp needs n >= 1");
  const auto un = static_cast<std::size_t>(n);
  Abp abp(2 * un);
  NodeId hub = abp.source();
  for (int i = 1; i <= n; ++i) {
    const auto layer = 2 * static_cast<std::size_t>(i);
    const NodeId next = i == n ? abp.sink() : abp.add_node(layer);
    for (int j = 1; j <= n; ++j) {
      const NodeId mid = abp.add_node(layer - 1);
      abp.add_edge(hub, mid, edge_var(i, j));
      abp.add_edge(mid, next, marker_var(j));
    }
    hub = next;
  }
  return abp;
}

Abp sym_fan_abp(int n, bool signed_variant) {
  if (n < 1) throw std::invalid_argument("sym_fan_abp needs n >= 1");
  if (n > 16) throw std::length_error("sym_fan_abp limited to n <= 16");
  const auto un = static_cast<std::size_t>(n);
  const std::uint32_t full = (std::uint32_t{1} << un) - 1;
  Abp abp(2 * un);
  // Subset S of used arguments sits at layer 2|S|; its fan node at 2|S|+1.
  std::map<std::uint32_t, NodeId> subset_node{{0, abp.source()}, {full, abp.sink()}};
  auto node_of = [&](std::uint32_t s) {
    auto it = subset_node.find(s);
    if (it != subset_node.end()) return it->second;
    const NodeId v = abp.add_node(2 * static_cast<std::size_t>(std::popcount(s)));
    subset_node.emplace(s, v);
    return v;
  };
  std::vector<std::uint32_t> order(full + 1);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::uint32_t s : order) {
    if (s == full) continue;
    const NodeId from = node_of(s);
    const NodeId fan = abp.add_node(2 * static_cast<std::size_t>(std::popcount(s)) + 1);
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) abp.add_edge(from, fan, edge_var(a, b));
    }
    for (int j = 1; j <= n; ++j) {
      const std::uint32_t bit = std::uint32_t{1} << (j - 1);
      if (s & bit) continue;
      int sign = 1;
      if (signed_variant) {
        const std::uint32_t larger = s & ~((bit << 1) - 1);
        if (std::popcount(larger) % 2 == 1) sign = -1;
      }
      abp.add_edge(fan, node_of(s | bit), marker_var(j), sign);
    }
  }
  return abp;
}

HadamardPipeline perm_via_hadamard(int n, bool signed_variant) {
  if (n < 1) throw std::invalid_argument("perm_via_hadamard needs n >= 1");
  if (n > 5) throw std::length_error("perm_via_hadamard limited to n <= 5");
  const Abp product = hadamard_abp(sym_fan_abp(n, signed_variant), hammon_abp(n));
  std::map<VarId, Rational> ones;
  for (int j = 1; j <= n; ++j) ones.emplace(marker_var(j), 1);
  HadamardPipeline out;
  out.product_size = product.size();
  out.before_substitution = expand_abp(product);
  out.result = expand_abp(substitute(product, ones));
  return out;
}

RankOneCheck rank_one_cperm(int n) {
  if (n < 1) throw std::invalid_argument("rank_one_cperm needs n >= 1");
  if (n > 6) throw std::length_error("rank_one_cperm limited to n <= 6");
  LabeledDigraph g(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) g.add_edge(i, j, sym_var(j));
  }
  RankOneCheck out;
  out.cperm = cperm_brute(g, false);
  out.sym = gen_sym(SymVariant::nc, n, n);

  // Substitute a few fixed rational points; every row of A becomes
  // (a_1, ..., a_n), so the rank never exceeds one.
  const auto un = static_cast<std::size_t>(n);
  for (int sample = 0; sample < 8; ++sample) {
    std::vector<Rational> value(un);
    for (std::size_t j = 0; j < un; ++j) {
      value[j] = Rational(static_cast<long>((sample * 7 + static_cast<int>(j) * 3) % 11) - 5, sample + 1);
      value[j].canonicalize();
    }
    RatMatrix a(un, un);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const VarId v = std::get<VarId>(g.label(i, j));
        const auto jj = static_cast<std::size_t>(j - 1);
        if (v != sym_var(j)) throw std::logic_error("unexpected label in rank-one matrix");
        a(static_cast<std::size_t>(i - 1), jj) = value[jj];
      }
    }
    out.max_rank = std::max(out.max_rank, mat_rank(a));
  }
  return out;
}

}  // namespace ncperm
