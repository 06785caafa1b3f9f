#include "ncperm/abp.hpp"
#include "ncperm/generators.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/nisan.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ncperm;

namespace {

NcPoly mono(std::initializer_list<std::pair<int, int>> edges, const Rational& c = 1) {
  Word w;
  for (const auto& [i, j] : edges) w.push_back(edge_var(i, j));
  return NcPoly::monomial(w, c);
}

LabeledDigraph two_cycles(int n, const std::vector<std::pair<int, int>>& pairs) {
  return involution_graph(Involution::from_pairs(n, pairs));
}

// All fixed-point-free involutions on 1..n.
std::vector<Involution> all_involutions(int n) {
  std::vector<Involution> out;
  std::vector<int> img(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self) -> void {
    auto it = std::find(img.begin(), img.end(), 0);
    if (it == img.end()) {
      out.push_back(Involution::from_images(img));
      return;
    }
    const int a = static_cast<int>(it - img.begin()) + 1;
    for (int b = a + 1; b <= n; ++b) {
      if (img[static_cast<std::size_t>(b - 1)] != 0) continue;
      img[static_cast<std::size_t>(a - 1)] = b;
      img[static_cast<std::size_t>(b - 1)] = a;
      self(self);
      img[static_cast<std::size_t>(a - 1)] = 0;
      img[static_cast<std::size_t>(b - 1)] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace

TEST_CASE("scc_sorted examples") {
  CHECK(scc_sorted(two_cycles(2, {{1, 2}})) == std::vector<std::vector<int>>{{1, 2}});
  CHECK(scc_sorted(LabeledDigraph(3)) == std::vector<std::vector<int>>{{1}, {2}, {3}});
  CHECK(scc_sorted(two_cycles(4, {{1, 3}, {2, 4}})) == std::vector<std::vector<int>>{{1, 3}, {2, 4}});
}

TEST_CASE("near examples") {
  CHECK(near(two_cycles(2, {{1, 2}})) == 1);
  CHECK(near(two_cycles(4, {{1, 3}, {2, 4}})) == 2);
  CHECK(near(involution_graph(hard_involution(8))) == 4);
  CHECK(near(LabeledDigraph(3)) == 0);
}

TEST_CASE("cut examples") {
  CHECK(cut(Involution::from_pairs(4, {{1, 2}, {3, 4}})) == 1);
  CHECK(cut(Involution::from_pairs(4, {{1, 3}, {2, 4}})) == 2);
  CHECK(cut(hard_involution(8)) == 4);
}

TEST_CASE("interval_edges examples") {
  CHECK(interval_edges(Involution::from_pairs(4, {{1, 2}, {3, 4}})) == 0);
  CHECK(interval_edges(Involution::from_pairs(4, {{1, 3}, {2, 4}})) == 1);
  CHECK(interval_edges(hard_involution(6)) == 3);
}

TEST_CASE("involution validation") {
  CHECK_THROWS_AS(Involution::from_images({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Involution::from_images({2, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Involution::from_pairs(4, {{1, 2}, {2, 3}}), std::invalid_argument);
  CHECK(Involution::from_images({2, 1, 4, 3}).pairs().size() == 2);
}

TEST_CASE("graph edges are unique") {
  LabeledDigraph g(2);
  g.add_var_edge(1, 2);
  CHECK_THROWS_AS(g.add_var_edge(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_var_edge(1, 3), std::out_of_range);
  CHECK(g.has_distinct_labels());
}

TEST_CASE("cperm_brute examples") {
  const auto g = two_cycles(2, {{1, 2}});
  CHECK(cperm_brute(g, false) == mono({{1, 1}, {2, 2}}) + mono({{1, 2}, {2, 1}}));
  CHECK(cperm_brute(g, true) == mono({{1, 1}, {2, 2}}) - mono({{1, 2}, {2, 1}}));
  LabeledDigraph dead(2);
  dead.add_var_edge(1, 1);
  CHECK(cperm_brute(dead, false).is_zero());
}

TEST_CASE("cperm_brute keeps Cayley order") {
  InstanceGen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.uniform(2, 6);
    const auto g = gen.component_graph(n, 3);
    const NcPoly p = cperm_brute(g, false);
    for (const auto& [w, c] : p.terms()) {
      if (static_cast<int>(w.size()) != n) continue;
      for (std::size_t l = 0; l < w.size(); ++l) CHECK(var_name(w[l]).rfind("x_" + std::to_string(l + 1) + "_", 0) == 0);
    }
  }
}

TEST_CASE("build_cperm_abp examples") {
  const auto g = two_cycles(2, {{1, 2}});
  CHECK(expand_abp(build_cperm_abp(g, false)) == cperm_brute(g, false));

  LabeledDigraph h(3);
  h.add_var_edge(1, 1);
  h.add_var_edge(1, 2);
  h.add_var_edge(2, 1);
  h.add_var_edge(2, 2);
  h.add_var_edge(3, 3);
  CHECK(expand_abp(build_cperm_abp(h, false)) ==
        mono({{1, 1}, {2, 2}, {3, 3}}) + mono({{1, 2}, {2, 1}, {3, 3}}));

  const auto inter = two_cycles(4, {{1, 3}, {2, 4}});
  const auto adj = two_cycles(4, {{1, 2}, {3, 4}});
  const NcPoly p = expand_abp(build_cperm_abp(inter, false));
  CHECK(p.size() == 4);
  CHECK(p == cperm_brute(inter, false));
  CHECK(build_cperm_abp(inter, false).size() > build_cperm_abp(adj, false).size());
}

TEST_CASE("build_cperm_abp rejects large components") {
  const auto g = complete_graph(4);
  try {
    (void)build_cperm_abp(g, false, 3);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("build_cperm_abp matches brute force on all 2-cycle labelings up to n = 6") {
  for (int n : {2, 4, 6}) {
    for (const auto& pi : all_involutions(n)) {
      const auto g = involution_graph(pi);
      for (bool sign : {false, true}) {
        CpermAbpStats stats;
        const Abp abp = build_cperm_abp(g, sign, 6, &stats);
        CHECK(expand_abp(abp) == cperm_brute(g, sign));
        CHECK(stats.nodes <= stats.bound);
        CHECK(stats.max_pending <= static_cast<std::size_t>(near(g) + 2));
      }
    }
  }
}

TEST_CASE("build_cperm_abp matches brute force on random graphs") {
  InstanceGen gen(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.uniform(1, 8);
    const auto g = gen.component_graph(n, 3);
    for (bool sign : {false, true}) {
      CpermAbpStats stats;
      const Abp abp = build_cperm_abp(g, sign, 3, &stats);
      CHECK(expand_abp(abp) == cperm_brute(g, sign));
      CHECK(abp.size() <= stats.bound);
    }
  }
}

TEST_CASE("signed and unsigned permanents differ by the cover sign") {
  InstanceGen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = gen.component_graph(gen.uniform(2, 6), 3);
    const NcPoly plus = cperm_brute(g, false);
    const NcPoly minus = cperm_brute(g, true);
    for (const auto& [w, c] : plus.terms()) {
      if (static_cast<int>(w.size()) != g.n()) continue;  // a constant edge was used
      // Recover sigma from the word and compare with its sign.
      std::vector<int> succ;
      for (std::size_t l = 0; l < w.size(); ++l) {
        const std::string name = var_name(w[l]);
        succ.push_back(std::stoi(name.substr(name.rfind('_') + 1)));
      }
      int cycles = 0;
      std::vector<bool> seen(succ.size() + 1, false);
      for (int v = 1; v <= static_cast<int>(succ.size()); ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        ++cycles;
        for (int u = v; !seen[static_cast<std::size_t>(u)]; u = succ[static_cast<std::size_t>(u - 1)]) seen[static_cast<std::size_t>(u)] = true;
      }
      const int sign = (static_cast<int>(succ.size()) - cycles) % 2 == 0 ? 1 : -1;
      CHECK(minus.coeff(w) == c * sign);
    }
  }
}

TEST_CASE("cut lemmas on random involutions") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 * static_cast<int>(1 + seed % 20);
    const Involution pi = random_involution(n, seed);
    const int c = cut(pi);
    CHECK(c <= near(involution_graph(pi)));
    CHECK(static_cast<long long>(c) * n >= interval_edges(pi));
  }
}
