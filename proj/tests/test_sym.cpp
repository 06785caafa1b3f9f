#include "ncperm/abp.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/sym.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace ncperm;

namespace {

NcPoly xs(std::initializer_list<int> idx, const Rational& c = 1) {
  Word w;
  for (int i : idx) w.push_back(sym_var(i));
  return NcPoly::monomial(w, c);
}

NcPoly relabel(const NcPoly& p, const std::vector<int>& perm) {
  NcPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word v;
    for (VarId x : w) {
      const std::string name = var_name(x);
      v.push_back(sym_var(perm[static_cast<std::size_t>(std::stoi(name.substr(2)) - 1)]));
    }
    out.add_term(v, c);
  }
  return out;
}

}  // namespace

TEST_CASE("gen_sym examples") {
  CHECK(gen_sym(SymVariant::nc, 2, 2) == xs({1, 2}) + xs({2, 1}));
  CHECK(gen_sym(SymVariant::cayley, 3, 2) == xs({1, 2}) + xs({1, 3}) + xs({2, 3}));
  CHECK(gen_sym(SymVariant::snc, 2, 2) == xs({1, 2}) - xs({2, 1}));
  CHECK_THROWS_AS(gen_sym(SymVariant::snc, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_sym(SymVariant::nc, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(gen_sym(SymVariant::nc, 2, 0), std::invalid_argument);
}

TEST_CASE("gen_sym term counts") {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= n; ++d) {
      std::size_t binom = 1;
      for (int i = 0; i < d; ++i) binom = binom * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
      std::size_t fact = 1;
      for (int i = 2; i <= d; ++i) fact *= static_cast<std::size_t>(i);
      const NcPoly cayley = gen_sym(SymVariant::cayley, n, d);
      CHECK(cayley.size() == binom);
      CHECK(gen_sym(SymVariant::nc, n, d).size() == binom * fact);
      for (const auto& [w, c] : cayley.terms()) {
        CHECK(std::is_sorted(w.begin(), w.end(), [](VarId a, VarId b) { return var_name(a) < var_name(b); }));
      }
    }
  }
}

TEST_CASE("nc-Sym is invariant under relabeling") {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= n; ++d) {
      const NcPoly f = gen_sym(SymVariant::nc, n, d);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 1);
      do {
        CHECK(relabel(f, perm) == f);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("hammon_abp examples") {
  const NcPoly h1 = expand_abp(hammon_abp(1));
  CHECK(h1 == NcPoly::monomial({edge_var(1, 1), marker_var(1)}));
  const NcPoly h2 = expand_abp(hammon_abp(2));
  CHECK(h2.size() == 4);
  CHECK(h2.coeff({edge_var(1, 2), marker_var(2), edge_var(2, 1), marker_var(1)}) == 1);
  CHECK(hammon_abp(4).size() <= 40);
  for (int n = 1; n <= 5; ++n) CHECK(hammon_abp(n).size() == static_cast<std::size_t>(n * n + n + 1));
}

TEST_CASE("perm_via_hadamard examples") {
  const NcPoly plus = NcPoly::monomial({edge_var(1, 1), edge_var(2, 2)}) + NcPoly::monomial({edge_var(1, 2), edge_var(2, 1)});
  const NcPoly minus = NcPoly::monomial({edge_var(1, 1), edge_var(2, 2)}) - NcPoly::monomial({edge_var(1, 2), edge_var(2, 1)});
  CHECK(perm_via_hadamard(2, false).result == plus);
  CHECK(perm_via_hadamard(2, true).result == minus);
  const NcPoly three = perm_via_hadamard(3, false).result;
  CHECK(three.size() == 6);
  CHECK(three == cperm_brute(complete_graph(3), false));
  CHECK(perm_via_hadamard(3, true).result == cperm_brute(complete_graph(3), true));
  CHECK_THROWS_AS(perm_via_hadamard(6, false), std::length_error);
}

TEST_CASE("the Hadamard product keeps only interleaved monomials") {
  for (int n : {2, 3}) {
    for (bool sign : {false, true}) {
      const NcPoly before = perm_via_hadamard(n, sign).before_substitution;
      CHECK(before.size() == (n == 2 ? 2U : 6U));
      for (const auto& [w, c] : before.terms()) {
        REQUIRE(w.size() == static_cast<std::size_t>(2 * n));
        for (int i = 1; i <= n; ++i) {
          const std::string xname = var_name(w[static_cast<std::size_t>(2 * i - 2)]);
          const std::string yname = var_name(w[static_cast<std::size_t>(2 * i - 1)]);
          const std::string prefix = "x_" + std::to_string(i) + "_";
          REQUIRE(xname.rfind(prefix, 0) == 0);
          CHECK(yname == "y_" + xname.substr(prefix.size()));
        }
      }
    }
  }
}

TEST_CASE("rank_one_cperm examples") {
  const auto r2 = rank_one_cperm(2);
  CHECK(r2.cperm == xs({1, 2}) + xs({2, 1}));
  CHECK(r2.sym == r2.cperm);
  CHECK(r2.max_rank <= 1);
  const auto r1 = rank_one_cperm(1);
  CHECK(r1.cperm == xs({1}));
  CHECK(r1.sym == xs({1}));
  for (int n = 3; n <= 4; ++n) {
    const auto r = rank_one_cperm(n);
    CHECK(r.cperm == r.sym);
    CHECK(r.max_rank <= 1);
  }
  CHECK(rank_one_cperm(3).cperm.size() == 6);
  CHECK_THROWS_AS(rank_one_cperm(7), std::length_error);
}
