#include "ncperm/abp.hpp"
#include "ncperm/gentry.hpp"
#include "ncperm/generators.hpp"

#include <doctest.h>

using namespace ncperm;

namespace {

const VarId X1 = var("x1");
const VarId X2 = var("x2");
const VarId X3 = var("x3");
const VarId X4 = var("x4");
const VarId Y1 = var("y1");
const VarId Y2 = var("y2");

Abp path(const std::vector<VarId>& labels) {
  Abp abp(labels.size());
  NodeId prev = abp.source();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const NodeId next = i + 1 == labels.size() ? abp.sink() : abp.add_node(i + 1);
    abp.add_edge(prev, next, labels[i]);
    prev = next;
  }
  return abp;
}

NcPoly word(std::initializer_list<VarId> w, const Rational& c = 1) { return NcPoly::monomial(Word(w), c); }

std::vector<VarId> xs() { return {X1, X2, X3}; }
std::vector<VarId> ys() { return {var("y1"), var("y2"), var("y3"), var("y4"), var("y5"), var("y6")}; }

}  // namespace

TEST_CASE("eval_abp examples") {
  CHECK(eval_abp<Rational>(path({X1}), {{X1, 5}}, 1) == 5);

  Abp parallel(1);
  parallel.add_edge(parallel.source(), parallel.sink(), X1);
  parallel.add_edge(parallel.source(), parallel.sink(), X2);
  CHECK(eval_abp<Rational>(parallel, {{X1, 2}, {X2, 3}}, 1) == 5);

  const RatMatrix one = RatMatrix::identity(2);
  const auto sr = eval_abp<RatMatrix>(path({X1, X2}), {{X1, s3::s()}, {X2, s3::r()}}, one);
  const auto rs = eval_abp<RatMatrix>(path({X2, X1}), {{X1, s3::s()}, {X2, s3::r()}}, one);
  CHECK(sr == s3::s() * s3::r());
  CHECK(rs == s3::r() * s3::s());
  CHECK(sr != rs);
}

TEST_CASE("eval_abp names a missing variable") {
  try {
    (void)eval_abp<Rational>(path({X1, X2}), {{X1, 1}}, 1);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("x2") != std::string::npos);
  }
}

TEST_CASE("eval_abp rejects mixed matrix dimensions") {
  CHECK_THROWS_AS(eval_abp<RatMatrix>(path({X1}), {{X1, RatMatrix::identity(3)}}, RatMatrix::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("expand_abp examples") {
  CHECK(expand_abp(path({X1, X2})) == word({X1, X2}));
  Abp diamond(2);
  const NodeId top = diamond.add_node(1);
  const NodeId bottom = diamond.add_node(1);
  diamond.add_edge(diamond.source(), top, X1);
  diamond.add_edge(top, diamond.sink(), X2);
  diamond.add_edge(diamond.source(), bottom, X3);
  diamond.add_edge(bottom, diamond.sink(), X4);
  CHECK(expand_abp(diamond) == word({X1, X2}) + word({X3, X4}));
}

TEST_CASE("edges must cross one layer") {
  Abp abp(2);
  CHECK_THROWS_AS(abp.add_edge(abp.source(), abp.sink(), X1), std::invalid_argument);
  CHECK_THROWS_AS(make_abp({{0}, {1}}, {AbpEdge{1, 0, Label{1, X1}}}, 0, 1), std::invalid_argument);
}

TEST_CASE("layer_dag normalizes an s-t DAG") {
  // 0 -> 1 -> 2 and a shortcut 0 -> 2.
  const std::vector<AbpEdge> edges{{0, 1, Label{1, X1}}, {1, 2, Label{1, X2}}, {0, 2, Label{3, X3}}};
  const Abp abp = layer_dag(3, edges, 0, 2);
  CHECK(expand_abp(abp) == word({X1, X2}) + word({X3}, 3));
  CHECK_THROWS_AS(layer_dag(2, {{0, 1, Label{1, X1}}, {1, 0, Label{1, X1}}}, 0, 1), std::invalid_argument);
}

TEST_CASE("expand agrees with rational evaluation on random ABPs") {
  InstanceGen gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Abp abp = gen.abp(gen.uniform(1, 5), 3, xs());
    const NcPoly p = expand_abp(abp);
    std::map<VarId, Rational> point;
    for (VarId v : xs()) point[v] = gen.small_rational();
    const NcPoly value = substitute(p, point);
    CHECK(value.degree() <= 0);
    CHECK(eval_abp<Rational>(abp, point, 1) == value.coeff({}));
    CHECK(eval_abp<NcPoly>(abp, {{X1, NcPoly::variable(X1)}, {X2, NcPoly::variable(X2)}, {X3, NcPoly::variable(X3)}},
                           NcPoly(1)) == p);
  }
}

TEST_CASE("eval_abp is linear in one edge coefficient") {
  InstanceGen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Abp abp = gen.abp(gen.uniform(2, 5), 3, xs());
    std::map<VarId, Rational> point;
    for (VarId v : xs()) point[v] = gen.small_rational();
    const auto& edges = abp.edges();
    const std::size_t pick = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(edges.size()) - 1));
    auto rebuilt = [&](const Rational& scale, bool drop) {
      std::vector<AbpEdge> es = edges;
      if (drop) es.erase(es.begin() + static_cast<long>(pick));
      else es[pick].label.coeff *= scale;
      return make_abp(abp.layers(), es, abp.source(), abp.sink());
    };
    const Rational base = eval_abp<Rational>(abp, point, 1);
    const Rational without = eval_abp<Rational>(rebuilt(1, true), point, 1);
    const Rational scaled = eval_abp<Rational>(rebuilt(3, false), point, 1);
    CHECK(scaled - without == 3 * (base - without));
  }
}

TEST_CASE("substitute deletes zero edges and keeps constants") {
  const Abp abp = path({X1, Y1});
  CHECK(expand_abp(substitute(abp, {{Y1, 0}})).is_zero());
  CHECK(expand_abp(substitute(abp, {{Y1, 1}})) == word({X1}));
  CHECK(expand_abp(substitute(abp, {{Y1, 4}})) == word({X1}, 4));
}

TEST_CASE("exp_sum_readonce examples") {
  const ReadOnceCertificate one_block{{0, 2}, {Y1}};
  CHECK(expand_abp(exp_sum_readonce(path({X1, Y1}), one_block)) == word({X1}));

  const ReadOnceCertificate two_blocks{{0, 1, 2}, {Y1, Y2}};
  CHECK(expand_abp(exp_sum_readonce(path({Y1, Y2}), two_blocks)) == NcPoly(1));

  const ReadOnceCertificate middle{{0, 3}, {Y1}};
  CHECK(expand_abp(exp_sum_readonce(path({X1, Y1, X2}), middle)) == word({X1, X2}));
}

TEST_CASE("exp_sum_readonce supports a permuted block order") {
  const ReadOnceCertificate cert{{0, 1, 2}, {Y2, Y1}};
  const Abp abp = path({Y2, Y1});
  validate_certificate(abp, cert);
  CHECK(expand_abp(exp_sum_readonce(abp, cert)) == NcPoly(1));
}

TEST_CASE("invalid certificates cite the block and layer") {
  const ReadOnceCertificate cert{{0, 1, 2}, {Y1, Y2}};
  const Abp abp = path({Y2, Y1});
  try {
    validate_certificate(abp, cert);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("block 1") != std::string::npos);
    CHECK(msg.find("layer 0") != std::string::npos);
  }
  CHECK_THROWS_AS(exp_sum_readonce(abp, cert), std::invalid_argument);
}

TEST_CASE("infer_certificate finds blocks greedily") {
  const Abp abp = path({X1, Y1, X2, Y2});
  const auto cert = infer_certificate(abp, {Y1, Y2});
  REQUIRE(cert.has_value());
  validate_certificate(abp, *cert);
  CHECK_FALSE(infer_certificate(path({Y1, Y2, Y1}), {Y1, Y2}).has_value());
}

TEST_CASE("exp_sum_readonce matches the brute-force sum on random certified ABPs") {
  InstanceGen gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = gen.uniform(1, 5);
    const auto [abp, cert] = gen.certified_abp(m, xs(), ys());
    validate_certificate(abp, cert);
    const Abp q = exp_sum_readonce(abp, cert);
    CHECK(q.size() <= 2 * abp.size());
    for (VarId y : cert.block_vars) CHECK_FALSE(q.variables().contains(y));
    CHECK(expand_abp(q) == exp_sum_brute(expand_abp(abp), cert.block_vars));
  }
}

TEST_CASE("hadamard_abp examples") {
  Abp a(2);
  const NodeId u = a.add_node(1);
  const NodeId v = a.add_node(1);
  a.add_edge(a.source(), u, X1);
  a.add_edge(u, a.sink(), X2);
  a.add_edge(a.source(), v, X2);
  a.add_edge(v, a.sink(), X1);
  Abp b = path({X1, X2});
  Abp b2(2);
  const NodeId w = b2.add_node(1);
  b2.add_edge(b2.source(), w, X1, 2);
  b2.add_edge(w, b2.sink(), X2);
  CHECK(expand_abp(hadamard_abp(a, b2)) == word({X1, X2}, 2));
  CHECK(expand_abp(hadamard_abp(a, a)) == expand_abp(a));
  CHECK(expand_abp(hadamard_abp(a, b)) == word({X1, X2}));
}

TEST_CASE("hadamard_abp matches hadamard_poly on random ABPs") {
  InstanceGen gen(314);
  for (int trial = 0; trial < 60; ++trial) {
    const Abp a = gen.abp(gen.uniform(1, 5), 3, {X1, X2});
    const Abp b = gen.abp(gen.uniform(1, 5), 3, {X1, X2});
    const Abp h = hadamard_abp(a, b);
    CHECK(h.size() <= a.size() * b.size());
    const NcPoly ph = expand_abp(h);
    CHECK(ph == hadamard_poly(expand_abp(a), expand_abp(b)));
  }
}

TEST_CASE("pruned keeps the polynomial") {
  InstanceGen gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    Abp abp = gen.abp(4, 3, xs());
    abp.add_node(2);  // dangling
    const Abp p = abp.pruned();
    CHECK(p.size() < abp.size());
    CHECK(expand_abp(p) == expand_abp(abp));
  }
}

TEST_CASE("expand_abp guards the support size") {
  // Width-2 ABP of length 24 with 2^24 words.
  Abp abp(24);
  std::vector<NodeId> prev{abp.source()};
  for (std::size_t l = 1; l <= 24; ++l) {
    std::vector<NodeId> cur = l == 24 ? std::vector<NodeId>{abp.sink()} : std::vector<NodeId>{abp.add_node(l)};
    for (NodeId p : prev) {
      for (NodeId c : cur) {
        abp.add_edge(p, c, X1);
        abp.add_edge(p, c, X2);
      }
    }
    prev = cur;
  }
  CHECK_THROWS_AS(expand_abp(abp, 1000), std::length_error);
}
