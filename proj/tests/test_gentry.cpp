#include "ncperm/generators.hpp"
#include "ncperm/gentry.hpp"

#include <doctest.h>

using namespace ncperm;

namespace {

const RatMatrix I2 = s3::identity();

bool satisfies(const Clause& clause, const std::vector<bool>& bits) {
  for (const auto& lit : clause) {
    if (bits[static_cast<std::size_t>(lit.var - 1)] == lit.positive) return true;
  }
  return false;
}

std::vector<bool> bits_of(std::uint32_t a, int m) {
  std::vector<bool> bits(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) bits[static_cast<std::size_t>(i)] = ((a >> i) & 1U) != 0;
  return bits;
}

RatMatrix assignment_sum(const ProductProgram& pp) {
  RatMatrix total = RatMatrix::zero(2, 2);
  for (std::uint32_t a = 0; a < (1U << pp.input_bits); ++a) total += eval_program(pp, bits_of(a, pp.input_bits));
  return total;
}

// Block permanent by backtracking over all permutations with nonzero blocks.
RatMatrix brute_block_permanent(const BlockBarberMatrix& m) {
  const std::size_t n = m.order();
  RatMatrix total = RatMatrix::zero(2, 2);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t row, const RatMatrix& acc) -> void {
    if (row == n) {
      total += acc;
      return;
    }
    for (std::size_t col = 0; col < n; ++col) {
      if (used[col]) continue;
      const RatMatrix b = m.block(row, col);
      if (b.is_zero()) continue;
      used[col] = true;
      self(self, row + 1, acc * b);
      used[col] = false;
    }
  };
  rec(rec, 0, RatMatrix::identity(2));
  return total;
}

}  // namespace

TEST_CASE("S3 relations") {
  const RatMatrix r = s3::r();
  const RatMatrix s = s3::s();
  const RatMatrix t = s3::t();
  CHECK(r * r * r == I2);
  CHECK(s * s == I2);
  CHECK(r * s == s * r * r);
  CHECK(s * r * s == r * r);
  CHECK(t * t == t);
  CHECK(t * r * t == RatMatrix::zero(2, 2));
  CHECK(r != I2);
}

TEST_CASE("falsified 2-clause follows the conjugation chain") {
  const RatMatrix r = s3::r();
  const RatMatrix s = s3::s();
  CHECK(s * r * s * inverse(r) == s * (r * s) * inverse(r));
  CHECK(s * (r * s) * inverse(r) == s * (s * r * r) * inverse(r));
  CHECK(s * (s * r * r) * inverse(r) == s * s * r);
  CHECK(s * s * r == r);
}

TEST_CASE("clause_program examples") {
  const ProductProgram unit = clause_program({Literal{1, true}});
  REQUIRE(unit.length() == 1);
  CHECK(unit.instructions[0].bit == 1);
  CHECK(unit.instructions[0].on_zero == s3::r());
  CHECK(unit.instructions[0].on_one == I2);
  CHECK(eval_program(unit, {false}) == s3::r());
  CHECK(eval_program(unit, {true}) == I2);

  const ProductProgram two = clause_program({Literal{1, true}, Literal{2, true}});
  CHECK(two.length() == 4);
  CHECK(eval_program(two, {false, false}) == s3::r());
  CHECK(eval_program(two, {true, false}) == I2);
  CHECK(eval_program(two, {false, true}) == I2);
  CHECK(eval_program(two, {true, true}) == I2);

  const ProductProgram empty = clause_program({});
  CHECK(empty.length() == 0);
  CHECK(eval_program(empty, {}) == s3::r());
}

TEST_CASE("main-text length-4 program is a golden case") {
  ProductProgram pp;
  pp.input_bits = 2;
  pp.instructions = {{1, s3::s(), I2}, {2, s3::r(), I2}, {1, s3::s(), I2}, {2, inverse(s3::r()), I2}};
  for (std::uint32_t a = 0; a < 4; ++a) {
    CHECK(eval_program(pp, bits_of(a, 2)) == (a == 0 ? s3::r() : I2));
  }
  // The recursion reads the bits in the order (2, 1, 2, 1).
  const ProductProgram rec = clause_program({Literal{1, true}, Literal{2, true}});
  std::vector<int> order;
  for (const auto& ins : rec.instructions) order.push_back(ins.bit);
  CHECK(order == std::vector<int>{2, 1, 2, 1});
}

TEST_CASE("clause programs are exhaustively correct up to width 3") {
  for (int d = 1; d <= 3; ++d) {
    for (std::uint32_t polarity = 0; polarity < (1U << d); ++polarity) {
      Clause clause;
      for (int i = 0; i < d; ++i) clause.push_back(Literal{i + 1, ((polarity >> i) & 1U) != 0});
      const ProductProgram pp = clause_program(clause);
      CHECK(pp.length() == (std::size_t{1} << d) + (std::size_t{1} << (d - 1)) - 2);
      for (std::uint32_t a = 0; a < (1U << d); ++a) {
        const auto bits = bits_of(a, d);
        CHECK(eval_program(pp, bits) == (satisfies(clause, bits) ? I2 : s3::r()));
      }
    }
  }
}

TEST_CASE("cnf_program examples") {
  Cnf single{2, {{Literal{1, true}, Literal{2, true}}}};
  CHECK(eval_program(cnf_program(single), {true, false}) == s3::t());
  CHECK(eval_program(cnf_program(single), {false, false}) == RatMatrix::zero(2, 2));

  Cnf contra{1, {{Literal{1, true}}, {Literal{1, false}}}};
  CHECK(eval_program(cnf_program(contra), {false}) == RatMatrix::zero(2, 2));
  CHECK(eval_program(cnf_program(contra), {true}) == RatMatrix::zero(2, 2));

  Cnf none{2, {}};
  const ProductProgram pp = cnf_program(none);
  for (std::uint32_t a = 0; a < 4; ++a) CHECK(eval_program(pp, bits_of(a, 2)) == s3::t());

  Cnf with_empty{1, {{}}};
  CHECK(eval_program(cnf_program(with_empty), {true}) == RatMatrix::zero(2, 2));
}

TEST_CASE("eval_program errors") {
  CHECK_THROWS_AS(eval_program(clause_program({Literal{2, true}}), {true}), std::invalid_argument);
  CHECK_THROWS_AS(validate(Cnf{1, {{Literal{2, true}}}}), std::invalid_argument);
  ProductProgram empty;
  CHECK(eval_program(empty, {}) == I2);
}

TEST_CASE("assignment sum of a CNF program is the model count times t") {
  for (int m = 1; m <= 3; ++m) {
    for (int k = 0; k <= 2; ++k) {
      for (const Cnf& cnf : all_two_cnfs(m, k)) {
        CHECK(assignment_sum(cnf_program(cnf)) == s3::t() * Rational(naive_count(cnf)));
      }
    }
  }
  InstanceGen gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    Cnf cnf = gen.two_cnf(4, 5, 3);
    cnf.num_vars = 4;
    CHECK(assignment_sum(cnf_program(cnf)) == s3::t() * Rational(naive_count(cnf)));
  }
}

TEST_CASE("barber matrix structure") {
  const ProductProgram pp = cnf_program(Cnf{2, {{Literal{1, true}, Literal{2, true}}}});
  const BlockBarberMatrix m = barber_matrix(pp, false);
  for (std::size_t k = 0; k < m.isets.size(); ++k) {
    CHECK(m.isets[k].size() >= 2);
    if (m.iset_bit[k] <= 2) CHECK(m.isets[k].size() <= 2);
    else CHECK(m.isets[k].size() == 2);
  }
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j != i && j != m.pi1[i]) CHECK(m.block(i, j).is_zero());
    }
  }
  CHECK(m.max_cycle_len() == 2);
}

TEST_CASE("padding a single real instruction sums both branches") {
  // [(1, (r, I2))]: the padded matrix has covers r * I2 and I2 * I2.
  ProductProgram pp;
  pp.input_bits = 1;
  pp.instructions = {{1, s3::r(), I2}};
  const BlockBarberMatrix m = barber_matrix(pp, false);
  CHECK(m.order() == 2);
  CHECK(block_cayley(m, false) == s3::r() + I2);
  CHECK(block_cayley(m, false) == assignment_sum(pp));
  CHECK(brute_block_permanent(m) == s3::r() + I2);
}

TEST_CASE("padding a constant instruction keeps one cover") {
  ProductProgram pp;
  pp.input_bits = 0;
  pp.instructions = {{1, s3::r(), s3::r()}};
  const BlockBarberMatrix m = barber_matrix(pp, false);
  CHECK(block_cayley(m, false) == s3::r());
  CHECK(brute_block_permanent(m) == s3::r());
}

TEST_CASE("block permanent equals the assignment sum and brute force") {
  InstanceGen gen(55);
  for (int trial = 0; trial < 25; ++trial) {
    const Cnf cnf = gen.two_cnf(3, 2, 3);
    const ProductProgram pp = cnf_program(cnf);
    const BlockBarberMatrix m = barber_matrix(pp, false);
    const RatMatrix perm = block_cayley(m, false);
    CHECK(perm == assignment_sum(pp));
    if (m.order() <= 14) CHECK(perm == brute_block_permanent(m));
    const BlockBarberMatrix sm = barber_matrix(pp, true);
    CHECK(block_cayley(sm, true) == perm);
  }
}

TEST_CASE("count_sat examples") {
  CHECK(count_sat(Cnf{2, {{Literal{1, true}, Literal{2, true}}}}).count == 3);
  CHECK(count_sat(Cnf{1, {{Literal{1, true}}, {Literal{1, false}}}}).count == 0);
  CHECK(count_sat(Cnf{3, {}}).count == 8);
}

TEST_CASE("count_sat matches the naive counter exhaustively") {
  for (int m = 1; m <= 3; ++m) {
    for (int k = 0; k <= 3; ++k) {
      for (const Cnf& cnf : all_two_cnfs(m, k)) {
        const SatCountReport rep = count_sat(cnf);
        CHECK(rep.count == naive_count(cnf));
      }
    }
  }
}

TEST_CASE("bounded-occurrence 2-CNFs have short cycles") {
  InstanceGen gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Cnf cnf = gen.two_cnf(6, 6, 3);
    const SatCountReport rep = count_sat(cnf);
    CHECK(rep.count == naive_count(cnf));
    CHECK(rep.max_cycle_len <= 6);
  }
}

TEST_CASE("count_sat guards the enumeration") {
  Cnf big{24, {}};
  for (int v = 1; v <= 24; ++v) big.clauses.push_back({Literal{v, true}});
  CHECK_THROWS_AS(count_sat(big), std::length_error);
}
