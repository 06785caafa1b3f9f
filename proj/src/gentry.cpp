#include "ncperm/gentry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace ncperm {

void validate(const Cnf& cnf) {
  if (cnf.num_vars < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    for (const auto& lit : cnf.clauses[c]) {
      if (lit.var < 1 || lit.var > cnf.num_vars) {
        throw std::invalid_argument("clause " + std::to_string(c + 1) + " uses variable " + std::to_string(lit.var) +
                                    " outside 1.." + std::to_string(cnf.num_vars));
      }
    }
  }
}

Integer naive_count(const Cnf& cnf) {
  validate(cnf);
  if (cnf.num_vars > 40) throw std::length_error("naive counter limited to 40 variables");
  Integer count = 0;
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  for (std::uint64_t a = 0; a < total; ++a) {
    const bool sat = std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [a](const Clause& clause) {
      return std::any_of(clause.begin(), clause.end(), [a](const Literal& lit) {
        return (((a >> (lit.var - 1)) & 1U) != 0) == lit.positive;
      });
    });
    if (sat) ++count;
  }
  return count;
}

namespace s3 {
RatMatrix identity() { return RatMatrix::identity(2); }
RatMatrix r() { return RatMatrix{{0, -1}, {1, -1}}; }
RatMatrix s() { return RatMatrix{{0, 1}, {1, 0}}; }
RatMatrix t() { return RatMatrix{{1, 0}, {0, 0}}; }
}  // namespace s3

namespace {

std::vector<Instruction> clause_instructions(const Clause& clause, std::size_t d) {
  const Literal& lit = clause[d - 1];
  auto oriented = [&](RatMatrix falsified, RatMatrix satisfied) {
    return lit.positive ? Instruction{lit.var, std::move(falsified), std::move(satisfied)}
                        : Instruction{lit.var, std::move(satisfied), std::move(falsified)};
  };
  if (d == 1) return {oriented(s3::r(), s3::identity())};

  const auto inner = clause_instructions(clause, d - 1);
  std::vector<Instruction> out;
  out.reserve(2 * inner.size() + 2);
  out.push_back(oriented(s3::s(), s3::identity()));
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(oriented(s3::s(), s3::identity()));
  // Elementwise inverse, order kept: on every input the inner program
  // evaluates to I or r, and for those values this equals the true inverse.
  for (const auto& ins : inner) out.push_back(Instruction{ins.bit, inverse(ins.on_zero), inverse(ins.on_one)});
  return out;
}

}  // namespace

ProductProgram clause_program(const Clause& clause) {
  ProductProgram pp;
  for (const auto& lit : clause) {
    if (lit.var < 1) throw std::invalid_argument("literal variable must be >= 1");
    pp.input_bits = std::max(pp.input_bits, lit.var);
  }
  if (clause.empty()) {
    pp.start = s3::r();
    return pp;
  }
  pp.instructions = clause_instructions(clause, clause.size());
  return pp;
}

ProductProgram cnf_program(const Cnf& cnf) {
  validate(cnf);
  ProductProgram pp;
  pp.input_bits = cnf.num_vars;
  int next_dummy = cnf.num_vars + 1;
  auto constant = [&](const RatMatrix& a) { pp.instructions.push_back(Instruction{next_dummy++, a, a}); };
  for (const auto& clause : cnf.clauses) {
    constant(s3::t());
    ProductProgram cp = clause_program(clause);
    if (cp.start != s3::identity()) constant(cp.start);
    pp.instructions.insert(pp.instructions.end(), cp.instructions.begin(), cp.instructions.end());
  }
  constant(s3::t());
  return pp;
}

RatMatrix eval_program(const ProductProgram& pp, const std::vector<bool>& bits) {
  RatMatrix acc = pp.start;
  for (std::size_t i = 0; i < pp.instructions.size(); ++i) {
    const Instruction& ins = pp.instructions[i];
    const bool dummy = ins.bit > pp.input_bits;
    if (dummy && ins.on_zero != ins.on_one) {
      throw std::invalid_argument("instruction " + std::to_string(i + 1) + " reads dummy bit " +
                                  std::to_string(ins.bit) + " but its branches differ");
    }
    if (!dummy && (ins.bit < 1 || static_cast<std::size_t>(ins.bit) > bits.size())) {
      throw std::invalid_argument("missing input bit " + std::to_string(ins.bit));
    }
    const bool value = dummy ? false : bits[static_cast<std::size_t>(ins.bit - 1)];
    acc = acc * (value ? ins.on_one : ins.on_zero);
  }
  return acc;
}

RatMatrix BlockBarberMatrix::block(std::size_t i, std::size_t j) const {
  if (i >= order() || j >= order()) throw std::out_of_range("block index out of range");
  if (j == i) return instructions[i].on_zero;
  if (j == pi1[i]) return shifted[i];
  return RatMatrix::zero(2, 2);
}

std::size_t BlockBarberMatrix::max_cycle_len() const {
  std::size_t best = 0;
  for (std::size_t k = 0; k < isets.size(); ++k) {
    if (iset_bit[k] <= input_bits) best = std::max(best, isets[k].size());
  }
  return best;
}

BlockBarberMatrix barber_matrix(const ProductProgram& pp, bool signed_variant) {
  if (pp.start != s3::identity()) {
    throw std::invalid_argument("barber matrices need a program starting at the identity");
  }
  std::map<int, std::size_t> occurrences;
  for (const auto& ins : pp.instructions) ++occurrences[ins.bit];

  // Pad singleton bit sets right after their instruction. A constant
  // instruction gets a zero shifted branch so it is counted once; a real
  // bit keeps both branches with an (I, I) partner.
  BlockBarberMatrix m;
  m.input_bits = pp.input_bits;
  m.is_signed = signed_variant;
  for (const auto& ins : pp.instructions) {
    m.instructions.push_back(ins);
    if (occurrences[ins.bit] == 1) {
      const bool constant = ins.on_zero == ins.on_one;
      m.instructions.push_back(
          Instruction{ins.bit, s3::identity(), constant ? RatMatrix::zero(2, 2) : s3::identity()});
    }
  }
  // Input bits that no instruction reads still double the assignment sum.
  for (int bit = 1; bit <= pp.input_bits; ++bit) {
    if (occurrences.contains(bit)) continue;
    m.instructions.push_back(Instruction{bit, s3::identity(), s3::identity()});
    m.instructions.push_back(Instruction{bit, s3::identity(), s3::identity()});
  }

  std::map<int, std::size_t> iset_index;
  m.iset_of.resize(m.order());
  for (std::size_t i = 0; i < m.order(); ++i) {
    const int bit = m.instructions[i].bit;
    auto [it, inserted] = iset_index.try_emplace(bit, m.isets.size());
    if (inserted) {
      m.isets.emplace_back();
      m.iset_bit.push_back(bit);
    }
    m.isets[it->second].push_back(i);
    m.iset_of[i] = it->second;
  }

  m.pi1.resize(m.order());
  m.shifted.resize(m.order());
  for (const auto& rows : m.isets) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::size_t i = rows[k];
      m.pi1[i] = rows[(k + 1) % rows.size()];
      m.shifted[i] = m.instructions[i].on_one;
    }
    if (signed_variant && rows.size() % 2 == 0) m.shifted[rows.front()] *= Rational(-1);
  }
  return m;
}

RatMatrix block_cayley(const BlockBarberMatrix& m, bool determinant) {
  const std::size_t n = m.order();
  const std::size_t sets = m.isets.size();
  // A choice is dead when some block it selects is the zero matrix.
  std::vector<std::array<bool, 2>> viable(sets, {true, true});
  for (std::size_t k = 0; k < sets; ++k) {
    for (std::size_t i : m.isets[k]) {
      if (m.instructions[i].on_zero.is_zero()) viable[k][0] = false;
      if (m.shifted[i].is_zero()) viable[k][1] = false;
    }
  }

  RatMatrix total = RatMatrix::zero(2, 2);
  std::vector<int> choice(sets, 0);
  std::function<void(std::size_t)> enumerate = [&](std::size_t k) {
    if (k < sets) {
      for (int b = 0; b < 2; ++b) {
        if (!viable[k][static_cast<std::size_t>(b)]) continue;
        choice[k] = b;
        enumerate(k + 1);
      }
      return;
    }
    RatMatrix product = RatMatrix::identity(2);
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      product = product * (choice[m.iset_of[i]] ? m.shifted[i] : m.instructions[i].on_zero);
    }
    if (determinant) {
      for (std::size_t s = 0; s < sets; ++s) {
        if (choice[s] && m.isets[s].size() % 2 == 0) sign = -sign;
      }
    }
    total += product * Rational(sign);
  };
  enumerate(0);
  return total;
}

SatCountReport count_sat(const Cnf& cnf) {
  const ProductProgram pp = cnf_program(cnf);
  const BlockBarberMatrix m = barber_matrix(pp, false);
  if (m.isets.size() > 24) {
    throw std::length_error(std::to_string(m.isets.size()) +
                            " bit sets exceed the enumeration guard of 24; use the naive counter");
  }
  const RatMatrix value = block_cayley(m, false);
  const Rational& top_left = value(0, 0);
  if (top_left.get_den() != 1 || top_left < 0) {
    throw std::logic_error("block permanent entry is not a natural number: " + top_left.get_str());
  }
  SatCountReport report;
  report.count = top_left.get_num();
  report.program_length = pp.length();
  report.block_order = m.order();
  report.max_cycle_len = m.max_cycle_len();
  report.num_isets = m.isets.size();
  return report;
}

}  // namespace ncperm
