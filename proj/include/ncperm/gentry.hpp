#pragma once

#include "ncperm/rat_matrix.hpp"
#include "ncperm/rational.hpp"

#include <cstddef>
#include <vector>

namespace ncperm {

struct Literal {
  int var = 1;  // 1-based
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// CNF over variables 1..num_vars. An empty clause is allowed and is
/// unsatisfiable.
struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

/// Throws std::invalid_argument for variable indices outside 1..num_vars.
void validate(const Cnf& cnf);

/// Brute-force model count over all 2^num_vars assignments.
Integer naive_count(const Cnf& cnf);

/// Concrete 2x2 rational matrices generating a copy of S3, plus the
/// projector t used to glue clause programs.
namespace s3 {
RatMatrix identity();
RatMatrix r();  // [[0,-1],[1,-1]], order 3
RatMatrix s();  // [[0,1],[1,0]], order 2
RatMatrix t();  // [[1,0],[0,0]], idempotent with t r t = 0
}  // namespace s3

/// Multiplies on_zero when bit `bit` is 0 and on_one when it is 1.
struct Instruction {
  int bit = 1;  // 1-based
  RatMatrix on_zero;
  RatMatrix on_one;
};

/// start * prod_i (instruction i's selected matrix). Bits above
/// `input_bits` are dummies whose instructions have equal branches.
struct ProductProgram {
  RatMatrix start = s3::identity();
  std::vector<Instruction> instructions;
  int input_bits = 0;

  std::size_t length() const { return instructions.size(); }
};

/// Product program for a disjunction of d literals: b P b P^-1 with
/// b = (s, I) reading the last literal, recursively. Evaluates to I on
/// satisfying assignments and r otherwise; length 2^d + 2^(d-1) - 2.
/// The empty clause gives the constant program with start r.
ProductProgram clause_program(const Clause& clause);

/// (prod_c t * P_c) * t over 2x2 matrices: evaluates to t on satisfying
/// assignments and 0 otherwise. Each t, and each empty clause's r, becomes
/// an instruction on a fresh dummy bit above num_vars.
ProductProgram cnf_program(const Cnf& cnf);

/// Product of the selected matrices; `bits[i-1]` is bit i. Throws when a
/// non-dummy instruction reads a bit outside `bits`.
RatMatrix eval_program(const ProductProgram& pp, const std::vector<bool>& bits);

/// Permuted block barber-pole matrix of a product program. Row/column i
/// corresponds to instruction i (after padding); M[i][i] = a_{i,0} and
/// M[i][pi1(i)] = a_{i,1}, where pi1 cycles through the instructions that
/// read the same bit. Every bit set is padded to size >= 2.
struct BlockBarberMatrix {
  std::vector<Instruction> instructions;       // padded program, one per row
  std::vector<std::vector<std::size_t>> isets;  // rows reading the same bit, ascending
  std::vector<int> iset_bit;
  std::vector<std::size_t> iset_of;  // row -> I-set index
  std::vector<std::size_t> pi1;      // row -> shifted column
  std::vector<RatMatrix> shifted;    // M[i][pi1(i)], sign included when is_signed
  int input_bits = 0;
  bool is_signed = false;

  std::size_t order() const { return instructions.size(); }
  /// The 2x2 block at (i, j); zero outside the diagonal and pi1 positions.
  RatMatrix block(std::size_t i, std::size_t j) const;
  /// Largest I-set size among real (non-dummy) bits.
  std::size_t max_cycle_len() const;
};

/// With `signed_variant` the first shifted cell of each I-set carries
/// (-1)^(|I|-1), cancelling the determinant's sign of that cycle.
BlockBarberMatrix barber_matrix(const ProductProgram& pp, bool signed_variant);

/// Block Cayley permanent (or determinant) of a barber matrix, enumerating
/// the two covers of every I-set cycle.
RatMatrix block_cayley(const BlockBarberMatrix& m, bool determinant);

struct SatCountReport {
  Integer count;
  std::size_t program_length = 0;
  std::size_t block_order = 0;
  std::size_t max_cycle_len = 0;
  std::size_t num_isets = 0;
};

/// #SAT as entry (1,1) of the block Cayley permanent. Throws
/// std::length_error when there are more than 24 I-sets.
SatCountReport count_sat(const Cnf& cnf);

}  // namespace ncperm
