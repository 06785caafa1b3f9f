#pragma once

#include "ncperm/nc_poly.hpp"
#include "ncperm/rational.hpp"
#include "ncperm/ring.hpp"
#include "ncperm/variables.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace ncperm {

using GateId = std::size_t;

enum class GateKind { Var, Const, Add, Mul };

/// Input gates carry a scalar: a Var gate computes coeff * var, a Const
/// gate computes coeff. Internal gates have an ordered (left, right) pair.
struct Gate {
  GateKind kind = GateKind::Const;
  VarId var{};
  Rational coeff = 1;
  GateId left = 0;
  GateId right = 0;
};

/// Fan-in-2 non-commutative arithmetic circuit. Gates are stored in
/// topological order: children always have smaller ids than their parent.
class Circuit {
 public:
  GateId add_var(VarId v, const Rational& coeff = 1);
  GateId add_const(const Rational& value);
  GateId add_add(GateId left, GateId right);
  GateId add_mul(GateId left, GateId right);
  void set_output(GateId g);

  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(GateId g) const { return gates_.at(g); }
  GateId output() const;
  std::size_t size() const { return gates_.size(); }
  /// Formal degree of each gate (var 1, const 0, + max, x sum).
  const std::vector<int>& formal_degrees() const { return degree_; }
  int degree() const { return degree_.at(output()); }
  std::set<VarId> variables() const;

  /// Copy keeping only gates the output depends on.
  Circuit pruned() const;

 private:
  GateId push(Gate g, int degree);

  std::vector<Gate> gates_;
  std::vector<int> degree_;
  std::optional<GateId> output_;
};

/// Builds a circuit from gates in arbitrary order (children given by index
/// into `gates`). Throws std::invalid_argument on cycles or dangling children.
Circuit make_circuit(const std::vector<Gate>& gates, GateId output);

template <RingElement T>
T eval_circuit(const Circuit& c, const std::map<VarId, T>& assignment, const T& one);

/// The polynomial computed by the circuit. Throws std::invalid_argument
/// when the output's formal degree exceeds `cap`.
NcPoly expand_circuit(const Circuit& c, int cap);

struct McoeffResult {
  Rational value;
  std::uint64_t ops = 0;  // additions + multiplications performed
};

/// Coefficient of `m` in p_C by dynamic programming over the contiguous
/// subwords of m, bottom-up through the circuit. The empty word yields the
/// constant term.
McoeffResult mcoeff(const Circuit& c, const Word& m);

/// Circuit for the prefix quotient sum_{m' = m.m''} c_{m'} m''.
Circuit pcoeff_circuit(const Circuit& c, const Word& m);

/// One-hot grid y[l][i] over positions l = 1..d and alphabet letters.
class IndicatorEncoding {
 public:
  IndicatorEncoding(std::size_t d, std::vector<VarId> alphabet);
  static IndicatorEncoding of_word(const Word& w, std::size_t d, std::vector<VarId> alphabet);

  std::size_t degree_bound() const { return d_; }
  const std::vector<VarId>& alphabet() const { return alphabet_; }
  int get(std::size_t pos, std::size_t letter) const { return grid_.at(pos * alphabet_.size() + letter); }
  void set(std::size_t pos, std::size_t letter, int bit);
  /// The encoded word when rows 0..D-1 are one-hot and the rest zero.
  std::optional<Word> decode() const;
  /// Assignment of the Y-variables of pc_circuit.
  std::map<VarId, Rational> assignment() const;

 private:
  std::size_t d_;
  std::vector<VarId> alphabet_;
  std::vector<int> grid_;
};

/// Y-variable standing for "letter i at position l" (both 0-based here,
/// named "Y_<l+1>_<i+1>").
VarId indicator_var(std::size_t pos, std::size_t letter);

/// Circuit over the d * |alphabet| Y-variables whose value at the encoding
/// of any word w with 1 <= |w| <= d is mcoeff(c, w). Every position is
/// guarded by prod_{j<k}(1 - y_j y_k); positions past |w| must be all zero.
/// The alphabet defaults to the circuit's variables in id order.
Circuit pc_circuit(const Circuit& c, int d, std::vector<VarId> alphabet = {});

// -- implementation ----------------------------------------------------------

template <RingElement T>
T eval_circuit(const Circuit& c, const std::map<VarId, T>& assignment, const T& one) {
  std::vector<std::optional<T>> value(c.size());
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate& gate = c.gate(g);
    switch (gate.kind) {
      case GateKind::Var: {
        auto it = assignment.find(gate.var);
        if (it == assignment.end()) throw std::invalid_argument("unassigned variable " + var_name(gate.var));
        value[g] = it->second * gate.coeff;
        break;
      }
      case GateKind::Const:
        value[g] = one * gate.coeff;
        break;
      case GateKind::Add:
        value[g] = *value[gate.left] + *value[gate.right];
        break;
      case GateKind::Mul:
        value[g] = *value[gate.left] * *value[gate.right];
        break;
    }
  }
  return *value[c.output()];
}

}  // namespace ncperm
