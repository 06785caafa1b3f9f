#pragma once

#include "ncperm/rational.hpp"
#include "ncperm/variables.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ncperm {

/// Non-commutative monomial: an ordered sequence of variables. The empty
/// word is the monomial 1.
using Word = std::vector<VarId>;

Word concat(const Word& a, const Word& b);
std::string format_word(const Word& w);

/// Sparse polynomial in the free algebra Q<x_1, ..., x_n>. No stored
/// coefficient is ever zero.
class NcPoly {
 public:
  using Terms = std::map<Word, Rational>;

  NcPoly() = default;
  explicit NcPoly(const Rational& constant);
  static NcPoly monomial(Word w, const Rational& coeff = 1);
  static NcPoly variable(VarId v) { return monomial({v}); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of w, zero when absent.
  Rational coeff(const Word& w) const;
  /// Adds c to the coefficient of w, erasing the term if it cancels.
  void add_term(const Word& w, const Rational& c);

  /// Maximum word length; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  std::set<VarId> variables() const;

  NcPoly& operator+=(const NcPoly& other);
  NcPoly& operator-=(const NcPoly& other);
  NcPoly& operator*=(const Rational& c);

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator-(NcPoly a) { return a *= Rational(-1); }
  friend NcPoly operator*(NcPoly a, const Rational& c) { return a *= c; }
  friend NcPoly operator*(const Rational& c, NcPoly a) { return a *= c; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend bool operator==(const NcPoly& a, const NcPoly& b) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Free-algebra product: words concatenate, order preserved.
NcPoly poly_mul(const NcPoly& p, const NcPoly& q);

/// Coefficient-wise product f ⊙ g.
NcPoly hadamard_poly(const NcPoly& f, const NcPoly& g);

/// Replaces every occurrence of the variables in `values` by the given
/// scalar. Variables absent from the map are left untouched.
NcPoly substitute(const NcPoly& p, const std::map<VarId, Rational>& values);

}  // namespace ncperm
