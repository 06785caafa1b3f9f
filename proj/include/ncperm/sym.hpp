#pragma once

#include "ncperm/abp.hpp"
#include "ncperm/nc_poly.hpp"
#include "ncperm/variables.hpp"

#include <cstddef>
#include <string_view>

namespace ncperm {

enum class SymVariant { cayley, nc, snc };

SymVariant parse_sym_variant(std::string_view text);
std::string_view to_string(SymVariant v);

/// The unary variable x_i ("x_i") used by the symmetric family.
VarId sym_var(int i);
/// The marker variable y_j ("y_j").
VarId marker_var(int j);

/// cayley: sum of x_{i1}...x_{id} over i1 < ... < id.
/// nc: every ordering of every d-subset.
/// snc (d = n only): sum over sigma of sgn(sigma) x_{sigma(1)}...x_{sigma(n)}.
NcPoly gen_sym(SymVariant variant, int n, int d);

/// ABP for prod_i (sum_j x_{i,j} y_j); size n^2 + n + 1.
Abp hammon_abp(int n);

/// nc-Sym (or snc-Sym) of n arguments, each argument replaced by
/// (sum_{a,b} x_{a,b}) y_j: a fan of parallel edges followed by a y_j edge.
Abp sym_fan_abp(int n, bool signed_variant);

struct HadamardPipeline {
  NcPoly before_substitution;  // over x_{i,j} and y_j
  NcPoly result;               // after y_j -> 1
  std::size_t product_size = 0;
};

/// Hadamard product of sym_fan_abp with hammon_abp, then y_j -> 1.
/// Throws std::length_error for n > 5.
HadamardPipeline perm_via_hadamard(int n, bool signed_variant);

struct RankOneCheck {
  NcPoly cperm;  // Cayley permanent of A[i][j] = x_j
  NcPoly sym;    // gen_sym(nc, n, n)
  std::size_t max_rank = 0;  // over the sampled substitutions
};

/// Throws std::length_error for n > 6.
RankOneCheck rank_one_cperm(int n);

}  // namespace ncperm
