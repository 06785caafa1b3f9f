#pragma once

#include "ncperm/graph.hpp"
#include "ncperm/nc_poly.hpp"
#include "ncperm/rat_matrix.hpp"

#include <cstdint>
#include <vector>

namespace ncperm {

/// M_k(f) restricted to the prefixes/suffixes that occur in supp(f).
/// Dropped rows and columns are identically zero, so the rank is that of
/// the full n^k x n^(d-k) matrix.
struct NisanMatrix {
  std::size_t k = 0;
  std::vector<Word> row_words;  // sorted
  std::vector<Word> col_words;  // sorted
  RatMatrix entries;
};

/// Throws std::invalid_argument when f is not homogeneous or k > deg f.
NisanMatrix nisan_matrix(const NcPoly& f, std::size_t k);

/// Ranks of M_0(f) .. M_d(f).
std::vector<std::size_t> nisan_ranks(const NcPoly& f);

/// Minimum ABP size of a homogeneous f: sum of the Nisan ranks. Throws on
/// the zero polynomial or non-homogeneous input.
std::size_t abp_complexity(const NcPoly& f);

/// pi(i) = i + n/2. Throws for odd n.
Involution hard_involution(int n);

/// Uniform fixed-point-free involution: the smallest unpaired point is
/// matched with a uniformly chosen other unpaired point, repeatedly.
/// Deterministic for a given seed.
Involution random_involution(int n, std::uint64_t seed);

struct NisanReport {
  int n = 0;
  int cut = 0;
  int near = 0;
  std::vector<std::size_t> ranks;
  std::size_t complexity = 0;
  double log2_complexity = 0;
};

/// Full Nisan analysis of C-perm(G_pi).
NisanReport nisan_report(const Involution& pi);

}  // namespace ncperm
