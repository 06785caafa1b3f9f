#include "ncperm/nisan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace ncperm {

NisanMatrix nisan_matrix(const NcPoly& f, std::size_t k) {
  if (!f.is_homogeneous()) throw std::invalid_argument("Nisan matrices need a homogeneous polynomial");
  const int deg = f.degree();
  const std::size_t d = deg < 0 ? 0 : static_cast<std::size_t>(deg);
  if (k > d) throw std::invalid_argument("split position " + std::to_string(k) + " exceeds degree " + std::to_string(d));

  std::map<Word, std::size_t> rows;
  std::map<Word, std::size_t> cols;
  for (const auto& [w, c] : f.terms()) {
    rows.emplace(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)), 0);
    cols.emplace(Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end()), 0);
  }
  NisanMatrix m;
  m.k = k;
  for (auto& [w, idx] : rows) {
    idx = m.row_words.size();
    m.row_words.push_back(w);
  }
  for (auto& [w, idx] : cols) {
    idx = m.col_words.size();
    m.col_words.push_back(w);
  }
  m.entries = RatMatrix(rows.size(), cols.size());
  for (const auto& [w, c] : f.terms()) {
    const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    const Word suffix(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    m.entries(rows.at(prefix), cols.at(suffix)) = c;
  }
  return m;
}

std::vector<std::size_t> nisan_ranks(const NcPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial has no Nisan ranks");
  if (!f.is_homogeneous()) throw std::invalid_argument("Nisan ranks need a homogeneous polynomial");
  const auto d = static_cast<std::size_t>(f.degree());
  std::vector<std::size_t> ranks(d + 1);
  for (std::size_t k = 0; k <= d; ++k) ranks[k] = mat_rank(nisan_matrix(f, k).entries);
  return ranks;
}

std::size_t abp_complexity(const NcPoly& f) {
  const auto ranks = nisan_ranks(f);
  return std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
}

Involution hard_involution(int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("hard involution needs an even n, got " + std::to_string(n));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n / 2; ++i) pairs.emplace_back(i, i + n / 2);
  return Involution::from_pairs(n, std::move(pairs));
}

Involution random_involution(int n, std::uint64_t seed) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("random involution needs an even n, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<int> unpaired(static_cast<std::size_t>(n));
  std::iota(unpaired.begin(), unpaired.end(), 1);
  std::vector<std::pair<int, int>> pairs;
  while (!unpaired.empty()) {
    // unpaired stays sorted, so front() is the smallest unpaired point.
    std::uniform_int_distribution<std::size_t> pick(1, unpaired.size() - 1);
    const std::size_t j = pick(rng);
    pairs.emplace_back(unpaired.front(), unpaired[j]);
    unpaired.erase(unpaired.begin() + static_cast<std::ptrdiff_t>(j));
    unpaired.erase(unpaired.begin());
  }
  return Involution::from_pairs(n, std::move(pairs));
}

NisanReport nisan_report(const Involution& pi) {
  const LabeledDigraph g = involution_graph(pi);
  NisanReport r;
  r.n = pi.n();
  r.cut = cut(pi);
  r.near = near(g);
  r.ranks = nisan_ranks(cperm_brute(g, false));
  r.complexity = std::accumulate(r.ranks.begin(), r.ranks.end(), std::size_t{0});
  r.log2_complexity = std::log2(static_cast<double>(r.complexity));
  return r;
}

}  // namespace ncperm
