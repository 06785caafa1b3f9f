#include "ncperm/abp.hpp"
#include "ncperm/circuit.hpp"
#include "ncperm/cli.hpp"
#include "ncperm/generators.hpp"
#include "ncperm/gentry.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/io.hpp"
#include "ncperm/nisan.hpp"
#include "ncperm/sym.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace ncperm;

namespace {

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 = no time limit
  std::function<bool(std::ostringstream& detail)> check;
};

std::vector<Involution> all_involutions(int n) {
  std::vector<Involution> out;
  std::vector<int> img(static_cast<std::size_t>(n), 0);
  std::function<void()> rec = [&] {
    auto it = std::find(img.begin(), img.end(), 0);
    if (it == img.end()) {
      out.push_back(Involution::from_images(img));
      return;
    }
    const int a = static_cast<int>(it - img.begin()) + 1;
    for (int b = a + 1; b <= n; ++b) {
      if (img[static_cast<std::size_t>(b - 1)] != 0) continue;
      img[static_cast<std::size_t>(a - 1)] = b;
      img[static_cast<std::size_t>(b - 1)] = a;
      rec();
      img[static_cast<std::size_t>(a - 1)] = 0;
      img[static_cast<std::size_t>(b - 1)] = 0;
    }
  };
  rec();
  return out;
}

bool adjacent_two_cycles(std::ostringstream& detail) {
  const auto dir = std::filesystem::temp_directory_path() / "ncperm_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  for (int k = 1; k <= 4; ++k) {
    const int n = 2 * k;
    std::ostringstream text;
    text << n << '\n';
    NcPoly expected(1);
    for (int i = 1; i <= k; ++i) {
      const int a = 2 * i - 1;
      const int b = 2 * i;
      for (auto [u, v] : {std::pair{a, a}, std::pair{a, b}, std::pair{b, a}, std::pair{b, b}}) {
        text << u << ' ' << v << ' ' << var_name(edge_var(u, v)) << '\n';
      }
      expected = expected * (NcPoly::monomial({edge_var(a, a), edge_var(b, b)}) +
                             NcPoly::monomial({edge_var(a, b), edge_var(b, a)}));
    }
    const auto path = (dir / ("cycles" + std::to_string(k) + ".txt")).string();
    std::ofstream(path) << text.str();
    std::ostringstream out;
    std::ostringstream err;
    const int code = run({"cperm", "--graph", path}, out, err);
    const Json report = Json::parse(out.str());
    const NcPoly got = poly_from_json(report["polynomial"]);
    bool unit = true;
    for (const auto& [w, c] : got.terms()) unit = unit && c == 1;
    const bool this_ok = code == 0 && got == expected && got.size() == (std::size_t{1} << k) && unit;
    detail << "k=" << k << ":" << got.size() << " terms" << (this_ok ? "" : " MISMATCH") << ' ';
    ok = ok && this_ok;
  }
  std::filesystem::remove_all(dir);
  return ok;
}

bool bounded_component_abp(std::ostringstream& detail) {
  std::size_t checked = 0;
  bool ok = true;
  for (int n : {2, 4, 6}) {
    for (const auto& pi : all_involutions(n)) {
      const auto g = involution_graph(pi);
      for (bool sign : {false, true}) {
        ok = ok && expand_abp(build_cperm_abp(g, sign)) == cperm_brute(g, sign);
        ++checked;
      }
    }
  }
  InstanceGen gen(20240601);
  for (int t = 0; t < 50; ++t) {
    const auto g = gen.component_graph(gen.uniform(1, 8), 3);
    for (bool sign : {false, true}) {
      ok = ok && expand_abp(build_cperm_abp(g, sign, 3)) == cperm_brute(g, sign);
      ++checked;
    }
  }
  detail << checked << " (graph, sign) pairs";
  return ok;
}

bool exp_sum(std::ostringstream& detail) {
  InstanceGen gen(1001);
  const std::vector<VarId> xs{var("x1"), var("x2"), var("x3")};
  const std::vector<VarId> ys{var("y1"), var("y2"), var("y3"), var("y4"), var("y5"), var("y6")};
  bool ok = true;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto [abp, cert] = gen.certified_abp(gen.uniform(1, 6), xs, ys);
    validate_certificate(abp, cert);
    const Abp q = exp_sum_readonce(abp, cert);
    worst = std::max(worst, static_cast<double>(q.size()) / static_cast<double>(abp.size()));
    ok = ok && q.size() <= 2 * abp.size() && expand_abp(q) == exp_sum_brute(expand_abp(abp), cert.block_vars);
  }
  detail << "100 instances, max size ratio " << std::setprecision(3) << worst;
  return ok;
}

bool nisan_sandwich(std::ostringstream& detail) {
  bool ok = true;
  std::size_t count = 0;
  for (int n : {4, 6, 8}) {
    for (const auto& pi : all_involutions(n)) {
      const auto g = involution_graph(pi);
      const std::size_t b = abp_complexity(cperm_brute(g, false));
      const std::size_t nodes = build_cperm_abp(g, false).size();
      ok = ok && (std::size_t{1} << cut(pi)) <= b && b <= nodes;
      ++count;
    }
    const auto ranks = nisan_ranks(cperm_brute(involution_graph(hard_involution(n)), false));
    ok = ok && ranks[static_cast<std::size_t>(n / 2)] == (std::size_t{1} << (n / 2));
    detail << "n=" << n << " middle rank " << ranks[static_cast<std::size_t>(n / 2)] << "; ";
  }
  detail << count << " involutions";
  return ok;
}

bool cut_lemmas(std::ostringstream& detail) {
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 2 * static_cast<int>(1 + seed % 20);
    const Involution pi = random_involution(n, seed * 7919 + 1);
    const int c = cut(pi);
    ok = ok && c <= near(involution_graph(pi)) && static_cast<long long>(c) * n >= interval_edges(pi);
  }
  detail << "1000 involutions, n <= 40";
  return ok;
}

bool random_involution_cut(std::ostringstream& detail) {
  const int n = 400;
  const double threshold = n / 3.0 - std::pow(static_cast<double>(n), 0.75);
  std::mt19937_64 seeder(42);
  int hits = 0;
  for (int s = 0; s < 200; ++s) hits += cut(random_involution(n, seeder())) >= threshold;
  detail << hits << "/200 above " << std::setprecision(4) << threshold;
  return hits >= 180;
}

bool gentry(std::ostringstream& detail) {
  bool ok = true;
  std::size_t exhaustive = 0;
  for (int m = 1; m <= 3; ++m) {
    for (int k = 0; k <= 3; ++k) {
      for (const Cnf& cnf : all_two_cnfs(m, k)) {
        ok = ok && count_sat(cnf).count == naive_count(cnf);
        ++exhaustive;
      }
    }
  }
  InstanceGen gen(777);
  std::size_t longest = 0;
  for (int t = 0; t < 50; ++t) {
    const Cnf cnf = gen.two_cnf(6, 6, 3);
    const SatCountReport rep = count_sat(cnf);
    longest = std::max(longest, rep.max_cycle_len);
    ok = ok && rep.count == naive_count(cnf) && rep.max_cycle_len <= 6;
  }
  detail << exhaustive << " exhaustive + 50 random, longest cycle " << longest;
  return ok;
}

bool s3_algebra(std::ostringstream& detail) {
  const RatMatrix I = s3::identity();
  const RatMatrix r = s3::r();
  const RatMatrix s = s3::s();
  const RatMatrix t = s3::t();
  const RatMatrix ri = inverse(r);
  const bool relations = r * r * r == I && s * s == I && r * s == s * r * r && t * t == t && t * r * t == RatMatrix::zero(2, 2);
  const bool chain = s * (r * s) * ri == s * (s * r * r) * ri && s * (s * r * r) * ri == s * s * r && s * s * r == r;
  const ProductProgram clause = clause_program({Literal{1, true}, Literal{2, true}});
  const bool falsified = eval_program(clause, {false, false}) == r;
  detail << "relations " << relations << ", chain " << chain << ", clause " << falsified;
  return relations && chain && falsified;
}

bool coefficient_algorithms(std::ostringstream& detail) {
  InstanceGen gen(909);
  const std::vector<VarId> alphabet{var("x1"), var("x2"), var("x3")};
  bool ok = true;
  std::size_t queries = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = gen.uniform(1, 5);
    const Circuit c = gen.circuit(gen.uniform(2, 30), d, alphabet);
    const NcPoly f = expand_circuit(c, d);
    const Circuit pc = pc_circuit(c, 5, alphabet);
    for (const Word& w : all_words(alphabet, 1, 5)) {
      const auto mc = mcoeff(c, w);
      const auto len = static_cast<std::uint64_t>(w.size());
      ok = ok && mc.value == f.coeff(w) && mc.ops <= 64 * len * len * len * c.size();
      ok = ok && expand_circuit(pcoeff_circuit(c, w), d) == prefix_quotient(f, w);
      ok = ok && eval_circuit<Rational>(pc, IndicatorEncoding::of_word(w, 5, alphabet).assignment(), 1) == f.coeff(w);
      ++queries;
    }
  }
  detail << queries << " (circuit, word) queries";
  return ok;
}

bool sym_identities(std::ostringstream& detail) {
  bool ok = true;
  for (int n : {2, 3}) {
    for (bool sign : {false, true}) ok = ok && perm_via_hadamard(n, sign).result == cperm_brute(complete_graph(n), sign);
  }
  for (int n = 1; n <= 4; ++n) {
    const RankOneCheck r = rank_one_cperm(n);
    ok = ok && r.cperm == r.sym && r.max_rank <= 1;
  }
  detail << "hadamard n=2,3 both signs; rank-one n<=4";
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two-cycle product formula via cperm", 1, adjacent_two_cycles},
      {2, "bounded-component ABP equals brute force", 60, bounded_component_abp},
      {3, "read-once exponential sum", 30, exp_sum},
      {4, "Nisan rank sandwich", 120, nisan_sandwich},
      {5, "cut <= near and interval lemma", 10, cut_lemmas},
      {6, "random involution cut proxy", 10, random_involution_cut},
      {7, "#SAT through the block permanent", 60, gentry},
      {8, "S3 algebra", 0, s3_algebra},
      {9, "coefficient algorithms", 60, coefficient_algorithms},
      {10, "symmetric-family identities", 30, sym_identities},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
    if (!in_time) detail << " [over the " << c.limit_seconds << " s limit]";
    const bool pass = ok && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
              << std::setprecision(2) << seconds << " s) " << detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
