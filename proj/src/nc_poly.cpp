#include "ncperm/nc_poly.hpp"

#include <algorithm>
#include <sstream>

namespace ncperm {

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += var_name(w[i]);
  }
  return out;
}

NcPoly::NcPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Word{}, constant);
}

NcPoly NcPoly::monomial(Word w, const Rational& coeff) {
  NcPoly p;
  if (coeff != 0) p.terms_.emplace(std::move(w), coeff);
  return p;
}

Rational NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NcPoly::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int NcPoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

bool NcPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const std::size_t d = terms_.begin()->first.size();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.size() == d; });
}

std::set<VarId> NcPoly::variables() const {
  std::set<VarId> vars;
  for (const auto& [w, c] : terms_) vars.insert(w.begin(), w.end());
  return vars;
}

NcPoly& NcPoly::operator+=(const NcPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) { return poly_mul(a, b); }

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c != 1 || w.empty()) os << c.get_str() << (w.empty() ? "" : "*");
    if (!w.empty()) os << format_word(w);
  }
  return os.str();
}

NcPoly poly_mul(const NcPoly& p, const NcPoly& q) {
  NcPoly r;
  for (const auto& [u, a] : p.terms()) {
    for (const auto& [v, b] : q.terms()) r.add_term(concat(u, v), a * b);
  }
  return r;
}

NcPoly hadamard_poly(const NcPoly& f, const NcPoly& g) {
  NcPoly r;
  const auto& small = f.size() <= g.size() ? f : g;
  const auto& large = f.size() <= g.size() ? g : f;
  for (const auto& [w, a] : small.terms()) {
    auto it = large.terms().find(w);
    if (it != large.terms().end()) r.add_term(w, a * it->second);
  }
  return r;
}

NcPoly substitute(const NcPoly& p, const std::map<VarId, Rational>& values) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) {
    Rational coeff = c;
    Word kept;
    for (VarId v : w) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.push_back(v);
      } else {
        coeff *= it->second;
      }
    }
    r.add_term(kept, coeff);
  }
  return r;
}

}  // namespace ncperm
