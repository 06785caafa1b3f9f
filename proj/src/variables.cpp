#include "ncperm/variables.hpp"

#include <stdexcept>
#include <string>

namespace ncperm {

VarTable& VarTable::global() {
  static VarTable table;
  return table;
}

VarId VarTable::intern(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  std::lock_guard lock(mu_);
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return VarId{it->second};
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return VarId{id};
}

bool VarTable::find(std::string_view name, VarId& out) const {
  std::lock_guard lock(mu_);
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return false;
  out = VarId{it->second};
  return true;
}

std::string VarTable::name(VarId v) const {
  std::lock_guard lock(mu_);
  if (v.index >= names_.size()) throw std::out_of_range("unknown variable id " + std::to_string(v.index));
  return names_[v.index];
}

std::size_t VarTable::size() const {
  std::lock_guard lock(mu_);
  return names_.size();
}

VarId edge_var(int i, int j) {
  return var("x_" + std::to_string(i) + "_" + std::to_string(j));
}

}  // namespace ncperm
