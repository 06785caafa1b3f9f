#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ncperm {

/// Handle into the process-wide variable table. Equality is by index only;
/// the name is metadata.
struct VarId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(VarId, VarId) = default;
};

/// Interning table mapping external names ("x_1_3") to VarIds. Lookups and
/// insertions are serialized by a mutex, so concurrent interning is safe.
class VarTable {
 public:
  static VarTable& global();

  VarId intern(std::string_view name);
  /// Returns false and leaves `out` untouched when the name is unknown.
  bool find(std::string_view name, VarId& out) const;
  std::string name(VarId v) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

inline VarId var(std::string_view name) { return VarTable::global().intern(name); }
inline std::string var_name(VarId v) { return VarTable::global().name(v); }

/// Edge variable x_{i,j}, named "x_i_j".
VarId edge_var(int i, int j);

}  // namespace ncperm

template <>
struct std::hash<ncperm::VarId> {
  std::size_t operator()(ncperm::VarId v) const noexcept { return v.index; }
};
