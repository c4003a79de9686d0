#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace arsg {

enum class AttrKind { Integer, Boolean, Symbol, StringSet };
enum class AttrScope { Syntactic, Semantic };

using StringSet = std::set<std::string>;

// The alternative index mirrors AttrKind.
using Value = std::variant<std::int64_t, bool, std::string, StringSet>;

AttrKind kind_of(const Value& value);
std::string_view to_string(AttrKind kind);
std::optional<AttrKind> parse_attr_kind(std::string_view text);
std::string_view to_string(AttrScope scope);
std::optional<AttrScope> parse_attr_scope(std::string_view text);

// Human-readable rendering: 3, true, point, {although, still}.
std::string to_string(const Value& value);

// Names of the attributes every schema must carry.
namespace attr {
inline constexpr std::string_view rre = "rre";
inline constexpr std::string_view role = "role";
inline constexpr std::string_view cue = "cue";
inline constexpr std::string_view happy = "happy";
inline constexpr std::string_view punctuation = "punctuation";
inline constexpr std::string_view position = "position";
}  // namespace attr

enum class Role { Nucleus, Satellite };

std::string_view to_string(Role role);  // "N" / "S"
std::optional<Role> parse_role(std::string_view text);

struct AttributeSpec {
  std::string name;
  AttrKind kind = AttrKind::Symbol;
  AttrScope scope = AttrScope::Syntactic;

  bool operator==(const AttributeSpec&) const = default;
};

// The attribute set AT of a grammar. Names are unique and the six standard
// attributes (rre, role, cue, happy, punctuation, position) are always present.
class AttributeSchema {
 public:
  // Throws SchemaViolation on duplicate names or missing required entries.
  explicit AttributeSchema(std::vector<AttributeSpec> entries);

  // rre, role, cue, happy, punctuation, position.
  static AttributeSchema standard();

  const std::vector<AttributeSpec>& entries() const { return entries_; }
  const AttributeSpec* find(std::string_view name) const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<AttributeSpec> entries_;
};

class AttributeMap {
 public:
  using Storage = std::map<std::string, Value, std::less<>>;

  AttributeMap() = default;
  AttributeMap(std::initializer_list<Storage::value_type> init) : values_(init) {}

  const Value* get(std::string_view name) const;

  template <typename T>
  const T* get_as(std::string_view name) const {
    const Value* v = get(name);
    return v ? std::get_if<T>(v) : nullptr;
  }

  void set(std::string name, Value value) { values_.insert_or_assign(std::move(name), std::move(value)); }
  void erase(std::string_view name);
  bool contains(std::string_view name) const { return get(name) != nullptr; }
  bool empty() const { return values_.empty(); }
  const Storage& values() const { return values_; }

  bool operator==(const AttributeMap&) const = default;

 private:
  Storage values_;
};

std::string to_string(const AttributeMap& map);

// Role of a node as recorded in its attribute map, if set.
std::optional<Role> role_of(const AttributeMap& map);

// Every violation of the schema by `map` (unknown names, wrong kinds, role not
// N/S, happy outside {-1,0,1}). Empty when the map conforms.
std::vector<std::string> conformance_errors(const AttributeMap& map, const AttributeSchema& schema);

}  // namespace arsg
