#include "arsg/attributes.hpp"

#include <algorithm>

#include "arsg/error.hpp"

namespace arsg {

AttrKind kind_of(const Value& value) { return static_cast<AttrKind>(value.index()); }

std::string_view to_string(AttrKind kind) {
  switch (kind) {
    case AttrKind::Integer: return "integer";
    case AttrKind::Boolean: return "boolean";
    case AttrKind::Symbol: return "symbol";
    case AttrKind::StringSet: return "string_set";
  }
  return "symbol";
}

std::optional<AttrKind> parse_attr_kind(std::string_view text) {
  if (text == "integer") return AttrKind::Integer;
  if (text == "boolean") return AttrKind::Boolean;
  if (text == "symbol") return AttrKind::Symbol;
  if (text == "string_set") return AttrKind::StringSet;
  return std::nullopt;
}

std::string_view to_string(AttrScope scope) {
  return scope == AttrScope::Syntactic ? "syntactic" : "semantic";
}

std::optional<AttrScope> parse_attr_scope(std::string_view text) {
  if (text == "syntactic") return AttrScope::Syntactic;
  if (text == "semantic") return AttrScope::Semantic;
  return std::nullopt;
}

std::string to_string(const Value& value) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(const StringSet& v) const {
      std::string out = "{";
      bool first = true;
      for (const auto& s : v) {
        if (!first) out += ", ";
        out += s;
        first = false;
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{}, value);
}

std::string_view to_string(Role role) { return role == Role::Nucleus ? "N" : "S"; }

std::optional<Role> parse_role(std::string_view text) {
  if (text == "N") return Role::Nucleus;
  if (text == "S") return Role::Satellite;
  return std::nullopt;
}

AttributeSchema::AttributeSchema(std::vector<AttributeSpec> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name.empty()) throw Error(ErrorCode::SchemaViolation, "attribute with empty name");
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[i].name == entries_[j].name) {
        throw Error(ErrorCode::SchemaViolation, "duplicate attribute '" + entries_[i].name + "'");
      }
    }
  }
  const std::pair<std::string_view, AttrKind> required[] = {
      {attr::rre, AttrKind::Symbol},      {attr::role, AttrKind::Symbol},
      {attr::cue, AttrKind::StringSet},   {attr::happy, AttrKind::Integer},
      {attr::punctuation, AttrKind::Symbol}, {attr::position, AttrKind::Integer},
  };
  for (const auto& [name, kind] : required) {
    const AttributeSpec* spec = find(name);
    if (!spec) throw Error(ErrorCode::SchemaViolation, "schema lacks required attribute '" + std::string(name) + "'");
    if (spec->kind != kind) {
      throw Error(ErrorCode::SchemaViolation,
                  "attribute '" + std::string(name) + "' must be " + std::string(to_string(kind)));
    }
  }
}

AttributeSchema AttributeSchema::standard() {
  return AttributeSchema({
      {"rre", AttrKind::Symbol, AttrScope::Semantic},
      {"role", AttrKind::Symbol, AttrScope::Semantic},
      {"cue", AttrKind::StringSet, AttrScope::Syntactic},
      {"happy", AttrKind::Integer, AttrScope::Semantic},
      {"punctuation", AttrKind::Symbol, AttrScope::Syntactic},
      {"position", AttrKind::Integer, AttrScope::Syntactic},
  });
}

const AttributeSpec* AttributeSchema::find(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const AttributeSpec& s) { return s.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

const Value* AttributeMap::get(std::string_view name) const {
  auto it = values_.find(name);
  return it == values_.end() ? nullptr : &it->second;
}

void AttributeMap::erase(std::string_view name) {
  if (auto it = values_.find(name); it != values_.end()) values_.erase(it);
}

std::string to_string(const AttributeMap& map) {
  std::string out = "[";
  bool first = true;
  for (const auto& [name, value] : map.values()) {
    if (!first) out += ", ";
    out += name + "=" + to_string(value);
    first = false;
  }
  return out + "]";
}

std::optional<Role> role_of(const AttributeMap& map) {
  if (const auto* s = map.get_as<std::string>(attr::role)) return parse_role(*s);
  return std::nullopt;
}

std::vector<std::string> conformance_errors(const AttributeMap& map, const AttributeSchema& schema) {
  std::vector<std::string> errors;
  for (const auto& [name, value] : map.values()) {
    const AttributeSpec* spec = schema.find(name);
    if (!spec) {
      errors.push_back("unknown attribute '" + name + "'");
      continue;
    }
    if (spec->kind != kind_of(value)) {
      errors.push_back("attribute '" + name + "' has kind " + std::string(to_string(kind_of(value))) +
                       ", schema says " + std::string(to_string(spec->kind)));
      continue;
    }
    if (name == attr::role && !parse_role(std::get<std::string>(value))) {
      errors.push_back("role must be N or S, got '" + std::get<std::string>(value) + "'");
    }
    if (name == attr::happy) {
      auto h = std::get<std::int64_t>(value);
      if (h < -1 || h > 1) errors.push_back("happy must be in {-1,0,1}, got " + std::to_string(h));
    }
  }
  return errors;
}

}  // namespace arsg
