#include "act/value.hpp"

#include <sstream>

namespace act {

const char* to_string(KeySort k) {
  switch (k) {
    case KeySort::Int: return "int";
    case KeySort::Bool: return "bool";
    default: return "addr";
  }
}

KeySort meta_sort(const BaseType& b) {
  switch (b.sort) {
    case BaseType::Sort::Int: return KeySort::Int;
    case BaseType::Sort::Bool: return KeySort::Bool;
    default: return KeySort::Addr;
  }
}

Value Value::mapping(KeySort key_sort, Value def, std::map<Value, Value> table) {
  if (key_sort == KeySort::Bool) {
    // Finite key domain: renormalize so equal functions get equal reps.
    Value fv = def, tv = def;
    if (auto it = table.find(Value::boolean(false)); it != table.end()) fv = it->second;
    if (auto it = table.find(Value::boolean(true)); it != table.end()) tv = it->second;
    def = fv;
    table.clear();
    if (!(tv == def)) table.emplace(Value::boolean(true), std::move(tv));
  } else {
    for (auto it = table.begin(); it != table.end();) {
      if (it->second == def)
        it = table.erase(it);
      else
        ++it;
    }
  }
  return Value(Rep(std::make_shared<const MapRep>(key_sort, std::move(def), std::move(table))));
}

const Value& Value::lookup(const Value& key) const {
  const MapRep& m = as_mapping();
  auto it = m.table.find(key);
  return it == m.table.end() ? m.def : it->second;
}

bool Value::operator==(const Value& o) const {
  if (rep_.index() != o.rep_.index()) return false;
  return std::visit(
      overloaded{
          [&](const Unit&) { return true; },
          [&](const BigInt& x) { return x == std::get<BigInt>(o.rep_); },
          [&](bool x) { return x == std::get<bool>(o.rep_); },
          [&](Addr x) { return x == std::get<Addr>(o.rep_); },
          [&](const MapPtr& x) {
            const MapPtr& y = std::get<MapPtr>(o.rep_);
            if (x == y) return true;
            return x->key_sort == y->key_sort && x->def == y->def && x->table == y->table;
          },
      },
      rep_);
}

bool Value::operator<(const Value& o) const {
  if (rep_.index() != o.rep_.index()) return rep_.index() < o.rep_.index();
  return std::visit(
      overloaded{
          [&](const Unit&) { return false; },
          [&](const BigInt& x) { return x < std::get<BigInt>(o.rep_); },
          [&](bool x) { return !x && std::get<bool>(o.rep_); },
          [&](Addr x) { return x < std::get<Addr>(o.rep_); },
          [&](const MapPtr& x) {
            const MapPtr& y = std::get<MapPtr>(o.rep_);
            if (x == y) return false;
            if (x->key_sort != y->key_sort) return x->key_sort < y->key_sort;
            if (!(x->def == y->def)) return x->def < y->def;
            return x->table < y->table;
          },
      },
      rep_);
}

std::string Value::to_string() const {
  return std::visit(
      overloaded{
          [&](const Unit&) { return std::string("unit"); },
          [&](const BigInt& x) { return x.str(); },
          [&](bool x) { return std::string(x ? "true" : "false"); },
          [&](Addr x) { return "@" + std::to_string(x); },
          [&](const MapPtr& x) {
            std::string s = "{";
            for (const auto& [k, v] : x->table) {
              s += k.to_string() + "=>" + v.to_string() + ",";
            }
            s += "_=>" + x->def.to_string() + "}";
            return s;
          },
      },
      rep_);
}

Value default_value(const BaseType& b) {
  switch (b.sort) {
    case BaseType::Sort::Int: return Value::integer(0);
    case BaseType::Sort::Bool: return Value::boolean(false);
    default: return Value::address(0);
  }
}

Value default_value(const MappingType& mu) {
  if (mu.is_base()) return default_value(mu.as_base());
  const auto& m = mu.as_map();
  return Value::mapping(meta_sort(m.key), default_value(m.value), {});
}

bool in_meta(const Value& v, KeySort ks) {
  switch (ks) {
    case KeySort::Int: return v.is_int();
    case KeySort::Bool: return v.is_bool();
    default: return v.is_addr();
  }
}

std::string State::to_string() const {
  std::ostringstream os;
  os << "{";
  for (const auto& [l, inst] : slots) {
    os << l << ":" << inst.type << "(";
    for (const auto& [x, v] : inst.vars) os << x << "=" << v.to_string() << ";";
    os << ")";
  }
  os << "}";
  return os.str();
}

std::string to_string(const Env& env) {
  std::string s = "[";
  for (const auto& [k, v] : env) s += k + "=" + v.to_string() + ";";
  s += "]";
  return s;
}

}  // namespace act
