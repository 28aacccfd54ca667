// Runtime values and states of the pointer semantics.
//
// A mapping value is observationally total: lookups outside the finite table
// fall back to a type-directed default. Tables are kept canonical (no entry
// equal to the default; bool-keyed mappings renormalized over their full
// domain) so structural equality coincides with observational equality.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "act/ast.hpp"

namespace act {

enum class KeySort { Int, Bool, Addr };
const char* to_string(KeySort k);
KeySort meta_sort(const BaseType& b);

class Value {
 public:
  struct Unit {};  // result of transitions without `returns`; not a data value
  class MapRep;
  using MapPtr = std::shared_ptr<const MapRep>;

  Value() : rep_(Unit{}) {}
  static Value unit() { return Value(); }
  static Value integer(BigInt n) { return Value(Rep(std::move(n))); }
  static Value boolean(bool b) { return Value(Rep(b)); }
  static Value address(Addr a) { return Value(Rep(a)); }
  static Value mapping(KeySort key_sort, Value def, std::map<Value, Value> table);

  bool is_unit() const { return std::holds_alternative<Unit>(rep_); }
  bool is_int() const { return std::holds_alternative<BigInt>(rep_); }
  bool is_bool() const { return std::holds_alternative<bool>(rep_); }
  bool is_addr() const { return std::holds_alternative<Addr>(rep_); }
  bool is_mapping() const { return std::holds_alternative<MapPtr>(rep_); }

  const BigInt& as_int() const { return std::get<BigInt>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  Addr as_addr() const { return std::get<Addr>(rep_); }
  const MapRep& as_mapping() const { return *std::get<MapPtr>(rep_); }

  // Total lookup: table value if present, else the default.
  const Value& lookup(const Value& key) const;

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  // Total order; used for canonical table keys and deterministic iteration.
  bool operator<(const Value& o) const;

  std::string to_string() const;

 private:
  using Rep = std::variant<Unit, BigInt, bool, Addr, MapPtr>;
  explicit Value(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

class Value::MapRep {
 public:
  MapRep(KeySort ks, Value def, std::map<Value, Value> table)
      : key_sort(ks), def(std::move(def)), table(std::move(table)) {}
  KeySort key_sort;
  Value def;
  std::map<Value, Value> table;
};

// Type-directed default value.
Value default_value(const MappingType& mu);
Value default_value(const BaseType& b);

// Whether a value belongs to meta(beta) for the given key sort.
bool in_meta(const Value& v, KeySort ks);

struct ContractInstance {
  std::string type;
  std::map<std::string, Value> vars;
  bool operator==(const ContractInstance& o) const = default;
};

struct State {
  std::map<Addr, ContractInstance> slots;

  bool contains(Addr l) const { return slots.count(l) > 0; }
  const ContractInstance& at(Addr l) const { return slots.at(l); }
  Addr fresh() const { return slots.empty() ? 0 : slots.rbegin()->first + 1; }
  bool operator==(const State& o) const = default;

  // Canonical single-line rendering; fingerprints hash this.
  std::string to_string() const;
  std::uint64_t fingerprint() const { return fnv1a(to_string()); }
};

// Calldata environment; holds base values only.
using Env = std::map<std::string, Value>;

enum class Timing { U, Pre, Post };

// View of an untimed state or a (pre, post) pair. Does not own the states.
struct TimedView {
  const State* pre = nullptr;
  const State* post = nullptr;
  bool timed = false;

  static TimedView untimed(const State& s) { return TimedView{&s, &s, false}; }
  static TimedView make_timed(const State& pre, const State& post) {
    return TimedView{&pre, &post, true};
  }
  const State& single() const { return *pre; }
};

std::string to_string(const Env& env);

}  // namespace act
