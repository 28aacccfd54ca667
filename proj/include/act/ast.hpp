// Abstract syntax: types, references, expressions, contracts.
// Nodes are plain value types; copies are deep. Reference and mapping-literal
// nodes carry an optional type annotation that the checker fills in.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "act/basics.hpp"

namespace act {

// ---------------------------------------------------------------------------
// Types

class IntType {
 public:
  enum class Kind { Unsigned, Signed, Math };

  static IntType unsigned_bits(int bits) { return IntType(Kind::Unsigned, bits); }
  static IntType signed_bits(int bits) { return IntType(Kind::Signed, bits); }
  static IntType math() { return IntType(Kind::Math, 0); }

  Kind kind() const { return kind_; }
  bool is_math() const { return kind_ == Kind::Math; }
  int bits() const { return bits_; }

  // Bounds of the representable range; only for non-math types.
  BigInt min() const;
  BigInt max() const;

  bool operator==(const IntType& o) const = default;

 private:
  IntType(Kind k, int bits) : kind_(k), bits_(bits) {
    if (k != Kind::Math && (bits < 8 || bits > 256 || bits % 8 != 0))
      throw std::invalid_argument("integer width must be a multiple of 8 in [8,256]");
  }
  Kind kind_;
  int bits_;
};

inline IntType uint256() { return IntType::unsigned_bits(256); }

struct BaseType {
  enum class Sort { Int, Bool, Address };
  Sort sort = Sort::Bool;
  std::optional<IntType> int_type;  // present iff sort == Int

  static BaseType integer(IntType t) { return {Sort::Int, t}; }
  static BaseType boolean() { return {Sort::Bool, std::nullopt}; }
  static BaseType address() { return {Sort::Address, std::nullopt}; }

  bool is_int() const { return sort == Sort::Int; }
  bool operator==(const BaseType& o) const = default;
};

// Mapping types: mapping(beta => mu) | beta.
struct MappingType {
  struct MapNode;
  std::variant<BaseType, Box<MapNode>> v;

  static MappingType base(BaseType b) { return {std::move(b)}; }
  static MappingType map(BaseType key, MappingType value);

  bool is_base() const { return v.index() == 0; }
  const BaseType& as_base() const { return std::get<BaseType>(v); }
  const MapNode& as_map() const;

  bool operator==(const MappingType& o) const;
};

struct MappingType::MapNode {
  BaseType key;
  MappingType value;
};

// ABI types: base types plus contract-typed addresses.
struct AbiType {
  struct ContractAddr {
    std::string name;
    bool operator==(const ContractAddr&) const = default;
  };
  std::variant<BaseType, ContractAddr> v;

  static AbiType base(BaseType b) { return {std::move(b)}; }
  static AbiType contract_addr(std::string name) { return {ContractAddr{std::move(name)}}; }

  bool is_base() const { return v.index() == 0; }
  const BaseType& as_base() const { return std::get<BaseType>(v); }
  bool is_contract_addr() const { return v.index() == 1; }
  const std::string& contract() const { return std::get<ContractAddr>(v).name; }

  bool operator==(const AbiType& o) const = default;
};

// Slot types: mapping/base types, contract-typed addresses, contract types.
// Plain base types are canonically represented through the MappingType arm.
struct SlotType {
  struct ContractAddr {
    std::string name;
    bool operator==(const ContractAddr&) const = default;
  };
  struct Contract {
    std::string name;
    bool operator==(const Contract&) const = default;
  };
  std::variant<MappingType, ContractAddr, Contract> v;

  static SlotType mapping(MappingType m) { return {std::move(m)}; }
  static SlotType base(BaseType b) { return {MappingType::base(std::move(b))}; }
  static SlotType contract_addr(std::string n) { return {ContractAddr{std::move(n)}}; }
  static SlotType contract(std::string n) { return {Contract{std::move(n)}}; }
  static SlotType from_abi(const AbiType& a);

  bool is_mapping() const { return v.index() == 0; }
  const MappingType& as_mapping() const { return std::get<MappingType>(v); }
  bool is_base() const { return is_mapping() && as_mapping().is_base(); }
  const BaseType& as_base() const { return as_mapping().as_base(); }
  bool is_contract_addr() const { return v.index() == 1; }
  bool is_contract() const { return v.index() == 2; }
  const std::string& contract_name() const;

  bool operator==(const SlotType& o) const;
};

std::string to_string(const IntType& t);
std::string to_string(const BaseType& t);
std::string to_string(const MappingType& t);
std::string to_string(const AbiType& t);
std::string to_string(const SlotType& t);

// ---------------------------------------------------------------------------
// References and expressions

enum class EnvVar { Caller, Origin, Callvalue, This };
const char* to_string(EnvVar v);

enum class IntOp { Add, Sub, Mul, Div, Mod, Exp };
enum class BoolOp { And, Or, Implies };
enum class CmpOp { Lt, Le, Ge, Gt };
const char* to_string(IntOp op);
const char* to_string(BoolOp op);
const char* to_string(CmpOp op);

struct Expr;

struct Ref {
  struct Var {
    std::string name;
  };
  struct Pre {
    std::string name;
  };
  struct Post {
    std::string name;
  };
  struct Coerce {
    Box<Ref> inner;
    std::string to;
  };
  struct Field {
    Box<Ref> inner;
    std::string field;
  };
  struct Index {
    Box<Ref> inner;
    Box<Expr> key;
  };
  struct EnvRef {
    EnvVar var;
  };

  std::variant<Var, Pre, Post, Coerce, Field, Index, EnvRef> v;
  std::optional<SlotType> annot;  // filled by the checker
  Span span;
};

struct Expr {
  struct IntLit {
    BigInt value;
  };
  struct BoolLit {
    bool value;
  };
  struct RefExpr {
    Ref ref;
  };
  struct AddrOf {
    Ref ref;
  };
  struct BinI {
    IntOp op;
    Box<Expr> l, r;
  };
  struct BinB {
    BoolOp op;
    Box<Expr> l, r;
  };
  struct Cmp {
    CmpOp op;
    Box<Expr> l, r;
  };
  struct Not {
    Box<Expr> e;
  };
  struct InRange {
    IntType type;
    Box<Expr> e;
  };
  struct Ite {
    Box<Expr> c, t, f;
  };
  struct Eq {
    Box<Expr> l, r;
  };

  std::variant<IntLit, BoolLit, RefExpr, AddrOf, BinI, BinB, Cmp, Not, InRange, Ite, Eq> v;
  Span span;
};

// Convenience constructors used by the checker and the generators.
Expr int_lit(BigInt n);
Expr bool_lit(bool b);
Expr ref_expr(Ref r);
Expr bin_b(BoolOp op, Expr l, Expr r);
Expr bin_i(IntOp op, Expr l, Expr r);
Expr cmp(CmpOp op, Expr l, Expr r);
Expr not_e(Expr e);
Expr in_range(IntType t, Expr e);
Expr eq(Expr l, Expr r);
Ref var_ref(std::string name);

struct MappingExpr {
  struct Pair;
  struct Base {
    Box<Expr> e;
  };
  struct Lit {
    std::vector<Pair> pairs;
    std::optional<MappingType> annot;  // filled by the checker
  };
  struct Upd {
    Ref base;
    std::vector<Pair> pairs;
    std::optional<MappingType> annot;  // filled by the checker
  };

  std::variant<Base, Lit, Upd> v;
  Span span;
};

struct MappingExpr::Pair {
  Expr key;
  MappingExpr value;
};

struct SlotExpr {
  struct MapE {
    MappingExpr m;
  };
  struct New {
    std::string contract;
    std::optional<Box<SlotExpr>> value_arg;  // present iff `{value: ...}` written
    std::vector<SlotExpr> args;
  };
  struct RefE {
    Ref ref;  // contract-typed reference
  };
  struct AddrE {
    Box<SlotExpr> inner;
  };

  std::variant<MapE, New, RefE, AddrE> v;
  Span span;
};

// ---------------------------------------------------------------------------
// Declarations

struct Create {
  SlotType slot_type;
  std::string name;
  SlotExpr rhs;
  Span span;
};

struct Update {
  Ref target;  // annotated with its slot type by the checker
  SlotExpr rhs;
  Span span;
};

struct CtorCase {
  Expr cond;
  std::vector<Create> creates;
  Span span;
};

struct TransCase {
  Expr cond;
  std::vector<Update> updates;
  std::optional<Expr> returns;
  Span span;
};

using InterfaceEnv = std::vector<std::pair<std::string, AbiType>>;

struct Constructor {
  InterfaceEnv iface;
  bool payable = false;
  std::vector<Expr> iff;
  std::vector<CtorCase> cases;
  std::vector<Expr> ensures;
  Span span;
};

struct Transition {
  std::string name;
  InterfaceEnv iface;
  bool payable = false;
  std::optional<AbiType> ret_type;
  std::vector<Expr> iff;
  std::vector<TransCase> cases;
  std::vector<Expr> ensures;
  Span span;
};

struct Contract {
  std::string name;
  Constructor ctor;
  std::vector<Transition> transitions;
  std::vector<Expr> invariants;
  Span span;
};

struct Spec {
  std::vector<Contract> contracts;
};

// ---------------------------------------------------------------------------
// Structural equality modulo spans and annotations (alpha-identity for the
// round-trip property).

bool ast_equal(const Ref& a, const Ref& b);
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const MappingExpr& a, const MappingExpr& b);
bool ast_equal(const SlotExpr& a, const SlotExpr& b);
bool ast_equal(const Create& a, const Create& b);
bool ast_equal(const Update& a, const Update& b);
bool ast_equal(const Constructor& a, const Constructor& b);
bool ast_equal(const Transition& a, const Transition& b);
bool ast_equal(const Contract& a, const Contract& b);
bool ast_equal(const Spec& a, const Spec& b);

// Plain syntactic equality of references (annotations ignored), used by the
// update-specificity check.
inline bool ref_equal(const Ref& a, const Ref& b) { return ast_equal(a, b); }

}  // namespace act
