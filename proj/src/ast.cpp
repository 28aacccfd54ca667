#include "act/ast.hpp"

#include <sstream>

namespace act {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string Diagnostic::render() const {
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  if (span.valid()) os << span.line << ":" << span.col << ":";
  if (!file.empty() || span.valid()) os << " ";
  switch (severity) {
    case Severity::Error: os << "error: "; break;
    case Severity::Warning: os << "warning: "; break;
    case Severity::Note: os << "note: "; break;
  }
  os << message;
  if (!rule.empty()) os << " [" << rule << "]";
  return os.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += d.render();
    out += '\n';
  }
  return out;
}

BigInt IntType::min() const {
  if (kind_ == Kind::Unsigned) return 0;
  if (kind_ == Kind::Signed) return -(BigInt(1) << (bits_ - 1));
  throw std::logic_error("min() on math int");
}

BigInt IntType::max() const {
  if (kind_ == Kind::Unsigned) return (BigInt(1) << bits_) - 1;
  if (kind_ == Kind::Signed) return (BigInt(1) << (bits_ - 1)) - 1;
  throw std::logic_error("max() on math int");
}

MappingType MappingType::map(BaseType key, MappingType value) {
  return MappingType{Box<MapNode>(MapNode{std::move(key), std::move(value)})};
}

const MappingType::MapNode& MappingType::as_map() const {
  return *std::get<Box<MapNode>>(v);
}

bool MappingType::operator==(const MappingType& o) const {
  if (v.index() != o.v.index()) return false;
  if (is_base()) return as_base() == o.as_base();
  const auto& a = as_map();
  const auto& b = o.as_map();
  return a.key == b.key && a.value == b.value;
}

SlotType SlotType::from_abi(const AbiType& a) {
  if (a.is_base()) return SlotType::base(a.as_base());
  return SlotType::contract_addr(a.contract());
}

const std::string& SlotType::contract_name() const {
  if (is_contract_addr()) return std::get<ContractAddr>(v).name;
  return std::get<Contract>(v).name;
}

bool SlotType::operator==(const SlotType& o) const {
  if (v.index() != o.v.index()) return false;
  switch (v.index()) {
    case 0: return as_mapping() == o.as_mapping();
    case 1: return std::get<ContractAddr>(v) == std::get<ContractAddr>(o.v);
    default: return std::get<Contract>(v) == std::get<Contract>(o.v);
  }
}

std::string to_string(const IntType& t) {
  switch (t.kind()) {
    case IntType::Kind::Unsigned: return "uint" + std::to_string(t.bits());
    case IntType::Kind::Signed: return "int" + std::to_string(t.bits());
    default: return "int";
  }
}

std::string to_string(const BaseType& t) {
  switch (t.sort) {
    case BaseType::Sort::Int: return to_string(*t.int_type);
    case BaseType::Sort::Bool: return "bool";
    default: return "address";
  }
}

std::string to_string(const MappingType& t) {
  if (t.is_base()) return to_string(t.as_base());
  const auto& m = t.as_map();
  return "mapping(" + to_string(m.key) + " => " + to_string(m.value) + ")";
}

std::string to_string(const AbiType& t) {
  if (t.is_base()) return to_string(t.as_base());
  return "address(" + t.contract() + ")";
}

std::string to_string(const SlotType& t) {
  if (t.is_mapping()) return to_string(t.as_mapping());
  if (t.is_contract_addr()) return "address(" + t.contract_name() + ")";
  return t.contract_name();
}

const char* to_string(EnvVar v) {
  switch (v) {
    case EnvVar::Caller: return "caller";
    case EnvVar::Origin: return "origin";
    case EnvVar::Callvalue: return "callvalue";
    default: return "this";
  }
}

const char* to_string(IntOp op) {
  switch (op) {
    case IntOp::Add: return "+";
    case IntOp::Sub: return "-";
    case IntOp::Mul: return "*";
    case IntOp::Div: return "div";
    case IntOp::Mod: return "mod";
    default: return "exp";
  }
}

const char* to_string(BoolOp op) {
  switch (op) {
    case BoolOp::And: return "&&";
    case BoolOp::Or: return "||";
    default: return "==>";
  }
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
    default: return ">";
  }
}

Expr int_lit(BigInt n) { return Expr{Expr::IntLit{std::move(n)}, {}}; }
Expr bool_lit(bool b) { return Expr{Expr::BoolLit{b}, {}}; }
Expr ref_expr(Ref r) { return Expr{Expr::RefExpr{std::move(r)}, {}}; }
Expr bin_b(BoolOp op, Expr l, Expr r) {
  return Expr{Expr::BinB{op, Box<Expr>(std::move(l)), Box<Expr>(std::move(r))}, {}};
}
Expr bin_i(IntOp op, Expr l, Expr r) {
  return Expr{Expr::BinI{op, Box<Expr>(std::move(l)), Box<Expr>(std::move(r))}, {}};
}
Expr cmp(CmpOp op, Expr l, Expr r) {
  return Expr{Expr::Cmp{op, Box<Expr>(std::move(l)), Box<Expr>(std::move(r))}, {}};
}
Expr not_e(Expr e) { return Expr{Expr::Not{Box<Expr>(std::move(e))}, {}}; }
Expr in_range(IntType t, Expr e) {
  return Expr{Expr::InRange{t, Box<Expr>(std::move(e))}, {}};
}
Expr eq(Expr l, Expr r) {
  return Expr{Expr::Eq{Box<Expr>(std::move(l)), Box<Expr>(std::move(r))}, {}};
}
Ref var_ref(std::string name) { return Ref{Ref::Var{std::move(name)}, std::nullopt, {}}; }

// ---------------------------------------------------------------------------
// Structural equality

bool ast_equal(const Ref& a, const Ref& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const Ref::Var& x) { return x.name == std::get<Ref::Var>(b.v).name; },
          [&](const Ref::Pre& x) { return x.name == std::get<Ref::Pre>(b.v).name; },
          [&](const Ref::Post& x) { return x.name == std::get<Ref::Post>(b.v).name; },
          [&](const Ref::Coerce& x) {
            const auto& y = std::get<Ref::Coerce>(b.v);
            return x.to == y.to && ast_equal(*x.inner, *y.inner);
          },
          [&](const Ref::Field& x) {
            const auto& y = std::get<Ref::Field>(b.v);
            return x.field == y.field && ast_equal(*x.inner, *y.inner);
          },
          [&](const Ref::Index& x) {
            const auto& y = std::get<Ref::Index>(b.v);
            return ast_equal(*x.inner, *y.inner) && ast_equal(*x.key, *y.key);
          },
          [&](const Ref::EnvRef& x) { return x.var == std::get<Ref::EnvRef>(b.v).var; },
      },
      a.v);
}

bool ast_equal(const Expr& a, const Expr& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const Expr::IntLit& x) { return x.value == std::get<Expr::IntLit>(b.v).value; },
          [&](const Expr::BoolLit& x) { return x.value == std::get<Expr::BoolLit>(b.v).value; },
          [&](const Expr::RefExpr& x) { return ast_equal(x.ref, std::get<Expr::RefExpr>(b.v).ref); },
          [&](const Expr::AddrOf& x) { return ast_equal(x.ref, std::get<Expr::AddrOf>(b.v).ref); },
          [&](const Expr::BinI& x) {
            const auto& y = std::get<Expr::BinI>(b.v);
            return x.op == y.op && ast_equal(*x.l, *y.l) && ast_equal(*x.r, *y.r);
          },
          [&](const Expr::BinB& x) {
            const auto& y = std::get<Expr::BinB>(b.v);
            return x.op == y.op && ast_equal(*x.l, *y.l) && ast_equal(*x.r, *y.r);
          },
          [&](const Expr::Cmp& x) {
            const auto& y = std::get<Expr::Cmp>(b.v);
            return x.op == y.op && ast_equal(*x.l, *y.l) && ast_equal(*x.r, *y.r);
          },
          [&](const Expr::Not& x) { return ast_equal(*x.e, *std::get<Expr::Not>(b.v).e); },
          [&](const Expr::InRange& x) {
            const auto& y = std::get<Expr::InRange>(b.v);
            return x.type == y.type && ast_equal(*x.e, *y.e);
          },
          [&](const Expr::Ite& x) {
            const auto& y = std::get<Expr::Ite>(b.v);
            return ast_equal(*x.c, *y.c) && ast_equal(*x.t, *y.t) && ast_equal(*x.f, *y.f);
          },
          [&](const Expr::Eq& x) {
            const auto& y = std::get<Expr::Eq>(b.v);
            return ast_equal(*x.l, *y.l) && ast_equal(*x.r, *y.r);
          },
      },
      a.v);
}

static bool pairs_equal(const std::vector<MappingExpr::Pair>& a,
                        const std::vector<MappingExpr::Pair>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ast_equal(a[i].key, b[i].key) || !ast_equal(a[i].value, b[i].value)) return false;
  return true;
}

bool ast_equal(const MappingExpr& a, const MappingExpr& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const MappingExpr::Base& x) {
            return ast_equal(*x.e, *std::get<MappingExpr::Base>(b.v).e);
          },
          [&](const MappingExpr::Lit& x) {
            return pairs_equal(x.pairs, std::get<MappingExpr::Lit>(b.v).pairs);
          },
          [&](const MappingExpr::Upd& x) {
            const auto& y = std::get<MappingExpr::Upd>(b.v);
            return ast_equal(x.base, y.base) && pairs_equal(x.pairs, y.pairs);
          },
      },
      a.v);
}

bool ast_equal(const SlotExpr& a, const SlotExpr& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const SlotExpr::MapE& x) { return ast_equal(x.m, std::get<SlotExpr::MapE>(b.v).m); },
          [&](const SlotExpr::New& x) {
            const auto& y = std::get<SlotExpr::New>(b.v);
            if (x.contract != y.contract || x.args.size() != y.args.size()) return false;
            if (x.value_arg.has_value() != y.value_arg.has_value()) return false;
            if (x.value_arg && !ast_equal(**x.value_arg, **y.value_arg)) return false;
            for (size_t i = 0; i < x.args.size(); ++i)
              if (!ast_equal(x.args[i], y.args[i])) return false;
            return true;
          },
          [&](const SlotExpr::RefE& x) { return ast_equal(x.ref, std::get<SlotExpr::RefE>(b.v).ref); },
          [&](const SlotExpr::AddrE& x) {
            return ast_equal(*x.inner, *std::get<SlotExpr::AddrE>(b.v).inner);
          },
      },
      a.v);
}

bool ast_equal(const Create& a, const Create& b) {
  return a.slot_type == b.slot_type && a.name == b.name && ast_equal(a.rhs, b.rhs);
}

bool ast_equal(const Update& a, const Update& b) {
  return ast_equal(a.target, b.target) && ast_equal(a.rhs, b.rhs);
}

template <class T>
static bool list_equal(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ast_equal(a[i], b[i])) return false;
  return true;
}

bool ast_equal(const Constructor& a, const Constructor& b) {
  if (a.iface != b.iface || a.payable != b.payable) return false;
  if (!list_equal(a.iff, b.iff) || !list_equal(a.ensures, b.ensures)) return false;
  if (a.cases.size() != b.cases.size()) return false;
  for (size_t i = 0; i < a.cases.size(); ++i) {
    if (!ast_equal(a.cases[i].cond, b.cases[i].cond)) return false;
    if (!list_equal(a.cases[i].creates, b.cases[i].creates)) return false;
  }
  return true;
}

bool ast_equal(const Transition& a, const Transition& b) {
  if (a.name != b.name || a.iface != b.iface || a.payable != b.payable) return false;
  if (a.ret_type != b.ret_type) return false;
  if (!list_equal(a.iff, b.iff) || !list_equal(a.ensures, b.ensures)) return false;
  if (a.cases.size() != b.cases.size()) return false;
  for (size_t i = 0; i < a.cases.size(); ++i) {
    const auto& x = a.cases[i];
    const auto& y = b.cases[i];
    if (!ast_equal(x.cond, y.cond) || !list_equal(x.updates, y.updates)) return false;
    if (x.returns.has_value() != y.returns.has_value()) return false;
    if (x.returns && !ast_equal(*x.returns, *y.returns)) return false;
  }
  return true;
}

bool ast_equal(const Contract& a, const Contract& b) {
  return a.name == b.name && ast_equal(a.ctor, b.ctor) &&
         list_equal(a.transitions, b.transitions) && list_equal(a.invariants, b.invariants);
}

bool ast_equal(const Spec& a, const Spec& b) { return list_equal(a.contracts, b.contracts); }

}  // namespace act
