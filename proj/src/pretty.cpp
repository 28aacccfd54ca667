#include "act/pretty.hpp"

#include <sstream>

namespace act {

namespace {

// Binding strength, loosest first: ==> < || < && < = < comparisons < +,-
// < *,div,mod < exp < unary.
int prec_of_bool(BoolOp op) {
  switch (op) {
    case BoolOp::Implies: return 0;
    case BoolOp::Or: return 1;
    default: return 2;
  }
}

int prec_of_int(IntOp op) {
  switch (op) {
    case IntOp::Add:
    case IntOp::Sub: return 5;
    case IntOp::Mul:
    case IntOp::Div:
    case IntOp::Mod: return 6;
    default: return 7;  // exp
  }
}

constexpr int kPrecEq = 3;
constexpr int kPrecCmp = 4;
constexpr int kPrecNot = 8;

void print_expr(std::ostream& os, const Expr& e, int min_prec);

// A coerce needs parens when a selector or another coerce follows it.
void print_ref_inner(std::ostream& os, const Ref& r, bool protect_coerce) {
  bool is_coerce = std::holds_alternative<Ref::Coerce>(r.v);
  if (is_coerce && protect_coerce) os << "(";
  std::visit(overloaded{
                 [&](const Ref::Var& x) { os << x.name; },
                 [&](const Ref::Pre& x) { os << "pre(" << x.name << ")"; },
                 [&](const Ref::Post& x) { os << "post(" << x.name << ")"; },
                 [&](const Ref::Coerce& x) {
                   print_ref_inner(os, *x.inner, true);
                   os << " as " << x.to;
                 },
                 [&](const Ref::Field& x) {
                   print_ref_inner(os, *x.inner, true);
                   os << "." << x.field;
                 },
                 [&](const Ref::Index& x) {
                   print_ref_inner(os, *x.inner, true);
                   os << "[";
                   print_expr(os, *x.key, 0);
                   os << "]";
                 },
                 [&](const Ref::EnvRef& x) { os << to_string(x.var); },
             },
             r.v);
  if (is_coerce && protect_coerce) os << ")";
}

void print_expr(std::ostream& os, const Expr& e, int min_prec) {
  std::visit(
      overloaded{
          [&](const Expr::IntLit& x) { os << x.value.str(); },
          [&](const Expr::BoolLit& x) { os << (x.value ? "true" : "false"); },
          [&](const Expr::RefExpr& x) { print_ref_inner(os, x.ref, false); },
          [&](const Expr::AddrOf& x) {
            os << "addr(";
            print_ref_inner(os, x.ref, false);
            os << ")";
          },
          [&](const Expr::BinI& x) {
            int p = prec_of_int(x.op);
            if (p < min_prec) os << "(";
            print_expr(os, *x.l, p);
            os << " " << to_string(x.op) << " ";
            print_expr(os, *x.r, p + 1);
            if (p < min_prec) os << ")";
          },
          [&](const Expr::BinB& x) {
            int p = prec_of_bool(x.op);
            if (p < min_prec) os << "(";
            if (x.op == BoolOp::Implies) {
              // right-associative
              print_expr(os, *x.l, p + 1);
              os << " ==> ";
              print_expr(os, *x.r, p);
            } else {
              print_expr(os, *x.l, p);
              os << " " << to_string(x.op) << " ";
              print_expr(os, *x.r, p + 1);
            }
            if (p < min_prec) os << ")";
          },
          [&](const Expr::Cmp& x) {
            if (kPrecCmp < min_prec) os << "(";
            print_expr(os, *x.l, kPrecCmp);
            os << " " << to_string(x.op) << " ";
            print_expr(os, *x.r, kPrecCmp + 1);
            if (kPrecCmp < min_prec) os << ")";
          },
          [&](const Expr::Not& x) {
            os << "!";
            print_expr(os, *x.e, kPrecNot);
          },
          [&](const Expr::InRange& x) {
            os << "inrange(" << to_string(x.type) << ", ";
            print_expr(os, *x.e, 0);
            os << ")";
          },
          [&](const Expr::Ite& x) {
            os << "ite(";
            print_expr(os, *x.c, 0);
            os << ", ";
            print_expr(os, *x.t, 0);
            os << ", ";
            print_expr(os, *x.f, 0);
            os << ")";
          },
          [&](const Expr::Eq& x) {
            if (kPrecEq < min_prec) os << "(";
            print_expr(os, *x.l, kPrecEq);
            os << " = ";
            print_expr(os, *x.r, kPrecEq + 1);
            if (kPrecEq < min_prec) os << ")";
          },
      },
      e.v);
}

void print_mapping_pairs(std::ostream& os, const std::vector<MappingExpr::Pair>& pairs) {
  os << "[";
  bool first = true;
  for (const auto& p : pairs) {
    if (!first) os << ", ";
    first = false;
    print_expr(os, p.key, 0);
    os << " => ";
    os << pretty(p.value);
  }
  os << "]";
}

void print_slot_expr(std::ostream& os, const SlotExpr& se) {
  std::visit(overloaded{
                 [&](const SlotExpr::MapE& x) { os << pretty(x.m); },
                 [&](const SlotExpr::New& x) {
                   os << "new " << x.contract;
                   if (x.value_arg) {
                     os << "{value: ";
                     print_slot_expr(os, **x.value_arg);
                     os << "}";
                   }
                   os << "(";
                   bool first = true;
                   for (const auto& a : x.args) {
                     if (!first) os << ", ";
                     first = false;
                     print_slot_expr(os, a);
                   }
                   os << ")";
                 },
                 [&](const SlotExpr::RefE& x) { print_ref_inner(os, x.ref, false); },
                 [&](const SlotExpr::AddrE& x) {
                   os << "addr(";
                   print_slot_expr(os, *x.inner);
                   os << ")";
                 },
             },
             se.v);
}

void print_expr_list(std::ostream& os, const char* kw, const std::vector<Expr>& es,
                     const char* indent) {
  if (es.empty()) return;
  os << indent << kw << " ";
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) os << ", ";
    print_expr(os, es[i], 0);
  }
  os << "\n";
}

void print_iface(std::ostream& os, const InterfaceEnv& iface) {
  os << "(";
  for (size_t i = 0; i < iface.size(); ++i) {
    if (i) os << ", ";
    os << iface[i].first << ": " << to_string(iface[i].second);
  }
  os << ")";
}

bool is_true_lit(const Expr& e) {
  const auto* b = std::get_if<Expr::BoolLit>(&e.v);
  return b && b->value;
}

void print_creates(std::ostream& os, const std::vector<Create>& cs, const char* indent) {
  os << indent << "creates\n";
  for (size_t i = 0; i < cs.size(); ++i) {
    os << indent << "  " << pretty(cs[i]);
    if (i + 1 < cs.size()) os << ",";
    os << "\n";
  }
}

void print_updates(std::ostream& os, const TransCase& c, const char* indent) {
  os << indent << "updates";
  if (!c.updates.empty()) os << "\n";
  for (size_t i = 0; i < c.updates.size(); ++i) {
    os << indent << "  " << pretty(c.updates[i]);
    if (i + 1 < c.updates.size()) os << ",";
    os << "\n";
  }
  if (c.updates.empty()) os << "\n";
  if (c.returns) {
    os << indent << "returns ";
    print_expr(os, *c.returns, 0);
    os << "\n";
  }
}

}  // namespace

std::string pretty(const Ref& r) {
  std::ostringstream os;
  print_ref_inner(os, r, false);
  return os.str();
}

std::string pretty(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty(const MappingExpr& m) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const MappingExpr::Base& x) { print_expr(os, *x.e, 0); },
                 [&](const MappingExpr::Lit& x) { print_mapping_pairs(os, x.pairs); },
                 [&](const MappingExpr::Upd& x) {
                   print_ref_inner(os, x.base, true);
                   print_mapping_pairs(os, x.pairs);
                 },
             },
             m.v);
  return os.str();
}

std::string pretty(const SlotExpr& se) {
  std::ostringstream os;
  print_slot_expr(os, se);
  return os.str();
}

std::string pretty(const Create& c) {
  return to_string(c.slot_type) + " " + c.name + " := " + pretty(c.rhs);
}

std::string pretty(const Update& u) { return pretty(u.target) + " := " + pretty(u.rhs); }

std::string pretty(const Constructor& c) {
  std::ostringstream os;
  os << "  constructor";
  print_iface(os, c.iface);
  if (c.payable) os << " payable";
  os << "\n";
  print_expr_list(os, "iff", c.iff, "    ");
  bool caseless = c.cases.size() == 1 && is_true_lit(c.cases[0].cond);
  for (const auto& cs : c.cases) {
    if (!caseless) {
      os << "    case " << pretty(cs.cond) << ":\n";
      print_creates(os, cs.creates, "      ");
    } else {
      print_creates(os, cs.creates, "    ");
    }
  }
  print_expr_list(os, "ensures", c.ensures, "    ");
  return os.str();
}

std::string pretty(const Transition& t) {
  std::ostringstream os;
  os << "  transition " << t.name;
  print_iface(os, t.iface);
  if (t.payable) os << " payable";
  if (t.ret_type) os << " : " << to_string(*t.ret_type);
  os << "\n";
  print_expr_list(os, "iff", t.iff, "    ");
  bool caseless = t.cases.size() == 1 && is_true_lit(t.cases[0].cond);
  for (const auto& cs : t.cases) {
    if (!caseless) {
      os << "    case " << pretty(cs.cond) << ":\n";
      print_updates(os, cs, "      ");
    } else {
      print_updates(os, cs, "    ");
    }
  }
  print_expr_list(os, "ensures", t.ensures, "    ");
  return os.str();
}

std::string pretty(const Contract& c) {
  std::ostringstream os;
  os << "contract " << c.name << " {\n";
  os << pretty(c.ctor);
  for (const auto& t : c.transitions) {
    os << "\n" << pretty(t);
  }
  if (!c.invariants.empty()) {
    os << "\n";
    print_expr_list(os, "invariants", c.invariants, "  ");
  }
  os << "}\n";
  return os.str();
}

std::string pretty(const Spec& s) {
  std::string out;
  for (size_t i = 0; i < s.contracts.size(); ++i) {
    if (i) out += "\n";
    out += pretty(s.contracts[i]);
  }
  return out;
}

}  // namespace act
