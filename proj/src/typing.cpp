#include "act/typing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "act/pretty.hpp"

namespace act {

const SlotType* TypingState::slot_type(const std::string& contract,
                                       const std::string& var) const {
  auto it = storage.find(contract);
  if (it == storage.end()) return nullptr;
  for (const auto& [x, st] : it->second)
    if (x == var) return &st;
  return nullptr;
}

bool SigmaView::has_contract(const std::string& name) const {
  for (size_t i = 0; i < prefix && i < sig->order.size(); ++i)
    if (sig->order[i] == name) return true;
  return false;
}

const StorageLayout* SigmaView::layout(const std::string& name) const {
  if (!has_contract(name)) return nullptr;
  auto it = sig->storage.find(name);
  return it == sig->storage.end() ? nullptr : &it->second;
}

const SlotType* SigmaView::slot_type(const std::string& contract, const std::string& var) const {
  const StorageLayout* l = layout(contract);
  if (!l) return nullptr;
  for (const auto& [x, st] : *l)
    if (x == var) return &st;
  return nullptr;
}

const Constructor* SigmaView::ctor(const std::string& name) const {
  if (!has_contract(name)) return nullptr;
  auto it = sig->cnstr.find(name);
  return it == sig->cnstr.end() ? nullptr : &it->second;
}

std::vector<std::string> SigmaView::contracts() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < prefix && i < sig->order.size(); ++i) out.push_back(sig->order[i]);
  return out;
}

std::string Obligation::content_hash() const {
  std::ostringstream os;
  os << (kind == Kind::Exprs ? "exprs" : "iffs") << "|" << rule << "|" << sigma_prefix << "|"
     << (contract ? *contract : "_") << "|";
  for (const auto& [x, a] : iface) os << x << ":" << to_string(a) << ";";
  os << "|phi:";
  for (const auto& e : phi) os << pretty(e) << ";";
  os << "|goals:";
  for (const auto& e : goals) os << pretty(e) << ";";
  os << "|callee:" << callee << "|binder:";
  for (const auto& [x, a] : binder) os << x << ":" << to_string(a) << ";";
  os << "|args:";
  for (const auto& se : slot_args) os << pretty(se) << ";";
  if (value_arg) os << "|value:" << pretty(*value_arg);
  return hex64(fnv1a(os.str()));
}

namespace {

struct TypeErr {
  Diagnostic d;
};

[[noreturn]] void fail(Span sp, const std::string& rule, const std::string& msg) {
  throw TypeErr{Diagnostic{Severity::Error, msg, "", sp, rule}};
}

enum class RefTag { S, N };

const AbiType* iface_lookup(const InterfaceEnv& iface, const std::string& name) {
  for (const auto& [x, a] : iface)
    if (x == name) return &a;
  return nullptr;
}

BaseType bool_type() { return BaseType::boolean(); }

class Checker {
 public:
  Checker() = default;
  explicit Checker(TypingState sigma) : sigma_(std::move(sigma)) {}

  CheckResult run(const Spec& input) {
    CheckResult res;
    res.spec = input;
    for (Contract& c : res.spec.contracts) {
      try {
        check_contract(c);
      } catch (const TypeErr& e) {
        res.diagnostics.push_back(e.d);
        rollback(c.name);
      }
    }
    res.sigma = std::move(sigma_);
    res.obligations = std::move(obligations_);
    return res;
  }

  // Ambient context for reference/expression judgments.
  struct Ctx {
    size_t prefix;
    const InterfaceEnv* iface;
    std::vector<Expr> phi;
    std::optional<std::string> contract;
    bool timed = false;
  };

 private:
  TypingState sigma_;
  std::vector<Obligation> obligations_;

 public:
  SigmaView view(size_t prefix) const { return SigmaView{&sigma_, prefix}; }

  void rollback(const std::string& name) {
    sigma_.storage.erase(name);
    sigma_.cnstr.erase(name);
    sigma_.trans.erase(name);
    sigma_.invariants.erase(name);
    std::erase(sigma_.order, name);
  }

  // -- obligations -----------------------------------------------------------

  void emit_exprs(const Ctx& ctx, const std::string& rule, Span sp, std::vector<Expr> goals) {
    Obligation ob;
    ob.kind = Obligation::Kind::Exprs;
    ob.rule = rule;
    ob.span = sp;
    ob.sigma_prefix = ctx.prefix;
    ob.contract = ctx.contract;
    ob.iface = *ctx.iface;
    ob.phi = ctx.phi;
    ob.goals = std::move(goals);
    obligations_.push_back(std::move(ob));
  }

  void emit_iffs(const Ctx& ctx, const std::string& rule, Span sp, const std::string& callee,
                 const Constructor& callee_ctor, const std::vector<SlotExpr>& args,
                 const std::optional<Box<SlotExpr>>& value_arg) {
    if (callee_ctor.iff.empty()) return;  // conjunction over zero goals
    Obligation ob;
    ob.kind = Obligation::Kind::Iffs;
    ob.rule = rule;
    ob.span = sp;
    ob.sigma_prefix = ctx.prefix;
    ob.contract = ctx.contract;
    ob.iface = *ctx.iface;
    ob.phi = ctx.phi;
    ob.goals = callee_ctor.iff;
    ob.callee = callee;
    ob.binder = callee_ctor.iface;
    ob.slot_args = args;
    if (value_arg) ob.value_arg = **value_arg;
    obligations_.push_back(std::move(ob));
  }

  // -- well-formedness ---------------------------------------------------------

  void wf_abi(const Ctx& ctx, const AbiType& a, Span sp) {
    if (a.is_base()) {
      const BaseType& b = a.as_base();
      if (b.is_int() && b.int_type->is_math())
        fail(sp, "WFInt", "interface types cannot use the unbounded integer type `int`");
      return;
    }
    if (!view(ctx.prefix).has_contract(a.contract()))
      fail(sp, "WFContractAddr", "contract " + a.contract() + " not in Sigma storage");
  }

  void wf_slot_type(const Ctx& ctx, const SlotType& st, Span sp) {
    if (st.is_mapping()) return;  // T-WFMapping: no premise
    if (!view(ctx.prefix).has_contract(st.contract_name()))
      fail(sp, st.is_contract() ? "T-WFContract" : "WFContractAddr",
           "contract " + st.contract_name() + " not in Sigma storage");
  }

  void wf_iface(const Ctx& ctx, const InterfaceEnv& iface, Span sp) {
    std::set<std::string> names;
    for (const auto& [x, a] : iface) {
      if (!names.insert(x).second)
        fail(sp, "T-WFEnv", "duplicate interface name " + x);
      wf_abi(ctx, a, sp);
    }
  }

  // -- references --------------------------------------------------------------

  std::pair<SlotType, RefTag> check_ref(const Ctx& ctx, Ref& ref) {
    auto result = std::visit(
        overloaded{
            [&](Ref::Var& x) -> std::pair<SlotType, RefTag> {
              if (const AbiType* a = iface_lookup(*ctx.iface, x.name)) {
                return {SlotType::from_abi(*a), RefTag::N};  // T-Calldata
              }
              if (!ctx.contract)
                fail(ref.span, "T-Storage",
                     "unbound name " + x.name + " (no storage context at bottom)");
              const SlotType* st = view(ctx.prefix).slot_type(*ctx.contract, x.name);
              if (!st)
                fail(ref.span, "T-Storage",
                     "unbound name " + x.name + " in " + *ctx.contract);
              if (ctx.timed)
                fail(ref.span, "T-Storage",
                     "storage variable " + x.name +
                         " must be read through pre()/post() in a timed context");
              return {*st, RefTag::S};  // T-Storage
            },
            [&](Ref::Pre& x) -> std::pair<SlotType, RefTag> {
              return check_timed_storage(ctx, ref.span, x.name, "T-StoragePre");
            },
            [&](Ref::Post& x) -> std::pair<SlotType, RefTag> {
              return check_timed_storage(ctx, ref.span, x.name, "T-StoragePost");
            },
            [&](Ref::Coerce& x) -> std::pair<SlotType, RefTag> {
              auto [st, k] = check_ref(ctx, *x.inner);
              if (!st.is_contract_addr() || st.contract_name() != x.to)
                fail(ref.span, "T-Coerce",
                     "coercion to " + x.to + " requires a reference of type address(" + x.to +
                         "), got " + to_string(st));
              return {SlotType::contract(x.to), RefTag::N};  // T-Coerce
            },
            [&](Ref::Field& x) -> std::pair<SlotType, RefTag> {
              auto [st, k] = check_ref(ctx, *x.inner);
              if (!st.is_contract())
                fail(ref.span, "T-Field",
                     "field access requires a contract-typed reference, got " + to_string(st));
              const SlotType* ft = view(ctx.prefix).slot_type(st.contract_name(), x.field);
              if (!ft)
                fail(ref.span, "T-Field",
                     "contract " + st.contract_name() + " has no storage variable " + x.field);
              return {*ft, k};  // T-Field keeps the inner tag
            },
            [&](Ref::Index& x) -> std::pair<SlotType, RefTag> {
              auto [st, k] = check_ref(ctx, *x.inner);
              if (!st.is_mapping() || st.as_mapping().is_base())
                fail(ref.span, "T-MapIndex", "indexing requires a mapping-typed reference");
              const auto& m = st.as_mapping().as_map();
              check_expr(ctx, *x.key, m.key);
              return {SlotType::mapping(m.value), RefTag::N};  // T-MapIndex
            },
            [&](Ref::EnvRef& x) -> std::pair<SlotType, RefTag> {
              if (ctx.timed)
                fail(ref.span, "T-Environment",
                     "environment references are only available untimed");
              switch (x.var) {
                case EnvVar::Caller:
                case EnvVar::Origin:
                  return {SlotType::base(BaseType::address()), RefTag::N};
                case EnvVar::Callvalue:
                  return {SlotType::base(BaseType::integer(uint256())), RefTag::N};
                default:
                  if (!ctx.contract)
                    fail(ref.span, "T-This", "`this` is not available in constructor bodies");
                  return {SlotType::contract_addr(*ctx.contract), RefTag::N};  // T-This
              }
            },
        },
        ref.v);
    ref.annot = result.first;
    return result;
  }

  std::pair<SlotType, RefTag> check_timed_storage(const Ctx& ctx, Span sp,
                                                  const std::string& name,
                                                  const std::string& rule) {
    if (!ctx.timed) fail(sp, rule, "pre()/post() only apply in timed contexts");
    if (!ctx.contract) fail(sp, rule, "pre()/post() need a storage context");
    if (iface_lookup(*ctx.iface, name))
      fail(sp, rule, name + " is a calldata name, not storage");
    const SlotType* st = view(ctx.prefix).slot_type(*ctx.contract, name);
    if (!st) fail(sp, rule, "unbound name " + name + " in " + *ctx.contract);
    return {*st, RefTag::S};
  }

  // -- expressions ---------------------------------------------------------------

  // Reconciles a synthesized type against an imposed one; numeric mismatches
  // go through T-NumConv, emitting an inrange obligation when narrowing.
  BaseType reconcile(const Ctx& ctx, const Expr& whole, const BaseType& actual,
                     const std::optional<BaseType>& expected) {
    if (!expected || actual == *expected) return actual;
    if (actual.is_int() && expected->is_int()) {
      const IntType& target = *expected->int_type;
      if (target.is_math()) return *expected;  // T-NumConv, no side condition
      if (ctx.timed)
        fail(whole.span, "T-NumConv",
             "timed expressions type at `int` and cannot be narrowed to " + to_string(target));
      emit_exprs(ctx, "T-NumConv", whole.span, {in_range(target, whole)});
      return *expected;
    }
    fail(whole.span, "type-mismatch",
         "expected " + to_string(*expected) + ", got " + to_string(actual));
  }

  BaseType check_expr(const Ctx& ctx, Expr& e, std::optional<BaseType> expected = std::nullopt) {
    BaseType t = std::visit(
        overloaded{
            [&](Expr::IntLit& x) -> BaseType {
              if (expected && expected->is_int()) {
                const IntType& i = *expected->int_type;
                if (!i.is_math() && (x.value < i.min() || x.value > i.max()))
                  fail(e.span, "T-Int",
                       "literal " + x.value.str() + " outside " + to_string(i));
                return *expected;  // T-Int at the imposed type
              }
              return BaseType::integer(IntType::math());
            },
            [&](Expr::BoolLit&) -> BaseType { return bool_type(); },  // T-Bool
            [&](Expr::RefExpr& x) -> BaseType {
              auto [st, k] = check_ref(ctx, x.ref);
              if (st.is_base()) return st.as_base();  // T-Ref
              if (st.is_contract_addr()) return BaseType::address();  // T-Upcast
              fail(e.span, "T-Ref",
                   "reference of type " + to_string(st) + " is not a base expression");
            },
            [&](Expr::AddrOf& x) -> BaseType {
              if (ctx.timed)
                fail(e.span, "T-Addr", "addr(...) expressions are only available untimed");
              auto [st, k] = check_ref(ctx, x.ref);
              if (!st.is_contract())
                fail(e.span, "T-Addr",
                     "addr(...) requires a contract-typed reference, got " + to_string(st));
              return BaseType::address();  // T-Addr
            },
            [&](Expr::BinI& x) -> BaseType {
              BaseType lt = check_expr(ctx, *x.l);
              BaseType rt = check_expr(ctx, *x.r);
              if (!lt.is_int() || !rt.is_int())
                fail(e.span, "T-BopI", "integer operator applied to non-integers");
              if (!ctx.timed && expected && expected->is_int() &&
                  !expected->int_type->is_math()) {
                // T-BopI with the imposed result type; the inrange side
                // condition becomes an obligation.
                emit_exprs(ctx, "T-BopI", e.span, {in_range(*expected->int_type, e)});
                return *expected;
              }
              return BaseType::integer(IntType::math());
            },
            [&](Expr::BinB& x) -> BaseType {
              check_expr(ctx, *x.l, bool_type());
              check_expr(ctx, *x.r, bool_type());
              return bool_type();  // T-BopB
            },
            [&](Expr::Cmp& x) -> BaseType {
              BaseType lt = check_expr(ctx, *x.l);
              BaseType rt = check_expr(ctx, *x.r);
              if (!lt.is_int() || !rt.is_int())
                fail(e.span, "T-Cmp", "comparison applied to non-integers");
              return bool_type();  // T-Cmp (operands joined at int)
            },
            [&](Expr::Not& x) -> BaseType {
              check_expr(ctx, *x.e, bool_type());
              return bool_type();  // T-Neg
            },
            [&](Expr::InRange& x) -> BaseType {
              BaseType it = check_expr(ctx, *x.e);
              if (!it.is_int())
                fail(e.span, "T-Range", "inrange applies to integer expressions");
              return bool_type();  // T-Range
            },
            [&](Expr::Ite& x) -> BaseType {
              check_expr(ctx, *x.c, bool_type());
              BaseType tt = check_expr(ctx, *x.t);
              BaseType ft = check_expr(ctx, *x.f);
              if (tt == ft) return tt;  // T-ITE
              if (tt.is_int() && ft.is_int()) return BaseType::integer(IntType::math());
              fail(e.span, "T-ITE", "branches have incompatible types " + to_string(tt) +
                                        " and " + to_string(ft));
            },
            [&](Expr::Eq& x) -> BaseType {
              BaseType lt = check_expr(ctx, *x.l);
              BaseType rt = check_expr(ctx, *x.r);
              if (lt == rt) return bool_type();  // T-Eq
              if (lt.is_int() && rt.is_int()) return bool_type();
              fail(e.span, "T-Eq", "equality between " + to_string(lt) + " and " +
                                       to_string(rt));
            },
        },
        e.v);
    return reconcile(ctx, e, t, expected);
  }

  // -- mapping and slot expressions ------------------------------------------------

  void check_mapping(const Ctx& ctx, MappingExpr& m, const MappingType& expected) {
    std::visit(
        overloaded{
            [&](MappingExpr::Base& x) {
              if (!expected.is_base())
                fail(m.span, "T-Mapping",
                     "expected a mapping of type " + to_string(expected));
              check_expr(ctx, *x.e, expected.as_base());  // T-Exp
            },
            [&](MappingExpr::Lit& x) {
              if (expected.is_base())
                fail(m.span, "T-Mapping",
                     "mapping literal where " + to_string(expected) + " expected");
              const auto& node = expected.as_map();
              for (auto& p : x.pairs) {
                check_expr(ctx, p.key, node.key);
                check_mapping(ctx, p.value, node.value);
              }
              x.annot = expected;  // T-Mapping
            },
            [&](MappingExpr::Upd& x) {
              if (expected.is_base())
                fail(m.span, "T-MappingUpd",
                     "mapping update where " + to_string(expected) + " expected");
              auto [st, k] = check_ref(ctx, x.base);
              if (!st.is_mapping() || !(st.as_mapping() == expected))
                fail(m.span, "T-MappingUpd",
                     "updated reference has type " + to_string(st) + ", expected " +
                         to_string(expected));
              const auto& node = expected.as_map();
              for (auto& p : x.pairs) {
                check_expr(ctx, p.key, node.key);
                check_mapping(ctx, p.value, node.value);
              }
              x.annot = expected;  // T-MappingUpd
            },
        },
        m.v);
  }

  void check_slot_expr(const Ctx& ctx, SlotExpr& se, const SlotType& expected) {
    std::visit(
        overloaded{
            [&](SlotExpr::MapE& x) {
              if (!expected.is_mapping())
                fail(se.span, "T-MapExp",
                     "expression where " + to_string(expected) + " expected");
              check_mapping(ctx, x.m, expected.as_mapping());
            },
            [&](SlotExpr::RefE& x) {
              if (expected.is_contract()) {
                auto [st, k] = check_ref(ctx, x.ref);
                if (!(st == expected))
                  fail(se.span, "T-SlotRef", "reference has type " + to_string(st) +
                                                 ", expected " + to_string(expected));
                return;  // T-SlotRef
              }
              if (expected.is_contract_addr())
                fail(se.span, "T-SlotAddr",
                     "a value of type " + to_string(expected) +
                         " is produced by addr(...), not a bare reference");
              // Base/mapping expectation: the reference is a base expression.
              Expr wrapped = ref_expr(x.ref);
              wrapped.span = se.span;
              if (expected.as_mapping().is_base()) {
                check_expr(ctx, wrapped, expected.as_base());
                x.ref = std::get<Expr::RefExpr>(wrapped.v).ref;  // keep annotations
              } else {
                fail(se.span, "T-SlotRef",
                     "a bare reference cannot produce a mapping value; use an update "
                     "expression");
              }
            },
            [&](SlotExpr::AddrE& x) {
              if (expected.is_contract_addr()) {
                check_slot_expr(ctx, *x.inner, SlotType::contract(expected.contract_name()));
                return;  // T-SlotAddr
              }
              if (expected.is_base() && expected.as_base() == BaseType::address()) {
                // Expression-level addr(ref): the argument must be a plain
                // contract-typed reference.
                auto* re = std::get_if<SlotExpr::RefE>(&x.inner->v);
                if (!re)
                  fail(se.span, "T-Addr", "addr(...) at type address takes a reference");
                if (ctx.timed)
                  fail(se.span, "T-Addr", "addr(...) expressions are only available untimed");
                auto [st, k] = check_ref(ctx, re->ref);
                if (!st.is_contract())
                  fail(se.span, "T-Addr",
                       "addr(...) requires a contract-typed reference, got " + to_string(st));
                return;  // T-Addr
              }
              fail(se.span, "T-SlotAddr",
                   "addr(...) where " + to_string(expected) + " expected");
            },
            [&](SlotExpr::New& x) {
              const Constructor* callee = view(ctx.prefix).ctor(x.contract);
              if (!callee)
                fail(se.span, "T-Create", "unknown contract " + x.contract);
              if (!expected.is_contract() || expected.contract_name() != x.contract)
                fail(se.span, "T-Create",
                     "new " + x.contract + " where " + to_string(expected) + " expected");
              if (callee->payable && !x.value_arg)
                fail(se.span, "T-CreatePayable",
                     "constructor of " + x.contract + " is payable; a {value: ...} argument "
                     "is required");
              if (!callee->payable && x.value_arg)
                fail(se.span, "T-Create",
                     "constructor of " + x.contract + " is not payable; no {value: ...} "
                     "argument allowed");
              if (callee->iface.size() != x.args.size())
                fail(se.span, "T-Create",
                     "constructor of " + x.contract + " takes " +
                         std::to_string(callee->iface.size()) + " arguments, got " +
                         std::to_string(x.args.size()));
              for (size_t i = 0; i < x.args.size(); ++i)
                check_slot_expr(ctx, x.args[i], SlotType::from_abi(callee->iface[i].second));
              if (x.value_arg)
                check_slot_expr(ctx, **x.value_arg,
                                SlotType::base(BaseType::integer(uint256())));
              emit_iffs(ctx, callee->payable ? "T-CreatePayable" : "T-Create", se.span,
                        x.contract, *callee, x.args, x.value_arg);
            },
        },
        se.v);
  }

  // -- creates / updates -------------------------------------------------------------

  StorageLayout check_creates(const Ctx& outer, const std::string& contract,
                              std::vector<Create>& creates) {
    Ctx ctx = outer;
    ctx.contract = std::nullopt;  // right-hand sides type at bottom
    std::set<std::string> names;
    StorageLayout layout;
    for (Create& c : creates) {
      if (!names.insert(c.name).second)
        fail(c.span, "T-Creates", "duplicate storage name " + c.name);
      wf_slot_type(ctx, c.slot_type, c.span);
      layout.emplace_back(c.name, c.slot_type);
    }
    bool has_balance = false;
    for (const auto& [x, st] : layout)
      if (x == "balance" && st == SlotType::base(BaseType::integer(uint256())))
        has_balance = true;
    if (!has_balance)
      fail(creates.empty() ? Span{} : creates.front().span, "T-Creates",
           "created storage must contain balance : uint256");
    for (Create& c : creates) check_slot_expr(ctx, c.rhs, c.slot_type);
    (void)contract;
    return layout;
  }

  // Strict specificity: a is obtained from b by at least one field selection.
  static bool more_specific(const Ref& a, const Ref& b) {
    const Ref* cur = &a;
    while (const auto* f = std::get_if<Ref::Field>(&cur->v)) {
      cur = &*f->inner;
      if (ref_equal(*cur, b)) return true;
    }
    return false;
  }

  void check_updates(const Ctx& ctx, std::vector<Update>& updates) {
    for (Update& u : updates) {
      auto [st, k] = check_ref(ctx, u.target);
      if (k != RefTag::S)
        fail(u.span, "T-Update", "only S-tagged storage references can be updated");
      check_slot_expr(ctx, u.rhs, st);
    }
    // j ranges over earlier updates only; the reflexive case rejects
    // duplicates, the strict case rejects earlier-more-specific targets.
    for (size_t i = 0; i < updates.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (ref_equal(updates[j].target, updates[i].target))
          fail(updates[i].span, "T-Updates",
               "duplicate update target " + pretty(updates[i].target));
        if (more_specific(updates[j].target, updates[i].target))
          fail(updates[i].span, "T-Updates",
               "update of " + pretty(updates[i].target) + " after its component " +
                   pretty(updates[j].target));
      }
    }
  }

  // -- exhaustiveness / disjointness ---------------------------------------------------

  Expr fold_and(const std::vector<Expr>& es) {
    if (es.empty()) return bool_lit(true);
    Expr acc = es[0];
    for (size_t i = 1; i < es.size(); ++i) acc = bin_b(BoolOp::And, std::move(acc), es[i]);
    return acc;
  }

  Expr cases_obligation(const std::vector<Expr>& iff, const std::vector<Expr>& conds) {
    Expr some = conds[0];
    for (size_t i = 1; i < conds.size(); ++i) some = bin_b(BoolOp::Or, std::move(some), conds[i]);
    std::vector<Expr> pairwise;
    for (size_t i = 0; i < conds.size(); ++i)
      for (size_t j = i + 1; j < conds.size(); ++j)
        pairwise.push_back(not_e(bin_b(BoolOp::And, conds[i], conds[j])));
    Expr rhs = bin_b(BoolOp::And, std::move(some), fold_and(pairwise));
    return bin_b(BoolOp::Implies, fold_and(iff), std::move(rhs));
  }

  // -- constructors / transitions ------------------------------------------------------

  StorageLayout check_ctor(const std::string& contract, Constructor& ctor, size_t prefix) {
    Ctx ctx{prefix, &ctor.iface, {}, std::nullopt, false};
    wf_iface(ctx, ctor.iface, ctor.span);
    for (Expr& e : ctor.iff) check_expr(ctx, e, bool_type());
    for (CtorCase& c : ctor.cases) check_expr(ctx, c.cond, bool_type());

    std::optional<StorageLayout> layout;
    for (CtorCase& c : ctor.cases) {
      Ctx body = ctx;
      body.phi.push_back(c.cond);
      for (const Expr& p : ctor.iff) body.phi.push_back(p);
      StorageLayout cl = check_creates(body, contract, c.creates);
      if (!layout) {
        layout = std::move(cl);
      } else if (!(*layout == cl)) {
        fail(c.span, "T-Ctor", "constructor cases create different storage layouts");
      }
    }
    for (const auto& [x, st] : *layout) {
      (void)st;
      if (iface_lookup(ctor.iface, x))
        fail(ctor.span, "T-Ctor", "created name " + x + " collides with an interface name");
    }
    // Exhaustiveness and disjointness of the case conditions, at bottom.
    std::vector<Expr> conds;
    for (const CtorCase& c : ctor.cases) conds.push_back(c.cond);
    emit_exprs(ctx, "T-Ctor", ctor.span, {cases_obligation(ctor.iff, conds)});
    return *layout;
  }

  void check_ctor_ensures(const std::string& contract, Constructor& ctor, size_t prefix) {
    Ctx ctx{prefix, &ctor.iface, {}, contract, false};
    for (Expr& e : ctor.ensures) check_expr(ctx, e, bool_type());
  }

  void check_trans(const std::string& contract, Transition& t, size_t prefix) {
    Ctx ctx{prefix, &t.iface, {}, contract, false};
    wf_iface(ctx, t.iface, t.span);
    for (Expr& e : t.iff) check_expr(ctx, e, bool_type());
    for (TransCase& c : t.cases) check_expr(ctx, c.cond, bool_type());

    std::optional<BaseType> ret_base;
    if (t.ret_type) {
      if (!t.ret_type->is_base())
        fail(t.span, "T-Trans", "return types must be base types");
      ret_base = t.ret_type->as_base();
    }
    for (TransCase& c : t.cases) {
      Ctx body = ctx;
      body.phi.push_back(c.cond);
      for (const Expr& p : t.iff) body.phi.push_back(p);
      check_updates(body, c.updates);
      if (t.ret_type && !c.returns)
        fail(c.span, "T-Trans", "transition declares a return type but this case does not "
                                 "return");
      if (!t.ret_type && c.returns)
        fail(c.span, "T-Trans", "transition has no return type but this case returns");
      if (c.returns) {
        Ctx timed = body;
        timed.timed = true;
        check_expr(timed, *c.returns, ret_base);
      }
    }
    Ctx timed = ctx;
    timed.timed = true;
    for (Expr& e : t.ensures) check_expr(timed, e, bool_type());

    std::vector<Expr> conds;
    for (const TransCase& c : t.cases) conds.push_back(c.cond);
    emit_exprs(ctx, "T-Trans", t.span, {cases_obligation(t.iff, conds)});
  }

  void check_contract(Contract& c) {
    if (sigma_.has_contract(c.name))
      fail(c.span, "T-Spec", "duplicate contract " + c.name);
    size_t prefix = sigma_.order.size();
    StorageLayout layout = check_ctor(c.name, c.ctor, prefix);

    sigma_.order.push_back(c.name);
    sigma_.storage[c.name] = layout;
    check_ctor_ensures(c.name, c.ctor, prefix + 1);
    sigma_.cnstr[c.name] = c.ctor;

    std::set<std::string> tnames;
    for (Transition& t : c.transitions) {
      if (!tnames.insert(t.name).second)
        fail(t.span, "T-Contract", "duplicate transition name " + t.name);
      check_trans(c.name, t, prefix + 1);
    }
    // Invariants type against the extended Sigma with empty calldata.
    static const InterfaceEnv kEmptyIface;
    Ctx inv_ctx{prefix + 1, &kEmptyIface, {}, c.name, false};
    for (Expr& e : c.invariants) check_expr(inv_ctx, e, bool_type());
    sigma_.trans[c.name] = c.transitions;
    sigma_.invariants[c.name] = c.invariants;
  }
};

}  // namespace

CheckResult check_spec(const Spec& spec) { return Checker().run(spec); }

std::optional<std::string> recheck_sigma(const TypingState& sigma) {
  for (size_t k = 0; k < sigma.order.size(); ++k) {
    const std::string& name = sigma.order[k];
    Checker ch(sigma);
    try {
      Constructor ctor = sigma.cnstr.at(name);
      StorageLayout layout = ch.check_ctor(name, ctor, k);
      if (!(layout == sigma.storage.at(name)))
        return "re-derived layout differs for " + name;
      ch.check_ctor_ensures(name, ctor, k + 1);
      auto ts = sigma.trans.find(name);
      if (ts != sigma.trans.end()) {
        for (Transition t : ts->second) ch.check_trans(name, t, k + 1);
      }
    } catch (const TypeErr& e) {
      return name + ": " + e.d.message + " [" + e.d.rule + "]";
    }
  }
  return std::nullopt;
}

bool recheck_obligation_goals(const TypingState& sigma, const Obligation& ob,
                              std::string* why) {
  Checker ch(sigma);
  // Iffs goals are the callee's preconditions: they type under the callee's
  // interface at bottom, not under the caller's context.
  bool iffs = ob.kind == Obligation::Kind::Iffs;
  Checker::Ctx ctx{ob.sigma_prefix, iffs ? &ob.binder : &ob.iface,
                   iffs ? std::vector<Expr>{} : ob.phi,
                   iffs ? std::nullopt : ob.contract, false};
  try {
    for (Expr g : ob.goals) ch.check_expr(ctx, g, BaseType::boolean());
  } catch (const TypeErr& e) {
    if (why) *why = e.d.message + " [" + e.d.rule + "]";
    return false;
  }
  return true;
}

}  // namespace act
