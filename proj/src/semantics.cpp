#include "act/semantics.hpp"

#include <algorithm>

#include "act/enumerate.hpp"
#include "act/valuetyping.hpp"

namespace act {

const char* to_string(EvalError::Kind k) {
  switch (k) {
    case EvalError::Kind::Stuck: return "Stuck";
    case EvalError::Kind::Unbound: return "Unbound";
    case EvalError::Kind::NotAnAddress: return "NotAnAddress";
    case EvalError::Kind::NotAMapping: return "NotAMapping";
    case EvalError::Kind::MissingField: return "MissingField";
    case EvalError::Kind::PreconditionFailed: return "PreconditionFailed";
    case EvalError::Kind::NoCaseMatched: return "NoCaseMatched";
    case EvalError::Kind::MultipleCasesMatched: return "MultipleCasesMatched";
    default: return "ResourceLimit";
  }
}

namespace {

[[noreturn]] void stuck(EvalError::Kind k, const std::string& msg) { throw EvalError(k, msg); }

BigInt exp_guarded(const BigInt& base, const BigInt& e) {
  if (e < 0) stuck(EvalError::Kind::Stuck, "exp with negative exponent");
  if (base == 0) return e == 0 ? 1 : 0;
  if (base == 1) return 1;
  if (base == -1) return (e % 2 == 0) ? 1 : -1;
  if (e > 4096)
    stuck(EvalError::Kind::ResourceLimit, "exp exponent too large to materialize");
  BigInt r = 1;
  for (BigInt i = 0; i < e; ++i) {
    r *= base;
    if (msb(abs(r)) > 1u << 20)
      stuck(EvalError::Kind::ResourceLimit, "exp result too large to materialize");
  }
  return r;
}

const State& pick_store(const TimedView& s, Timing t) {
  switch (t) {
    case Timing::Pre: return *s.pre;
    case Timing::Post: return *s.post;
    default: return s.single();
  }
}

}  // namespace

Value Interp::eval_env_ref(const Env& env, EnvVar ev, std::optional<Addr> loc) const {
  if (ev == EnvVar::This) {
    if (!loc) stuck(EvalError::Kind::Stuck, "`this` with no current location");
    return Value::address(*loc);  // E-This
  }
  const char* name = to_string(ev);
  auto it = env.find(name);
  if (it == env.end()) stuck(EvalError::Kind::Unbound, std::string(name) + " not in environment");
  return it->second;
}

std::pair<Value, Timing> Interp::eval_ref(const TimedView& s, const Env& env,
                                          std::optional<Addr> loc, const Ref& ref) const {
  return std::visit(
      overloaded{
          [&](const Ref::EnvRef& x) -> std::pair<Value, Timing> {
            return {eval_env_ref(env, x.var, loc), Timing::U};  // E-Environment
          },
          [&](const Ref::Var& x) -> std::pair<Value, Timing> {
            auto it = env.find(x.name);
            if (it != env.end()) {
              // E-Calldata / E-CalldataTimed: calldata shadows storage
              return {it->second, s.timed ? Timing::Pre : Timing::U};
            }
            if (s.timed)
              stuck(EvalError::Kind::Stuck,
                    "storage variable " + x.name + " needs pre()/post() in a timed context");
            if (!loc) stuck(EvalError::Kind::Stuck, "storage read with no current location");
            const State& st = s.single();
            if (!st.contains(*loc))
              stuck(EvalError::Kind::NotAnAddress, "location not allocated");
            auto v = st.at(*loc).vars.find(x.name);
            if (v == st.at(*loc).vars.end())
              stuck(EvalError::Kind::Unbound, x.name + " not in storage");
            return {v->second, Timing::U};  // E-Storage
          },
          [&](const Ref::Pre& x) -> std::pair<Value, Timing> {
            if (!s.timed) stuck(EvalError::Kind::Stuck, "pre() in an untimed context");
            if (env.count(x.name))
              stuck(EvalError::Kind::Stuck, "pre() of a calldata name");
            if (!loc) stuck(EvalError::Kind::Stuck, "storage read with no current location");
            if (!s.pre->contains(*loc))
              stuck(EvalError::Kind::NotAnAddress, "location not allocated");
            auto v = s.pre->at(*loc).vars.find(x.name);
            if (v == s.pre->at(*loc).vars.end())
              stuck(EvalError::Kind::Unbound, x.name + " not in pre-storage");
            return {v->second, Timing::Pre};  // E-StoragePre
          },
          [&](const Ref::Post& x) -> std::pair<Value, Timing> {
            if (!s.timed) stuck(EvalError::Kind::Stuck, "post() in an untimed context");
            if (env.count(x.name))
              stuck(EvalError::Kind::Stuck, "post() of a calldata name");
            if (!loc) stuck(EvalError::Kind::Stuck, "storage read with no current location");
            if (!s.post->contains(*loc))
              stuck(EvalError::Kind::NotAnAddress, "location not allocated");
            auto v = s.post->at(*loc).vars.find(x.name);
            if (v == s.post->at(*loc).vars.end())
              stuck(EvalError::Kind::Unbound, x.name + " not in post-storage");
            return {v->second, Timing::Post};  // E-StoragePost
          },
          [&](const Ref::Coerce& x) -> std::pair<Value, Timing> {
            return eval_ref(s, env, loc, *x.inner);  // E-Coerce
          },
          [&](const Ref::Field& x) -> std::pair<Value, Timing> {
            auto [v, t] = eval_ref(s, env, loc, *x.inner);
            if (!v.is_addr())
              stuck(EvalError::Kind::NotAnAddress, "field access on a non-address");
            Addr l2 = v.as_addr();
            if (s.timed && t == Timing::U)
              stuck(EvalError::Kind::Stuck, "untimed field base in a timed context");
            const State& st = pick_store(s, s.timed ? t : Timing::U);
            if (!st.contains(l2))
              stuck(EvalError::Kind::NotAnAddress, "field base not allocated");
            auto f = st.at(l2).vars.find(x.field);
            if (f == st.at(l2).vars.end())
              stuck(EvalError::Kind::MissingField,
                    x.field + " not in storage of @" + std::to_string(l2));
            return {f->second, t};  // E-Field / E-FieldPre / E-FieldPost
          },
          [&](const Ref::Index& x) -> std::pair<Value, Timing> {
            Value key = eval_expr(s, env, loc, *x.key);
            auto [m, t] = eval_ref(s, env, loc, *x.inner);
            if (!m.is_mapping()) stuck(EvalError::Kind::NotAMapping, "index into a non-mapping");
            if (!in_meta(key, m.as_mapping().key_sort))
              stuck(EvalError::Kind::Stuck, "mapping key outside the key domain");
            return {m.lookup(key), t};  // E-RefMapping
          },
      },
      ref.v);
}

Value Interp::eval_expr(const TimedView& s, const Env& env, std::optional<Addr> loc,
                        const Expr& e) const {
  auto intop = [&](const Expr& sub) {
    Value v = eval_expr(s, env, loc, sub);
    if (!v.is_int()) stuck(EvalError::Kind::Stuck, "expected an integer operand");
    return v.as_int();
  };
  auto boolop = [&](const Expr& sub) {
    Value v = eval_expr(s, env, loc, sub);
    if (!v.is_bool()) stuck(EvalError::Kind::Stuck, "expected a boolean operand");
    return v.as_bool();
  };
  return std::visit(
      overloaded{
          [&](const Expr::IntLit& x) { return Value::integer(x.value); },
          [&](const Expr::BoolLit& x) { return Value::boolean(x.value); },
          [&](const Expr::RefExpr& x) { return eval_ref(s, env, loc, x.ref).first; },  // E-Ref
          [&](const Expr::AddrOf& x) { return eval_ref(s, env, loc, x.ref).first; },   // E-Addr
          [&](const Expr::BinI& x) {
            BigInt a = intop(*x.l);
            BigInt b = intop(*x.r);
            switch (x.op) {
              case IntOp::Add: return Value::integer(a + b);
              case IntOp::Sub: return Value::integer(a - b);
              case IntOp::Mul: return Value::integer(a * b);
              case IntOp::Div: return Value::integer(div0(a, b));  // E-Div / E-DivZero
              case IntOp::Mod: return Value::integer(mod0(a, b));  // E-Mod / E-ModZero
              default: return Value::integer(exp_guarded(a, b));
            }
          },
          [&](const Expr::BinB& x) {
            bool a = boolop(*x.l);
            bool b = boolop(*x.r);
            switch (x.op) {
              case BoolOp::And: return Value::boolean(a && b);
              case BoolOp::Or: return Value::boolean(a || b);
              default: return Value::boolean(!a || b);
            }
          },
          [&](const Expr::Cmp& x) {
            BigInt a = intop(*x.l);
            BigInt b = intop(*x.r);
            switch (x.op) {
              case CmpOp::Lt: return Value::boolean(a < b);
              case CmpOp::Le: return Value::boolean(a <= b);
              case CmpOp::Ge: return Value::boolean(a >= b);
              default: return Value::boolean(a > b);
            }
          },
          [&](const Expr::Not& x) { return Value::boolean(!boolop(*x.e)); },
          [&](const Expr::InRange& x) {
            BigInt v = intop(*x.e);
            if (x.type.is_math()) return Value::boolean(true);  // E-RangeTrue
            return Value::boolean(v >= x.type.min() && v <= x.type.max());
          },
          [&](const Expr::Ite& x) {
            // Only the taken branch is evaluated.
            return boolop(*x.c) ? eval_expr(s, env, loc, *x.t) : eval_expr(s, env, loc, *x.f);
          },
          [&](const Expr::Eq& x) {
            Value a = eval_expr(s, env, loc, *x.l);
            Value b = eval_expr(s, env, loc, *x.r);
            return Value::boolean(a == b);  // E-EqTrue / E-EqFalse
          },
      },
      e.v);
}

Value Interp::eval_mapping(const TimedView& s, const Env& env, std::optional<Addr> loc,
                           const MappingExpr& m) const {
  return std::visit(
      overloaded{
          [&](const MappingExpr::Base& x) { return eval_expr(s, env, loc, *x.e); },  // E-Exp
          [&](const MappingExpr::Lit& x) {
            if (!x.annot || x.annot->is_base())
              stuck(EvalError::Kind::Stuck, "mapping literal without a mapping annotation");
            const auto& mt = x.annot->as_map();
            KeySort ks = meta_sort(mt.key);
            std::map<Value, Value> table;
            for (const auto& p : x.pairs) {
              Value k = eval_expr(s, env, loc, p.key);
              if (!in_meta(k, ks))
                stuck(EvalError::Kind::Stuck, "mapping literal key outside the key domain");
              Value v = eval_mapping(s, env, loc, p.value);
              table[k] = v;  // later duplicates win
            }
            return Value::mapping(ks, default_value(mt.value), std::move(table));  // E-Mapping
          },
          [&](const MappingExpr::Upd& x) {
            auto [base, t] = eval_ref(s, env, loc, x.base);
            if (!base.is_mapping())
              stuck(EvalError::Kind::NotAMapping, "mapping update of a non-mapping");
            KeySort ks = base.as_mapping().key_sort;
            std::map<Value, Value> table = base.as_mapping().table;
            for (const auto& p : x.pairs) {
              Value k = eval_expr(s, env, loc, p.key);
              if (!in_meta(k, ks))
                stuck(EvalError::Kind::Stuck, "mapping update key outside the key domain");
              Value v = eval_mapping(s, env, loc, p.value);
              table[k] = v;
            }
            return Value::mapping(ks, base.as_mapping().def, std::move(table));  // E-MappingUpd
          },
      },
      m.v);
}

std::pair<Value, State> Interp::eval_slot_expr(const State& s, const Env& env,
                                               std::optional<Addr> loc,
                                               const SlotExpr& se) const {
  return std::visit(
      overloaded{
          [&](const SlotExpr::MapE& x) -> std::pair<Value, State> {
            return {eval_mapping(TimedView::untimed(s), env, loc, x.m), s};  // E-MapExp
          },
          [&](const SlotExpr::RefE& x) -> std::pair<Value, State> {
            return {eval_ref(TimedView::untimed(s), env, loc, x.ref).first, s};  // E-SlotRef
          },
          [&](const SlotExpr::AddrE& x) -> std::pair<Value, State> {
            return eval_slot_expr(s, env, loc, *x.inner);  // E-SlotAddr
          },
          [&](const SlotExpr::New& x) -> std::pair<Value, State> {
            auto it = sigma_.cnstr.find(x.contract);
            if (it == sigma_.cnstr.end())
              stuck(EvalError::Kind::Stuck, "unknown contract " + x.contract);
            const Constructor& ctor = it->second;
            if (ctor.payable != x.value_arg.has_value())
              stuck(EvalError::Kind::Stuck,
                    "payability mismatch when constructing " + x.contract);
            if (ctor.iface.size() != x.args.size())
              stuck(EvalError::Kind::Stuck, "constructor arity mismatch for " + x.contract);
            State cur = s;
            std::vector<Value> vals;
            for (const auto& a : x.args) {
              auto [v, s2] = eval_slot_expr(cur, env, loc, a);
              vals.push_back(std::move(v));
              cur = std::move(s2);
            }
            Value callvalue = Value::integer(0);
            if (x.value_arg) {
              auto [v, s2] = eval_slot_expr(cur, env, loc, **x.value_arg);
              callvalue = std::move(v);
              cur = std::move(s2);
            }
            Env callee;
            for (size_t i = 0; i < vals.size(); ++i) callee[ctor.iface[i].first] = vals[i];
            callee["caller"] = Value::address(loc ? *loc : 0);
            auto org = env.find("origin");
            if (org == env.end())
              stuck(EvalError::Kind::Unbound, "origin not in environment");
            callee["origin"] = org->second;
            callee["callvalue"] = std::move(callvalue);
            auto [l2, s3] = eval_ctor_cases(cur, callee, x.contract, ctor);
            return {Value::address(l2), std::move(s3)};  // E-Create / E-CreatePayable
          },
      },
      se.v);
}

State Interp::insert_value(const State& s, const Env& env, std::optional<Addr> loc,
                           const Ref& target, const Value& v) const {
  if (const auto* var = std::get_if<Ref::Var>(&target.v)) {
    if (!loc) stuck(EvalError::Kind::Stuck, "insertion with no current location");
    if (!s.contains(*loc)) stuck(EvalError::Kind::NotAnAddress, "location not allocated");
    State out = s;
    auto& vars = out.slots[*loc].vars;
    auto it = vars.find(var->name);
    if (it == vars.end())
      stuck(EvalError::Kind::MissingField, var->name + " not in storage");
    it->second = v;  // E-InsStorage
    return out;
  }
  if (const auto* fld = std::get_if<Ref::Field>(&target.v)) {
    auto [base, t] = eval_ref(TimedView::untimed(s), env, loc, *fld->inner);
    if (!base.is_addr()) stuck(EvalError::Kind::NotAnAddress, "insertion through a non-address");
    Addr l2 = base.as_addr();
    if (!s.contains(l2)) stuck(EvalError::Kind::NotAnAddress, "insertion target not allocated");
    State out = s;
    auto& vars = out.slots[l2].vars;
    auto it = vars.find(fld->field);
    if (it == vars.end())
      stuck(EvalError::Kind::MissingField, fld->field + " not in storage");
    it->second = v;  // E-InsField
    return out;
  }
  stuck(EvalError::Kind::Stuck, "no insertion rule for this reference shape");
}

std::pair<Addr, State> Interp::eval_creates(const State& s, const Env& env,
                                            const std::string& contract,
                                            const std::vector<Create>& creates) const {
  State cur = s;
  std::vector<Value> vals;
  vals.reserve(creates.size());
  for (const auto& c : creates) {
    auto [v, s2] = eval_slot_expr(cur, env, std::nullopt, c.rhs);
    vals.push_back(std::move(v));
    cur = std::move(s2);
  }
  Addr l = cur.fresh();  // fresh *after* all right-hand sides
  ContractInstance inst;
  inst.type = contract;
  for (size_t i = 0; i < creates.size(); ++i) inst.vars[creates[i].name] = vals[i];
  cur.slots[l] = std::move(inst);
  return {l, std::move(cur)};  // E-Creates
}

State Interp::eval_updates(const State& s, const Env& env, std::optional<Addr> loc,
                           const std::vector<Update>& updates) const {
  // Phase one: all right-hand sides, threading the state.
  State cur = s;
  std::vector<Value> vals;
  vals.reserve(updates.size());
  for (const auto& u : updates) {
    auto [v, s2] = eval_slot_expr(cur, env, loc, u.rhs);
    vals.push_back(std::move(v));
    cur = std::move(s2);
  }
  // Phase two: all insertions, in order.
  for (size_t i = 0; i < updates.size(); ++i)
    cur = insert_value(cur, env, loc, updates[i].target, vals[i]);
  return cur;  // E-Updates
}

namespace {

// Case dispatch shared by constructors and transitions: all conditions are
// evaluated; exactly one must be true.
size_t dispatch(const Interp& in, const State& s, const Env& env, std::optional<Addr> loc,
                const std::vector<Expr>& conds) {
  std::optional<size_t> chosen;
  for (size_t i = 0; i < conds.size(); ++i) {
    Value v = in.eval_expr(TimedView::untimed(s), env, loc, conds[i]);
    if (!v.is_bool()) stuck(EvalError::Kind::Stuck, "case condition is not boolean");
    if (v.as_bool()) {
      if (chosen)
        stuck(EvalError::Kind::MultipleCasesMatched, "more than one case condition holds");
      chosen = i;
    }
  }
  if (!chosen) stuck(EvalError::Kind::NoCaseMatched, "no case condition holds");
  return *chosen;
}

}  // namespace

std::pair<Addr, State> Interp::eval_ctor_cases(const State& s, const Env& env,
                                               const std::string& contract,
                                               const Constructor& ctor) const {
  std::vector<Expr> conds;
  conds.reserve(ctor.cases.size());
  for (const auto& c : ctor.cases) conds.push_back(c.cond);
  size_t j = dispatch(*this, s, env, std::nullopt, conds);
  return eval_creates(s, env, contract, ctor.cases[j].creates);  // E-CtorCases
}

std::pair<Addr, State> Interp::eval_ctor(const State& s, const Env& env,
                                         const std::string& contract,
                                         const Constructor& ctor) const {
  for (size_t i = 0; i < ctor.iff.size(); ++i) {
    Value v = eval_expr(TimedView::untimed(s), env, std::nullopt, ctor.iff[i]);
    if (!v.is_bool()) stuck(EvalError::Kind::Stuck, "iff expression is not boolean");
    if (!v.as_bool())
      stuck(EvalError::Kind::PreconditionFailed,
            "constructor precondition " + std::to_string(i + 1) + " failed");
  }
  return eval_ctor_cases(s, env, contract, ctor);  // E-Ctor
}

std::pair<Addr, State> Interp::eval_ctor(const State& s, const Env& env,
                                         const std::string& contract) const {
  auto it = sigma_.cnstr.find(contract);
  if (it == sigma_.cnstr.end()) stuck(EvalError::Kind::Stuck, "unknown contract " + contract);
  return eval_ctor(s, env, contract, it->second);
}

std::pair<Value, State> Interp::eval_trans(const State& s, const Env& env, Addr loc,
                                           const Transition& t) const {
  for (size_t i = 0; i < t.iff.size(); ++i) {
    Value v = eval_expr(TimedView::untimed(s), env, loc, t.iff[i]);
    if (!v.is_bool()) stuck(EvalError::Kind::Stuck, "iff expression is not boolean");
    if (!v.as_bool())
      stuck(EvalError::Kind::PreconditionFailed,
            "transition precondition " + std::to_string(i + 1) + " failed");
  }
  std::vector<Expr> conds;
  conds.reserve(t.cases.size());
  for (const auto& c : t.cases) conds.push_back(c.cond);
  size_t j = dispatch(*this, s, env, loc, conds);
  State post = eval_updates(s, env, loc, t.cases[j].updates);
  Value ret = Value::unit();
  if (t.cases[j].returns)
    ret = eval_expr(TimedView::make_timed(s, post), env, loc, *t.cases[j].returns);
  return {std::move(ret), std::move(post)};  // E-Trans / E-TransCases
}

bool Interp::all_true(const State& s, const Env& env, std::optional<Addr> loc,
                      const std::vector<Expr>& es) const {
  for (const auto& e : es) {
    Value v = eval_expr(TimedView::untimed(s), env, loc, e);
    if (!v.is_bool()) stuck(EvalError::Kind::Stuck, "expected a boolean expression");
    if (!v.as_bool()) return false;
  }
  return true;
}

std::vector<StepEdge> Interp::step(const State& s, const BoundsConfig& cfg) const {
  std::vector<StepEdge> edges;
  SigmaView sig = SigmaView::full(sigma_);
  for (const std::string& contract : sigma_.order) {
    // E-Step-Cnstr: any contract's constructor may run in any state.
    const Constructor& ctor = sigma_.cnstr.at(contract);
    for (Env& env : enumerate_step_envs(sig, s, ctor.iface, cfg)) {
      try {
        auto [l, s2] = eval_ctor(s, env, contract, ctor);
        edges.push_back(StepEdge{StepLabel{contract, "constructor", true, l, env}, std::move(s2)});
      } catch (const EvalError&) {
        // not a successor
      }
    }
    // E-Step-Trans: transitions run at locations typed at the contract.
    auto ts = sigma_.trans.find(contract);
    if (ts == sigma_.trans.end()) continue;
    for (const auto& [l, inst] : s.slots) {
      if (inst.type != contract) continue;
      if (!loc_has_contract(sig, s, l, contract)) continue;
      for (const Transition& t : ts->second) {
        for (Env& env : enumerate_step_envs(sig, s, t.iface, cfg)) {
          try {
            auto [v, s2] = eval_trans(s, env, l, t);
            (void)v;
            edges.push_back(StepEdge{StepLabel{contract, t.name, false, l, env}, std::move(s2)});
          } catch (const EvalError&) {
            // not a successor
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace act
