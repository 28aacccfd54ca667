#include "act/entailment.hpp"

#include <map>
#include <sstream>

#include "act/pretty.hpp"
#include "act/semantics.hpp"

namespace act {

std::string Verdict::describe() const {
  switch (kind) {
    case Kind::ValidWithinBounds: return "valid within bounds";
    case Kind::Counterexample:
      return "counterexample: state=" + context.state.to_string() +
             " env=" + to_string(context.env) + " goal #" + std::to_string(goal_index + 1);
    default: return "unknown: " + reason;
  }
}

namespace {

// Evaluates the conjunction of the path condition; nullopt when stuck.
std::optional<bool> phi_holds(const Interp& in, const EvalContext& ctx,
                              const std::vector<Expr>& phi) {
  for (const Expr& e : phi) {
    Value v = in.eval_expr(TimedView::untimed(ctx.state), ctx.env, ctx.loc, e);
    if (!v.is_bool()) return std::nullopt;
    if (!v.as_bool()) return false;
  }
  return true;
}

}  // namespace

Verdict entails_exprs(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg) {
  SigmaView sig{&sigma, ob.sigma_prefix};
  ContextSet cs = enumerate_contexts(sig, ob.iface, ob.contract, cfg);
  if (!cs.ok()) return Verdict::unknown(cs.failure);
  Interp in(sigma);
  for (const EvalContext& ctx : cs.contexts) {
    std::optional<bool> pre;
    try {
      pre = phi_holds(in, ctx, ob.phi);
    } catch (const EvalError& e) {
      return Verdict::unknown(std::string("path condition stuck: ") + e.what());
    }
    if (!pre) return Verdict::unknown("path condition is not boolean");
    if (!*pre) continue;
    for (std::size_t i = 0; i < ob.goals.size(); ++i) {
      Value v;
      try {
        v = in.eval_expr(TimedView::untimed(ctx.state), ctx.env, ctx.loc, ob.goals[i]);
      } catch (const EvalError& e) {
        return Verdict::unknown(std::string("goal stuck: ") + e.what());
      }
      if (!v.is_bool()) return Verdict::unknown("goal is not boolean");
      if (!v.as_bool()) return Verdict{Verdict::Kind::Counterexample, "", ctx, i};
    }
  }
  if (cs.truncated) return Verdict::unknown("context budget exceeded");
  return Verdict::valid_within_bounds();
}

Verdict entails_iffs(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg) {
  SigmaView sig{&sigma, ob.sigma_prefix};
  ContextSet cs = enumerate_contexts(sig, ob.iface, ob.contract, cfg);
  if (!cs.ok()) return Verdict::unknown(cs.failure);
  Interp in(sigma);
  for (const EvalContext& ctx : cs.contexts) {
    std::optional<bool> pre;
    try {
      pre = phi_holds(in, ctx, ob.phi);
    } catch (const EvalError& e) {
      return Verdict::unknown(std::string("path condition stuck: ") + e.what());
    }
    if (!pre) return Verdict::unknown("path condition is not boolean");
    if (!*pre) continue;

    // Evaluate the argument slot expressions left-to-right, threading state.
    State cur = ctx.state;
    std::vector<Value> vals;
    Value callvalue = Value::integer(0);
    try {
      for (const SlotExpr& a : ob.slot_args) {
        auto [v, s2] = in.eval_slot_expr(cur, ctx.env, ctx.loc, a);
        vals.push_back(std::move(v));
        cur = std::move(s2);
      }
      if (ob.value_arg) {
        auto [v, s2] = in.eval_slot_expr(cur, ctx.env, ctx.loc, *ob.value_arg);
        callvalue = std::move(v);
        cur = std::move(s2);
      }
    } catch (const EvalError& e) {
      return Verdict::unknown(std::string("constructor argument stuck: ") + e.what());
    }

    // Bind the callee's interface; the environment mirrors E-Create.
    Env callee;
    for (std::size_t i = 0; i < vals.size() && i < ob.binder.size(); ++i)
      callee[ob.binder[i].first] = vals[i];
    callee["caller"] = Value::address(ctx.loc ? *ctx.loc : 0);
    auto org = ctx.env.find("origin");
    callee["origin"] = org == ctx.env.end() ? Value::address(0) : org->second;
    callee["callvalue"] = callvalue;

    for (std::size_t i = 0; i < ob.goals.size(); ++i) {
      Value v;
      try {
        v = in.eval_expr(TimedView::untimed(cur), callee, std::nullopt, ob.goals[i]);
      } catch (const EvalError& e) {
        return Verdict::unknown(std::string("goal stuck: ") + e.what());
      }
      if (!v.is_bool()) return Verdict::unknown("goal is not boolean");
      if (!v.as_bool()) return Verdict{Verdict::Kind::Counterexample, "", ctx, i};
    }
  }
  if (cs.truncated) return Verdict::unknown("context budget exceeded");
  return Verdict::valid_within_bounds();
}

Verdict discharge(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg) {
  return ob.kind == Obligation::Kind::Exprs ? entails_exprs(sigma, ob, cfg)
                                            : entails_iffs(sigma, ob, cfg);
}

// ---------------------------------------------------------------------------
// SMT-LIB export

namespace {

struct Unsupported {
  std::string reason;
};

class SmtWriter {
 public:
  explicit SmtWriter(const SigmaView& sig) : sig_(sig) {}

  std::string sort_of(const BaseType& b) {
    return b.sort == BaseType::Sort::Bool ? "Bool" : "Int";
  }

  // Declares a path constant (or uninterpreted function for mappings) and
  // returns its SMT name.
  std::string declare_path(const std::string& path, const SlotType& st) {
    auto it = decls_.find(path);
    if (it != decls_.end()) return it->second;
    std::string name = "|" + path + "|";
    std::ostringstream d;
    if (st.is_mapping() && !st.as_mapping().is_base()) {
      // Flatten nested mapping sorts into an n-ary uninterpreted function.
      std::vector<std::string> argsorts;
      const MappingType* cur = &st.as_mapping();
      while (!cur->is_base()) {
        argsorts.push_back(sort_of(cur->as_map().key));
        cur = &cur->as_map().value;
      }
      d << "(declare-fun " << name << " (";
      for (std::size_t i = 0; i < argsorts.size(); ++i) d << (i ? " " : "") << argsorts[i];
      d << ") " << sort_of(cur->as_base()) << ")";
      decls_out_.push_back(d.str());
      // Range axiom over the result sort.
      if (std::string rng = range_pred_fun(*cur, name, argsorts.size()); !rng.empty())
        asserts_.push_back(rng);
    } else {
      BaseType b = st.is_mapping() ? st.as_base() : BaseType::address();
      d << "(declare-const " << name << " " << sort_of(b) << ")";
      decls_out_.push_back(d.str());
      if (std::string rng = range_pred(b, name); !rng.empty())
        asserts_.push_back("(assert " + rng + ")");
    }
    decls_[path] = name;
    return name;
  }

  std::string range_pred(const BaseType& b, const std::string& term) {
    if (b.sort == BaseType::Sort::Address) return "(>= " + term + " 0)";
    if (b.sort == BaseType::Sort::Int && !b.int_type->is_math()) {
      return "(and (>= " + term + " " + smt_int(b.int_type->min()) + ") (<= " + term + " " +
             smt_int(b.int_type->max()) + "))";
    }
    return "";
  }

  std::string range_pred_fun(const MappingType& result, const std::string& fun, std::size_t n) {
    if (!result.is_base()) return "";
    std::string pred;
    std::ostringstream app;
    app << "(" << fun;
    std::ostringstream binders;
    for (std::size_t i = 0; i < n; ++i) {
      binders << (i ? " " : "") << "(k" << i << " Int)";
      app << " k" << i;
    }
    app << ")";
    pred = range_pred(result.as_base(), app.str());
    if (pred.empty()) return "";
    return "(assert (forall (" + binders.str() + ") " + pred + "))";
  }

  static std::string smt_int(const BigInt& n) {
    if (n < 0) return "(- " + BigInt(-n).str() + ")";
    return n.str();
  }

  // Builds a dotted path for a reference; index arguments are collected so
  // mapping reads become applications of the flattened function.
  std::string ref_term(const Ref& r, const std::string& root_prefix) {
    std::vector<std::string> indices;
    return ref_term_rec(r, root_prefix, indices);
  }

  std::string ref_term_rec(const Ref& r, const std::string& prefix,
                           std::vector<std::string>& indices) {
    if (!r.annot) throw Unsupported{"reference without a type annotation"};
    return std::visit(
        overloaded{
            [&](const Ref::Var& x) -> std::string {
              return apply_indices(declare_path(prefix + x.name, *r.annot), indices);
            },
            [&](const Ref::Pre&) -> std::string {
              throw Unsupported{"timed reference"};
            },
            [&](const Ref::Post&) -> std::string {
              throw Unsupported{"timed reference"};
            },
            [&](const Ref::Coerce& x) -> std::string {
              return ref_term_rec(*x.inner, prefix, indices);
            },
            [&](const Ref::Field& x) -> std::string {
              std::string base_path = path_of(*x.inner, prefix);
              return apply_indices(declare_path(base_path + "." + x.field, *r.annot), indices);
            },
            [&](const Ref::Index& x) -> std::string {
              indices.insert(indices.begin(), expr_term(*x.key, prefix));
              return ref_term_rec(*x.inner, prefix, indices);
            },
            [&](const Ref::EnvRef& x) -> std::string {
              switch (x.var) {
                case EnvVar::Caller: return apply_indices(declare_env("caller", prefix), indices);
                case EnvVar::Origin: return apply_indices(declare_env("origin", prefix), indices);
                case EnvVar::Callvalue:
                  return apply_indices(declare_env("callvalue", prefix), indices);
                default: return apply_indices(declare_env("this", prefix), indices);
              }
            },
        },
        r.v);
  }

  std::string declare_env(const std::string& name, const std::string& prefix) {
    std::string path = prefix + name;
    auto it = decls_.find(path);
    if (it != decls_.end()) return it->second;
    std::string sym = "|" + path + "|";
    BaseType b = name == "callvalue" ? BaseType::integer(uint256()) : BaseType::address();
    decls_out_.push_back("(declare-const " + sym + " " + sort_of(b) + ")");
    if (std::string rng = range_pred(b, sym); !rng.empty())
      asserts_.push_back("(assert " + rng + ")");
    decls_[path] = sym;
    return sym;
  }

  // Dotted path of a reference without emitting a term (for field bases).
  std::string path_of(const Ref& r, const std::string& prefix) {
    return std::visit(overloaded{
                          [&](const Ref::Var& x) { return prefix + x.name; },
                          [&](const Ref::Pre&) -> std::string {
                            throw Unsupported{"timed reference"};
                          },
                          [&](const Ref::Post&) -> std::string {
                            throw Unsupported{"timed reference"};
                          },
                          [&](const Ref::Coerce& x) { return path_of(*x.inner, prefix); },
                          [&](const Ref::Field& x) {
                            return path_of(*x.inner, prefix) + "." + x.field;
                          },
                          [&](const Ref::Index&) -> std::string {
                            throw Unsupported{"field access through a mapping value"};
                          },
                          [&](const Ref::EnvRef& x) { return prefix + to_string(x.var); },
                      },
                      r.v);
  }

  static std::string apply_indices(const std::string& fun, const std::vector<std::string>& idx) {
    if (idx.empty()) return fun;
    std::string out = "(" + fun;
    for (const auto& i : idx) out += " " + i;
    return out + ")";
  }

  std::string expr_term(const Expr& e, const std::string& prefix) {
    return std::visit(
        overloaded{
            [&](const Expr::IntLit& x) { return smt_int(x.value); },
            [&](const Expr::BoolLit& x) { return std::string(x.value ? "true" : "false"); },
            [&](const Expr::RefExpr& x) { return ref_term(x.ref, prefix); },
            [&](const Expr::AddrOf& x) { return ref_term(x.ref, prefix); },
            [&](const Expr::BinI& x) -> std::string {
              std::string a = expr_term(*x.l, prefix);
              std::string b = expr_term(*x.r, prefix);
              switch (x.op) {
                case IntOp::Add: return "(+ " + a + " " + b + ")";
                case IntOp::Sub: return "(- " + a + " " + b + ")";
                case IntOp::Mul: return "(* " + a + " " + b + ")";
                case IntOp::Div: need_divmod_ = true; return "(actdiv " + a + " " + b + ")";
                case IntOp::Mod: need_divmod_ = true; return "(actmod " + a + " " + b + ")";
                default: throw Unsupported{"exp is not exportable"};
              }
            },
            [&](const Expr::BinB& x) -> std::string {
              std::string a = expr_term(*x.l, prefix);
              std::string b = expr_term(*x.r, prefix);
              switch (x.op) {
                case BoolOp::And: return "(and " + a + " " + b + ")";
                case BoolOp::Or: return "(or " + a + " " + b + ")";
                default: return "(=> " + a + " " + b + ")";
              }
            },
            [&](const Expr::Cmp& x) -> std::string {
              std::string a = expr_term(*x.l, prefix);
              std::string b = expr_term(*x.r, prefix);
              switch (x.op) {
                case CmpOp::Lt: return "(< " + a + " " + b + ")";
                case CmpOp::Le: return "(<= " + a + " " + b + ")";
                case CmpOp::Ge: return "(>= " + a + " " + b + ")";
                default: return "(> " + a + " " + b + ")";
              }
            },
            [&](const Expr::Not& x) { return "(not " + expr_term(*x.e, prefix) + ")"; },
            [&](const Expr::InRange& x) -> std::string {
              if (x.type.is_math()) return "true";
              std::string t = expr_term(*x.e, prefix);
              return "(and (>= " + t + " " + smt_int(x.type.min()) + ") (<= " + t + " " +
                     smt_int(x.type.max()) + "))";
            },
            [&](const Expr::Ite& x) {
              return "(ite " + expr_term(*x.c, prefix) + " " + expr_term(*x.t, prefix) + " " +
                     expr_term(*x.f, prefix) + ")";
            },
            [&](const Expr::Eq& x) {
              return "(= " + expr_term(*x.l, prefix) + " " + expr_term(*x.r, prefix) + ")";
            },
        },
        e.v);
  }

  void assert_term(const std::string& t) { asserts_.push_back("(assert " + t + ")"); }

  std::string script(const std::string& header) const {
    std::ostringstream os;
    os << header;
    os << "(set-logic ALL)\n";
    if (need_divmod_) {
      os << "(define-fun actdiv ((a Int) (b Int)) Int\n"
            "  (ite (= b 0) 0 (ite (>= a 0) (ite (>= b 0) (div a b) (- (div a (- b))))\n"
            "    (ite (>= b 0) (- (div (- a) b)) (div (- a) (- b))))))\n";
      os << "(define-fun actmod ((a Int) (b Int)) Int\n"
            "  (ite (= b 0) 0 (- a (* b (actdiv a b)))))\n";
    }
    for (const auto& d : decls_out_) os << d << "\n";
    for (const auto& a : asserts_) os << a << "\n";
    os << "(check-sat)\n";
    return os.str();
  }

 private:
  const SigmaView sig_;
  std::map<std::string, std::string> decls_;
  std::vector<std::string> decls_out_;
  std::vector<std::string> asserts_;
  bool need_divmod_ = false;
};

}  // namespace

ExportResult export_obligation(const TypingState& sigma, const Obligation& ob) {
  SigmaView sig{&sigma, ob.sigma_prefix};
  SmtWriter w(sig);
  ExportResult res;
  std::ostringstream header;
  header << "; obligation " << ob.content_hash() << " rule " << ob.rule << "\n";
  try {
    for (const Expr& p : ob.phi) w.assert_term(w.expr_term(p, ""));
    if (ob.kind == Obligation::Kind::Exprs) {
      std::string goals;
      if (ob.goals.size() == 1) {
        goals = w.expr_term(ob.goals[0], "");
      } else {
        goals = "(and";
        for (const Expr& g : ob.goals) goals += " " + w.expr_term(g, "");
        goals += ")";
      }
      w.assert_term("(not " + goals + ")");
    } else {
      // Binder variables are defined by their argument expressions; only
      // state-free argument forms are exportable.
      for (std::size_t i = 0; i < ob.slot_args.size(); ++i) {
        const auto* me = std::get_if<SlotExpr::MapE>(&ob.slot_args[i].v);
        const MappingExpr::Base* be = me ? std::get_if<MappingExpr::Base>(&me->m.v) : nullptr;
        const SlotExpr::RefE* re = std::get_if<SlotExpr::RefE>(&ob.slot_args[i].v);
        std::string term;
        if (be) {
          term = w.expr_term(*be->e, "");
        } else if (re) {
          term = w.ref_term(re->ref, "");
        } else {
          throw Unsupported{"constructor argument is not a pure expression"};
        }
        std::string sym = w.declare_path("arg." + ob.binder[i].first,
                                         SlotType::from_abi(ob.binder[i].second));
        w.assert_term("(= " + sym + " " + term + ")");
      }
      // Callee environment per E-Create.
      std::string caller = w.declare_path("arg.caller", SlotType::base(BaseType::address()));
      w.assert_term(ob.contract ? "(= " + caller + " " + w.declare_env("this", "") + ")"
                                : "(= " + caller + " 0)");
      std::string origin = w.declare_path("arg.origin", SlotType::base(BaseType::address()));
      w.assert_term("(= " + origin + " " + w.declare_env("origin", "") + ")");
      std::string cv =
          w.declare_path("arg.callvalue", SlotType::base(BaseType::integer(uint256())));
      if (ob.value_arg) {
        const auto* me = std::get_if<SlotExpr::MapE>(&ob.value_arg->v);
        const MappingExpr::Base* be = me ? std::get_if<MappingExpr::Base>(&me->m.v) : nullptr;
        if (!be) throw Unsupported{"value argument is not a pure expression"};
        w.assert_term("(= " + cv + " " + w.expr_term(*be->e, "") + ")");
      } else {
        w.assert_term("(= " + cv + " 0)");
      }
      std::string goals = "(and true";
      for (const Expr& g : ob.goals) goals += " " + w.expr_term(g, "arg.");
      goals += ")";
      w.assert_term("(not " + goals + ")");
    }
  } catch (const Unsupported& u) {
    res.supported = false;
    res.reason = u.reason;
    res.text = header.str() + "; not exportable: " + u.reason + "\n";
    return res;
  }
  res.supported = true;
  res.text = w.script(header.str());
  return res;
}

}  // namespace act
