#include "act/jsonio.hpp"

#include <stdexcept>

#include "act/pretty.hpp"

namespace act {

using nlohmann::json;

json to_json(const Value& v) {
  if (v.is_unit()) return json{{"unit", true}};
  if (v.is_int()) return json{{"int", v.as_int().str()}};
  if (v.is_bool()) return json{{"bool", v.as_bool()}};
  if (v.is_addr()) return json{{"addr", std::to_string(v.as_addr())}};
  const auto& m = v.as_mapping();
  json entries = json::array();
  for (const auto& [k, val] : m.table) entries.push_back(json::array({to_json(k), to_json(val)}));
  return json{{"map", {{"keySort", to_string(m.key_sort)},
                       {"default", to_json(m.def)},
                       {"entries", entries}}}};
}

Value value_from_json(const json& j) {
  if (j.contains("unit")) return Value::unit();
  if (j.contains("int")) return Value::integer(BigInt(j.at("int").get<std::string>()));
  if (j.contains("bool")) return Value::boolean(j.at("bool").get<bool>());
  if (j.contains("addr"))
    return Value::address(static_cast<Addr>(std::stoull(j.at("addr").get<std::string>())));
  if (j.contains("map")) {
    const json& m = j.at("map");
    std::string ks = m.at("keySort").get<std::string>();
    KeySort sort = ks == "int" ? KeySort::Int : (ks == "bool" ? KeySort::Bool : KeySort::Addr);
    std::map<Value, Value> table;
    for (const json& e : m.at("entries"))
      table.emplace(value_from_json(e.at(0)), value_from_json(e.at(1)));
    return Value::mapping(sort, value_from_json(m.at("default")), std::move(table));
  }
  throw std::invalid_argument("malformed value JSON");
}

json to_json(const State& s) {
  json slots = json::object();
  for (const auto& [l, inst] : s.slots) {
    json vars = json::object();
    for (const auto& [x, v] : inst.vars) vars[x] = to_json(v);
    slots[std::to_string(l)] = json{{"type", inst.type}, {"vars", vars}};
  }
  return json{{"schemaVersion", kSchemaVersion}, {"slots", slots}};
}

State state_from_json(const json& j) {
  State s;
  const json& slots = j.contains("slots") ? j.at("slots") : j;
  for (auto it = slots.begin(); it != slots.end(); ++it) {
    Addr l = static_cast<Addr>(std::stoull(it.key()));
    ContractInstance inst;
    inst.type = it.value().at("type").get<std::string>();
    for (auto v = it.value().at("vars").begin(); v != it.value().at("vars").end(); ++v)
      inst.vars[v.key()] = value_from_json(v.value());
    s.slots[l] = std::move(inst);
  }
  return s;
}

json to_json(const Env& env) {
  json out = json::object();
  for (const auto& [k, v] : env) out[k] = to_json(v);
  return out;
}

Env env_from_json(const json& j) {
  Env env;
  for (auto it = j.begin(); it != j.end(); ++it) env[it.key()] = value_from_json(it.value());
  return env;
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json arr = json::array();
  for (const Diagnostic& d : ds) {
    arr.push_back(json{{"severity", d.severity == Severity::Error      ? "error"
                                    : d.severity == Severity::Warning ? "warning"
                                                                      : "note"},
                       {"message", d.message},
                       {"file", d.file},
                       {"line", d.span.line},
                       {"col", d.span.col},
                       {"rule", d.rule}});
  }
  return json{{"schemaVersion", kSchemaVersion}, {"diagnostics", arr}};
}

json sigma_json(const TypingState& sigma) {
  json contracts = json::array();
  for (const std::string& name : sigma.order) {
    json layout = json::array();
    for (const auto& [x, st] : sigma.storage.at(name))
      layout.push_back(json{{"name", x}, {"type", to_string(st)}});
    json transitions = json::array();
    if (auto it = sigma.trans.find(name); it != sigma.trans.end())
      for (const Transition& t : it->second) transitions.push_back(t.name);
    contracts.push_back(json{{"name", name},
                             {"storage", layout},
                             {"transitions", transitions},
                             {"hasConstructor", sigma.cnstr.count(name) > 0}});
  }
  return json{{"schemaVersion", kSchemaVersion}, {"contracts", contracts}};
}

namespace {

json iface_json(const InterfaceEnv& iface) {
  json arr = json::array();
  for (const auto& [x, a] : iface) arr.push_back(json{{"name", x}, {"type", to_string(a)}});
  return arr;
}

json exprs_json(const std::vector<Expr>& es) {
  json arr = json::array();
  for (const Expr& e : es) arr.push_back(pretty(e));
  return arr;
}

json ref_json(const Ref& r) {
  json out{{"ref", pretty(r)}};
  if (r.annot) out["annot"] = to_string(*r.annot);
  return out;
}

json mapping_expr_json(const MappingExpr& m) {
  json out{{"expr", pretty(m)}};
  std::visit(overloaded{
                 [&](const MappingExpr::Base&) {},
                 [&](const MappingExpr::Lit& x) {
                   if (x.annot) out["annot"] = to_string(*x.annot);
                 },
                 [&](const MappingExpr::Upd& x) {
                   if (x.annot) out["annot"] = to_string(*x.annot);
                 },
             },
             m.v);
  return out;
}

json trans_json(const Transition& t) {
  json cases = json::array();
  for (const TransCase& c : t.cases) {
    json updates = json::array();
    for (const Update& u : c.updates)
      updates.push_back(json{{"target", ref_json(u.target)}, {"rhs", pretty(u.rhs)}});
    json cj{{"cond", pretty(c.cond)}, {"updates", updates}};
    if (c.returns) cj["returns"] = pretty(*c.returns);
    cases.push_back(std::move(cj));
  }
  json out{{"name", t.name},
           {"iface", iface_json(t.iface)},
           {"payable", t.payable},
           {"iff", exprs_json(t.iff)},
           {"cases", cases},
           {"ensures", exprs_json(t.ensures)}};
  if (t.ret_type) out["returnType"] = to_string(*t.ret_type);
  return out;
}

}  // namespace

json typed_ast_json(const Spec& spec) {
  json contracts = json::array();
  for (const Contract& c : spec.contracts) {
    json cases = json::array();
    for (const CtorCase& cc : c.ctor.cases) {
      json creates = json::array();
      for (const Create& cr : cc.creates)
        creates.push_back(json{{"type", to_string(cr.slot_type)},
                               {"name", cr.name},
                               {"rhs", pretty(cr.rhs)}});
      cases.push_back(json{{"cond", pretty(cc.cond)}, {"creates", creates}});
    }
    json transitions = json::array();
    for (const Transition& t : c.transitions) transitions.push_back(trans_json(t));
    contracts.push_back(json{{"name", c.name},
                             {"constructor", json{{"iface", iface_json(c.ctor.iface)},
                                                  {"payable", c.ctor.payable},
                                                  {"iff", exprs_json(c.ctor.iff)},
                                                  {"cases", cases},
                                                  {"ensures", exprs_json(c.ctor.ensures)}}},
                             {"transitions", transitions},
                             {"invariants", exprs_json(c.invariants)}});
  }
  return json{{"schemaVersion", kSchemaVersion}, {"contracts", contracts}};
}

json obligation_json(const Obligation& ob) {
  json out{{"hash", ob.content_hash()},
           {"kind", ob.kind == Obligation::Kind::Exprs ? "exprs" : "iffs"},
           {"rule", ob.rule},
           {"line", ob.span.line},
           {"col", ob.span.col},
           {"sigmaPrefix", ob.sigma_prefix},
           {"contract", ob.contract ? json(*ob.contract) : json(nullptr)},
           {"iface", iface_json(ob.iface)},
           {"phi", exprs_json(ob.phi)},
           {"goals", exprs_json(ob.goals)}};
  if (ob.kind == Obligation::Kind::Iffs) {
    out["callee"] = ob.callee;
    out["binder"] = iface_json(ob.binder);
    json args = json::array();
    for (const SlotExpr& se : ob.slot_args) args.push_back(pretty(se));
    out["args"] = args;
    if (ob.value_arg) out["value"] = pretty(*ob.value_arg);
  }
  return out;
}

json obligations_json(const std::vector<Obligation>& obs) {
  json arr = json::array();
  for (const Obligation& ob : obs) arr.push_back(obligation_json(ob));
  return json{{"schemaVersion", kSchemaVersion}, {"obligations", arr}};
}

json verdict_json(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::ValidWithinBounds:
      return json{{"verdict", "validWithinBounds"}};
    case Verdict::Kind::Counterexample:
      return json{{"verdict", "counterexample"},
                  {"state", to_json(v.context.state)},
                  {"env", to_json(v.context.env)},
                  {"loc", v.context.loc ? json(std::to_string(*v.context.loc)) : json(nullptr)},
                  {"goal", v.goal_index}};
    default:
      return json{{"verdict", "unknown"}, {"reason", v.reason}};
  }
}

json trace_json(const std::vector<StepLabel>& trace) {
  json arr = json::array();
  for (const StepLabel& l : trace) {
    arr.push_back(json{{"contract", l.contract},
                       {"entry", l.entry},
                       {"kind", l.is_ctor ? "constructor" : "transition"},
                       {"loc", std::to_string(l.loc)},
                       {"env", to_json(l.env)}});
  }
  return arr;
}

json report_json(const Report& rep) {
  json contracts = json::array();
  for (const ContractReport& c : rep.contracts) {
    contracts.push_back(json{{"contract", c.contract},
                             {"invariants", c.invariants_ok},
                             {"ctorPost", c.ctor_post_ok},
                             {"transPost", c.trans_post_ok},
                             {"ok", c.ok()}});
  }
  json failures = json::array();
  for (const CheckFailure& f : rep.failures) {
    failures.push_back(json{{"contract", f.contract},
                            {"check", f.check},
                            {"entry", f.entry},
                            {"failureKind", f.failure_kind},
                            {"detail", f.detail},
                            {"loc", f.loc ? json(std::to_string(*f.loc)) : json(nullptr)},
                            {"env", to_json(f.env)},
                            {"trace", trace_json(f.trace)}});
  }
  return json{{"schemaVersion", kSchemaVersion},
              {"allOk", rep.all_ok()},
              {"truncated", rep.truncated},
              {"exploredStates", rep.explored_states},
              {"depthReached", rep.depth_reached},
              {"maxDepth", rep.max_depth},
              {"storeTypingViolations", rep.store_typing_violations},
              {"contracts", contracts},
              {"failures", failures}};
}

}  // namespace act
