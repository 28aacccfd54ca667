#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "act/entailment.hpp"
#include "act/semantics.hpp"
#include "testutil.hpp"

using namespace act;

namespace {

Obligation make_exprs(InterfaceEnv iface, std::vector<Expr> phi, std::vector<Expr> goals,
                      std::optional<std::string> contract = std::nullopt,
                      size_t prefix = 0) {
  Obligation ob;
  ob.kind = Obligation::Kind::Exprs;
  ob.rule = "test";
  ob.sigma_prefix = prefix;
  ob.contract = std::move(contract);
  ob.iface = std::move(iface);
  ob.phi = std::move(phi);
  ob.goals = std::move(goals);
  return ob;
}

Expr var(const std::string& n) { return ref_expr(var_ref(n)); }

}  // namespace

TEST_CASE("trivial goals are valid within bounds") {
  TypingState sig;
  Obligation ob = make_exprs({}, {bool_lit(true)}, {bool_lit(true)});
  CHECK(entails_exprs(sig, ob, BoundsConfig{}).valid());
}

TEST_CASE("inrange over the full argument type is valid") {
  TypingState sig;
  InterfaceEnv iface{{"x", AbiType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  Obligation ob = make_exprs(iface, {}, {in_range(IntType::unsigned_bits(8), var("x"))});
  CHECK(entails_exprs(sig, ob, BoundsConfig{}).valid());
}

TEST_CASE("counterexamples are found and replay") {
  TypingState sig;
  InterfaceEnv iface{{"x", AbiType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  // Under x < 10, the goal x < 5 fails; with samples covering 5 the smallest
  // witness is x = 5.
  Obligation ob = make_exprs(iface, {cmp(CmpOp::Lt, var("x"), int_lit(10))},
                             {cmp(CmpOp::Lt, var("x"), int_lit(5))});
  BoundsConfig cfg;
  for (int i = 0; i <= 10; ++i) cfg.custom_int_samples.push_back(i);
  Verdict v = entails_exprs(sig, ob, cfg);
  REQUIRE(v.kind == Verdict::Kind::Counterexample);
  CHECK(v.context.env.at("x") == Value::integer(5));

  // Replay: the path condition holds and the goal evaluates to False.
  Interp in(sig);
  CHECK(in.eval_expr(TimedView::untimed(v.context.state), v.context.env, v.context.loc,
                     ob.phi[0]) == Value::boolean(true));
  CHECK(in.eval_expr(TimedView::untimed(v.context.state), v.context.env, v.context.loc,
                     ob.goals[v.goal_index]) == Value::boolean(false));
}

TEST_CASE("monotonicity: larger bounds never flip a counterexample to valid") {
  TypingState sig;
  InterfaceEnv iface{{"x", AbiType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  Obligation ob = make_exprs(iface, {cmp(CmpOp::Lt, var("x"), int_lit(10))},
                             {cmp(CmpOp::Lt, var("x"), int_lit(5))});
  BoundsConfig small;
  for (int i = 0; i <= 10; ++i) small.custom_int_samples.push_back(i);
  BoundsConfig large = small;
  for (int i = 11; i <= 40; ++i) large.custom_int_samples.push_back(i);
  large.addr_domain = 4;
  REQUIRE(entails_exprs(sig, ob, small).kind == Verdict::Kind::Counterexample);
  CHECK(entails_exprs(sig, ob, large).kind == Verdict::Kind::Counterexample);
}

TEST_CASE("determinism: identical obligations and bounds give identical verdicts") {
  TypingState sig;
  InterfaceEnv iface{{"x", AbiType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  Obligation ob = make_exprs(iface, {}, {in_range(IntType::unsigned_bits(8), var("x"))});
  BoundsConfig cfg;
  Verdict a = entails_exprs(sig, ob, cfg);
  Verdict b = entails_exprs(sig, ob, cfg);
  CHECK(a.kind == b.kind);
  CHECK(a.describe() == b.describe());
}

TEST_CASE("context enumeration counts") {
  TypingState sigt;
  SigmaView sig = SigmaView::full(sigt);
  BoundsConfig cfg;
  // No interface, no contract: contexts vary only over caller, origin,
  // callvalue samples.
  ContextSet base = enumerate_contexts(sig, {}, std::nullopt, cfg);
  REQUIRE(base.ok());
  size_t cv = cfg.int_samples(uint256()).size();
  CHECK(base.contexts.size() == cfg.addr_domain * cfg.addr_domain * cv);
  for (const auto& c : base.contexts) CHECK(c.state.slots.empty());

  // One bool argument exactly doubles the contexts.
  InterfaceEnv iface{{"x", AbiType::base(BaseType::boolean())}};
  ContextSet doubled = enumerate_contexts(sig, iface, std::nullopt, cfg);
  REQUIRE(doubled.ok());
  CHECK(doubled.contexts.size() == 2 * base.contexts.size());
}

TEST_CASE("subject stores enumerate fields over the sample sets") {
  TypingState sigt;
  sigt.order = {"A"};
  sigt.storage["A"] = {{"n", SlotType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  SigmaView sig = SigmaView::full(sigt);
  BoundsConfig cfg;
  cfg.addr_domain = 1;
  ContextSet cs = enumerate_contexts(sig, {}, std::string("A"), cfg);
  REQUIRE(cs.ok());
  std::set<std::string> stores;
  for (const auto& c : cs.contexts) stores.insert(c.state.to_string());
  CHECK(stores.size() == cfg.int_samples(IntType::unsigned_bits(8)).size());
}

TEST_CASE("iffs obligations: literal arguments") {
  // Callee with iff y > 0, called with literal 1: valid. Called with
  // calldata x under true: counterexample at x = 0.
  std::string src =
      "contract A { constructor(y: uint8) iff y > 0 creates uint256 balance := 0 "
      "ensures true invariants true }\n"
      "contract B { constructor(x: uint8) iff true creates uint256 balance := 0, "
      "A good := new A(1), A bad := new A(x) ensures true invariants true }";
  CheckResult r = check_spec(test::parse_or_die(src));
  // The checker reports the unsatisfied obligation only via entailment.
  REQUIRE(r.ok());
  std::vector<const Obligation*> iffs;
  for (const Obligation& ob : r.obligations)
    if (ob.kind == Obligation::Kind::Iffs) iffs.push_back(&ob);
  REQUIRE(iffs.size() == 2);
  BoundsConfig cfg;
  Verdict good = entails_iffs(r.sigma, *iffs[0], cfg);
  CHECK(good.valid());
  Verdict bad = entails_iffs(r.sigma, *iffs[1], cfg);
  REQUIRE(bad.kind == Verdict::Kind::Counterexample);
  CHECK(bad.context.env.at("x") == Value::integer(0));
}

TEST_CASE("agreement with a truth-table oracle on bool-only interfaces") {
  // Hand-rolled generator over {vars, not, and, or, implies, eq, ite}.
  std::mt19937_64 rng(7);
  InterfaceEnv iface{{"p", AbiType::base(BaseType::boolean())},
                     {"q", AbiType::base(BaseType::boolean())},
                     {"r", AbiType::base(BaseType::boolean())}};
  std::vector<std::string> names{"p", "q", "r"};

  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
    switch (pick(rng)) {
      case 0: return var(names[rng() % names.size()]);
      case 1: return bool_lit(rng() % 2 == 0);
      case 2: return not_e(gen(depth - 1));
      case 3: return bin_b(BoolOp::And, gen(depth - 1), gen(depth - 1));
      case 4: return bin_b(BoolOp::Or, gen(depth - 1), gen(depth - 1));
      case 5: return bin_b(BoolOp::Implies, gen(depth - 1), gen(depth - 1));
      default: return eq(gen(depth - 1), gen(depth - 1));
    }
  };

  // Independent oracle: direct truth-table evaluation of the formula.
  std::function<bool(const Expr&, const std::map<std::string, bool>&)> ev =
      [&](const Expr& e, const std::map<std::string, bool>& asg) -> bool {
    if (const auto* b = std::get_if<Expr::BoolLit>(&e.v)) return b->value;
    if (const auto* rx = std::get_if<Expr::RefExpr>(&e.v))
      return asg.at(std::get<Ref::Var>(rx->ref.v).name);
    if (const auto* n = std::get_if<Expr::Not>(&e.v)) return !ev(*n->e, asg);
    if (const auto* bb = std::get_if<Expr::BinB>(&e.v)) {
      bool l = ev(*bb->l, asg), r2 = ev(*bb->r, asg);
      return bb->op == BoolOp::And ? (l && r2)
             : bb->op == BoolOp::Or ? (l || r2)
                                    : (!l || r2);
    }
    const auto& q = std::get<Expr::Eq>(e.v);
    return ev(*q.l, asg) == ev(*q.r, asg);
  };

  TypingState sig;
  BoundsConfig cfg;
  int checked = 0;
  for (int i = 0; i < 220; ++i) {
    Expr phi = gen(3);
    Expr goal = gen(3);
    bool oracle_valid = true;
    for (int bits = 0; bits < 8; ++bits) {
      std::map<std::string, bool> asg{
          {"p", (bits & 1) != 0}, {"q", (bits & 2) != 0}, {"r", (bits & 4) != 0}};
      if (ev(phi, asg) && !ev(goal, asg)) oracle_valid = false;
    }
    Obligation ob = make_exprs(iface, {phi}, {goal});
    Verdict v = entails_exprs(sig, ob, cfg);
    REQUIRE(v.kind != Verdict::Kind::Unknown);
    CHECK(v.valid() == oracle_valid);
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("export: trivial goal produces a negated assertion") {
  TypingState sig;
  Obligation ob = make_exprs({}, {}, {bool_lit(true)});
  ExportResult ex = export_obligation(sig, ob);
  REQUIRE(ex.supported);
  CHECK(ex.text.find("(assert (not true))") != std::string::npos);
  CHECK(ex.text.find("(check-sat)") != std::string::npos);
}

TEST_CASE("export: ranged constants and path condition") {
  TypingState sigt;
  CheckResult r = check_spec(test::parse_or_die(
      "contract C { constructor(x: uint8) iff x < 255 creates uint256 balance := 0, "
      "uint8 y := x + 1 ensures true invariants true }"));
  REQUIRE(r.ok());
  const Obligation* bop = nullptr;
  for (const Obligation& ob : r.obligations)
    if (ob.rule == "T-BopI") bop = &ob;
  REQUIRE(bop != nullptr);
  ExportResult ex = export_obligation(r.sigma, *bop);
  REQUIRE(ex.supported);
  CHECK(ex.text.find("(declare-const |x| Int)") != std::string::npos);
  CHECK(ex.text.find("(<= |x| 255)") != std::string::npos);
  CHECK(ex.text.find("(assert (< |x| 255))") != std::string::npos);
  // Deterministic output.
  CHECK(export_obligation(r.sigma, *bop).text == ex.text);
}

TEST_CASE("export: unsupported constructs are marked, not mangled") {
  TypingState sigt;
  InterfaceEnv iface{{"x", AbiType::base(BaseType::integer(IntType::unsigned_bits(8)))}};
  Obligation ob = make_exprs(iface, {}, {eq(bin_i(IntOp::Exp, var("x"), int_lit(2)), int_lit(4))});
  ExportResult ex = export_obligation(sigt, ob);
  CHECK(!ex.supported);
  CHECK(ex.text.find("not exportable") != std::string::npos);
}
