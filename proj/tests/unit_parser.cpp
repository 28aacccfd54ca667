#include <doctest.h>

#include <set>

#include "act/lexer.hpp"
#include "act/parser.hpp"
#include "act/pretty.hpp"
#include "testutil.hpp"

using namespace act;

TEST_CASE("keywords and identifier classes") {
  auto lex = tokenize("iff Counter balance 0x1f");
  REQUIRE(lex.ok());
  REQUIRE(lex.tokens.size() == 5);  // incl. EOF
  CHECK(lex.tokens[0].is_kw("iff"));
  CHECK(lex.tokens[1].kind == Token::Kind::CapIdentifier);
  CHECK(lex.tokens[2].kind == Token::Kind::Identifier);
  CHECK(lex.tokens[3].kind == Token::Kind::IntLit);
  CHECK(lex.tokens[3].value == 31);
}

TEST_CASE("lexical error carries a span") {
  auto lex = tokenize("0x?");
  REQUIRE(!lex.ok());
  CHECK(lex.diagnostics[0].span.line == 1);
  auto lex2 = tokenize("a ~ b");
  REQUIRE(!lex2.ok());
  CHECK(lex2.diagnostics[0].message.find('~') != std::string::npos);
}

TEST_CASE("minimal contract") {
  Spec s = test::parse_or_die(
      "contract C { constructor() iff true creates uint256 balance := 0 "
      "ensures true invariants true }");
  REQUIRE(s.contracts.size() == 1);
  const Contract& c = s.contracts[0];
  CHECK(c.name == "C");
  REQUIRE(c.ctor.cases.size() == 1);  // caseless body desugars to one case
  CHECK(std::get<Expr::BoolLit>(c.ctor.cases[0].cond.v).value);
  REQUIRE(c.ctor.cases[0].creates.size() == 1);
  CHECK(c.ctor.cases[0].creates[0].name == "balance");
}

TEST_CASE("implication is right-associative") {
  Spec s = test::parse_or_die(
      "contract C { constructor(a: bool, b: bool, c: bool) iff a ==> b ==> c "
      "creates uint256 balance := 0 ensures true invariants true }");
  const Expr& e = s.contracts[0].ctor.iff[0];
  const auto& top = std::get<Expr::BinB>(e.v);
  REQUIRE(top.op == BoolOp::Implies);
  CHECK(std::holds_alternative<Expr::RefExpr>(top.l->v));
  const auto& rhs = std::get<Expr::BinB>(top.r->v);
  CHECK(rhs.op == BoolOp::Implies);
}

TEST_CASE("precedence: exp > mul > add > cmp > eq > and > or") {
  Spec s = test::parse_or_die(
      "contract C { constructor(a: uint8, b: uint8) iff a + b * 2 exp 3 < 9 = true || false "
      "creates uint256 balance := 0 ensures true invariants true }");
  const Expr& e = s.contracts[0].ctor.iff[0];
  const auto& orr = std::get<Expr::BinB>(e.v);
  CHECK(orr.op == BoolOp::Or);
  const auto& eqn = std::get<Expr::Eq>(orr.l->v);
  const auto& cmp = std::get<Expr::Cmp>(eqn.l->v);
  CHECK(cmp.op == CmpOp::Lt);
  const auto& add = std::get<Expr::BinI>(cmp.l->v);
  CHECK(add.op == IntOp::Add);
  const auto& mul = std::get<Expr::BinI>(add.r->v);
  CHECK(mul.op == IntOp::Mul);
  const auto& ex = std::get<Expr::BinI>(mul.r->v);
  CHECK(ex.op == IntOp::Exp);
}

TEST_CASE("parse errors recover at contract boundaries") {
  auto res = parse_source(
      "contract A { constructor() iff true creates uint256 balance := := 0 ensures true }\n"
      "contract B { constructor() iff true creates uint256 balance := 0 ensures true "
      "invariants true }",
      "two.act");
  CHECK(!res.spec.has_value());
  REQUIRE(res.diagnostics.size() == 1);  // first error only, then resync
  CHECK(res.diagnostics[0].file == "two.act");
}

TEST_CASE("determinism: same bytes, same pretty output") {
  for (const auto& path : test::corpus_files()) {
    std::string src = test::read_file(path);
    auto a = parse_source(src, path);
    auto b = parse_source(src, path);
    REQUIRE(a.spec.has_value());
    REQUIRE(b.spec.has_value());
    CHECK(pretty(*a.spec) == pretty(*b.spec));
    CHECK(ast_equal(*a.spec, *b.spec));
  }
}

TEST_CASE("round-trip: parse . pretty is the identity on the corpus") {
  for (const auto& path : test::corpus_files()) {
    INFO(path);
    Spec orig = test::parse_or_die(test::read_file(path));
    std::string printed = pretty(orig);
    INFO(printed);
    Spec again = test::parse_or_die(printed);
    CHECK(ast_equal(orig, again));
    // And the printed form is a fixpoint.
    CHECK(pretty(again) == printed);
  }
}

TEST_CASE("golden AST snapshot for erc20ish") {
  Spec s = test::parse_or_die(test::read_file(test::corpus_dir() + "/erc20ish.act"));
  std::string golden_path = std::string(ACT_GOLDEN_DIR) + "/erc20ish.pretty.txt";
  std::string want = test::read_file(golden_path);
  REQUIRE(!want.empty());
  CHECK(pretty(s) == want);
}

namespace {

// Tally of grammar alternatives reached while walking an AST.
struct Coverage {
  std::set<std::string> hits;
  void hit(const std::string& s) { hits.insert(s); }

  void walk(const Ref& r) {
    std::visit(overloaded{
                   [&](const Ref::Var&) { hit("ref:var"); },
                   [&](const Ref::Pre&) { hit("ref:pre"); },
                   [&](const Ref::Post&) { hit("ref:post"); },
                   [&](const Ref::Coerce& x) {
                     hit("ref:as");
                     walk(*x.inner);
                   },
                   [&](const Ref::Field& x) {
                     hit("ref:field");
                     walk(*x.inner);
                   },
                   [&](const Ref::Index& x) {
                     hit("ref:index");
                     walk(*x.inner);
                     walk(*x.key);
                   },
                   [&](const Ref::EnvRef& x) { hit(std::string("env:") + to_string(x.var)); },
               },
               r.v);
  }
  void walk(const Expr& e) {
    std::visit(overloaded{
                   [&](const Expr::IntLit&) { hit("e:int"); },
                   [&](const Expr::BoolLit&) { hit("e:bool"); },
                   [&](const Expr::RefExpr& x) {
                     hit("e:ref");
                     walk(x.ref);
                   },
                   [&](const Expr::AddrOf& x) {
                     hit("e:addr");
                     walk(x.ref);
                   },
                   [&](const Expr::BinI& x) {
                     hit(std::string("opi:") + to_string(x.op));
                     walk(*x.l);
                     walk(*x.r);
                   },
                   [&](const Expr::BinB& x) {
                     hit(std::string("opb:") + to_string(x.op));
                     walk(*x.l);
                     walk(*x.r);
                   },
                   [&](const Expr::Cmp& x) {
                     hit(std::string("cmp:") + to_string(x.op));
                     walk(*x.l);
                     walk(*x.r);
                   },
                   [&](const Expr::Not& x) {
                     hit("e:not");
                     walk(*x.e);
                   },
                   [&](const Expr::InRange& x) {
                     hit("e:inrange");
                     walk(*x.e);
                   },
                   [&](const Expr::Ite& x) {
                     hit("e:ite");
                     walk(*x.c);
                     walk(*x.t);
                     walk(*x.f);
                   },
                   [&](const Expr::Eq& x) {
                     hit("e:eq");
                     walk(*x.l);
                     walk(*x.r);
                   },
               },
               e.v);
  }
  void walk(const MappingExpr& m) {
    std::visit(overloaded{
                   [&](const MappingExpr::Base& x) {
                     hit("m:base");
                     walk(*x.e);
                   },
                   [&](const MappingExpr::Lit& x) {
                     hit("m:lit");
                     for (const auto& p : x.pairs) {
                       walk(p.key);
                       walk(p.value);
                     }
                     if (x.pairs.empty()) hit("m:lit-empty");
                   },
                   [&](const MappingExpr::Upd& x) {
                     hit("m:upd");
                     walk(x.base);
                     for (const auto& p : x.pairs) {
                       walk(p.key);
                       walk(p.value);
                     }
                   },
               },
               m.v);
  }
  void walk(const SlotExpr& se) {
    std::visit(overloaded{
                   [&](const SlotExpr::MapE& x) {
                     hit("se:m");
                     walk(x.m);
                   },
                   [&](const SlotExpr::New& x) {
                     hit(x.value_arg ? "se:new-value" : "se:new");
                     if (x.value_arg) walk(**x.value_arg);
                     for (const auto& a : x.args) walk(a);
                   },
                   [&](const SlotExpr::RefE& x) {
                     hit("se:ref");
                     walk(x.ref);
                   },
                   [&](const SlotExpr::AddrE& x) {
                     hit("se:addr");
                     walk(*x.inner);
                   },
               },
               se.v);
  }
  void walk_type(const MappingType& t) {
    if (t.is_base()) {
      walk_type(t.as_base());
    } else {
      hit("ty:mapping");
      walk_type(t.as_map().key);
      walk_type(t.as_map().value);
    }
  }
  void walk_type(const BaseType& b) {
    switch (b.sort) {
      case BaseType::Sort::Int:
        hit(b.int_type->is_math()
                ? "ty:int-math"
                : (b.int_type->kind() == IntType::Kind::Unsigned ? "ty:uintM" : "ty:intM"));
        break;
      case BaseType::Sort::Bool: hit("ty:bool"); break;
      default: hit("ty:address"); break;
    }
  }
  void walk_type(const SlotType& st) {
    if (st.is_mapping()) {
      walk_type(st.as_mapping());
    } else if (st.is_contract_addr()) {
      hit("ty:address-contract");
    } else {
      hit("ty:contract");
    }
  }
  void walk(const Spec& s) {
    hit("spec");
    for (const Contract& c : s.contracts) {
      hit("contract");
      hit("constructor");
      if (c.ctor.payable) hit("payable");
      for (const auto& [x, a] : c.ctor.iface) {
        if (a.is_base())
          walk_type(a.as_base());
        else
          hit("ty:address-contract");
      }
      for (const Expr& e : c.ctor.iff) walk(e);
      for (const CtorCase& cc : c.ctor.cases) {
        hit("case");
        walk(cc.cond);
        for (const Create& cr : cc.creates) {
          hit("create");
          walk_type(cr.slot_type);
          walk(cr.rhs);
        }
      }
      for (const Expr& e : c.ctor.ensures) walk(e);
      for (const Transition& t : c.transitions) {
        hit("transition");
        if (t.ret_type) hit("ret-type");
        for (const Expr& e : t.iff) walk(e);
        for (const TransCase& tc : t.cases) {
          walk(tc.cond);
          for (const Update& u : tc.updates) {
            hit("update");
            walk(u.target);
            walk(u.rhs);
          }
          if (tc.returns) {
            hit("returns");
            walk(*tc.returns);
          }
        }
        for (const Expr& e : t.ensures) walk(e);
      }
      for (const Expr& e : c.invariants) {
        hit("invariants");
        walk(e);
      }
    }
  }
};

}  // namespace

TEST_CASE("grammar coverage: every production is reachable from the corpus") {
  Coverage cov;
  for (const auto& path : test::corpus_files()) cov.walk(test::parse_or_die(test::read_file(path)));
  std::vector<std::string> want = {
      "spec", "contract", "constructor", "payable", "case", "create", "update",
      "transition", "ret-type", "returns", "invariants",
      "se:m", "se:new", "se:new-value", "se:ref", "se:addr",
      "m:base", "m:lit", "m:lit-empty", "m:upd",
      "e:int", "e:bool", "e:ref", "e:addr", "e:not", "e:inrange", "e:ite", "e:eq",
      "opi:+", "opi:-", "opi:*", "opi:div", "opi:mod", "opi:exp",
      "opb:&&", "opb:||", "opb:==>",
      "cmp:<", "cmp:<=", "cmp:>=", "cmp:>",
      "env:caller", "env:origin", "env:callvalue", "env:this",
      "ref:var", "ref:pre", "ref:post", "ref:as", "ref:field", "ref:index",
      "ty:uintM", "ty:intM", "ty:int-math", "ty:bool", "ty:address",
      "ty:address-contract", "ty:contract", "ty:mapping",
  };
  for (const std::string& w : want) {
    INFO(w);
    CHECK(cov.hits.count(w) == 1);
  }
}
