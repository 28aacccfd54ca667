#include <doctest.h>

#include "act/typing.hpp"
#include "act/pretty.hpp"
#include "testutil.hpp"

using namespace act;

namespace {

CheckResult check_src(const std::string& src) { return check_spec(test::parse_or_die(src)); }

bool has_rule(const CheckResult& r, const std::string& rule) {
  for (const auto& d : r.diagnostics)
    if (d.rule == rule) return true;
  return false;
}

const std::string kMinimalBody =
    " iff true creates uint256 balance := 0 ensures true invariants true }";

}  // namespace

TEST_CASE("empty spec checks to the empty Sigma") {
  CheckResult r = check_src("");
  CHECK(r.ok());
  CHECK(r.sigma.order.empty());
  CHECK(r.obligations.empty());
}

TEST_CASE("forward contract references are rejected") {
  // B stores a field of type A, but A is declared after B.
  CheckResult r = check_src(
      "contract B { constructor() iff true creates uint256 balance := 0, "
      "address(A) fwd := addr(new A()) ensures true invariants true }\n"
      "contract A { constructor()" + kMinimalBody);
  CHECK(!r.ok());
  CHECK(has_rule(r, "WFContractAddr"));
}

TEST_CASE("backward contract references are accepted") {
  CheckResult r = check_src(
      "contract A { constructor()" + kMinimalBody +
      "contract B { constructor() iff true creates uint256 balance := 0, "
      "A mine := new A(), address(A) ptr := addr(new A()) ensures true invariants true }");
  REQUIRE(r.ok());
  CHECK(r.sigma.order == std::vector<std::string>{"A", "B"});
  CHECK(r.sigma.storage.at("B").size() == 3);
}

TEST_CASE("WFInt rejects math-int interfaces") {
  CheckResult r = check_src("contract C { constructor(x: int)" + kMinimalBody);
  CHECK(has_rule(r, "WFInt"));
}

TEST_CASE("creates must contain balance : uint256") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 other := 0 "
      "ensures true invariants true }");
  CHECK(has_rule(r, "T-Creates"));
  // Wrong type for balance is also rejected.
  CheckResult r2 = check_src(
      "contract C { constructor() iff true creates uint8 balance := 0 "
      "ensures true invariants true }");
  CHECK(has_rule(r2, "T-Creates"));
}

TEST_CASE("single-case constructors still emit the exhaustiveness obligation") {
  CheckResult r = check_src("contract C { constructor()" + kMinimalBody);
  REQUIRE(r.ok());
  REQUIRE(r.obligations.size() == 1);
  const Obligation& ob = r.obligations[0];
  CHECK(ob.rule == "T-Ctor");
  CHECK(!ob.contract.has_value());  // at bottom
  CHECK(ob.sigma_prefix == 0);
  REQUIRE(ob.goals.size() == 1);
  CHECK(pretty(ob.goals[0]) == "true ==> true && true");
}

TEST_CASE("timed arithmetic types at math int") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint256 x := 0 "
      "ensures true\n"
      "transition f() : int iff true updates returns pre(x) + post(x) ensures true "
      "invariants true }");
  CHECK(r.ok());
  // Narrowing the timed result to a bounded type is rejected.
  CheckResult r2 = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint256 x := 0 "
      "ensures true\n"
      "transition f() : uint256 iff true updates returns pre(x) + post(x) ensures true "
      "invariants true }");
  CHECK(has_rule(r2, "T-NumConv"));
}

TEST_CASE("updates may only target S-tagged references") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0 "
      "ensures true\n"
      "transition f(v: uint256) iff true updates v := 1 ensures true invariants true }");
  CHECK(has_rule(r, "T-Update"));
}

TEST_CASE("plain storage reads are untimed only") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint256 x := 0 "
      "ensures true\n"
      "transition f() iff true updates ensures x = 0 invariants true }");
  CHECK(has_rule(r, "T-Storage"));
}

TEST_CASE("this is unavailable in constructor bodies") {
  CheckResult r = check_src(
      "contract C { constructor() iff this = this creates uint256 balance := 0 "
      "ensures true invariants true }");
  CHECK(has_rule(r, "T-This"));
}

TEST_CASE("environment references are untimed only") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0 ensures true\n"
      "transition f() iff true updates ensures caller = caller invariants true }");
  CHECK(has_rule(r, "T-Environment"));
}

TEST_CASE("integer literal bounds per T-Int") {
  CheckResult ok = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint8 x := 255 "
      "ensures true invariants true }");
  CHECK(ok.ok());
  CheckResult bad = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint8 x := 256 "
      "ensures true invariants true }");
  CHECK(has_rule(bad, "T-Int"));
}

TEST_CASE("arithmetic against a bounded expected type emits an inrange obligation") {
  CheckResult r = check_src(
      "contract C { constructor(x: uint8) iff true creates uint256 balance := 0, "
      "uint8 y := x + 1 ensures true invariants true }");
  REQUIRE(r.ok());
  bool found = false;
  for (const Obligation& ob : r.obligations) {
    if (ob.rule == "T-BopI") {
      found = true;
      REQUIRE(ob.goals.size() == 1);
      CHECK(pretty(ob.goals[0]) == "inrange(uint8, x + 1)");
    }
  }
  CHECK(found);
}

TEST_CASE("coercion and field access through typed addresses") {
  CheckResult r = check_src(
      "contract A { constructor() iff true creates uint256 balance := 0, uint8 f := 1 "
      "ensures true invariants true }\n"
      "contract B { constructor(a: address(A)) iff (a as A).f < 2 creates "
      "uint256 balance := 0 ensures true invariants true }");
  CHECK(r.ok());
  // Coercing to the wrong contract fails.
  CheckResult bad = check_src(
      "contract A { constructor() iff true creates uint256 balance := 0 ensures true "
      "invariants true }\n"
      "contract B { constructor(a: address(A)) iff (a as B).balance < 2 creates "
      "uint256 balance := 0 ensures true invariants true }");
  CHECK(has_rule(bad, "T-Coerce"));
}

TEST_CASE("payability of new must match the callee") {
  std::string payable_a =
      "contract A { constructor() payable iff true creates uint256 balance := callvalue "
      "ensures true invariants true }\n";
  CheckResult bad = check_src(payable_a +
      "contract B { constructor() iff true creates uint256 balance := 0, A a := new A() "
      "ensures true invariants true }");
  CHECK(has_rule(bad, "T-CreatePayable"));

  std::string plain_a =
      "contract A { constructor() iff true creates uint256 balance := 0 ensures true "
      "invariants true }\n";
  CheckResult bad2 = check_src(plain_a +
      "contract B { constructor() iff true creates uint256 balance := 0, "
      "A a := new A{value: 1}() ensures true invariants true }");
  CHECK(has_rule(bad2, "T-Create"));

  CheckResult ok = check_src(payable_a +
      "contract B { constructor() iff true creates uint256 balance := 0, "
      "A a := new A{value: 1}() ensures true invariants true }");
  CHECK(ok.ok());
  bool found = false;
  for (const Obligation& ob : ok.obligations)
    if (ob.kind == Obligation::Kind::Iffs) {
      found = true;
      CHECK(ob.callee == "A");
    }
  CHECK(found);
}

TEST_CASE("mapping literal annotations are inferred from the declared type") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, "
      "mapping(uint8 => uint8) m := [1 => 2] ensures true invariants true }");
  REQUIRE(r.ok());
  const Create& cr = r.sigma.cnstr.at("C").cases[0].creates[1];
  const auto& lit = std::get<MappingExpr::Lit>(std::get<SlotExpr::MapE>(cr.rhs.v).m.v);
  REQUIRE(lit.annot.has_value());
  CHECK(to_string(*lit.annot) == "mapping(uint8 => uint8)");
}

TEST_CASE("update specificity") {
  std::string prelude =
      "contract A { constructor() iff true creates uint256 balance := 0, uint8 f := 0 "
      "ensures true invariants true }\n"
      "contract B { constructor() iff true creates uint256 balance := 0, A a := new A() "
      "ensures true\n";
  // Duplicate targets are rejected (reflexive closure).
  CheckResult dup = check_src(prelude +
      "transition t() iff true updates balance := 1, balance := 2 ensures true "
      "invariants true }");
  CHECK(has_rule(dup, "T-Updates"));
  // An earlier more-specific target rejects the pair.
  CheckResult bad = check_src(prelude +
      "transition t() iff true updates a.f := 1, a := new A() ensures true "
      "invariants true }");
  CHECK(has_rule(bad, "T-Updates"));
  // The other order is fine: the later write lands in the new object's field.
  CheckResult ok = check_src(prelude +
      "transition t() iff true updates a := new A(), a.f := 1 ensures true "
      "invariants true }");
  CHECK(ok.ok());
}

TEST_CASE("duplicate create names are rejected") {
  CheckResult r = check_src(
      "contract C { constructor() iff true creates uint256 balance := 0, uint8 x := 0, "
      "uint8 x := 1 ensures true invariants true }");
  CHECK(has_rule(r, "T-Creates"));
}

TEST_CASE("multi-case constructors must agree on the created layout") {
  CheckResult r = check_src(
      "contract C { constructor(b: bool) iff true "
      "case b: creates uint256 balance := 0, uint8 x := 0 "
      "case !b: creates uint256 balance := 0, uint16 x := 0 "
      "ensures true invariants true }");
  CHECK(has_rule(r, "T-Ctor"));
}

TEST_CASE("interface names must not collide with created storage") {
  CheckResult r = check_src(
      "contract C { constructor(balance: uint256) iff true creates uint256 balance := 0 "
      "ensures true invariants true }");
  CHECK(has_rule(r, "T-Ctor"));
}

TEST_CASE("duplicate contract names are rejected") {
  CheckResult r = check_src(
      "contract C { constructor()" + kMinimalBody + "contract C { constructor()" +
      kMinimalBody);
  CHECK(has_rule(r, "T-Spec"));
}

TEST_CASE("prefix monotonicity: checking a prefix yields the prefix of Sigma") {
  std::string a = "contract A { constructor()" + kMinimalBody;
  std::string b =
      "contract B { constructor() iff true creates uint256 balance := 0, A a := new A() "
      "ensures true invariants true }";
  CheckResult full = check_src(a + b);
  CheckResult pre = check_src(a);
  REQUIRE(full.ok());
  REQUIRE(pre.ok());
  CHECK(pre.sigma.order == std::vector<std::string>{"A"});
  CHECK(full.sigma.storage.at("A") == pre.sigma.storage.at("A"));
}

TEST_CASE("well-typed Sigma re-checks against its prefixes") {
  for (const auto& path : test::corpus_files()) {
    if (path.find("bad") != std::string::npos) continue;
    if (path.find("kitchen_sink") != std::string::npos) continue;
    CheckResult r = check_spec(test::parse_or_die(test::read_file(path)));
    INFO(path, "\n", render_diagnostics(r.diagnostics));
    REQUIRE(r.ok());
    auto err = recheck_sigma(r.sigma);
    std::string why = err.value_or("");
    INFO(why);
    CHECK(!err.has_value());
  }
}

TEST_CASE("annotated-AST totality and obligation closure on the corpus") {
  for (const auto& path : test::corpus_files()) {
    if (path.find("bad") != std::string::npos) continue;
    if (path.find("kitchen_sink") != std::string::npos) continue;
    CheckResult r = check_spec(test::parse_or_die(test::read_file(path)));
    REQUIRE(r.ok());
    for (const Obligation& ob : r.obligations) {
      std::string why;
      INFO(path, " obligation ", ob.rule, ": ", why);
      CHECK(recheck_obligation_goals(r.sigma, ob, &why));
    }
  }
}

TEST_CASE("transitions without a return type cannot return, and vice versa") {
  std::string prelude =
      "contract C { constructor() iff true creates uint256 balance := 0 ensures true\n";
  CheckResult r1 = check_src(prelude +
      "transition f() iff true updates returns 1 ensures true invariants true }");
  CHECK(has_rule(r1, "T-Trans"));
  CheckResult r2 = check_src(prelude +
      "transition f() : uint8 iff true updates ensures true invariants true }");
  CHECK(has_rule(r2, "T-Trans"));
}

TEST_CASE("invariants cannot mention calldata") {
  CheckResult r = check_src(
      "contract C { constructor(x: uint8) iff true creates uint256 balance := 0 "
      "ensures true invariants x < 5 }");
  CHECK(!r.ok());
}
