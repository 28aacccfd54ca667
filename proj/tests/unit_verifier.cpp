#include <doctest.h>

#include "act/verifier.hpp"
#include "act/valuetyping.hpp"
#include "testutil.hpp"

using namespace act;

namespace {

CheckResult checked_corpus(const std::string& name) {
  CheckResult r = check_spec(test::parse_or_die(test::read_file(test::corpus_dir() + name)));
  REQUIRE(r.ok());
  return r;
}

}  // namespace

TEST_CASE("depth zero explores only the empty state") {
  CheckResult r = checked_corpus("/counter.act");
  ExploreConfig cfg;
  cfg.max_depth = 0;
  Exploration ex = explore(r.sigma, cfg);
  CHECK(ex.states.size() == 1);
  CHECK(ex.states[0].slots.empty());
  Report rep = check_contracts(r.sigma, ex, cfg);
  CHECK(rep.all_ok());  // vacuously true at bound 0
}

TEST_CASE("counter exploration counts and dedup") {
  CheckResult r = checked_corpus("/counter.act");
  ExploreConfig cfg;
  cfg.max_depth = 2;
  Exploration ex = explore(r.sigma, cfg);
  // Depth 1: one counter at count 0. Depth 2: two counters, or one counter
  // incremented once.
  REQUIRE(ex.states.size() == 4);
  CHECK(ex.depth[3] == 2);
  CHECK(!ex.truncated);
}

TEST_CASE("dedup: different traces to equal states store one state") {
  CheckResult r = checked_corpus("/swap.act");
  ExploreConfig cfg;
  cfg.max_depth = 3;
  cfg.bounds.custom_int_samples = {0, 1};
  Exploration ex = explore(r.sigma, cfg);
  // swap twice returns to the original state; it must not be re-added.
  std::set<std::uint64_t> fps;
  for (const State& s : ex.states) CHECK(fps.insert(s.fingerprint()).second);
}

TEST_CASE("invariants hold on the counter to depth 12") {
  CheckResult r = checked_corpus("/counter.act");
  ExploreConfig cfg;
  cfg.max_depth = 12;
  cfg.max_states = 10000;
  Report rep = check_contracts(r.sigma, cfg);
  CHECK(rep.all_ok());
  CHECK(rep.store_typing_violations.empty());
}

TEST_CASE("broken invariant yields a shortest counterexample trace") {
  CheckResult r = checked_corpus("/bad/broken_invariant.act");
  ExploreConfig cfg;
  cfg.max_depth = 4;
  Report rep = check_contracts(r.sigma, cfg);
  REQUIRE(!rep.all_ok());
  REQUIRE(!rep.failures.empty());
  const CheckFailure& f = rep.failures.front();
  CHECK(f.check == "invariant");
  CHECK(f.failure_kind == "False");
  // Minimal trace: construct, then incr.
  REQUIRE(f.trace.size() == 2);
  CHECK(f.trace[0].entry == "constructor");
  CHECK(f.trace[1].entry == "incr");
  for (const CheckFailure& other : rep.failures) CHECK(other.trace.size() >= f.trace.size());
}

TEST_CASE("counterexample traces replay to the failing state") {
  CheckResult r = checked_corpus("/bad/broken_invariant.act");
  ExploreConfig cfg;
  cfg.max_depth = 4;
  Exploration ex = explore(r.sigma, cfg);
  Report rep = check_contracts(r.sigma, ex, cfg);
  REQUIRE(!rep.failures.empty());
  const CheckFailure& f = rep.failures.front();

  Interp in(r.sigma);
  State s;
  for (const StepLabel& step : f.trace) {
    if (step.is_ctor) {
      auto [l, s2] = in.eval_ctor(s, step.env, step.contract);
      CHECK(l == step.loc);
      s = std::move(s2);
    } else {
      const Transition* t = nullptr;
      for (const Transition& cand : r.sigma.trans.at(step.contract))
        if (cand.name == step.entry) t = &cand;
      REQUIRE(t != nullptr);
      auto [v, s2] = in.eval_trans(s, step.env, step.loc, *t);
      s = std::move(s2);
    }
  }
  CHECK(s == ex.states[f.state_index]);
  // The invariant indeed evaluates to False there.
  Env empty;
  CHECK(in.eval_expr(TimedView::untimed(s), empty, *f.loc,
                     r.sigma.invariants.at("Fragile")[0]) == Value::boolean(false));
}

TEST_CASE("postconditions: counter and swap verify; a wrong ensures fails") {
  CheckResult r = checked_corpus("/counter.act");
  ExploreConfig cfg;
  cfg.max_depth = 4;
  Report rep = check_contracts(r.sigma, cfg);
  CHECK(rep.all_ok());

  // post(count) = pre(count) would be wrong.
  CheckResult bad = check_spec(test::parse_or_die(
      "contract C { constructor() iff true creates uint256 balance := 0, "
      "uint256 count := 0 ensures true\n"
      "transition incr() iff count < 10 updates count := count + 1 "
      "ensures post(count) = pre(count) invariants true }"));
  REQUIRE(bad.ok());
  Report rep2 = check_contracts(bad.sigma, cfg);
  REQUIRE(!rep2.all_ok());
  bool found = false;
  for (const CheckFailure& f : rep2.failures)
    if (f.check == "trans-post") found = true;
  CHECK(found);
}

TEST_CASE("swap postcondition verifies at depth 3") {
  CheckResult r = checked_corpus("/swap.act");
  ExploreConfig cfg;
  cfg.max_depth = 3;
  cfg.bounds.custom_int_samples = {0, 1, 7};
  Report rep = check_contracts(r.sigma, cfg);
  CHECK(rep.all_ok());
}

TEST_CASE("every reachable store is well-typed (runtime lemma check)") {
  for (const char* name : {"/counter.act", "/swap.act", "/bank.act", "/erc20ish.act"}) {
    CheckResult r = checked_corpus(name);
    ExploreConfig cfg;
    cfg.max_depth = 3;
    cfg.bounds.custom_int_samples = {0, 1};
    Exploration ex = explore(r.sigma, cfg);
    INFO(name);
    CHECK(ex.store_typing_violations.empty());
    SigmaView sig = SigmaView::full(r.sigma);
    for (const State& s : ex.states)
      for (const auto& [l, inst] : s.slots) CHECK(loc_has_contract(sig, s, l, inst.type).holds);
  }
}

TEST_CASE("max_states truncation is reported, not fatal") {
  CheckResult r = checked_corpus("/counter.act");
  ExploreConfig cfg;
  cfg.max_depth = 12;
  cfg.max_states = 5;
  Exploration ex = explore(r.sigma, cfg);
  CHECK(ex.truncated);
  CHECK(ex.states.size() <= 5);
  Report rep = check_contracts(r.sigma, ex, cfg);
  CHECK(rep.truncated);
}
