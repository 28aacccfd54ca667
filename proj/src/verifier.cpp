#include "act/verifier.hpp"

#include <algorithm>
#include <map>

#include "act/enumerate.hpp"
#include "act/valuetyping.hpp"

namespace act {

Exploration explore(const TypingState& sigma, const ExploreConfig& cfg) {
  Exploration ex;
  Interp in(sigma);
  SigmaView sig = SigmaView::full(sigma);

  std::map<std::uint64_t, std::size_t> seen;  // fingerprint -> state index
  ex.states.push_back(State{});
  ex.depth.push_back(0);
  ex.parent.push_back(std::nullopt);
  seen[ex.states[0].fingerprint()] = 0;

  for (std::size_t i = 0; i < ex.states.size(); ++i) {
    if (ex.depth[i] >= cfg.max_depth) continue;
    // Copy: ex.states may reallocate while we push successors.
    State cur = ex.states[i];
    for (StepEdge& edge : in.step(cur, cfg.bounds)) {
      std::uint64_t fp = edge.next.fingerprint();
      if (seen.count(fp)) continue;
      if (ex.states.size() >= cfg.max_states) {
        ex.truncated = true;
        break;
      }
      if (cfg.check_store_typing) {
        for (const auto& [l, inst] : edge.next.slots) {
          if (!loc_has_contract(sig, edge.next, l, inst.type)) {
            ex.store_typing_violations.push_back(
                "@" + std::to_string(l) + " not typable at " + inst.type + " in " +
                edge.next.to_string());
          }
        }
      }
      seen[fp] = ex.states.size();
      ex.states.push_back(std::move(edge.next));
      ex.depth.push_back(ex.depth[i] + 1);
      ex.parent.push_back(std::make_pair(i, edge.label));
      ex.depth_reached = std::max(ex.depth_reached, ex.depth[i] + 1);
    }
    if (ex.truncated) break;
  }
  return ex;
}

std::vector<StepLabel> trace_to(const Exploration& ex, std::size_t state_index) {
  std::vector<StepLabel> out;
  std::size_t cur = state_index;
  while (ex.parent[cur]) {
    out.push_back(ex.parent[cur]->second);
    cur = ex.parent[cur]->first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

std::string eval_error_kind(const EvalError& e) { return to_string(e.kind); }

}  // namespace

Report check_contracts(const TypingState& sigma, const ExploreConfig& cfg) {
  Exploration ex = explore(sigma, cfg);
  return check_contracts(sigma, ex, cfg);
}

Report check_contracts(const TypingState& sigma, const Exploration& ex,
                       const ExploreConfig& cfg) {
  Report rep;
  rep.truncated = ex.truncated;
  rep.explored_states = ex.states.size();
  rep.depth_reached = ex.depth_reached;
  rep.max_depth = cfg.max_depth;
  rep.store_typing_violations = ex.store_typing_violations;

  Interp in(sigma);
  SigmaView sig = SigmaView::full(sigma);
  Env empty_env;

  for (const std::string& contract : sigma.order) {
    ContractReport cr;
    cr.contract = contract;
    const Constructor& ctor = sigma.cnstr.at(contract);
    const std::vector<Transition>& transitions = sigma.trans.at(contract);

    for (std::size_t si = 0; si < ex.states.size(); ++si) {
      const State& s = ex.states[si];
      // E-InvCheck: every location typed at the contract, empty environment.
      for (const auto& [l, inst] : s.slots) {
        if (inst.type != contract) continue;
        if (!loc_has_contract(sig, s, l, contract)) continue;
        auto invs = sigma.invariants.find(contract);
        if (invs != sigma.invariants.end()) {
          for (std::size_t ii = 0; ii < invs->second.size(); ++ii) {
            std::string kind;
            std::string detail;
            try {
              Value v =
                  in.eval_expr(TimedView::untimed(s), empty_env, l, invs->second[ii]);
              if (!v.is_bool()) {
                kind = "Stuck";
                detail = "invariant is not boolean";
              } else if (!v.as_bool()) {
                kind = "False";
              }
            } catch (const EvalError& e) {
              kind = eval_error_kind(e);
              detail = e.what();
            }
            if (!kind.empty()) {
              cr.invariants_ok = false;
              CheckFailure f;
              f.contract = contract;
              f.check = "invariant";
              f.entry = "#" + std::to_string(ii + 1);
              f.failure_kind = kind;
              f.detail = detail;
              f.state_index = si;
              f.trace = trace_to(ex, si);
              f.loc = l;
              rep.failures.push_back(std::move(f));
            }
          }
        }
      }

      // E-CtorPostCheck: if the constructor evaluates, the postconditions
      // hold in the post-state at the created location.
      if (!ctor.ensures.empty()) {
        for (Env& env : enumerate_step_envs(sig, s, ctor.iface, cfg.bounds)) {
          std::optional<std::pair<Addr, State>> outcome;
          try {
            outcome = in.eval_ctor(s, env, contract, ctor);
          } catch (const EvalError&) {
            continue;  // no derivation: vacuously true
          }
          for (std::size_t pi = 0; pi < ctor.ensures.size(); ++pi) {
            std::string kind;
            std::string detail;
            try {
              Value v = in.eval_expr(TimedView::untimed(outcome->second), env,
                                     outcome->first, ctor.ensures[pi]);
              if (!v.is_bool()) {
                kind = "Stuck";
                detail = "postcondition is not boolean";
              } else if (!v.as_bool()) {
                kind = "False";
              }
            } catch (const EvalError& e) {
              kind = eval_error_kind(e);
              detail = e.what();
            }
            if (!kind.empty()) {
              cr.ctor_post_ok = false;
              CheckFailure f;
              f.contract = contract;
              f.check = "ctor-post";
              f.entry = "constructor ensures #" + std::to_string(pi + 1);
              f.failure_kind = kind;
              f.detail = detail;
              f.state_index = si;
              f.trace = trace_to(ex, si);
              f.loc = outcome->first;
              f.env = env;
              rep.failures.push_back(std::move(f));
            }
          }
        }
      }

      // E-TransPostCheck.
      for (const Transition& t : transitions) {
        if (t.ensures.empty()) continue;
        for (const auto& [l, inst] : s.slots) {
          if (inst.type != contract) continue;
          if (!loc_has_contract(sig, s, l, contract)) continue;
          for (Env& env : enumerate_step_envs(sig, s, t.iface, cfg.bounds)) {
            std::optional<std::pair<Value, State>> outcome;
            try {
              outcome = in.eval_trans(s, env, l, t);
            } catch (const EvalError&) {
              continue;  // vacuous
            }
            for (std::size_t pi = 0; pi < t.ensures.size(); ++pi) {
              std::string kind;
              std::string detail;
              try {
                Value v = in.eval_expr(TimedView::make_timed(s, outcome->second), env, l,
                                       t.ensures[pi]);
                if (!v.is_bool()) {
                  kind = "Stuck";
                  detail = "postcondition is not boolean";
                } else if (!v.as_bool()) {
                  kind = "False";
                }
              } catch (const EvalError& e) {
                kind = eval_error_kind(e);
                detail = e.what();
              }
              if (!kind.empty()) {
                cr.trans_post_ok = false;
                CheckFailure f;
                f.contract = contract;
                f.check = "trans-post";
                f.entry = t.name + " ensures #" + std::to_string(pi + 1);
                f.failure_kind = kind;
                f.detail = detail;
                f.state_index = si;
                f.trace = trace_to(ex, si);
                f.loc = l;
                f.env = env;
                rep.failures.push_back(std::move(f));
              }
            }
          }
        }
      }
    }
    rep.contracts.push_back(std::move(cr));
  }
  return rep;
}

}  // namespace act
