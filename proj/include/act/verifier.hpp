// Bounded realization of the contract-level judgments: reachable-state
// exploration, invariant checks, constructor/transition postcondition checks.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "act/bounds.hpp"
#include "act/semantics.hpp"
#include "act/typing.hpp"

namespace act {

struct ExploreConfig {
  std::size_t max_depth = 6;
  std::size_t max_states = 20000;
  BoundsConfig bounds;
  // Runtime assertion of the reachable-store well-typedness lemma.
  bool check_store_typing = true;
};

struct Exploration {
  std::vector<State> states;       // BFS discovery order; states[0] is empty
  std::vector<std::size_t> depth;  // per state
  // Parent edge for trace reconstruction; nullopt for the root.
  std::vector<std::optional<std::pair<std::size_t, StepLabel>>> parent;
  bool truncated = false;
  std::size_t depth_reached = 0;
  std::vector<std::string> store_typing_violations;
};

Exploration explore(const TypingState& sigma, const ExploreConfig& cfg);

// Labeled steps from the empty state to the given discovered state.
std::vector<StepLabel> trace_to(const Exploration& ex, std::size_t state_index);

struct CheckFailure {
  std::string contract;
  std::string check;        // "invariant" | "ctor-post" | "trans-post"
  std::string entry;        // transition name, "constructor", or invariant index
  std::string failure_kind; // "False" or the evaluation error kind
  std::string detail;
  std::size_t state_index = 0;
  std::vector<StepLabel> trace;  // from the empty state; replayable
  std::optional<Addr> loc;
  Env env;
};

struct ContractReport {
  std::string contract;
  bool invariants_ok = true;
  bool ctor_post_ok = true;
  bool trans_post_ok = true;
  bool ok() const { return invariants_ok && ctor_post_ok && trans_post_ok; }
};

struct Report {
  std::vector<ContractReport> contracts;
  std::vector<CheckFailure> failures;
  bool truncated = false;
  std::size_t explored_states = 0;
  std::size_t depth_reached = 0;
  std::size_t max_depth = 0;
  std::vector<std::string> store_typing_violations;
  bool all_ok() const {
    for (const auto& c : contracts)
      if (!c.ok()) return false;
    return store_typing_violations.empty();
  }
};

Report check_contracts(const TypingState& sigma, const ExploreConfig& cfg);
Report check_contracts(const TypingState& sigma, const Exploration& ex,
                       const ExploreConfig& cfg);

}  // namespace act
