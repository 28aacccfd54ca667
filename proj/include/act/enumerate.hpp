// Bounded enumeration of well-typed evaluation contexts (store, environment,
// location). Deterministic: same inputs and bounds produce the same stream.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "act/bounds.hpp"
#include "act/typing.hpp"
#include "act/value.hpp"

namespace act {

struct EvalContext {
  State state;
  Env env;
  std::optional<Addr> loc;
};

struct ContextSet {
  std::vector<EvalContext> contexts;
  bool truncated = false;
  std::string failure;  // nonempty when no well-typed context could be built
  bool ok() const { return failure.empty(); }
};

// Contexts (s, rho, l) with rho typed at the interface and l typed at the
// contract when one is given. Stores are synthetic: one subject instance
// whose fields range over the sample sets, plus default-valued auxiliary
// instances for contract-typed fields and arguments.
ContextSet enumerate_contexts(const SigmaView& sig, const InterfaceEnv& iface,
                              const std::optional<std::string>& contract,
                              const BoundsConfig& cfg);

// Environments for successor enumeration over a fixed state: callers are
// drawn from dom(s) plus the fresh address, origin is bound to the caller,
// callvalue to the configured step samples.
std::vector<Env> enumerate_step_envs(const SigmaView& sig, const State& s,
                                     const InterfaceEnv& iface, const BoundsConfig& cfg);

// Candidate values for a slot type in a fixed store (used by generators).
std::vector<Value> value_candidates(const SigmaView& sig, const State& s, const SlotType& st,
                                    const BoundsConfig& cfg);

}  // namespace act
