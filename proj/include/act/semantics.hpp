// Big-step pointer semantics. Evaluation is partial: a missing rule premise
// raises EvalError, with distinguished kinds for precondition and case
// dispatch failures.
#pragma once

#include <exception>
#include <optional>
#include <utility>
#include <vector>

#include "act/bounds.hpp"
#include "act/typing.hpp"
#include "act/value.hpp"

namespace act {

struct EvalError : std::exception {
  enum class Kind {
    Stuck,
    Unbound,
    NotAnAddress,
    NotAMapping,
    MissingField,
    PreconditionFailed,
    NoCaseMatched,
    MultipleCasesMatched,
    ResourceLimit,
  };
  Kind kind;
  std::string message;

  EvalError(Kind k, std::string msg) : kind(k), message(std::move(msg)) {}
  const char* what() const noexcept override { return message.c_str(); }
};

const char* to_string(EvalError::Kind k);

struct StepLabel {
  std::string contract;
  std::string entry;  // "constructor" or the transition name
  bool is_ctor = false;
  Addr loc = 0;  // created address for constructors, target for transitions
  Env env;
};

struct StepEdge {
  StepLabel label;
  State next;
};

class Interp {
 public:
  explicit Interp(const TypingState& sigma) : sigma_(sigma) {}

  const TypingState& sigma() const { return sigma_; }

  Value eval_env_ref(const Env& env, EnvVar ev, std::optional<Addr> loc) const;
  std::pair<Value, Timing> eval_ref(const TimedView& s, const Env& env, std::optional<Addr> loc,
                                    const Ref& ref) const;
  Value eval_expr(const TimedView& s, const Env& env, std::optional<Addr> loc,
                  const Expr& e) const;
  Value eval_mapping(const TimedView& s, const Env& env, std::optional<Addr> loc,
                     const MappingExpr& m) const;
  std::pair<Value, State> eval_slot_expr(const State& s, const Env& env, std::optional<Addr> loc,
                                         const SlotExpr& se) const;
  State insert_value(const State& s, const Env& env, std::optional<Addr> loc, const Ref& target,
                     const Value& v) const;
  std::pair<Addr, State> eval_creates(const State& s, const Env& env,
                                      const std::string& contract,
                                      const std::vector<Create>& creates) const;
  State eval_updates(const State& s, const Env& env, std::optional<Addr> loc,
                     const std::vector<Update>& updates) const;
  // Case dispatch and creates only; `new` follows this judgment (the callee's
  // preconditions are discharged as a typing obligation, not re-evaluated).
  std::pair<Addr, State> eval_ctor_cases(const State& s, const Env& env,
                                         const std::string& contract,
                                         const Constructor& ctor) const;
  // Full constructor invocation: preconditions, case dispatch, creates.
  std::pair<Addr, State> eval_ctor(const State& s, const Env& env,
                                   const std::string& contract) const;
  std::pair<Addr, State> eval_ctor(const State& s, const Env& env, const std::string& contract,
                                   const Constructor& ctor) const;
  // Full transition invocation at a location.
  std::pair<Value, State> eval_trans(const State& s, const Env& env, Addr loc,
                                     const Transition& t) const;

  // Untimed boolean evaluation of every expression in the list.
  bool all_true(const State& s, const Env& env, std::optional<Addr> loc,
                const std::vector<Expr>& es) const;

  // Every successor of s under some constructor or transition with an
  // enumerated well-typed environment. Failing candidates are skipped.
  std::vector<StepEdge> step(const State& s, const BoundsConfig& cfg) const;

 private:
  const TypingState& sigma_;
};

}  // namespace act
