// Bounded decision procedure for entailment obligations, plus solver export.
#pragma once

#include <string>
#include <vector>

#include "act/bounds.hpp"
#include "act/enumerate.hpp"
#include "act/typing.hpp"

namespace act {

struct Verdict {
  enum class Kind { ValidWithinBounds, Counterexample, Unknown };
  Kind kind = Kind::Unknown;
  std::string reason;       // Unknown only
  EvalContext context;      // Counterexample only: replayable witness
  std::size_t goal_index = 0;

  bool valid() const { return kind == Kind::ValidWithinBounds; }
  static Verdict valid_within_bounds() { return Verdict{Kind::ValidWithinBounds, "", {}, 0}; }
  static Verdict unknown(std::string why) {
    return Verdict{Kind::Unknown, std::move(why), {}, 0};
  }
  std::string describe() const;
};

// Checks an Exprs obligation over every enumerated context where the path
// condition holds.
Verdict entails_exprs(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg);

// Checks an Iffs obligation: argument slot expressions are evaluated
// left-to-right threading the state, then the callee's preconditions must
// hold under the argument binding.
Verdict entails_iffs(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg);

Verdict discharge(const TypingState& sigma, const Obligation& ob, const BoundsConfig& cfg);

struct ExportResult {
  bool supported = false;
  std::string text;    // SMT-LIB 2 script; the goal is asserted negated
  std::string reason;  // when unsupported
};

ExportResult export_obligation(const TypingState& sigma, const Obligation& ob);

}  // namespace act
