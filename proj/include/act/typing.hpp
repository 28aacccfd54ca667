// The declarative type system: typing state, obligations, and the checker.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "act/ast.hpp"

namespace act {

using StorageLayout = std::vector<std::pair<std::string, SlotType>>;

// Sigma: storage layouts, constructors and transitions, built left-to-right
// over the contracts of a spec. Constructor/transition entries are annotated
// copies (references and mapping literals carry their checked types).
struct TypingState {
  std::vector<std::string> order;  // declaration order of checked contracts
  std::map<std::string, StorageLayout> storage;
  std::map<std::string, Constructor> cnstr;
  std::map<std::string, std::vector<Transition>> trans;
  // Annotated invariant expressions, kept alongside Sigma so the verifier can
  // run the invariant judgment without the surface AST.
  std::map<std::string, std::vector<Expr>> invariants;

  bool has_contract(const std::string& name) const { return storage.count(name) > 0; }
  const SlotType* slot_type(const std::string& contract, const std::string& var) const;
};

// Prefix view of a typing state: only the first `prefix` contracts (in
// declaration order) are visible. Obligations record the prefix they were
// emitted under.
struct SigmaView {
  const TypingState* sig = nullptr;
  size_t prefix = 0;

  static SigmaView full(const TypingState& s) { return SigmaView{&s, s.order.size()}; }
  bool has_contract(const std::string& name) const;
  const StorageLayout* layout(const std::string& name) const;
  const SlotType* slot_type(const std::string& contract, const std::string& var) const;
  const Constructor* ctor(const std::string& name) const;
  std::vector<std::string> contracts() const;  // visible, in declaration order
};

struct Obligation {
  enum class Kind { Exprs, Iffs };
  Kind kind = Kind::Exprs;
  std::string rule;  // originating judgment, e.g. "T-BopI"
  Span span;

  // Context: Sigma prefix, calldata interface, path condition, maybe-contract.
  size_t sigma_prefix = 0;
  std::optional<std::string> contract;
  InterfaceEnv iface;
  std::vector<Expr> phi;

  // Exprs: every goal must hold. Iffs: the callee constructor's preconditions
  // (goals) must hold under the argument binding.
  std::vector<Expr> goals;

  // Iffs only.
  std::string callee;
  InterfaceEnv binder;
  std::vector<SlotExpr> slot_args;
  std::optional<SlotExpr> value_arg;

  std::string content_hash() const;  // stable across runs
};

struct CheckResult {
  Spec spec;  // annotated
  TypingState sigma;
  std::vector<Obligation> obligations;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

// Checks contracts left-to-right, fills annotations, collects obligations.
// Diagnostics carry the violated rule name.
CheckResult check_spec(const Spec& spec);

// Re-derives every constructor and transition judgment against its recorded
// prefix of Sigma (items S1/S2 of the well-typed-Sigma definition). Returns
// the first failure message, or nullopt when Sigma re-checks.
std::optional<std::string> recheck_sigma(const TypingState& sigma);

// Re-typechecks an obligation's goals at bool in its recorded context.
bool recheck_obligation_goals(const TypingState& sigma, const Obligation& ob,
                              std::string* why = nullptr);

}  // namespace act
