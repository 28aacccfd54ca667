// Value and environment typing judgments.
#pragma once

#include <optional>
#include <string>

#include "act/typing.hpp"
#include "act/value.hpp"

namespace act {

struct TypeJudgmentResult {
  bool holds = false;
  std::string failure;  // field chain and violated rule, set iff !holds

  static TypeJudgmentResult yes() { return {true, ""}; }
  static TypeJudgmentResult no(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return holds; }
};

TypeJudgmentResult value_has_base(const Value& v, const BaseType& beta);
TypeJudgmentResult value_has_mu(const Value& v, const MappingType& mu);
TypeJudgmentResult value_has_abi(const SigmaView& sig, const State& s, const Value& v,
                                 const AbiType& alpha);
TypeJudgmentResult value_has_sigma(const SigmaView& sig, const State& s, const Value& v,
                                   const SlotType& st);
// Optional slot type: absent type is bottom and accepts anything.
TypeJudgmentResult value_has_opt_sigma(const SigmaView& sig, const State& s, const Value& v,
                                       const std::optional<SlotType>& st);
// Location typed at a contract: address allocated in s with matching type
// and recursively well-typed fields.
TypeJudgmentResult loc_has_contract(const SigmaView& sig, const State& s, Addr l,
                                    const std::string& contract);
// Environment against an interface: exact domain equality plus caller/origin
// at address and callvalue at uint256.
TypeJudgmentResult env_has_iface(const SigmaView& sig, const State& s, const Env& env,
                                 const InterfaceEnv& iface);

}  // namespace act
