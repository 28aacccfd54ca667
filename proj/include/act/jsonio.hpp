// JSON renderings of the external interfaces: diagnostics, Sigma, typed AST,
// obligations, states, traces, verification reports. All dumps carry a
// schemaVersion field and serialize deterministically.
#pragma once

#include <json.hpp>

#include <string>

#include "act/entailment.hpp"
#include "act/typing.hpp"
#include "act/value.hpp"
#include "act/verifier.hpp"

namespace act {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

nlohmann::json to_json(const State& s);
State state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Env& env);
Env env_from_json(const nlohmann::json& j);

nlohmann::json diagnostics_json(const std::vector<Diagnostic>& ds);
nlohmann::json sigma_json(const TypingState& sigma);
nlohmann::json typed_ast_json(const Spec& spec);
nlohmann::json obligations_json(const std::vector<Obligation>& obs);
nlohmann::json obligation_json(const Obligation& ob);
nlohmann::json verdict_json(const Verdict& v);
nlohmann::json trace_json(const std::vector<StepLabel>& trace);
nlohmann::json report_json(const Report& rep);

}  // namespace act
