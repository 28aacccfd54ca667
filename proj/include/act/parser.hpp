#pragma once

#include <optional>
#include <string>
#include <vector>

#include "act/ast.hpp"
#include "act/lexer.hpp"

namespace act {

struct ParseResult {
  std::optional<Spec> spec;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return spec.has_value() && !has_errors(diagnostics); }
};

// Deterministic recursive-descent parser. Reports the first error of each
// contract and recovers at the next `contract` keyword.
ParseResult parse_tokens(const std::vector<Token>& tokens);
ParseResult parse_source(const std::string& source, const std::string& filename = "");
ParseResult parse_file(const std::string& path);

}  // namespace act
