#pragma once

#include <string>
#include <vector>

#include "act/basics.hpp"

namespace act {

struct Token {
  enum class Kind { Keyword, Identifier, CapIdentifier, IntLit, Symbol, Eof };
  Kind kind;
  std::string lexeme;
  Span span;
  BigInt value;  // for IntLit

  bool is_kw(const char* k) const { return kind == Kind::Keyword && lexeme == k; }
  bool is_sym(const char* s) const { return kind == Kind::Symbol && lexeme == s; }
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Splits source text into tokens; unknown characters produce a diagnostic
// with the offending span. Line comments start with //.
LexResult tokenize(const std::string& source);

bool is_act_keyword(const std::string& word);

}  // namespace act
