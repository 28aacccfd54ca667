#include "act/lexer.hpp"

#include <cctype>
#include <set>

namespace act {

namespace {

const std::set<std::string>& keyword_table() {
  static const std::set<std::string> kws = [] {
    std::set<std::string> s = {
        "contract", "constructor", "transition", "payable", "iff", "case",
        "creates",  "updates",     "returns",    "ensures", "invariants",
        "new",      "value",       "as",         "pre",     "post",
        "inrange",  "ite",         "addr",       "caller",  "origin",
        "callvalue", "this",       "true",       "false",   "div",
        "mod",      "exp",
        // type names
        "int", "bool", "address", "mapping",
    };
    for (int b = 8; b <= 256; b += 8) {
      s.insert("uint" + std::to_string(b));
      s.insert("int" + std::to_string(b));
    }
    return s;
  }();
  return kws;
}

}  // namespace

bool is_act_keyword(const std::string& word) { return keyword_table().count(word) > 0; }

LexResult tokenize(const std::string& src) {
  LexResult res;
  int line = 1, col = 1;
  size_t i = 0;
  const size_t n = src.size();

  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k && i < n; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  auto push = [&](Token::Kind kind, std::string lexeme, Span sp, BigInt v = 0) {
    res.tokens.push_back(Token{kind, std::move(lexeme), sp, std::move(v)});
  };

  while (i < n) {
    char c = src[i];
    Span sp{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word = src.substr(i, j - i);
      advance(j - i);
      if (is_act_keyword(word)) {
        push(Token::Kind::Keyword, word, sp);
      } else if (std::isupper(static_cast<unsigned char>(word[0]))) {
        push(Token::Kind::CapIdentifier, word, sp);
      } else {
        push(Token::Kind::Identifier, word, sp);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
        size_t j = i + 2;
        while (j < n && std::isxdigit(static_cast<unsigned char>(src[j]))) ++j;
        if (j == i + 2) {
          advance(2);
          res.diagnostics.push_back(Diagnostic{Severity::Error,
                                               "expected hex digits after 0x", "",
                                               Span{line, col}, "lex"});
          advance(1);
          continue;
        }
        std::string text = src.substr(i, j - i);
        advance(j - i);
        push(Token::Kind::IntLit, text, sp, BigInt(text));
        continue;
      }
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string text = src.substr(i, j - i);
      advance(j - i);
      push(Token::Kind::IntLit, text, sp, BigInt(text));
      continue;
    }
    // symbols, maximal munch
    static const char* multi[] = {"==>", ":=", "=>", "<=", ">=", "&&", "||"};
    bool matched = false;
    for (const char* m : multi) {
      size_t len = std::string_view(m).size();
      if (src.compare(i, len, m) == 0) {
        advance(len);
        push(Token::Kind::Symbol, m, sp);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string singles = "(){}[],:=<>+-*!.";
    if (singles.find(c) != std::string::npos) {
      advance(1);
      push(Token::Kind::Symbol, std::string(1, c), sp);
      continue;
    }
    res.diagnostics.push_back(Diagnostic{Severity::Error,
                                         std::string("unexpected character '") + c + "'", "",
                                         sp, "lex"});
    advance(1);
  }
  res.tokens.push_back(Token{Token::Kind::Eof, "", Span{line, col}, 0});
  return res;
}

}  // namespace act
