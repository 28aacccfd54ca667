#include "act/parser.hpp"

#include <fstream>
#include <sstream>

namespace act {

namespace {

struct ParseErr {
  Diagnostic diag;
};

[[noreturn]] void fail(const Token& tok, const std::string& msg) {
  throw ParseErr{Diagnostic{Severity::Error, msg, "", tok.span, "parse"}};
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  ParseResult run() {
    ParseResult res;
    Spec spec;
    bool any_error = false;
    while (!peek().is_kw("contract") && peek().kind != Token::Kind::Eof) {
      res.diagnostics.push_back(Diagnostic{Severity::Error, "expected 'contract'", "",
                                           peek().span, "parse"});
      any_error = true;
      sync_to_contract();
    }
    while (peek().kind != Token::Kind::Eof) {
      try {
        spec.contracts.push_back(parse_contract());
      } catch (const ParseErr& e) {
        res.diagnostics.push_back(e.diag);
        any_error = true;
        sync_to_contract();
      }
    }
    if (!any_error) res.spec = std::move(spec);
    return res;
  }

 private:
  const std::vector<Token>& toks_;
  size_t pos_ = 0;

  const Token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    if (i >= toks_.size()) i = toks_.size() - 1;
    return toks_[i];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool eat_sym(const char* s) {
    if (peek().is_sym(s)) {
      next();
      return true;
    }
    return false;
  }
  bool eat_kw(const char* k) {
    if (peek().is_kw(k)) {
      next();
      return true;
    }
    return false;
  }
  void expect_sym(const char* s) {
    if (!eat_sym(s)) fail(peek(), std::string("expected '") + s + "'");
  }
  void expect_kw(const char* k) {
    if (!eat_kw(k)) fail(peek(), std::string("expected '") + k + "'");
  }
  std::string expect_ident() {
    if (peek().kind != Token::Kind::Identifier) fail(peek(), "expected identifier");
    return next().lexeme;
  }
  std::string expect_cap_ident() {
    if (peek().kind != Token::Kind::CapIdentifier)
      fail(peek(), "expected contract name (capitalized identifier)");
    return next().lexeme;
  }

  void sync_to_contract() {
    while (peek().kind != Token::Kind::Eof && !peek().is_kw("contract")) next();
  }

  // -- types ----------------------------------------------------------------

  static bool is_int_type_kw(const Token& t) {
    if (t.kind != Token::Kind::Keyword) return false;
    const std::string& s = t.lexeme;
    if (s == "int") return true;
    if (s.rfind("uint", 0) == 0 && s.size() > 4) return true;
    if (s.rfind("int", 0) == 0 && s.size() > 3) return true;
    return false;
  }

  IntType parse_int_type() {
    const Token& t = peek();
    if (!is_int_type_kw(t)) fail(t, "expected an integer type");
    next();
    const std::string& s = t.lexeme;
    if (s == "int") return IntType::math();
    if (s.rfind("uint", 0) == 0) return IntType::unsigned_bits(std::stoi(s.substr(4)));
    return IntType::signed_bits(std::stoi(s.substr(3)));
  }

  bool starts_base_type() {
    return is_int_type_kw(peek()) || peek().is_kw("bool") || peek().is_kw("address");
  }

  // Parses `bool`, an integer type, or plain `address`. The caller handles
  // `address(Id)` separately where it is legal.
  BaseType parse_base_type() {
    if (eat_kw("bool")) return BaseType::boolean();
    if (peek().is_kw("address")) {
      if (peek(1).is_sym("(")) fail(peek(1), "contract-typed address not allowed here");
      next();
      return BaseType::address();
    }
    return BaseType::integer(parse_int_type());
  }

  MappingType parse_mapping_type() {
    if (eat_kw("mapping")) {
      expect_sym("(");
      BaseType key = parse_base_type();
      expect_sym("=>");
      MappingType value = parse_mapping_type();
      expect_sym(")");
      return MappingType::map(std::move(key), std::move(value));
    }
    return MappingType::base(parse_base_type());
  }

  AbiType parse_abi_type() {
    if (peek().is_kw("address") && peek(1).is_sym("(")) {
      next();
      next();
      std::string name = expect_cap_ident();
      expect_sym(")");
      return AbiType::contract_addr(std::move(name));
    }
    return AbiType::base(parse_base_type());
  }

  SlotType parse_slot_type() {
    if (peek().kind == Token::Kind::CapIdentifier) return SlotType::contract(next().lexeme);
    if (peek().is_kw("address") && peek(1).is_sym("(")) {
      next();
      next();
      std::string name = expect_cap_ident();
      expect_sym(")");
      return SlotType::contract_addr(std::move(name));
    }
    return SlotType::mapping(parse_mapping_type());
  }

  bool starts_slot_type() {
    return peek().kind == Token::Kind::CapIdentifier || starts_base_type() ||
           peek().is_kw("mapping");
  }

  // -- references -----------------------------------------------------------

  bool starts_ref() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Identifier) return true;
    if (t.is_sym("(")) return true;
    return t.is_kw("pre") || t.is_kw("post") || t.is_kw("caller") || t.is_kw("origin") ||
           t.is_kw("callvalue") || t.is_kw("this");
  }

  Ref parse_ref_atom() {
    Span sp = peek().span;
    if (peek().kind == Token::Kind::Identifier)
      return Ref{Ref::Var{next().lexeme}, std::nullopt, sp};
    if (eat_kw("pre")) {
      expect_sym("(");
      std::string name = expect_ident();
      expect_sym(")");
      return Ref{Ref::Pre{std::move(name)}, std::nullopt, sp};
    }
    if (eat_kw("post")) {
      expect_sym("(");
      std::string name = expect_ident();
      expect_sym(")");
      return Ref{Ref::Post{std::move(name)}, std::nullopt, sp};
    }
    if (eat_kw("caller")) return Ref{Ref::EnvRef{EnvVar::Caller}, std::nullopt, sp};
    if (eat_kw("origin")) return Ref{Ref::EnvRef{EnvVar::Origin}, std::nullopt, sp};
    if (eat_kw("callvalue")) return Ref{Ref::EnvRef{EnvVar::Callvalue}, std::nullopt, sp};
    if (eat_kw("this")) return Ref{Ref::EnvRef{EnvVar::This}, std::nullopt, sp};
    if (eat_sym("(")) {
      Ref r = parse_ref_chain(nullptr);
      expect_sym(")");
      return r;
    }
    fail(peek(), "expected a reference");
  }

  // Parses a reference chain. When `upd` is non-null, a bracket whose first
  // element is followed by `=>` (or an empty bracket) ends the chain and the
  // pairs are stored into *upd (mapping-update syntax).
  Ref parse_ref_chain(std::optional<std::vector<MappingExpr::Pair>>* upd) {
    Ref r = parse_ref_atom();
    for (;;) {
      if (eat_sym(".")) {
        std::string f = expect_ident();
        Span sp = r.span;
        r = Ref{Ref::Field{Box<Ref>(std::move(r)), std::move(f)}, std::nullopt, sp};
        continue;
      }
      if (eat_kw("as")) {
        std::string to = expect_cap_ident();
        Span sp = r.span;
        r = Ref{Ref::Coerce{Box<Ref>(std::move(r)), std::move(to)}, std::nullopt, sp};
        continue;
      }
      if (peek().is_sym("[")) {
        if (upd && peek(1).is_sym("]")) {
          next();
          next();
          *upd = std::vector<MappingExpr::Pair>{};
          return r;
        }
        next();
        Expr key = parse_expr();
        if (upd && peek().is_sym("=>")) {
          next();
          std::vector<MappingExpr::Pair> pairs;
          pairs.push_back(MappingExpr::Pair{std::move(key), parse_mapping_expr()});
          while (eat_sym(",")) {
            Expr k = parse_expr();
            expect_sym("=>");
            pairs.push_back(MappingExpr::Pair{std::move(k), parse_mapping_expr()});
          }
          expect_sym("]");
          *upd = std::move(pairs);
          return r;
        }
        expect_sym("]");
        Span sp = r.span;
        r = Ref{Ref::Index{Box<Ref>(std::move(r)), Box<Expr>(std::move(key))}, std::nullopt, sp};
        continue;
      }
      return r;
    }
  }

  // -- expressions ----------------------------------------------------------

  Expr parse_expr() { return parse_implies(); }

  Expr parse_implies() {
    Expr l = parse_or();
    if (eat_sym("==>")) {
      Expr r = parse_implies();  // right-assoc
      Span sp = l.span;
      Expr e = bin_b(BoolOp::Implies, std::move(l), std::move(r));
      e.span = sp;
      return e;
    }
    return l;
  }

  Expr parse_or() {
    Expr l = parse_and();
    while (eat_sym("||")) {
      Expr r = parse_and();
      Span sp = l.span;
      l = bin_b(BoolOp::Or, std::move(l), std::move(r));
      l.span = sp;
    }
    return l;
  }

  Expr parse_and() {
    Expr l = parse_eq();
    while (eat_sym("&&")) {
      Expr r = parse_eq();
      Span sp = l.span;
      l = bin_b(BoolOp::And, std::move(l), std::move(r));
      l.span = sp;
    }
    return l;
  }

  Expr parse_eq() {
    Expr l = parse_cmp();
    while (peek().is_sym("=")) {
      next();
      Expr r = parse_cmp();
      Span sp = l.span;
      l = eq(std::move(l), std::move(r));
      l.span = sp;
    }
    return l;
  }

  Expr parse_cmp() {
    Expr l = parse_add();
    for (;;) {
      CmpOp op;
      if (peek().is_sym("<")) op = CmpOp::Lt;
      else if (peek().is_sym("<=")) op = CmpOp::Le;
      else if (peek().is_sym(">=")) op = CmpOp::Ge;
      else if (peek().is_sym(">")) op = CmpOp::Gt;
      else return l;
      next();
      Expr r = parse_add();
      Span sp = l.span;
      l = cmp(op, std::move(l), std::move(r));
      l.span = sp;
    }
  }

  Expr parse_add() {
    Expr l = parse_mul();
    for (;;) {
      IntOp op;
      if (peek().is_sym("+")) op = IntOp::Add;
      else if (peek().is_sym("-")) op = IntOp::Sub;
      else return l;
      next();
      Expr r = parse_mul();
      Span sp = l.span;
      l = bin_i(op, std::move(l), std::move(r));
      l.span = sp;
    }
  }

  Expr parse_mul() {
    Expr l = parse_exp();
    for (;;) {
      IntOp op;
      if (peek().is_sym("*")) op = IntOp::Mul;
      else if (peek().is_kw("div")) op = IntOp::Div;
      else if (peek().is_kw("mod")) op = IntOp::Mod;
      else return l;
      next();
      Expr r = parse_exp();
      Span sp = l.span;
      l = bin_i(op, std::move(l), std::move(r));
      l.span = sp;
    }
  }

  Expr parse_exp() {
    Expr l = parse_unary();
    while (peek().is_kw("exp")) {
      next();
      Expr r = parse_unary();
      Span sp = l.span;
      l = bin_i(IntOp::Exp, std::move(l), std::move(r));
      l.span = sp;
    }
    return l;
  }

  Expr parse_unary() {
    Span sp = peek().span;
    if (eat_sym("!")) {
      Expr e = not_e(parse_unary());
      e.span = sp;
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    Span sp = peek().span;
    if (peek().kind == Token::Kind::IntLit) {
      Expr e = int_lit(next().value);
      e.span = sp;
      return e;
    }
    if (peek().is_sym("-") && peek(1).kind == Token::Kind::IntLit) {
      next();
      Expr e = int_lit(-next().value);
      e.span = sp;
      return e;
    }
    if (eat_kw("true")) {
      Expr e = bool_lit(true);
      e.span = sp;
      return e;
    }
    if (eat_kw("false")) {
      Expr e = bool_lit(false);
      e.span = sp;
      return e;
    }
    if (eat_kw("inrange")) {
      expect_sym("(");
      IntType t = parse_int_type();
      expect_sym(",");
      Expr inner = parse_expr();
      expect_sym(")");
      Expr e = in_range(t, std::move(inner));
      e.span = sp;
      return e;
    }
    if (eat_kw("ite")) {
      expect_sym("(");
      Expr c = parse_expr();
      expect_sym(",");
      Expr t = parse_expr();
      expect_sym(",");
      Expr f = parse_expr();
      expect_sym(")");
      return Expr{Expr::Ite{Box<Expr>(std::move(c)), Box<Expr>(std::move(t)),
                            Box<Expr>(std::move(f))},
                  sp};
    }
    if (peek().is_kw("addr")) {
      next();
      expect_sym("(");
      Ref r = parse_ref_chain(nullptr);
      expect_sym(")");
      return Expr{Expr::AddrOf{std::move(r)}, sp};
    }
    if (peek().is_sym("(")) {
      next();
      Expr e = parse_expr();
      expect_sym(")");
      // A parenthesized reference may continue as a chain: (r as A).f
      if (auto* re = std::get_if<Expr::RefExpr>(&e.v)) {
        if (peek().is_sym(".") || peek().is_sym("[") || peek().is_kw("as")) {
          Ref r = continue_chain(std::move(re->ref));
          return Expr{Expr::RefExpr{std::move(r)}, sp};
        }
      }
      return e;
    }
    if (starts_ref()) {
      Ref r = parse_ref_chain(nullptr);
      return Expr{Expr::RefExpr{std::move(r)}, sp};
    }
    fail(peek(), "expected an expression");
  }

  Ref continue_chain(Ref r) {
    for (;;) {
      if (eat_sym(".")) {
        std::string f = expect_ident();
        Span sp = r.span;
        r = Ref{Ref::Field{Box<Ref>(std::move(r)), std::move(f)}, std::nullopt, sp};
      } else if (eat_kw("as")) {
        std::string to = expect_cap_ident();
        Span sp = r.span;
        r = Ref{Ref::Coerce{Box<Ref>(std::move(r)), std::move(to)}, std::nullopt, sp};
      } else if (peek().is_sym("[")) {
        next();
        Expr key = parse_expr();
        expect_sym("]");
        Span sp = r.span;
        r = Ref{Ref::Index{Box<Ref>(std::move(r)), Box<Expr>(std::move(key))}, std::nullopt, sp};
      } else {
        return r;
      }
    }
  }

  // -- mapping and slot expressions ------------------------------------------

  MappingExpr parse_mapping_expr() {
    Span sp = peek().span;
    if (peek().is_sym("[")) {
      next();
      std::vector<MappingExpr::Pair> pairs;
      if (!eat_sym("]")) {
        for (;;) {
          Expr k = parse_expr();
          expect_sym("=>");
          pairs.push_back(MappingExpr::Pair{std::move(k), parse_mapping_expr()});
          if (eat_sym(",")) continue;
          expect_sym("]");
          break;
        }
      }
      return MappingExpr{MappingExpr::Lit{std::move(pairs), std::nullopt}, sp};
    }
    if (starts_ref()) {
      size_t save = pos_;
      try {
        std::optional<std::vector<MappingExpr::Pair>> upd;
        Ref base = parse_ref_chain(&upd);
        if (upd) {
          return MappingExpr{MappingExpr::Upd{std::move(base), std::move(*upd), std::nullopt}, sp};
        }
      } catch (const ParseErr&) {
        // fall through to the expression route
      }
      pos_ = save;
    }
    Expr e = parse_expr();
    return MappingExpr{MappingExpr::Base{Box<Expr>(std::move(e))}, sp};
  }

  static bool continues_expression(const Token& t) {
    if (t.kind == Token::Kind::Symbol) {
      static const char* ops[] = {"+", "-", "*", "<", "<=", ">", ">=", "=", "&&", "||", "==>"};
      for (const char* o : ops)
        if (t.lexeme == o) return true;
      return false;
    }
    return t.is_kw("div") || t.is_kw("mod") || t.is_kw("exp");
  }

  SlotExpr parse_slot_expr() {
    Span sp = peek().span;
    if (eat_kw("new")) {
      std::string name = expect_cap_ident();
      std::optional<Box<SlotExpr>> value_arg;
      if (eat_sym("{")) {
        expect_kw("value");
        expect_sym(":");
        value_arg = Box<SlotExpr>(parse_slot_expr());
        expect_sym("}");
      }
      expect_sym("(");
      std::vector<SlotExpr> args;
      if (!eat_sym(")")) {
        for (;;) {
          args.push_back(parse_slot_expr());
          if (eat_sym(",")) continue;
          expect_sym(")");
          break;
        }
      }
      return SlotExpr{SlotExpr::New{std::move(name), std::move(value_arg), std::move(args)}, sp};
    }
    if (peek().is_kw("addr") && peek(1).is_sym("(")) {
      next();
      next();
      SlotExpr inner = parse_slot_expr();
      expect_sym(")");
      if (continues_expression(peek())) {
        // addr(...) is part of a larger base expression; the inner slot
        // expression must be a plain reference then.
        auto* re = std::get_if<SlotExpr::RefE>(&inner.v);
        if (!re) fail(peek(), "addr(...) inside an expression takes a reference");
        Expr prim{Expr::AddrOf{std::move(re->ref)}, sp};
        Expr e = parse_expr_from_primary(std::move(prim));
        return SlotExpr{
            SlotExpr::MapE{MappingExpr{MappingExpr::Base{Box<Expr>(std::move(e))}, sp}}, sp};
      }
      return SlotExpr{SlotExpr::AddrE{Box<SlotExpr>(std::move(inner))}, sp};
    }
    MappingExpr m = parse_mapping_expr();
    if (auto* base = std::get_if<MappingExpr::Base>(&m.v)) {
      if (auto* re = std::get_if<Expr::RefExpr>(&base->e->v)) {
        return SlotExpr{SlotExpr::RefE{std::move(re->ref)}, sp};
      }
    }
    return SlotExpr{SlotExpr::MapE{std::move(m)}, sp};
  }

  // Re-enters the operator-precedence chain with an already-parsed primary.
  Expr parse_expr_from_primary(Expr prim) {
    // Climb from the tightest level upward, reusing the loop bodies.
    Expr l = std::move(prim);
    for (;;) {
      if (peek().is_kw("exp")) {
        next();
        l = bin_i(IntOp::Exp, std::move(l), parse_unary());
        continue;
      }
      if (peek().is_sym("*") || peek().is_kw("div") || peek().is_kw("mod")) {
        IntOp op = peek().is_sym("*") ? IntOp::Mul : (peek().is_kw("div") ? IntOp::Div : IntOp::Mod);
        next();
        l = bin_i(op, std::move(l), parse_exp());
        continue;
      }
      if (peek().is_sym("+") || peek().is_sym("-")) {
        IntOp op = peek().is_sym("+") ? IntOp::Add : IntOp::Sub;
        next();
        l = bin_i(op, std::move(l), parse_mul());
        continue;
      }
      if (peek().is_sym("<") || peek().is_sym("<=") || peek().is_sym(">=") || peek().is_sym(">")) {
        CmpOp op = peek().is_sym("<") ? CmpOp::Lt
                   : peek().is_sym("<=") ? CmpOp::Le
                   : peek().is_sym(">=") ? CmpOp::Ge
                                          : CmpOp::Gt;
        next();
        l = cmp(op, std::move(l), parse_add());
        continue;
      }
      if (peek().is_sym("=")) {
        next();
        l = eq(std::move(l), parse_cmp());
        continue;
      }
      if (peek().is_sym("&&")) {
        next();
        l = bin_b(BoolOp::And, std::move(l), parse_eq());
        continue;
      }
      if (peek().is_sym("||")) {
        next();
        l = bin_b(BoolOp::Or, std::move(l), parse_and());
        continue;
      }
      if (peek().is_sym("==>")) {
        next();
        l = bin_b(BoolOp::Implies, std::move(l), parse_implies());
        continue;
      }
      return l;
    }
  }

  // -- declarations ----------------------------------------------------------

  std::vector<Expr> parse_expr_list() {
    std::vector<Expr> es;
    es.push_back(parse_expr());
    while (eat_sym(",")) es.push_back(parse_expr());
    return es;
  }

  InterfaceEnv parse_iface() {
    expect_sym("(");
    InterfaceEnv iface;
    if (!eat_sym(")")) {
      for (;;) {
        std::string name = expect_ident();
        expect_sym(":");
        iface.emplace_back(std::move(name), parse_abi_type());
        if (eat_sym(",")) continue;
        expect_sym(")");
        break;
      }
    }
    return iface;
  }

  Create parse_create() {
    Span sp = peek().span;
    SlotType st = parse_slot_type();
    std::string name = expect_ident();
    expect_sym(":=");
    SlotExpr rhs = parse_slot_expr();
    return Create{std::move(st), std::move(name), std::move(rhs), sp};
  }

  std::vector<Create> parse_create_list() {
    std::vector<Create> cs;
    cs.push_back(parse_create());
    while (eat_sym(",")) cs.push_back(parse_create());
    return cs;
  }

  Update parse_update() {
    Span sp = peek().span;
    Ref target = parse_ref_chain(nullptr);
    expect_sym(":=");
    SlotExpr rhs = parse_slot_expr();
    return Update{std::move(target), std::move(rhs), sp};
  }

  Constructor parse_constructor() {
    Span sp = peek().span;
    expect_kw("constructor");
    Constructor c;
    c.span = sp;
    c.iface = parse_iface();
    c.payable = eat_kw("payable");
    if (eat_kw("iff")) c.iff = parse_expr_list();
    if (peek().is_kw("case")) {
      while (eat_kw("case")) {
        Span csp = peek().span;
        Expr cond = parse_expr();
        expect_sym(":");
        expect_kw("creates");
        c.cases.push_back(CtorCase{std::move(cond), parse_create_list(), csp});
      }
    } else {
      // A caseless body desugars to a single case guarded by `true`.
      Span csp = peek().span;
      expect_kw("creates");
      c.cases.push_back(CtorCase{bool_lit(true), parse_create_list(), csp});
    }
    if (eat_kw("ensures")) c.ensures = parse_expr_list();
    return c;
  }

  TransCase parse_trans_case_body(Expr cond, Span csp) {
    expect_kw("updates");
    std::vector<Update> updates;
    if (starts_ref()) {
      updates.push_back(parse_update());
      while (eat_sym(",")) updates.push_back(parse_update());
    }
    std::optional<Expr> ret;
    if (eat_kw("returns")) ret = parse_expr();
    return TransCase{std::move(cond), std::move(updates), std::move(ret), csp};
  }

  Transition parse_transition() {
    Span sp = peek().span;
    expect_kw("transition");
    Transition t;
    t.span = sp;
    t.name = expect_ident();
    t.iface = parse_iface();
    t.payable = eat_kw("payable");
    if (eat_sym(":")) t.ret_type = parse_abi_type();
    if (eat_kw("iff")) t.iff = parse_expr_list();
    if (peek().is_kw("case")) {
      while (eat_kw("case")) {
        Span csp = peek().span;
        Expr cond = parse_expr();
        expect_sym(":");
        t.cases.push_back(parse_trans_case_body(std::move(cond), csp));
      }
    } else {
      Span csp = peek().span;
      t.cases.push_back(parse_trans_case_body(bool_lit(true), csp));
    }
    if (eat_kw("ensures")) t.ensures = parse_expr_list();
    return t;
  }

  Contract parse_contract() {
    Span sp = peek().span;
    expect_kw("contract");
    Contract c;
    c.span = sp;
    c.name = expect_cap_ident();
    expect_sym("{");
    c.ctor = parse_constructor();
    while (peek().is_kw("transition")) c.transitions.push_back(parse_transition());
    if (eat_kw("invariants")) c.invariants = parse_expr_list();
    expect_sym("}");
    return c;
  }
};

}  // namespace

ParseResult parse_tokens(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ParseResult parse_source(const std::string& source, const std::string& filename) {
  LexResult lex = tokenize(source);
  ParseResult res;
  if (!lex.ok()) {
    res.diagnostics = std::move(lex.diagnostics);
    for (auto& d : res.diagnostics) d.file = filename;
    return res;
  }
  res = parse_tokens(lex.tokens);
  for (auto& d : res.diagnostics)
    if (d.file.empty()) d.file = filename;
  return res;
}

ParseResult parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult res;
    res.diagnostics.push_back(
        Diagnostic{Severity::Error, "cannot open file: " + path, path, Span{}, "io"});
    return res;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_source(ss.str(), path);
}

}  // namespace act
